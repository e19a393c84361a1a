#include "hklab/group.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hklab {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("dihedral power overflows 64 bits");
  }
  return out;
}

std::int64_t checked_negate(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("dihedral power overflows 64 bits");
  }
  return -a;
}

}  // namespace

std::string DihedralElement::str() const {
  if (power_ == 0 && !reflection_) return "e";
  std::string out;
  if (power_ == 1) {
    out = "rho";
  } else if (power_ != 0) {
    out = "rho^" + std::to_string(power_);
  }
  if (reflection_) out += out.empty() ? "sigma" : " sigma";
  return out;
}

DihedralElement multiply(const DihedralElement& g, const DihedralElement& h) {
  const std::int64_t b = g.is_reflection() ? checked_negate(h.power()) : h.power();
  return {checked_add(g.power(), b), g.is_reflection() != h.is_reflection()};
}

DihedralElement operator*(const DihedralElement& g, const DihedralElement& h) {
  return multiply(g, h);
}

DihedralElement inverse(const DihedralElement& g) {
  // Reflections are involutions; translations invert the power.
  if (g.is_reflection()) return g;
  return {checked_negate(g.power()), false};
}

int sign(const DihedralElement& g) { return g.is_reflection() ? -1 : 1; }

double act(const DihedralElement& g, double x, ScaledAction action) {
  const double reflected = g.is_reflection() ? -x : x;
  return reflected - static_cast<double>(g.power()) * action.s;
}

std::vector<DihedralElement> properness_ball(double x, double radius, ScaledAction action) {
  if (!(action.s > 0.0)) {
    throw std::invalid_argument("properness_ball: the action is not proper for s <= 0");
  }
  if (!(radius >= 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument("properness_ball: radius must be >= 0 and x finite");
  }
  // |x - rho^n x| = |n| s and |x - rho^n sigma x| = |2x + n s|, so every
  // member has |n| s <= radius + 2|x|.
  const double bound = std::ceil((radius + 2.0 * std::abs(x)) / action.s) + 1.0;
  if (bound > 1e15) throw std::overflow_error("properness_ball: candidate range too large");
  const auto limit = static_cast<std::int64_t>(bound);

  std::vector<DihedralElement> out;
  for (std::int64_t n = -limit; n <= limit; ++n) {
    for (bool reflection : {false, true}) {
      const DihedralElement g{n, reflection};
      if (std::abs(x - act(g, x, action)) <= radius) out.push_back(g);
    }
  }
  return out;
}

}  // namespace hklab
