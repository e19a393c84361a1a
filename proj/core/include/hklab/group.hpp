#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace hklab {

/// An element rho^n sigma^eps of the infinite dihedral group, stored in
/// normal form with sigma on the right.  Two elements are equal iff (n, eps)
/// match.
class DihedralElement {
 public:
  constexpr DihedralElement() = default;
  constexpr DihedralElement(std::int64_t power, bool reflection)
      : power_(power), reflection_(reflection) {}

  static constexpr DihedralElement identity() { return {}; }
  static constexpr DihedralElement rho(std::int64_t power = 1) { return {power, false}; }
  static constexpr DihedralElement sigma() { return {0, true}; }

  constexpr std::int64_t power() const { return power_; }
  constexpr bool is_reflection() const { return reflection_; }
  constexpr int eps() const { return reflection_ ? 1 : 0; }

  friend constexpr auto operator<=>(const DihedralElement&, const DihedralElement&) = default;

  /// "e", "rho^3", "rho^-2 sigma", ...
  std::string str() const;

 private:
  std::int64_t power_ = 0;
  bool reflection_ = false;
};

/// rho^a sigma^e * rho^b sigma^d = rho^(a + (-1)^e b) sigma^(e+d mod 2).
/// Throws std::overflow_error if the power leaves the 64-bit range.
DihedralElement multiply(const DihedralElement& g, const DihedralElement& h);
DihedralElement operator*(const DihedralElement& g, const DihedralElement& h);

DihedralElement inverse(const DihedralElement& g);

/// The homomorphism pi onto {+1, -1}: rho -> 1, sigma -> -1.
int sign(const DihedralElement& g);

/// Translation scale of the affine action rho.x = x - s, sigma.x = -x.
struct ScaledAction {
  double s = 1.0;

  static constexpr ScaledAction standard() { return {1.0}; }
};

/// rho^n sigma^eps acting on x: (-1)^eps x - n s.
double act(const DihedralElement& g, double x, ScaledAction action = {});

/// All g with |x - g.x| <= radius, sorted.  Requires s > 0: at s = 0 every
/// rho^n fixes every point and the set is infinite.
std::vector<DihedralElement> properness_ball(double x, double radius, ScaledAction action = {});

}  // namespace hklab
