#include "config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace hklab::tools {

namespace {

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
  }
}

long long to_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("{}: '{}' is not an integer", key, text));
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"spectrum", "beta",    "alpha",     "gamma-homotopy",
                                              "tensor",   "crossed", "properness"};
  return names;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::string text = boost::trim_copy(spec);
  std::vector<double> out;
  if (boost::starts_with(text, "log10:")) {
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of(":"));
    if (parts.size() != 4) throw ConfigError(fmt::format("grid '{}': expected log10:first:last:step", spec));
    const double first = to_double("grid", boost::trim_copy(parts[1]));
    const double last = to_double("grid", boost::trim_copy(parts[2]));
    const double step = to_double("grid", boost::trim_copy(parts[3]));
    if (!(step > 0.0) || last < first) throw ConfigError(fmt::format("grid '{}': empty or bad step", spec));
    const auto count = static_cast<int>(std::floor((last - first) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) out.push_back(std::pow(10.0, first + i * step));
    return out;
  }
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  for (auto& p : parts) {
    boost::trim(p);
    if (!p.empty()) out.push_back(to_double("grid", p));
  }
  if (out.empty()) throw ConfigError(fmt::format("grid '{}' is empty", spec));
  return out;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(fmt::format("cannot read config: {}", e.what()));
  }

  RunConfig& c = base;
  Tolerances& t = c.tol;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto real = [](double& field) { return Setter([&field](auto& k, auto& v) { field = to_double(k, v); }); };
  auto grid = [](std::vector<double>& field) { return Setter([&field](auto&, auto& v) { field = parse_grid(v); }); };

  const std::map<std::string, Setter> setters{
      {"grid.half_width", real(c.half_width)},
      {"grid.samples",
       [&c](auto& k, auto& v) {
         const auto n = to_integer(k, v);
         if (n <= 0) throw ConfigError(fmt::format("{} must be positive", k));
         c.samples = static_cast<std::size_t>(n);
       }},
      {"hermite.size", [&c](auto& k, auto& v) { c.hermite_size = static_cast<int>(to_integer(k, v)); }},
      {"t_grid.operator", grid(c.operator_t)},
      {"t_grid.defect", grid(c.defect_t)},
      {"t_grid.beta", grid(c.beta_t)},
      {"s_grid.values", grid(c.s_grid)},
      {"tolerances.eigenvalue", real(t.eigenvalue)},
      {"tolerances.kernel", real(t.kernel)},
      {"tolerances.overlap", real(t.overlap)},
      {"tolerances.exact_operator", real(t.exact_operator)},
      {"tolerances.route", real(t.route)},
      {"tolerances.beta_sigma", real(t.beta_sigma)},
      {"tolerances.beta_homomorphism", real(t.beta_homomorphism)},
      {"tolerances.beta_constant", real(t.beta_constant)},
      {"tolerances.alpha", real(t.alpha)},
      {"tolerances.compactness", real(t.compactness)},
      {"tolerances.homotopy", real(t.homotopy)},
      {"tolerances.gamma", real(t.gamma)},
      {"tolerances.algebra", real(t.algebra)},
      {"tolerances.reduced_norm", real(t.reduced_norm)},
      {"output.dir", [&c](auto&, auto& v) { c.out_dir = v; }},
      {"run.seed",
       [&c](auto& k, auto& v) {
         const auto s = to_integer(k, v);
         if (s < 0) throw ConfigError(fmt::format("{} must be non-negative", k));
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"run.parallel", [&c](auto& k, auto& v) { c.parallel = static_cast<int>(to_integer(k, v)); }},
  };

  for (const auto& [section, entries] : tree) {
    if (entries.empty() && !entries.data().empty())
      throw ConfigError(fmt::format("key '{}' outside of a section", section));
    for (const auto& [key, value] : entries) {
      const std::string full = section + "." + key;
      const auto it = setters.find(full);
      if (it == setters.end()) throw ConfigError(fmt::format("unknown config key '{}'", full));
      it->second(full, boost::trim_copy(value.data()));
    }
  }
  return c;
}

void validate(const RunConfig& c) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(c.half_width > 0.0) || !std::isfinite(c.half_width)) fail("grid half width must be positive");
  if (c.samples < 16 || c.samples % 2 != 0) fail(fmt::format("grid size N={} must be even and >= 16", c.samples));
  if (c.hermite_size < 21) fail("hermite size M must be at least 21 (eigenvalues n=1..20 are checked)");
  if (static_cast<std::size_t>(c.hermite_size) > c.samples / 4)
    fail(fmt::format("hermite size M={} exceeds N/4={}", c.hermite_size, c.samples / 4));

  const std::pair<const char*, const std::vector<double>*> grids[] = {
      {"operator t grid", &c.operator_t}, {"defect t grid", &c.defect_t}, {"beta t grid", &c.beta_t}};
  for (const auto& [name, g] : grids) {
    if (g->empty()) fail(fmt::format("{} is empty", name));
    for (double t : *g)
      if (!(t >= 1.0) || !std::isfinite(t)) fail(fmt::format("{}: t={} must be >= 1", name, t));
    if (!std::is_sorted(g->begin(), g->end())) fail(fmt::format("{} must be increasing", name));
  }
  if (c.defect_t.size() < 5) fail("defect t grid needs at least five points for slope fits");
  if (c.beta_t.size() < 5) fail("beta t grid needs at least five points for slope fits");
  for (double s : c.s_grid)
    if (!(s >= 0.0 && s <= 1.0)) fail(fmt::format("s grid value {} outside [0, 1]", s));

  const double tols[] = {c.tol.eigenvalue, c.tol.kernel,       c.tol.overlap,           c.tol.exact_operator,
                         c.tol.route,      c.tol.beta_sigma,   c.tol.beta_homomorphism, c.tol.beta_constant,
                         c.tol.alpha,      c.tol.compactness,  c.tol.homotopy,          c.tol.gamma,
                         c.tol.algebra,    c.tol.reduced_norm};
  for (double t : tols)
    if (!(t > 0.0) || !std::isfinite(t)) fail("all tolerances must be positive");
  if (c.parallel < 1) fail("parallel must be at least 1");
  if (c.out_dir.empty()) fail("output directory is empty");

  for (const auto& s : c.suites)
    if (s != "all" && std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      fail(fmt::format("unknown suite '{}'", s));
}

}  // namespace hklab::tools
