#include <CLI11.hpp>

#include <iostream>

#include "config.hpp"
#include "hklab/backend.hpp"
#include "suites.hpp"

int main(int argc, char** argv) {
  hklab::reexec_with_working_blas(argv);

  CLI::App app{"Numerical checks for the Dirac / dual-Dirac construction on the infinite dihedral group"};
  std::string suite;
  std::string config_path;
  std::optional<std::size_t> grid_n;
  std::optional<double> grid_l;
  std::optional<int> hermite;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> parallel;

  std::vector<std::string> choices = hklab::tools::suite_names();
  choices.push_back("all");
  app.add_option("suite", suite, "Suite to run")->required()->check(CLI::IsMember(choices));
  app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--grid-n", grid_n, "Grid size N");
  app.add_option("--grid-l", grid_l, "Grid half width L");
  app.add_option("--hermite", hermite, "Hermite basis size M");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--out", out, "Output directory");
  app.add_option("--parallel", parallel, "Worker threads for t-grid evaluation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  hklab::tools::RunConfig config;
  try {
    if (!config_path.empty()) config = hklab::tools::load_config(config_path);
  } catch (const hklab::tools::ConfigError& e) {
    std::cerr << "hklab: config error: " << e.what() << "\n";
    return 2;
  }
  if (grid_n) config.samples = *grid_n;
  if (grid_l) config.half_width = *grid_l;
  if (hermite) config.hermite_size = *hermite;
  if (seed) config.seed = *seed;
  if (out) config.out_dir = *out;
  if (parallel) config.parallel = *parallel;

  return hklab::tools::run_suite(suite, config);
}
