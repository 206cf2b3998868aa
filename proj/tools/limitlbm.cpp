// limitlbm: experiment driver.
//
//   limitlbm run <config-path>
//   limitlbm check-stencil <d2q9|d3q19>
//
// LIMITLBM_WORKERS overrides worker_count from the config. Exit codes:
// 0 pass, 1 threshold fail, 2 config error, 3 blow-up.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "limitlbm/errors.hpp"
#include "limitlbm/experiment.hpp"
#include "limitlbm/lattice.hpp"

namespace {

int CheckStencil(const std::string &name) {
  const limitlbm::Stencil s = limitlbm::stencil_by_name(name);
  std::printf("%s: d = %d, q = %d\n", s.name.c_str(), s.d, s.q);
  for (int i = 0; i < s.q; ++i) {
    std::printf("  %2d  (%2d,%2d,%2d)  %lld/%lld\n", i, s.e[i][0], s.e[i][1],
                s.e[i][2], static_cast<long long>(s.weight_exact[i].num),
                static_cast<long long>(s.weight_exact[i].den));
  }
  const limitlbm::QuadratureReport q = limitlbm::verify_quadrature(s);
  for (int order = 0; order < 5; ++order) {
    std::printf("  order %d moment deviation %.3e\n", order,
                q.max_deviation[order]);
  }
  const bool ok = q.passes(1e-14);
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? limitlbm::kExitPass : limitlbm::kExitThresholdFail;
}

int Run(const std::string &path) {
  limitlbm::ExperimentConfig config;
  try {
    config = limitlbm::load_config(path);
    limitlbm::apply_worker_override(config);
  } catch (const limitlbm::ConfigError &e) {
    std::cerr << path << ": " << e.what() << '\n';
    return limitlbm::kExitConfigError;
  }
  try {
    return limitlbm::run_experiment(config, std::cout);
  } catch (const limitlbm::BlowUp &e) {
    std::cerr << "blow-up: " << e.what() << '\n';
    return limitlbm::kExitBlowUp;
  } catch (const limitlbm::DegenerateDensity &e) {
    std::cerr << "blow-up: " << e.what() << '\n';
    return limitlbm::kExitBlowUp;
  } catch (const limitlbm::IoError &e) {
    std::cerr << e.what() << '\n';
    return limitlbm::kExitConfigError;
  } catch (const std::invalid_argument &e) {
    // Domain and dimension errors that slipped past config validation.
    std::cerr << e.what() << '\n';
    return limitlbm::kExitConfigError;
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Lattice Boltzmann limit-consistency harness"};
  app.require_subcommand(1);

  std::string config_path;
  auto *run = app.add_subcommand("run", "run the experiment in a config file");
  run->add_option("config", config_path, "config path")->required();

  std::string stencil_name;
  auto *check =
      app.add_subcommand("check-stencil", "print a stencil and its moments");
  check->add_option("stencil", stencil_name, "d2q9 or d3q19")
      ->required()
      ->check(CLI::IsMember({"d2q9", "d3q19"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : limitlbm::kExitConfigError;
  }

  try {
    if (*run) return Run(config_path);
    return CheckStencil(stencil_name);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return limitlbm::kExitConfigError;
  }
}
