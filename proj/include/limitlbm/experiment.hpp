#ifndef LIMITLBM_EXPERIMENT_HPP_
#define LIMITLBM_EXPERIMENT_HPP_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "limitlbm/grid.hpp"

namespace limitlbm {

enum class StudyKind { kConvergence, kLimsup, kStress, kSingleRun };

// Pass/fail criteria of a run. Unset entries are not checked.
struct Thresholds {
  std::string norm = "L2";          // norm the convergence checks look at
  std::optional<double> min_eoc;    // finest pair
  std::optional<double> max_eoc;    // finest pair
  std::optional<double> max_error;  // finest resolution
  std::optional<std::string> expect_verdict;  // limsup: bounded / unbounded
  std::optional<double> min_slope;            // limsup residual slope
  std::optional<bool> require_decreasing;     // stress error over N
  std::optional<double> min_sign_agreement;   // stress, every resolution
};

struct ExperimentConfig {
  std::string case_name;
  std::string stencil;
  std::vector<int> n_list;
  double nu = 0.0;
  double velocity = 0.0;  // U, or the shear-wave amplitude
  double length = 1.0;
  double t_end = 0.0;     // snapshot time for the stress study
  InitMode init = InitMode::kEquilibrium;
  StudyKind study = StudyKind::kConvergence;
  std::filesystem::path output_dir;
  int limsup_order = 2;
  double limsup_slack = 0.2;
  int worker_count = 1;
  Thresholds thresholds;
};

// Parses the `key = value` format. Lines hold one assignment, a `[section]`
// header or a `#` comment. Keys outside `[thresholds]` describe the
// experiment. Throws ConfigError carrying the offending line.
//
// Defaults: L = 1, U = 0.05 N_min / L (lattice Mach number 0.05 on the
// coarsest grid), t_end = 0.2 L^2 / (4 pi^2 nu), init = equilibrium,
// limsup_order = 2, limsup_slack = 0.2, worker_count = 1.
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::filesystem::path &path);

// Replaces worker_count by the value of LIMITLBM_WORKERS when it is set.
// Throws ConfigError if the variable is not a positive integer.
void apply_worker_override(ExperimentConfig &config);

enum ExitCode : int {
  kExitPass = 0,
  kExitThresholdFail = 1,
  kExitConfigError = 2,
  kExitBlowUp = 3,
};

// Runs the study, writes its CSV and summary.txt into output_dir and returns
// the exit code. Progress and the summary go to log.
int run_experiment(const ExperimentConfig &config, std::ostream &log);

}  // namespace limitlbm

#endif  // LIMITLBM_EXPERIMENT_HPP_
