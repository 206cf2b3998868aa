#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "catch_amalgamated.hpp"
#include "limitlbm/errors.hpp"
#include "limitlbm/experiment.hpp"
#include "limitlbm/report_io.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;
using namespace limitlbm;

namespace {

std::filesystem::path scratch(const std::string &name) {
  const char *base = std::getenv("LIMITLBM_TEST_TMP");
  std::filesystem::path dir = base ? std::filesystem::path(base)
                                   : std::filesystem::temp_directory_path() /
                                         "limitlbm_experiment_test";
  dir /= name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char *kMinimal =
    "case = taylor_green_2d\n"
    "stencil = d2q9\n"
    "N_list = 16, 32\n"
    "nu = 0.02\n"
    "study = convergence\n"
    "output_dir = out\n";

// Line of the ConfigError thrown by parse_config, or -1.
int error_line(const std::string &text) {
  try {
    parse_config(text);
  } catch (const ConfigError &e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("minimal config gets defaults", "[experiment]") {
  const ExperimentConfig c = parse_config(kMinimal);
  CHECK(c.case_name == "taylor_green_2d");
  CHECK(c.stencil == "d2q9");
  CHECK(c.n_list == std::vector<int>{16, 32});
  CHECK(c.study == StudyKind::kConvergence);
  CHECK(c.length == 1.0);
  // Ma = U h = 0.05 on the coarsest grid.
  CHECK_THAT(c.velocity * (c.length / 16), WithinRel(0.05, 1e-15));
  CHECK_THAT(c.t_end, WithinRel(0.2 / (4.0 * std::numbers::pi * std::numbers::pi * 0.02), 1e-15));
  CHECK(c.init == InitMode::kEquilibrium);
  CHECK(c.limsup_order == 2);
  CHECK(c.worker_count == 1);
  CHECK(c.output_dir == "out");
}

TEST_CASE("full config with sections and comments", "[experiment]") {
  const ExperimentConfig c = parse_config(
      "# shear wave\n"
      "[experiment]\n"
      "case = shear_wave_3d   # trailing comment\n"
      "stencil = d3q19\n"
      "N_list = 8 16 32\n"
      "nu = 0.05\n"
      "U = 0.05\n"
      "L = 2\n"
      "t_end = 0.5\n"
      "init = chapman_enskog\n"
      "study = stress\n"
      "output_dir = results/sw\n"
      "limsup_order = 3\n"
      "limsup_slack = 0.1\n"
      "worker_count = 4\n"
      "\n"
      "[thresholds]\n"
      "norm = nu_eff_rel\n"
      "min_eoc = 1.7\n"
      "max_eoc = 2.3\n"
      "require_decreasing = true\n"
      "min_sign_agreement = 0.95\n");
  CHECK(c.case_name == "shear_wave_3d");
  CHECK(c.n_list == std::vector<int>{8, 16, 32});
  CHECK(c.velocity == 0.05);
  CHECK(c.length == 2.0);
  CHECK(c.t_end == 0.5);
  CHECK(c.init == InitMode::kChapmanEnskog);
  CHECK(c.study == StudyKind::kStress);
  CHECK(c.limsup_order == 3);
  CHECK(c.limsup_slack == 0.1);
  CHECK(c.worker_count == 4);
  CHECK(c.thresholds.norm == "nu_eff_rel");
  CHECK(c.thresholds.min_eoc == 1.7);
  CHECK(c.thresholds.max_eoc == 2.3);
  CHECK(c.thresholds.require_decreasing == true);
  CHECK(c.thresholds.min_sign_agreement == 0.95);
  CHECK_FALSE(c.thresholds.expect_verdict.has_value());
}

TEST_CASE("config errors carry line numbers", "[experiment]") {
  const std::string base = kMinimal;
  SECTION("negative viscosity names the key") {
    const std::string text =
        "case = taylor_green_2d\nstencil = d2q9\nN_list = 8\nnu = -1\n"
        "study = convergence\noutput_dir = x\n";
    CHECK(error_line(text) == 4);
    CHECK_THROWS_WITH(parse_config(text), ContainsSubstring("nu"));
  }
  SECTION("dimension mismatch") {
    const std::string text =
        "case = taylor_green_2d\nstencil = d3q19\nN_list = 8\nnu = 0.1\n"
        "study = convergence\noutput_dir = x\n";
    CHECK(error_line(text) == 2);
    CHECK_THROWS_WITH(parse_config(text), ContainsSubstring("dimension mismatch"));
  }
  SECTION("empty N_list") {
    const std::string text =
        "case = uniform\nstencil = d2q9\nN_list =\nnu = 0.1\n"
        "study = convergence\noutput_dir = x\n";
    CHECK(error_line(text) == 3);
  }
  SECTION("unknown key") {
    CHECK(error_line(base + "colour = blue\n") == 7);
    CHECK(error_line(base + "[thresholds]\nnu = 1\n") == 8);
  }
  SECTION("missing key") {
    const std::string text = "case = uniform\nstencil = d2q9\nN_list = 8\n";
    CHECK_THROWS_WITH(parse_config(text), ContainsSubstring("missing required key 'nu'"));
    CHECK(error_line(text) == 3);
  }
  SECTION("other malformed input") {
    CHECK(error_line(base + "nu = 0.3\n") == 7);                 // duplicate
    CHECK(error_line(base + "[physics]\n") == 7);                // section
    CHECK(error_line(base + "just words\n") == 7);               // no '='
    CHECK(error_line(base + "U = 0\n") == 7);                    // non-positive
    CHECK(error_line(base + "L = abc\n") == 7);                  // not a number
    CHECK(error_line(base + "init = hot\n") == 7);
    CHECK(error_line(base + "worker_count = 0\n") == 7);
    CHECK(error_line("case = x\nstencil = d2q9\nN_list = 8\nnu = 1\n"
                     "study = convergence\noutput_dir = o\n") == 1);
    CHECK(error_line("case = uniform\nstencil = d2q9\nN_list = 16 8\nnu = 1\n"
                     "study = convergence\noutput_dir = o\n") == 3);
    CHECK(error_line("case = uniform\nstencil = d2q9\nN_list = 2\nnu = 1\n"
                     "study = convergence\noutput_dir = o\n") == 3);
    CHECK(error_line("case = uniform\nstencil = d2q9\nN_list = 8 16\nnu = 1\n"
                     "study = limsup\noutput_dir = o\n") == 3);
  }
}

TEST_CASE("worker override from the environment", "[experiment]") {
  ExperimentConfig c = parse_config(kMinimal);
  ::setenv("LIMITLBM_WORKERS", "6", 1);
  apply_worker_override(c);
  CHECK(c.worker_count == 6);
  ::setenv("LIMITLBM_WORKERS", "zero", 1);
  CHECK_THROWS_AS(apply_worker_override(c), ConfigError);
  ::unsetenv("LIMITLBM_WORKERS");
  c.worker_count = 2;
  apply_worker_override(c);
  CHECK(c.worker_count == 2);
}

TEST_CASE("report CSV", "[experiment]") {
  ConsistencyReport report;
  report.case_name = "taylor_green_2d";
  report.resolutions = {
      {16, 0.0625, true, {{"L2", 9.4e-3}, {"sup", 0.1 / 3.0}}},
      {32, 0.03125, true, {{"L2", 2.35e-3}, {"sup", 1.0 / 7.0}}},
      {64, 0.015625, false, {}},
      {128, 0.0078125, true, {{"L2", 1.4e-4}, {"sup", 2e-300}}},
  };
  const auto dir = scratch("report");
  const auto path = dir / "report.csv";
  write_report(report, path);

  std::ifstream in(path);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "case,N,h,norm,value,eoc_vs_prev");
  CHECK(first == "taylor_green_2d,16,0.0625,L2,0.0094000000000000004,NA");

  const auto rows = report_rows(report);
  REQUIRE(rows.size() == 8u);
  CHECK(rows[1].eoc_vs_prev == "2");
  CHECK(rows[2].value == "unstable");
  CHECK(rows[2].eoc_vs_prev == "unstable");
  CHECK(rows[3].eoc_vs_prev == "NA");
  CHECK(rows[4].norm == "sup");

  const ConsistencyReport back = read_report(path);
  CHECK(back.case_name == report.case_name);
  CHECK(back.norms == std::vector<std::string>{"L2", "sup"});
  CHECK(back.resolutions == report.resolutions);
  CHECK(report_rows(back) == rows);

  CHECK_THROWS_AS(write_report(report, dir / "no" / "such" / "dir.csv"), IoError);
  CHECK_THROWS_AS(read_report(dir / "missing.csv"), IoError);
}

TEST_CASE("limsup CSV", "[experiment]") {
  LimsupResult r;
  r.case_name = "taylor_green_2d";
  r.order = 2;
  r.hs = {0.0625, 0.03125, 0.015625};
  r.residual_sup = {1.0, 0.25, 0.0625};
  r.estimates = {256.0, 256.0, 256.0};
  r.bounded = true;
  const auto path = scratch("limsup") / "limsup.csv";
  write_limsup(r, path);
  CHECK(slurp(path) ==
        "case,k,h,limsup_estimate,verdict\n"
        "taylor_green_2d,2,0.0625,256,bounded\n"
        "taylor_green_2d,2,0.03125,256,bounded\n"
        "taylor_green_2d,2,0.015625,256,bounded\n");
}

TEST_CASE("running experiments", "[experiment]") {
  const auto dir = scratch("runs");
  auto config_for = [&](const std::string &name, const std::string &body) {
    ExperimentConfig c = parse_config(body + "output_dir = " + (dir / name).string() + "\n");
    return c;
  };
  std::ostringstream log;
  SECTION("convergence study passes its threshold") {
    const auto c = config_for("conv",
                              "case = taylor_green_2d\nstencil = d2q9\nN_list = 8 16 32\n"
                              "nu = 0.05\nU = 0.4\nt_end = 0.05\nstudy = convergence\n"
                              "[thresholds]\nmin_eoc = 1.5\n[experiment]\n");
    CHECK(run_experiment(c, log) == kExitPass);
    CHECK(std::filesystem::exists(dir / "conv" / "report.csv"));
    const std::string summary = slurp(dir / "conv" / "summary.txt");
    CHECK_THAT(summary, ContainsSubstring("PASS min_eoc"));
    CHECK_THAT(summary, ContainsSubstring("RESULT PASS"));
  }
  SECTION("a failed threshold is named") {
    const auto c = config_for("fail",
                              "case = taylor_green_2d\nstencil = d2q9\nN_list = 8 16\n"
                              "nu = 0.05\nt_end = 0.02\nstudy = convergence\n"
                              "[thresholds]\nmax_error = 1e-12\nmin_eoc = 0\n[experiment]\n");
    CHECK(run_experiment(c, log) == kExitThresholdFail);
    CHECK_THAT(slurp(dir / "fail" / "summary.txt"),
               ContainsSubstring("RESULT FAIL: threshold max_error failed"));
  }
  SECTION("limsup writes the verdict") {
    const auto c = config_for("limsup",
                              "case = taylor_green_2d\nstencil = d2q9\nN_list = 16 32 64\n"
                              "nu = 0.02\nstudy = limsup\nlimsup_order = 2\n"
                              "[thresholds]\nexpect_verdict = bounded\nmin_slope = 1.8\n"
                              "[experiment]\n");
    CHECK(run_experiment(c, log) == kExitPass);
    CHECK_THAT(slurp(dir / "limsup" / "limsup.csv"), ContainsSubstring(",2,0.015625,"));
    CHECK_THAT(slurp(dir / "limsup" / "limsup.csv"), ContainsSubstring("bounded"));
  }
  SECTION("uniform flow limsup is exact") {
    const auto c = config_for("uniform",
                              "case = uniform\nstencil = d3q19\nN_list = 4 8 16\n"
                              "nu = 0.1\nstudy = limsup\n"
                              "[thresholds]\nexpect_verdict = bounded\nmin_slope = 2\n"
                              "[experiment]\n");
    CHECK(run_experiment(c, log) == kExitPass);
  }
  SECTION("stress study") {
    const auto c = config_for("stress",
                              "case = taylor_green_2d\nstencil = d2q9\nN_list = 16 32\n"
                              "nu = 0.02\nt_end = 0.0633\nstudy = stress\n"
                              "[thresholds]\nrequire_decreasing = true\n"
                              "min_sign_agreement = 0.95\n[experiment]\n");
    CHECK(run_experiment(c, log) == kExitPass);
    std::ifstream in(dir / "stress" / "stress.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "case,N,h,relative_sup_error,eoc_vs_prev,sign_agreement,sign_nodes");
  }
  SECTION("every resolution unstable") {
    const auto c = config_for("blowup",
                              "case = taylor_green_2d\nstencil = d2q9\nN_list = 8\n"
                              "nu = 0.0001\nU = 60\nt_end = 0.05\nstudy = single_run\n");
    CHECK(run_experiment(c, log) == kExitBlowUp);
    CHECK_THAT(slurp(dir / "blowup" / "report.csv"), ContainsSubstring("unstable"));
  }
  SECTION("reports do not depend on the worker count") {
    const std::string body =
        "case = shear_wave_3d\nstencil = d3q19\nN_list = 6 12\nnu = 0.1\n"
        "t_end = 0.05\nstudy = convergence\n";
    auto one = config_for("w1", body);
    auto four = config_for("w4", body);
    four.worker_count = 4;
    REQUIRE(run_experiment(one, log) == kExitPass);
    REQUIRE(run_experiment(four, log) == kExitPass);
    CHECK(slurp(dir / "w1" / "report.csv") == slurp(dir / "w4" / "report.csv"));
    CHECK(slurp(dir / "w1" / "summary.txt") == slurp(dir / "w4" / "summary.txt"));
  }
}
