#include "limitlbm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "limitlbm/consistency.hpp"
#include "limitlbm/errors.hpp"
#include "limitlbm/lattice.hpp"
#include "limitlbm/manufactured.hpp"
#include "limitlbm/report_io.hpp"

namespace limitlbm {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

const char *const kExperimentKeys[] = {
    "case",    "stencil",      "N_list",       "nu",          "U",
    "L",       "t_end",        "init",         "study",       "output_dir",
    "limsup_order", "limsup_slack", "worker_count"};
const char *const kThresholdKeys[] = {
    "norm",         "min_eoc",   "max_eoc",
    "max_error",    "expect_verdict", "min_slope",
    "require_decreasing", "min_sign_agreement"};

std::string Trim(const std::string &s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

template <std::size_t N>
bool Contains(const char *const (&keys)[N], const std::string &key) {
  for (const char *k : keys) {
    if (key == k) return true;
  }
  return false;
}

double ParseNumber(const std::string &key, const Entry &e) {
  try {
    std::size_t used = 0;
    const double v = std::stod(e.value, &used);
    if (used == e.value.size() && std::isfinite(v)) return v;
  } catch (const std::exception &) {
  }
  throw ConfigError(key + ": not a number: '" + e.value + "'", e.line);
}

double ParsePositive(const std::string &key, const Entry &e) {
  const double v = ParseNumber(key, e);
  if (!(v > 0.0)) {
    throw ConfigError(key + " must be positive, got " + e.value, e.line);
  }
  return v;
}

int ParseInt(const std::string &key, const std::string &text, int line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used == text.size() && v >= INT32_MIN && v <= INT32_MAX) {
      return static_cast<int>(v);
    }
  } catch (const std::exception &) {
  }
  throw ConfigError(key + ": not an integer: '" + text + "'", line);
}

bool ParseBool(const std::string &key, const Entry &e) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + e.value + "'",
                    e.line);
}

std::vector<int> ParseNList(const Entry &e) {
  std::string text = e.value;
  for (char &c : text) {
    if (c == ',') c = ' ';
  }
  std::istringstream ss(text);
  std::vector<int> ns;
  std::string item;
  while (ss >> item) {
    const int n = ParseInt("N_list", item, e.line);
    if (n < 4) {
      throw ConfigError("N_list entries must be at least 4, got " + item,
                        e.line);
    }
    if (!ns.empty() && n <= ns.back()) {
      throw ConfigError("N_list must be strictly ascending", e.line);
    }
    ns.push_back(n);
  }
  if (ns.empty()) throw ConfigError("N_list is empty", e.line);
  return ns;
}

int CaseDimension(const std::string &name) {
  if (name == "taylor_green_2d") return 2;
  if (name == "shear_wave_3d") return 3;
  return 0;  // uniform follows the stencil
}

AnalyticFlow MakeFlow(const ExperimentConfig &c, int d) {
  if (c.case_name == "taylor_green_2d") {
    return taylor_green_2d(c.velocity, c.length, c.nu);
  }
  if (c.case_name == "shear_wave_3d") {
    return shear_wave(c.velocity, 2.0 * std::numbers::pi / c.length, c.nu, 3);
  }
  return uniform_flow(d, 1.0, Vec{c.velocity, 0.0, 0.0}, c.length);
}

const char *StudyName(StudyKind k) {
  switch (k) {
    case StudyKind::kConvergence:
      return "convergence";
    case StudyKind::kLimsup:
      return "limsup";
    case StudyKind::kStress:
      return "stress";
    case StudyKind::kSingleRun:
      return "single_run";
  }
  return "?";
}

// Collects threshold outcomes; the first failure decides the message.
class Verdicts {
 public:
  void Check(const std::string &name, bool ok, const std::string &detail) {
    lines_.push_back(std::string(ok ? "PASS " : "FAIL ") + name + ": " +
                     detail);
    if (!ok && first_failure_.empty()) first_failure_ = name;
  }
  bool passed() const { return first_failure_.empty(); }
  const std::string &first_failure() const { return first_failure_; }
  const std::vector<std::string> &lines() const { return lines_; }

 private:
  std::vector<std::string> lines_;
  std::string first_failure_;
};

// Finest-pair order checks shared by the convergence and stress studies.
void CheckOrder(const Thresholds &th, const EocValue &finest,
                const std::string &label, Verdicts &v) {
  const bool exact = finest.kind == EocValue::Kind::kExact;
  const bool has = finest.kind == EocValue::Kind::kValue;
  if (th.min_eoc) {
    v.Check("min_eoc", exact || (has && finest.value >= *th.min_eoc),
            label + " = " + finest.str() + ", need >= " +
                format_double(*th.min_eoc));
  }
  if (th.max_eoc) {
    v.Check("max_eoc", exact || (has && finest.value <= *th.max_eoc),
            label + " = " + finest.str() + ", need <= " +
                format_double(*th.max_eoc));
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string &text) {
  std::map<std::string, Entry> experiment, thresholds;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool in_thresholds = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content =
        Trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') {
        throw ConfigError("malformed section header '" + content + "'", line);
      }
      const std::string section = Trim(content.substr(1, content.size() - 2));
      if (section == "thresholds") {
        in_thresholds = true;
      } else if (section == "experiment") {
        in_thresholds = false;
      } else {
        throw ConfigError("unknown section [" + section + "]", line);
      }
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value', got '" + content + "'", line);
    }
    const std::string key = Trim(content.substr(0, eq));
    const std::string value = Trim(content.substr(eq + 1));
    const bool known = in_thresholds ? Contains(kThresholdKeys, key)
                                     : Contains(kExperimentKeys, key);
    if (!known) {
      throw ConfigError(std::string("unknown key '") + key + "'" +
                            (in_thresholds ? " in [thresholds]" : ""),
                        line);
    }
    auto &target = in_thresholds ? thresholds : experiment;
    if (target.count(key)) {
      throw ConfigError("duplicate key '" + key + "' (first on line " +
                            std::to_string(target[key].line) + ")",
                        line);
    }
    target[key] = {value, line};
  }
  const int last_line = line;

  for (const char *key :
       {"case", "stencil", "N_list", "nu", "study", "output_dir"}) {
    if (!experiment.count(key)) {
      throw ConfigError(std::string("missing required key '") + key + "'",
                        last_line);
    }
  }

  ExperimentConfig c;
  const Entry &case_e = experiment["case"];
  c.case_name = case_e.value;
  if (c.case_name != "taylor_green_2d" && c.case_name != "shear_wave_3d" &&
      c.case_name != "uniform") {
    throw ConfigError("unknown case '" + c.case_name + "'", case_e.line);
  }
  const Entry &stencil_e = experiment["stencil"];
  c.stencil = stencil_e.value;
  if (c.stencil != "d2q9" && c.stencil != "d3q19") {
    throw ConfigError("unknown stencil '" + c.stencil + "'", stencil_e.line);
  }
  const int case_d = CaseDimension(c.case_name);
  const int stencil_d = c.stencil == "d2q9" ? 2 : 3;
  if (case_d != 0 && case_d != stencil_d) {
    throw ConfigError("dimension mismatch: case " + c.case_name + " is " +
                          std::to_string(case_d) + "D but stencil " +
                          c.stencil + " is " + std::to_string(stencil_d) +
                          "D",
                      std::max(case_e.line, stencil_e.line));
  }
  c.n_list = ParseNList(experiment["N_list"]);
  c.nu = ParsePositive("nu", experiment["nu"]);

  const Entry &study_e = experiment["study"];
  if (study_e.value == "convergence") {
    c.study = StudyKind::kConvergence;
  } else if (study_e.value == "limsup") {
    c.study = StudyKind::kLimsup;
  } else if (study_e.value == "stress") {
    c.study = StudyKind::kStress;
  } else if (study_e.value == "single_run") {
    c.study = StudyKind::kSingleRun;
  } else {
    throw ConfigError("unknown study '" + study_e.value + "'", study_e.line);
  }
  if (c.study == StudyKind::kSingleRun && c.n_list.size() != 1) {
    throw ConfigError("single_run takes exactly one N",
                      experiment["N_list"].line);
  }
  if (c.study == StudyKind::kLimsup && c.n_list.size() < 3) {
    throw ConfigError("limsup needs at least 3 resolutions",
                      experiment["N_list"].line);
  }
  if (experiment["output_dir"].value.empty()) {
    throw ConfigError("output_dir is empty", experiment["output_dir"].line);
  }
  c.output_dir = experiment["output_dir"].value;

  if (experiment.count("L")) c.length = ParsePositive("L", experiment["L"]);
  if (experiment.count("U")) {
    c.velocity = ParsePositive("U", experiment["U"]);
  } else {
    c.velocity = 0.05 * c.n_list.front() / c.length;
  }
  if (experiment.count("t_end")) {
    c.t_end = ParsePositive("t_end", experiment["t_end"]);
  } else {
    c.t_end = 0.2 * c.length * c.length /
              (4.0 * std::numbers::pi * std::numbers::pi * c.nu);
  }
  if (experiment.count("init")) {
    const Entry &e = experiment["init"];
    if (e.value == "equilibrium") {
      c.init = InitMode::kEquilibrium;
    } else if (e.value == "chapman_enskog") {
      c.init = InitMode::kChapmanEnskog;
    } else {
      throw ConfigError("unknown init '" + e.value + "'", e.line);
    }
  }
  if (experiment.count("limsup_order")) {
    const Entry &e = experiment["limsup_order"];
    c.limsup_order = ParseInt("limsup_order", e.value, e.line);
    if (c.limsup_order < 0) {
      throw ConfigError("limsup_order must be non-negative", e.line);
    }
  }
  if (experiment.count("limsup_slack")) {
    const Entry &e = experiment["limsup_slack"];
    c.limsup_slack = ParseNumber("limsup_slack", e);
    if (c.limsup_slack < 0.0) {
      throw ConfigError("limsup_slack must be non-negative", e.line);
    }
  }
  if (experiment.count("worker_count")) {
    const Entry &e = experiment["worker_count"];
    c.worker_count = ParseInt("worker_count", e.value, e.line);
    if (c.worker_count < 1) {
      throw ConfigError("worker_count must be positive", e.line);
    }
  }

  Thresholds &th = c.thresholds;
  if (thresholds.count("norm")) th.norm = thresholds["norm"].value;
  if (thresholds.count("min_eoc")) {
    th.min_eoc = ParseNumber("min_eoc", thresholds["min_eoc"]);
  }
  if (thresholds.count("max_eoc")) {
    th.max_eoc = ParseNumber("max_eoc", thresholds["max_eoc"]);
  }
  if (thresholds.count("max_error")) {
    th.max_error = ParsePositive("max_error", thresholds["max_error"]);
  }
  if (thresholds.count("expect_verdict")) {
    const Entry &e = thresholds["expect_verdict"];
    if (e.value != "bounded" && e.value != "unbounded") {
      throw ConfigError("expect_verdict must be bounded or unbounded", e.line);
    }
    th.expect_verdict = e.value;
  }
  if (thresholds.count("min_slope")) {
    th.min_slope = ParseNumber("min_slope", thresholds["min_slope"]);
  }
  if (thresholds.count("require_decreasing")) {
    th.require_decreasing =
        ParseBool("require_decreasing", thresholds["require_decreasing"]);
  }
  if (thresholds.count("min_sign_agreement")) {
    th.min_sign_agreement =
        ParseNumber("min_sign_agreement", thresholds["min_sign_agreement"]);
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string(), 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_worker_override(ExperimentConfig &config) {
  const char *env = std::getenv("LIMITLBM_WORKERS");
  if (env == nullptr) return;
  const int workers = ParseInt("LIMITLBM_WORKERS", env, 0);
  if (workers < 1) throw ConfigError("LIMITLBM_WORKERS must be positive", 0);
  config.worker_count = workers;
}

int run_experiment(const ExperimentConfig &config, std::ostream &log) {
  const Stencil stencil = stencil_by_name(config.stencil);
  const AnalyticFlow flow = MakeFlow(config, stencil.d);
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw IoError("cannot create " + config.output_dir.string() + ": " +
                  ec.message());
  }

  std::ostringstream summary;
  summary << "case " << config.case_name << "\nstencil " << config.stencil
          << "\nstudy " << StudyName(config.study) << "\nN_list";
  for (int n : config.n_list) summary << ' ' << n;
  summary << "\nnu " << format_double(config.nu) << "\nU "
          << format_double(config.velocity) << "\nL "
          << format_double(config.length) << "\nt_end "
          << format_double(config.t_end) << "\ninit "
          << (config.init == InitMode::kEquilibrium ? "equilibrium"
                                                    : "chapman_enskog")
          << "\n\n";

  StudyOptions options;
  options.init = config.init;
  options.workers = config.worker_count;
  const Thresholds &th = config.thresholds;
  Verdicts verdicts;
  bool all_unstable = false;

  switch (config.study) {
    case StudyKind::kConvergence:
    case StudyKind::kSingleRun: {
      const ConsistencyReport report = convergence_study(
          flow, stencil, config.n_list, config.nu, config.t_end, options);
      write_report(report, config.output_dir / "report.csv");
      all_unstable = true;
      for (const auto &r : report.resolutions) {
        all_unstable = all_unstable && !r.stable;
      }
      for (const auto &row : report_rows(report)) {
        summary << "N=" << row.n << ' ' << row.norm << ' ' << row.value
                << " eoc " << row.eoc_vs_prev << '\n';
      }
      const auto names = report.norm_names();
      const bool has_norm =
          std::find(names.begin(), names.end(), th.norm) != names.end();
      if ((th.min_eoc || th.max_eoc || th.max_error) && !has_norm) {
        verdicts.Check("norm", false, "no norm named " + th.norm);
        break;
      }
      if (has_norm) {
        CheckOrder(th, report.eoc(th.norm).back(),
                   "finest-pair EOC(" + th.norm + ")", verdicts);
        if (th.max_error) {
          const double e = report.errors(th.norm).back();
          verdicts.Check("max_error", e <= *th.max_error,
                         "finest " + th.norm + " error = " + format_double(e) +
                             ", need <= " + format_double(*th.max_error));
        }
      }
      break;
    }
    case StudyKind::kLimsup: {
      const LimsupResult result =
          limsup_probe(flow, stencil, config.nu, config.limsup_order,
                       config.n_list, 0.0, config.limsup_slack);
      write_limsup(result, config.output_dir / "limsup.csv");
      for (std::size_t j = 0; j < result.hs.size(); ++j) {
        summary << "N=" << result.resolutions[j] << " sup|r| "
                << format_double(result.residual_sup[j]) << " / h^"
                << result.order << " = " << format_double(result.estimates[j])
                << '\n';
      }
      summary << "verdict " << result.verdict() << '\n';
      if (th.expect_verdict) {
        verdicts.Check("expect_verdict", result.verdict() == *th.expect_verdict,
                       "verdict " + result.verdict() + ", expected " +
                           *th.expect_verdict);
      }
      if (th.min_slope) {
        const bool exact = std::all_of(result.residual_sup.begin(),
                                       result.residual_sup.end(),
                                       [](double r) { return r == 0.0; });
        if (exact) {
          verdicts.Check("min_slope", true, "residual exactly zero");
        } else {
          double slope = 0.0;
          bool fitted = true;
          try {
            slope = result.slope();
          } catch (const FitError &) {
            fitted = false;
          }
          verdicts.Check("min_slope", fitted && slope >= *th.min_slope,
                         (fitted ? "residual slope " + format_double(slope)
                                 : std::string("residual slope undefined")) +
                             ", need >= " + format_double(*th.min_slope));
        }
      }
      break;
    }
    case StudyKind::kStress: {
      const StressReport report = stress_study(
          flow, stencil, config.n_list, config.nu, config.t_end, options);
      write_stress(report, config.output_dir / "stress.csv");
      all_unstable = true;
      const auto orders = report.eoc();
      double worst_sign = 1.0;
      for (std::size_t j = 0; j < report.resolutions.size(); ++j) {
        const auto &r = report.resolutions[j];
        all_unstable = all_unstable && !r.stable;
        if (r.stable) worst_sign = std::min(worst_sign, r.sign_agreement);
        summary << "N=" << r.n << " relative sup error "
                << (r.stable ? format_double(r.relative_sup_error)
                             : "unstable")
                << " eoc " << orders[j].str() << " sign agreement "
                << format_double(r.sign_agreement) << " over " << r.sign_nodes
                << " nodes\n";
      }
      CheckOrder(th, orders.back(), "finest-pair EOC", verdicts);
      if (th.require_decreasing && *th.require_decreasing) {
        verdicts.Check("require_decreasing", report.strictly_decreasing(),
                       report.strictly_decreasing()
                           ? "error strictly decreasing"
                           : "error not strictly decreasing");
      }
      if (th.min_sign_agreement) {
        verdicts.Check("min_sign_agreement",
                       worst_sign >= *th.min_sign_agreement,
                       "worst sign agreement " + format_double(worst_sign) +
                           ", need >= " +
                           format_double(*th.min_sign_agreement));
      }
      break;
    }
  }

  int code = kExitPass;
  summary << '\n';
  for (const auto &line : verdicts.lines()) summary << line << '\n';
  if (all_unstable) {
    summary << "RESULT BLOWUP: every resolution was unstable\n";
    code = kExitBlowUp;
  } else if (!verdicts.passed()) {
    summary << "RESULT FAIL: threshold " << verdicts.first_failure()
            << " failed\n";
    code = kExitThresholdFail;
  } else {
    summary << "RESULT PASS\n";
  }

  const auto summary_path = config.output_dir / "summary.txt";
  std::ofstream out(summary_path, std::ios::binary | std::ios::trunc);
  out << summary.str();
  if (!out) throw IoError("cannot write " + summary_path.string());
  log << summary.str();
  return code;
}

}  // namespace limitlbm
