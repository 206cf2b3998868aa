#include "limitlbm/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "limitlbm/errors.hpp"

namespace limitlbm {

namespace {

constexpr const char *kReportHeader = "case,N,h,norm,value,eoc_vs_prev";

std::ofstream OpenForWrite(const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void Finish(std::ofstream &out, const std::filesystem::path &path) {
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

std::vector<std::string> SplitCsv(const std::string &line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double ParseDouble(const std::string &s, const std::filesystem::path &path,
                   int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception &) {
  }
  throw IoError(path.string() + ":" + std::to_string(line) +
                ": not a number: '" + s + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<ReportRow> report_rows(const ConsistencyReport &report) {
  std::vector<ReportRow> rows;
  for (const auto &norm : report.norm_names()) {
    const auto errors = report.errors(norm);
    const auto orders = report.eoc(norm);
    for (std::size_t j = 0; j < report.resolutions.size(); ++j) {
      const auto &res = report.resolutions[j];
      ReportRow row;
      row.case_name = report.case_name;
      row.n = res.n;
      row.h = res.h;
      row.norm = norm;
      row.value = res.stable ? format_double(errors[j]) : "unstable";
      row.eoc_vs_prev = orders[j].str();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_report(const ConsistencyReport &report,
                  const std::filesystem::path &path) {
  auto out = OpenForWrite(path);
  out << kReportHeader << '\n';
  for (const auto &row : report_rows(report)) {
    out << row.case_name << ',' << row.n << ',' << format_double(row.h) << ','
        << row.norm << ',' << row.value << ',' << row.eoc_vs_prev << '\n';
  }
  Finish(out, path);
}

ConsistencyReport read_report(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kReportHeader) {
    throw IoError(path.string() + ": missing report header");
  }
  ConsistencyReport report;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = SplitCsv(line);
    if (fields.size() != 6) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": expected 6 fields");
    }
    report.case_name = fields[0];
    if (std::find(report.norms.begin(), report.norms.end(), fields[3]) ==
        report.norms.end()) {
      report.norms.push_back(fields[3]);
    }
    const int n = static_cast<int>(ParseDouble(fields[1], path, line_no));
    const double h = ParseDouble(fields[2], path, line_no);
    Resolution *res = nullptr;
    for (auto &r : report.resolutions) {
      if (r.n == n) res = &r;
    }
    if (res == nullptr) {
      report.resolutions.push_back({n, h, true, {}});
      res = &report.resolutions.back();
    }
    if (fields[4] == "unstable") {
      res->stable = false;
    } else {
      res->errors.push_back({fields[3], ParseDouble(fields[4], path, line_no)});
    }
  }
  return report;
}

void write_limsup(const LimsupResult &result,
                  const std::filesystem::path &path) {
  auto out = OpenForWrite(path);
  out << "case,k,h,limsup_estimate,verdict\n";
  for (std::size_t j = 0; j < result.hs.size(); ++j) {
    out << result.case_name << ',' << result.order << ','
        << format_double(result.hs[j]) << ','
        << format_double(result.estimates[j]) << ',' << result.verdict()
        << '\n';
  }
  Finish(out, path);
}

void write_stress(const StressReport &report,
                  const std::filesystem::path &path) {
  auto out = OpenForWrite(path);
  out << "case,N,h,relative_sup_error,eoc_vs_prev,sign_agreement,sign_nodes\n";
  const auto orders = report.eoc();
  for (std::size_t j = 0; j < report.resolutions.size(); ++j) {
    const auto &r = report.resolutions[j];
    out << report.case_name << ',' << r.n << ',' << format_double(r.h) << ','
        << (r.stable ? format_double(r.relative_sup_error) : "unstable") << ','
        << orders[j].str() << ',' << format_double(r.sign_agreement) << ','
        << r.sign_nodes << '\n';
  }
  Finish(out, path);
}

}  // namespace limitlbm
