#ifndef LIMITLBM_REPORT_IO_HPP_
#define LIMITLBM_REPORT_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "limitlbm/consistency.hpp"

namespace limitlbm {

// One parsed row of a report CSV.
struct ReportRow {
  std::string case_name;
  int n = 0;
  double h = 0.0;
  std::string norm;
  std::string value;  // number, or "unstable"
  std::string eoc_vs_prev;
  bool operator==(const ReportRow &) const = default;
};

// Rows grouped by norm (in norm_names() order), resolutions ascending within
// each norm. Numbers carry 17 significant digits.
std::vector<ReportRow> report_rows(const ConsistencyReport &report);

// Header `case,N,h,norm,value,eoc_vs_prev`. Throws IoError naming the path.
void write_report(const ConsistencyReport &report,
                  const std::filesystem::path &path);

// Inverse of write_report. Metadata that the CSV does not carry (nu, t_end,
// stencil, init) is left at its default.
ConsistencyReport read_report(const std::filesystem::path &path);

// Header `case,k,h,limsup_estimate,verdict`.
void write_limsup(const LimsupResult &result,
                  const std::filesystem::path &path);

// Header `case,N,h,relative_sup_error,eoc_vs_prev,sign_agreement,sign_nodes`.
void write_stress(const StressReport &report,
                  const std::filesystem::path &path);

std::string format_double(double v);

}  // namespace limitlbm

#endif  // LIMITLBM_REPORT_IO_HPP_
