#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bogctilt/dense.hpp"

namespace bogctilt {

struct CheckRecord {
  std::string name;
  cplx lhs = 0.0;
  cplx rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;  // degenerate-chart skips, rank spectra, etc.
};

CheckRecord make_check(const std::string& name, cplx lhs, cplx rhs, double tolerance);
CheckRecord make_check_abs(const std::string& name, double err, double tolerance);

struct SuiteReport {
  std::string suite;
  std::vector<CheckRecord> records;
  bool passed() const;
};

struct Report {
  std::vector<SuiteReport> suites;
  std::uint64_t seed = 0;
  std::string version;
  std::string timestamp;
  bool passed() const;
};

/// Canonical JSON: sorted keys, shortest round-trip numbers, ASCII only.
/// Identical inputs serialize to byte-identical text.
std::string report_to_json(const Report& report);
void report_write(const Report& report, const std::string& path);

}  // namespace bogctilt
