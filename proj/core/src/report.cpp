#include "bogctilt/report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace bogctilt {

namespace {

using nlohmann::json;

double sanitize(double v) { return std::isfinite(v) ? v : 0.0; }

json complex_json(cplx v) { return json::array({sanitize(v.real()), sanitize(v.imag())}); }

}  // namespace

CheckRecord make_check(const std::string& name, cplx lhs, cplx rhs, double tolerance) {
  CheckRecord r;
  r.name = name;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  double scale = std::max(std::abs(lhs), std::abs(rhs));
  r.rel_err = scale > 0.0 ? r.abs_err / scale : r.abs_err;
  r.tolerance = tolerance;
  r.pass = std::isfinite(r.rel_err) && r.rel_err <= tolerance;
  return r;
}

CheckRecord make_check_abs(const std::string& name, double err, double tolerance) {
  CheckRecord r;
  r.name = name;
  r.lhs = err;
  r.rhs = 0.0;
  r.abs_err = err;
  r.rel_err = err;
  r.tolerance = tolerance;
  r.pass = std::isfinite(err) && err <= tolerance;
  return r;
}

bool SuiteReport::passed() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

bool Report::passed() const {
  for (const auto& s : suites)
    if (!s.passed()) return false;
  return true;
}

std::string report_to_json(const Report& report) {
  json root = json::object();
  root["environment"] = {
      {"seed", report.seed},
      {"timestamp", report.timestamp},
      {"version", report.version},
  };
  root["pass"] = report.passed();
  json suites = json::array();
  for (const auto& s : report.suites) {
    json sj = json::object();
    sj["suite"] = s.suite;
    sj["pass"] = s.passed();
    json recs = json::array();
    for (const auto& r : s.records) {
      json rj = json::object();
      rj["name"] = r.name;
      rj["lhs"] = complex_json(r.lhs);
      rj["rhs"] = complex_json(r.rhs);
      rj["abs_err"] = sanitize(r.abs_err);
      rj["rel_err"] = sanitize(r.rel_err);
      rj["tolerance"] = sanitize(r.tolerance);
      rj["pass"] = r.pass;
      if (!r.note.empty()) rj["note"] = r.note;
      recs.push_back(std::move(rj));
    }
    sj["records"] = std::move(recs);
    suites.push_back(std::move(sj));
  }
  root["suites"] = std::move(suites);
  return root.dump(2) + "\n";
}

void report_write(const Report& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report_write: cannot open \"" + path + "\"");
  out << report_to_json(report);
  if (!out) throw std::runtime_error("report_write: write failed for \"" + path + "\"");
}

}  // namespace bogctilt
