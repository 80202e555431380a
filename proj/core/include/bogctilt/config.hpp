#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bogctilt/laurent.hpp"

namespace bogctilt {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One run of the suite runner: which suites, on which symbol/tilts, at
/// which sizes and tolerances. Parsed strictly: unknown keys are errors.
struct SuiteConfig {
  std::vector<std::string> suites;
  SymbolSpec symbol = SymbolSpec::exponential({0.3});
  bool has_tilts = false;
  std::vector<std::vector<cplx>> tilt_xi;     // z^0, z^1, ...
  std::vector<std::vector<cplx>> tilt_theta;  // z^0, z^{-1}, ...
  std::vector<int> n_list = {1, 2, 3, 4, 5, 6};
  int m_trunc = 128;
  int half_width = 256;
  double rel_tol = 1e-8;
  double flow_tol = 1e-6;
  std::uint64_t seed = 0;
  std::string out_path;
};

SuiteConfig config_parse(const std::string& path);
SuiteConfig config_parse_text(const std::string& json_text);

}  // namespace bogctilt
