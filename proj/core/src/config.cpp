#include "bogctilt/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace bogctilt {

namespace {

using nlohmann::json;

cplx parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return cplx(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return cplx(v[0].get<double>(), v[1].get<double>());
  throw ConfigError("config: " + where + " must be a number or [re, im] pair");
}

std::vector<cplx> parse_complex_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError("config: " + where + " must be an array");
  std::vector<cplx> out;
  for (const auto& e : v) out.push_back(parse_complex(e, where));
  return out;
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key()))
      throw ConfigError("config: unknown key \"" + it.key() + "\" in " + where);
}

SymbolSpec parse_symbol(const json& s) {
  if (!s.is_object()) throw ConfigError("config: symbol must be an object");
  reject_unknown(s, {"type", "times", "plus", "minus"}, "symbol");
  std::string type = s.value("type", "");
  if (type == "exponential") {
    if (!s.contains("times")) throw ConfigError("config: exponential symbol needs \"times\"");
    std::vector<double> times;
    for (const auto& t : s.at("times")) {
      if (!t.is_number()) throw ConfigError("config: symbol.times entries must be numbers");
      times.push_back(t.get<double>());
    }
    return SymbolSpec::exponential(std::move(times));
  }
  if (type == "rational") {
    std::vector<cplx> plus, minus;
    if (s.contains("plus")) plus = parse_complex_list(s.at("plus"), "symbol.plus");
    if (s.contains("minus")) minus = parse_complex_list(s.at("minus"), "symbol.minus");
    for (const cplx& p : plus)
      if (std::abs(p) >= 1.0)
        throw ConfigError("config: rational symbol point with |x| >= 1 (factor must be "
                          "analytic on its disk)");
    for (const cplx& p : minus)
      if (std::abs(p) >= 1.0)
        throw ConfigError("config: rational symbol point with |y| >= 1 (factor must be "
                          "analytic on its disk)");
    return SymbolSpec::rational(std::move(plus), std::move(minus));
  }
  throw ConfigError("config: symbol.type must be \"exponential\" or \"rational\"");
}

}  // namespace

SuiteConfig config_parse_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(root,
                 {"suite", "suites", "symbol", "tilts", "sizes", "tolerances", "seed", "out"},
                 "top level");

  SuiteConfig cfg;
  if (root.contains("suite")) {
    if (!root["suite"].is_string()) throw ConfigError("config: \"suite\" must be a string");
    cfg.suites.push_back(root["suite"].get<std::string>());
  }
  if (root.contains("suites")) {
    if (!root["suites"].is_array()) throw ConfigError("config: \"suites\" must be an array");
    for (const auto& s : root["suites"]) cfg.suites.push_back(s.get<std::string>());
  }
  if (root.contains("symbol")) cfg.symbol = parse_symbol(root["symbol"]);
  if (root.contains("tilts")) {
    const json& t = root["tilts"];
    reject_unknown(t, {"xi", "theta"}, "tilts");
    if (!t.contains("xi") || !t.contains("theta"))
      throw ConfigError("config: tilts need both \"xi\" and \"theta\"");
    for (const auto& row : t["xi"]) cfg.tilt_xi.push_back(parse_complex_list(row, "tilts.xi"));
    for (const auto& row : t["theta"])
      cfg.tilt_theta.push_back(parse_complex_list(row, "tilts.theta"));
    if (cfg.tilt_xi.size() != cfg.tilt_theta.size())
      throw ConfigError("config: tilts.xi and tilts.theta must have equal length");
    cfg.has_tilts = true;
  }
  if (root.contains("sizes")) {
    const json& s = root["sizes"];
    reject_unknown(s, {"N_list", "M", "half_width"}, "sizes");
    if (s.contains("N_list")) {
      cfg.n_list.clear();
      for (const auto& n : s["N_list"]) cfg.n_list.push_back(n.get<int>());
    }
    if (s.contains("M")) cfg.m_trunc = s["M"].get<int>();
    cfg.half_width = s.contains("half_width") ? s["half_width"].get<int>() : 2 * cfg.m_trunc;
    if (cfg.half_width < 2 * cfg.m_trunc)
      throw ConfigError("config: half_width must be at least 2*M");
  }
  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    reject_unknown(t, {"rel", "flow"}, "tolerances");
    if (t.contains("rel")) cfg.rel_tol = t["rel"].get<double>();
    if (t.contains("flow")) cfg.flow_tol = t["flow"].get<double>();
    if (!(cfg.rel_tol > 0.0) || !(cfg.flow_tol > 0.0))
      throw ConfigError("config: tolerances must be positive");
  }
  if (root.contains("seed")) cfg.seed = root["seed"].get<std::uint64_t>();
  if (root.contains("out")) cfg.out_path = root["out"].get<std::string>();
  return cfg;
}

SuiteConfig config_parse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return config_parse_text(text);
}

}  // namespace bogctilt
