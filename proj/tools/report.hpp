#pragma once

// Report documents for reciptool: JSON, CSV and text renderings of check records.

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "recip/suite.hpp"

namespace reciptool {

inline constexpr const char* kSchemaVersion = "1.0";

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  uint32_t q = 2, r = 2, n = 1;
  uint32_t dmin = 1, dmax = 3;
  std::string engine = "prob";
  uint64_t seed = recip::EngineConfig{}.seed;
  uint32_t trials = 3;
  uint32_t ext_m = 0;
  uint64_t index = 1;
  std::string example;
  std::string format = "json";
  std::string out;
  bool timing = true;

  recip::EngineConfig engine_config() const {
    recip::EngineConfig c;
    c.mode = engine == "exact" ? recip::EngineConfig::Mode::Exact : recip::EngineConfig::Mode::Probabilistic;
    c.seed = seed;
    c.trials = trials;
    c.ext_m = ext_m;
    return c;
  }
};

inline Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["q"] = c.q;
  j["r"] = c.r;
  j["n"] = c.n;
  j["dmin"] = c.dmin;
  j["dmax"] = c.dmax;
  j["engine"] = c.engine;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["ext_m"] = c.ext_m;
  if (c.command == "cuspdims") j["index"] = c.index;
  if (!c.example.empty()) j["example"] = c.example;
  return j;
}

inline Json record_json(const recip::CheckRecord& r, bool timing) {
  Json j;
  if (r.criterion) j["criterion"] = r.criterion;
  j["name"] = r.name;
  Json p = Json::object();
  for (const auto& [k, v] : r.params) p[k] = v;
  j["params"] = p;
  j["expected"] = r.expected;
  j["computed"] = r.computed;
  j["provenance"] = r.provenance;
  j["status"] = r.pass ? "pass" : "fail";
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline Json engine_json(const recip::EngineStats& s) {
  Json j;
  j["calls"] = s.calls;
  j["vectors"] = s.vectors;
  j["points"] = s.points;
  j["max_ext_m"] = s.max_ext_m;
  j["escalations"] = s.escalations;
  j["max_trial_bound"] = s.max_trial_bound;
  return j;
}

/// {version, config, checks[], summary{pass, fail, elapsed_ms}, engine}.
inline Json report_json(const RunConfig& c, const std::vector<recip::CheckRecord>& recs, const recip::EngineStats& st,
                        double elapsed_ms) {
  Json j;
  j["version"] = kSchemaVersion;
  j["config"] = config_json(c);
  Json checks = Json::array();
  uint64_t pass = 0;
  for (const auto& r : recs) {
    checks.push_back(record_json(r, c.timing));
    pass += r.pass ? 1 : 0;
  }
  j["checks"] = checks;
  Json sum;
  sum["pass"] = pass;
  sum["fail"] = recs.size() - pass;
  if (c.timing) sum["elapsed_ms"] = elapsed_ms;
  j["summary"] = sum;
  j["engine"] = engine_json(st);
  return j;
}

inline std::string params_text(const recip::CheckRecord& r) {
  std::string s;
  for (const auto& [k, v] : r.params) s += (s.empty() ? "" : " ") + k + "=" + v;
  return s;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char ch : s) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return o + "\"";
}

inline std::string param(const recip::CheckRecord& r, const std::string& key) {
  for (const auto& [k, v] : r.params)
    if (k == key) return v;
  return "";
}

/// The dims table has the fixed header q,r,n,d,dim_formula,dim_engine,match;
/// other commands list one record per row.
inline std::string report_csv(const RunConfig& c, const std::vector<recip::CheckRecord>& recs) {
  std::ostringstream os;
  if (c.command == "dims") {
    os << "q,r,n,d,dim_formula,dim_engine,match\n";
    for (const auto& r : recs)
      os << param(r, "q") << ',' << param(r, "r") << ',' << param(r, "n") << ',' << param(r, "d") << ',' << r.expected << ','
         << r.computed << ',' << (r.pass ? "true" : "false") << '\n';
    return os.str();
  }
  os << "criterion,name,params,expected,computed,provenance,status" << (c.timing ? ",elapsed_ms" : "") << '\n';
  for (const auto& r : recs) {
    os << r.criterion << ',' << csv_field(r.name) << ',' << csv_field(params_text(r)) << ',' << csv_field(r.expected) << ','
       << csv_field(r.computed) << ',' << csv_field(r.provenance) << ',' << (r.pass ? "pass" : "fail");
    if (c.timing) os << ',' << r.elapsed_ms;
    os << '\n';
  }
  return os.str();
}

inline std::string report_text(const RunConfig& c, const std::vector<recip::CheckRecord>& recs, double elapsed_ms) {
  std::ostringstream os;
  uint64_t pass = 0;
  for (const auto& r : recs) {
    pass += r.pass ? 1 : 0;
    os << (r.pass ? "PASS " : "FAIL ") << r.name;
    const std::string p = params_text(r);
    if (!p.empty()) os << " [" << p << "]";
    os << ": expected " << r.expected << ", computed " << r.computed;
    if (c.timing) os << " (" << static_cast<int64_t>(r.elapsed_ms) << " ms)";
    os << '\n';
  }
  os << pass << " passed, " << recs.size() - pass << " failed";
  if (c.timing) os << " in " << static_cast<int64_t>(elapsed_ms) << " ms";
  os << '\n';
  return os.str();
}

}  // namespace reciptool
