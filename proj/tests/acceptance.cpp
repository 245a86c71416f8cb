// Acceptance run: one PASS/FAIL line per criterion over the full grid.

#include <cstdio>
#include <iostream>
#include <map>

#include "recip/suite.hpp"

using namespace recip;

namespace {

// Worst single-trial Schwartz-Zippel failure bound accepted for the
// probabilistic engine (criteria 3 and 11).
constexpr double kMaxTrialBound = 0.05;

}  // namespace

int main() {
  const EngineConfig cfg;
  const SuiteResult res = run_suite(cfg);

  std::map<int, std::pair<size_t, size_t>> tally;  // criterion -> (pass, total)
  for (const auto& r : res.records) {
    auto& t = tally[r.criterion];
    t.first += r.pass ? 1 : 0;
    ++t.second;
    if (!r.pass) {
      std::cerr << "criterion " << r.criterion << " FAIL " << r.name;
      for (const auto& [k, v] : r.params) std::cerr << " " << k << "=" << v;
      std::cerr << ": expected " << r.expected << ", computed " << r.computed << "\n";
    }
  }

  const bool sz_ok = res.stats.max_trial_bound <= kMaxTrialBound;
  int failed = 0;
  for (const auto& c : criteria()) {
    const auto [pass, total] = tally[c.id];
    bool ok = total > 0 && pass == total;
    std::string extra;
    if (c.id == 3 || c.id == 11) {
      ok = ok && sz_ok;
      char buf[96];
      std::snprintf(buf, sizeof buf, ", trial bound %.3g <= %.2g", res.stats.max_trial_bound, kMaxTrialBound);
      extra = buf;
    }
    failed += ok ? 0 : 1;
    std::cout << "criterion " << c.id << " " << (ok ? "PASS" : "FAIL") << " " << c.title << ": " << pass << "/" << total
              << " checks (tolerance: " << c.tolerance << extra << ")\n";
  }
  std::cout << "engine: " << res.stats.calls << " rank calls, max extension degree " << res.stats.max_ext_m << ", "
            << res.stats.escalations << " escalations\n";
  return failed == 0 ? 0 : 1;
}
