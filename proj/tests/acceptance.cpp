// Copyright 2026 The Coinlava Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance runner: one PASS/FAIL line per criterion. Always exits 0 unless
// a criterion throws; the lines are the result.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>

#include "coinlava/verify.hpp"

using namespace coinlava;
using namespace coinlava::verify;

namespace {

constexpr std::uint64_t kSeed = 20260101;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string counts(const CampaignReport& r) {
  return std::to_string(r.passed) + "/" + std::to_string(r.total) + " passed, " + std::to_string(r.failed) +
         " failed, " + std::to_string(r.skipped) + " skipped, " + std::to_string(r.cross_checked) + " cross-checked";
}

int run(int id, const char* title, double limit_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += "; over the " + std::to_string(static_cast<int>(limit_s)) + " s limit";
  }
  std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

Verdict strategies() {
  struct Case {
    const char* fixture;
    gamesat::Side first;
  };
  const Case cases[] = {{"and2", gamesat::Side::Trudy}, {"and2", gamesat::Side::Fallon}, {"majority", gamesat::Side::Trudy}};
  Verdict out{true, ""};
  for (const auto& c : cases) {
    StrategyCampaign sc;
    sc.formula = named_fixture(c.fixture);
    sc.first = c.first;
    sc.Ns = {2, 3, 4};
    sc.seeds = 200;
    auto r = campaign_strategies(sc, Options{kSeed, 0, std::max(1u, std::thread::hardware_concurrency())});
    const auto& d = r.details;
    std::string n = d.contains("minimal_N") && !d["minimal_N"].is_null() ? d["minimal_N"].dump() : "none";
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += std::string(c.fixture) + " " + (c.first == gamesat::Side::Trudy ? "trudy" : "fallon") +
                  " first: " + (r.ok() ? "ok" : "FAILED") + " minimal N " + n + ", " + counts(r);
    out.pass = out.pass && r.ok();
  }
  return out;
}

}  // namespace

int main() {
  const std::uint32_t jobs = std::max(1u, std::thread::hardware_concurrency());
  int failures = 0;
  failures += run(1, "solver oracle equivalence", 60, [&] {
    auto r = check_solver_oracle(Options{kSeed, 200, jobs}, 10);
    return Verdict{r.ok() && r.total == 600, counts(r)};
  });
  failures += run(2, "nimstring to strings-and-coins", 0, [&] {
    auto r = check_lemma1(Options{kSeed, 100, jobs});
    return Verdict{r.ok() && r.total == 100, counts(r) + ", draws " + r.details.value("sac_draws", nlohmann::json(0)).dump()};
  });
  failures += run(3, "loony positions", 0, [&] {
    auto r = check_loony(Options{kSeed, 100, jobs}, 12);
    return Verdict{r.ok() && r.total == 100, counts(r)};
  });
  failures += run(4, "lava to nimstring", 300, [&] {
    auto r = check_lemma3(Options{kSeed, 100, jobs});
    return Verdict{r.ok() && r.total == 100, counts(r)};
  });
  failures += run(5, "structural audit", 0, [&] {
    auto r = check_structure_campaign(Options{kSeed, 50, jobs}, {2, 3});
    return Verdict{r.ok() && r.total >= 102, counts(r)};
  });
  failures += run(6, "parity fixer", 0, [&] {
    auto r = check_parity(Options{kSeed, 30, jobs});
    return Verdict{r.ok() && r.total >= 50, counts(r)};
  });
  failures += run(7, "skip dominance", 0, [&] {
    auto r = check_skip_dominance(3, 3);
    return Verdict{r.ok(), counts(r)};
  });
  failures += run(8, "strategy campaigns", 0, strategies);
  std::printf("%d of 8 criteria failed\n", failures);
  return 0;
}
