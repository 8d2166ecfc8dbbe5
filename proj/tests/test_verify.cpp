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

#include "coinlava/verify.hpp"
#include "doctest.h"

using namespace coinlava;
using namespace coinlava::verify;

TEST_CASE("small campaigns pass") {
  Options o{17, 20, 2};
  CHECK(check_solver_oracle(o, 8).ok());
  CHECK(check_lemma1(o).ok());
  CHECK(check_lemma3(o).ok());
  CHECK(check_loony(o).ok());
  CHECK(check_structure_campaign(Options{17, 5, 2}, {2}).ok());
  CHECK(check_parity(Options{17, 5, 2}).ok());
}

TEST_CASE("campaign reports are reproducible") {
  Options o{99, 15, 3};
  CHECK(check_lemma1(o).to_json() == check_lemma1(o).to_json());
  CHECK(check_loony(o).to_json() == check_loony(Options{99, 15, 1}).to_json());
}

TEST_CASE("reduction checks cross-check with the naive solver") {
  auto r = check_lemma3(Options{3, 30, 2});
  CHECK(r.cross_checked * 10 >= r.total);
  auto l = check_lemma1(Options{3, 30, 2});
  CHECK(l.cross_checked * 10 >= l.total);
}

TEST_CASE("isolated coins produce lemma 3 counterexamples") {
  auto r = check_lemma3(Options{1, 200, 2}, RandomGraphSpec{1, 2, 4, 0.4, true});
  CHECK(r.failed > 0);
  CHECK(!r.counterexamples.empty());
}

TEST_CASE("random formulas are legal reduction inputs") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = instance_rng(8, 0, i);
    auto f = random_formula(4, 3, rng);
    CHECK(f.variable_count >= 2);
    CHECK_NOTHROW(reduce::augment_formula(f));
  }
}

TEST_CASE("strategy campaign on the conjunction") {
  StrategyCampaign c;
  c.formula = named_fixture("and2");
  c.first = gamesat::Side::Fallon;
  c.Ns = {2};
  c.seeds = 20;
  auto r = campaign_strategies(c, Options{5, 0, 2});
  CHECK(r.ok());
}

TEST_CASE("dispatch by name") {
  CHECK(check_names().size() == 8);
  auto r = run_check("skip-dominance", {{"max_n", 2}, {"max_m", 2}});
  CHECK(r.ok());
  CHECK_THROWS(run_check("nonsense", nlohmann::json::object()));
}
