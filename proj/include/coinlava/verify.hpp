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

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "coinlava/gamesat.hpp"
#include "coinlava/multigraph.hpp"
#include "coinlava/reduce.hpp"
#include "json.hpp"

namespace coinlava::verify {

// ---------------------------------------------------------------- generators

struct RandomGraphSpec {
  std::uint32_t min_coins = 1;
  std::uint32_t max_coins = 4;
  std::uint32_t max_strings = 7;
  double ground_prob = 0.3;    // per endpoint
  bool allow_isolated = true;  // coins with no strings
};

// Deterministic per (seed, stream, index).
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

// Never produces self-loops.
Multigraph random_multigraph(const RandomGraphSpec& spec, std::mt19937_64& rng);

// A random remainder plus a planted degree-1 coin A joined by string a to a
// degree-2 coin B whose other string b leads into the remainder.
Multigraph planted_loony(std::uint32_t max_strings, std::mt19937_64& rng);

// Every clause has at least two variables and every variable occurs.
gamesat::DnfFormula random_formula(std::uint32_t max_n, std::uint32_t max_m, std::mt19937_64& rng);

// All positive DNF formulas with 1..max_n variables and 0..max_m distinct
// non-empty clauses, up to clause order.
std::vector<gamesat::DnfFormula> enumerate_formulas(std::uint32_t max_n, std::uint32_t max_m);

// "and2" = x1∧x2, "majority" = (x1∧x2)∨(x1∧x3)∨(x2∧x3),
// "figure5" = (x1∧x2∧x3)∨(x2∧x3)∨(x3∧x4).
gamesat::DnfFormula named_fixture(const std::string& id);
std::vector<std::string> fixture_names();

// ---------------------------------------------------------------- reports

struct Counterexample {
  std::uint64_t index = 0;
  std::string instance;  // replayable text: a .coins board, a formula, or a transcript
  std::string note;
};

struct CampaignReport {
  std::string check;
  std::uint64_t seed = 0;
  std::uint64_t total = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t skipped = 0;        // over budget; never silently dropped
  std::uint64_t cross_checked = 0;  // instances also run through the naive solver
  std::vector<Counterexample> counterexamples;
  std::vector<std::string> notes;
  nlohmann::json details = nlohmann::json::object();

  bool ok() const { return failed == 0 && skipped == 0 && total > 0; }
  std::string to_json() const;
};

// Runs body(i) for i in [0, count) on up to `jobs` threads. Results must be
// written to per-index slots; exceptions are rethrown on the caller.
void parallel_for(std::uint64_t count, std::uint32_t jobs, const std::function<void(std::uint64_t)>& body);

// ---------------------------------------------------------------- checks

struct Options {
  std::uint64_t seed = 1;
  std::uint64_t count = 100;
  std::uint32_t jobs = 1;
};

// Memoized solver against plain recursion, `count` random boards per game.
CampaignReport check_solver_oracle(const Options& o, std::uint32_t max_strings = 10);

// Nimstring[G] against Strings-and-Coins[G ∪ ring].
CampaignReport check_lemma1(const Options& o, const RandomGraphSpec& spec = {1, 4, 7, 0.3, true});

// Lava[G] against Nimstring[G + chains]. Coins without strings are excluded
// unless spec.allow_isolated is set.
CampaignReport check_lemma3(const Options& o, const RandomGraphSpec& spec = {1, 2, 4, 0.4, false},
                            std::uint32_t chain_len = reduce::kDefaultChainLength);

// Planted loony boards are first-player Nimstring wins via the scripted line.
CampaignReport check_loony(const Options& o, std::uint32_t max_strings = 12);

// Independent recount of a compiled instance against the closed forms.
CampaignReport check_structure(const gamesat::DnfFormula& f, std::uint32_t N, gamesat::Side first);
// Figure 5 plus `count` random formulas (n <= 4, m <= 3), each at every N in Ns.
CampaignReport check_structure_campaign(const Options& o, const std::vector<std::uint32_t>& Ns = {2, 3});

// Skips never change the value; no state is Unresolved.
CampaignReport check_skip_dominance(std::uint32_t max_n = 3, std::uint32_t max_m = 3);

struct StrategyCampaign {
  gamesat::DnfFormula formula;
  gamesat::Side first = gamesat::Side::Trudy;
  std::vector<std::uint32_t> Ns{2, 3};
  std::uint64_t seeds = 200;
  bool record_failures = true;  // keep one transcript per failing cell
};

// Predicted winner's script against UniformRandom, GreedyDisabler and the
// opposing script at each N; reports the minimal N with 100% wins.
CampaignReport campaign_strategies(const StrategyCampaign& c, const Options& o);

// Script-vs-script playouts over fixtures and random formulas: whoever is
// stuck in a canonical terminal must be the player the shape predicts.
CampaignReport check_parity(const Options& o, std::uint32_t N = 2);

// Name-based dispatch used by the C API and the CLI. Known names: oracle,
// lemma1, lemma3, loony, structure, skip-dominance, strategies, parity.
CampaignReport run_check(const std::string& name, const nlohmann::json& options);
std::vector<std::string> check_names();

}  // namespace coinlava::verify
