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
#include <optional>
#include <string>
#include <vector>

#include "coinlava/engine.hpp"
#include "coinlava/gamesat.hpp"
#include "coinlava/multigraph.hpp"

namespace coinlava::reduce {

using gamesat::DnfFormula;
using gamesat::Side;

// Nimstring[g] and Strings-and-Coins[result] have the same winner. The
// added ring has max(2, |V(g)| + 1) coins; its strings are labelled.
Multigraph reduce_nimstring_to_sac(const Multigraph& g);

inline constexpr std::uint32_t kDefaultChainLength = 5;

// Lava[g] and Nimstring[result] have the same winner when every coin of g
// has a string. Each coin gets a private path of `chain_len` strings to the
// ground; g's strings keep their ids.
Multigraph reduce_lava_to_nimstring(const Multigraph& g, std::uint32_t chain_len = kDefaultChainLength);

enum class ClauseRole { Real, Singleton, Empty };
const char* clause_role_name(ClauseRole r);

struct AugmentedClause {
  ClauseRole role = ClauseRole::Real;
  std::vector<std::uint32_t> variables;
  // Real: index into the input formula. Singleton: the variable. Empty: 0.
  std::uint32_t source = 0;
};

// Real clauses, then one singleton per variable, then the empty clause.
struct AugmentedFormula {
  DnfFormula base;
  std::vector<AugmentedClause> clauses;

  std::uint32_t real_count() const { return static_cast<std::uint32_t>(base.clauses.size()); }
  std::uint32_t singleton_index(std::uint32_t variable) const { return real_count() + variable; }
  std::uint32_t empty_index() const { return real_count() + base.variable_count; }
  std::string clause_name(std::uint32_t index) const;
};

// Drops variables that occur in no clause and rejects clauses with fewer
// than two variables.
DnfFormula normalize_for_reduction(const DnfFormula& f);
AugmentedFormula augment_formula(const DnfFormula& f);

enum class GadgetKind { Variable, Wire, Clause, ParityPad };
const char* gadget_kind_name(GadgetKind k);

// Parallel strings with contiguous ids first_id .. first_id + width - 1.
struct Rope {
  StringId first_id = 0;
  std::uint32_t width = 0;
  Endpoint a = Endpoint::ground();
  Endpoint b = Endpoint::ground();

  bool contains(StringId id) const { return id >= first_id && id < first_id + width; }
};

struct GadgetPlan {
  GadgetKind kind = GadgetKind::Variable;
  std::uint32_t level = 0;     // 0 variable, 1-2 wire, 3 clause
  std::uint32_t variable = 0;  // Variable gadget, or source of a level-1 wire
  std::uint32_t clause = 0;    // Clause gadget, or target of a wire
  // Variable: {bottom, top}. Wire: {bottom, top}. Clause: {rope}. Pad: {string}.
  std::vector<Rope> ropes;
  std::optional<std::uint32_t> input_coin;
  std::optional<std::uint32_t> middle_coin;
  std::optional<std::uint32_t> output_coin;
};

struct ParityDecision {
  bool decided = false;
  std::uint64_t fallon_terminal_remaining = 0;  // R_F
  std::uint64_t fallon_terminal_cuts = 0;       // c_F, including the pad if added
  bool pad_added = false;
  Player stuck_in_fallon_terminal = Player::P1;
  Player stuck_in_trudy_terminal = Player::P2;
};

inline constexpr std::uint64_t kDefaultStringCap = 5'000'000;

struct ReductionArtifact {
  Multigraph graph;
  AugmentedFormula formula;
  std::vector<GadgetPlan> plan;
  std::uint32_t N = 0;
  Side first = Side::Trudy;  // GameSAT mover mapped to P1
  std::vector<std::uint32_t> occurrences;
  std::uint64_t level1_wires = 0;  // W1
  std::uint64_t level2_wires = 0;  // W2
  std::uint32_t root_coin = 0;
  ParityDecision parity;
  std::vector<std::uint32_t> owner;  // string id -> plan index

  Player player_of(Side s) const;
  Side side_of(Player p) const;
  // Whether N >= m^2 n^2. Advisory only.
  bool meets_size_bound() const;
  std::uint64_t pow(std::uint32_t e) const;
  std::string provenance(StringId id) const;
  std::string plan_json() const;
  std::string to_dot() const;
};

// 2n + W1(N + N^2) + W2(N^3 + N^4) + (m + n + 1) N^5 without the pad.
std::uint64_t closed_form_string_count(std::uint32_t n, std::uint32_t m, std::uint64_t sum_k,
                                       std::uint32_t N);

// Builds the gadget graph without the parity pad.
ReductionArtifact build_gadget_graph(const DnfFormula& f, std::uint32_t N, Side first,
                                     std::uint64_t string_cap = kDefaultStringCap);

// Adds one ground-ground string when needed so that the Trudy-mapped player
// is the one left without a move in the intended Fallon terminal.
ReductionArtifact fix_parity(ReductionArtifact a, Side first);

ReductionArtifact compile_gamesat_to_lava(const DnfFormula& f, std::uint32_t N, Side first,
                                          std::uint64_t string_cap = kDefaultStringCap);

struct PipelineResult {
  ReductionArtifact lava;
  Multigraph nimstring;
  Multigraph strings_and_coins;

  std::string report_json() const;
};

PipelineResult full_pipeline(const DnfFormula& f, std::uint32_t N, Side first,
                             std::uint64_t string_cap = kDefaultStringCap);

}  // namespace coinlava::reduce
