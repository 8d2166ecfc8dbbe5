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
#include <vector>

#include "coinlava/engine.hpp"

namespace coinlava {

inline constexpr std::uint32_t kDefaultSearchBudget = 24;
inline constexpr std::uint32_t kMaxSearchBudget = 63;
inline constexpr std::uint32_t kNaiveBudget = 12;

struct SolveResult {
  GameKind game = GameKind::Nimstring;
  // Nimstring and Lava: whether the player to move wins.
  bool winner_for_mover = false;
  // Strings-and-Coins: best achievable future score difference for the mover.
  int net_score_for_mover = 0;
  std::optional<StringId> principal_move;
  std::uint64_t states_visited = 0;
};

// Overall winner of the position, folding in points already scored.
Winner winner_of(const GameState& s, const SolveResult& r);

// Exhaustive search with a transposition table keyed by the alive set.
SolveResult solve(const GameState& s, GameKind kind, std::uint32_t budget = kDefaultSearchBudget);

// Plain recursion, no memo and no pruning. Test oracle only.
SolveResult naive_solve(const GameState& s, GameKind kind);

struct LoonyWitness {
  StringId a = 0;  // joins the degree-1 coin A to the degree-2 coin B
  StringId b = 0;  // B's other string
  CoinId coin_a;
  CoinId coin_b;
};

std::vector<LoonyWitness> find_loony_witnesses(const GameState& s);

// Winning opening for a loony position: [a, b] when the mover wins the
// remainder with a and b removed, [b] otherwise.
std::vector<StringId> loony_first_move(const GameState& s, const LoonyWitness& w,
                                       std::uint32_t budget = kDefaultSearchBudget);

}  // namespace coinlava
