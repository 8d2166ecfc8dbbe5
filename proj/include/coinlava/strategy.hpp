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
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coinlava/engine.hpp"
#include "coinlava/gamesat.hpp"
#include "coinlava/reduce.hpp"

namespace coinlava::strategy {

using reduce::ReductionArtifact;

// Coins-are-Lava position on a compiled artifact, with degrees and rope
// counts maintained incrementally so a ply costs O(1) outside the policies.
class LavaBoard {
 public:
  explicit LavaBoard(std::shared_ptr<const ReductionArtifact> artifact);

  const ReductionArtifact& artifact() const { return *artifact_; }
  Player mover() const { return mover_; }
  std::uint64_t ply() const { return ply_; }
  std::uint32_t alive_count() const { return static_cast<std::uint32_t>(alive_list_.size()); }

  bool alive(StringId id) const { return alive_[id] != 0; }
  bool legal(StringId id) const;
  // Removes the string and passes the turn. Throws IllegalMove.
  void cut(StringId id);

  // Ropes are addressed by gadget (plan index) and rope slot.
  std::uint32_t rope_alive(std::uint32_t gadget, std::uint32_t slot) const;
  std::optional<StringId> lowest_alive(std::uint32_t gadget, std::uint32_t slot) const;
  // Lowest alive string of the rope if cutting it frees no coin.
  std::optional<StringId> lowest_legal(std::uint32_t gadget, std::uint32_t slot) const;
  std::optional<StringId> lowest_legal() const;
  std::optional<StringId> random_legal(std::mt19937_64& rng) const;
  bool has_legal_move() const { return lowest_legal().has_value(); }

  GameState to_game_state() const;

 private:
  std::uint32_t rope_index(std::uint32_t gadget, std::uint32_t slot) const {
    return rope_base_[gadget] + slot;
  }

  std::shared_ptr<const ReductionArtifact> artifact_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::uint32_t> rope_base_;
  std::vector<std::uint32_t> rope_of_;
  std::vector<StringId> rope_first_;
  std::vector<std::uint32_t> rope_width_;
  std::vector<std::uint32_t> rope_count_;
  mutable std::vector<StringId> rope_cursor_;
  mutable StringId legal_cursor_ = 0;
  std::vector<StringId> alive_list_;
  std::vector<std::uint32_t> alive_pos_;
  Player mover_ = Player::P1;
  std::uint64_t ply_ = 0;
};

// Gadget lookup tables derived from a plan.
struct GadgetIndex {
  explicit GadgetIndex(const ReductionArtifact& a);

  std::vector<std::uint32_t> variables;              // by variable
  std::vector<std::uint32_t> clauses;                // by augmented clause
  std::vector<std::uint32_t> level1;                 // wire gadgets, id order
  std::vector<std::uint32_t> level2;
  std::vector<std::vector<std::uint32_t>> from_variable;  // level-1 wires per variable
  std::vector<std::vector<std::uint32_t>> into_clause;    // all wires per clause
  std::vector<std::int64_t> gadget_of_string;             // string -> plan index
};

enum class VariableStatus { Unset, True, False };
enum class WireStatus { Intact, Disabled, Activated };
enum class WireClass { Good, Bad, Neutral };

VariableStatus variable_status(const LavaBoard& b, const GadgetIndex& idx, std::uint32_t v);
WireStatus wire_status(const LavaBoard& b, std::uint32_t wire);
// Hit points: alive strings in the wire's bottom rope.
std::uint32_t wire_hp(const LavaBoard& b, std::uint32_t wire);
std::vector<gamesat::Value> current_assignment(const LavaBoard& b, const GadgetIndex& idx);

// Source of GameSAT moves for the variable-setting phase.
class GameSatOracle {
 public:
  // Exact table; BudgetExceeded when the formula is too large.
  static GameSatOracle exact(const gamesat::DnfFormula& f,
                             std::uint32_t budget = gamesat::kDefaultGameSatBudget);
  // Pre-computed line, consumed in order; moves on set variables are skipped.
  static GameSatOracle scripted(std::vector<gamesat::Move> moves);
  static GameSatOracle none() { return GameSatOracle(); }

  bool available() const { return table_ != nullptr || !moves_.empty(); }
  // A move that keeps the mover's forced win, if any.
  std::optional<gamesat::Move> best(const gamesat::GameSatState& s);

 private:
  std::shared_ptr<const gamesat::GameSatTable> table_;
  std::vector<gamesat::Move> moves_;
  std::size_t next_ = 0;
};

// Tracker for the four-phase scripts.
struct PhaseState {
  int phase = 1;
  char step = 'a';  // sub-step within phases 2 and 3
  std::vector<std::uint32_t> true_variables;
  std::optional<std::uint32_t> chosen_clause;        // Trudy: C
  std::optional<std::uint32_t> activated_clause;     // Trudy: C'
  std::optional<std::uint32_t> final_clause;         // Trudy: C''
  std::vector<std::int64_t> kept_level1;             // by variable, -1 if none
  std::int64_t kept_level2 = -1;
  std::uint32_t deviations = 0;
  std::vector<std::string> deviation_notes;

  void note(const std::string& what);
};

// Good/bad/neutral for a wire under the script's current phase.
WireClass classify(gamesat::Side role, const PhaseState& ps, const ReductionArtifact& a,
                   std::uint32_t wire);

// One move of the scripted strategies; the move is always legal. ps is
// advanced in place. `last_opponent_move` drives the respond-in-kind rule.
StringId fallon_policy(const LavaBoard& b, const GadgetIndex& idx, PhaseState& ps,
                       GameSatOracle& oracle, std::optional<StringId> last_opponent_move);
StringId trudy_policy(const LavaBoard& b, const GadgetIndex& idx, PhaseState& ps,
                      GameSatOracle& oracle, std::optional<StringId> last_opponent_move);

// Moves phase forward to match the board without choosing a move.
void advance_phase(gamesat::Side role, const LavaBoard& b, const GadgetIndex& idx, PhaseState& ps);

// For every true variable, good level-1 HP exceeds bad level-1 HP.
bool hp_majority_holds(const LavaBoard& b, const GadgetIndex& idx, const PhaseState& ps);

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual StringId choose(const LavaBoard& b, std::optional<StringId> last_opponent_move) = 0;
  virtual int phase() const { return 0; }
  virtual const PhaseState* tracker() const { return nullptr; }
};

enum class PolicyKind { FallonScript, TrudyScript, UniformRandom, GreedyDisabler };
const char* policy_kind_name(PolicyKind k);
PolicyKind parse_policy_kind(const std::string& text);

// `seat` is the player the policy controls. GreedyDisabler attacks the
// wires that the opposing seat's script would call good.
std::unique_ptr<Policy> make_policy(PolicyKind kind, std::shared_ptr<const ReductionArtifact> a,
                                    Player seat, std::uint64_t seed,
                                    GameSatOracle oracle = GameSatOracle::none());

enum class TerminalShape { Fallon, Trudy, Other };
const char* terminal_shape_name(TerminalShape s);

struct Census {
  std::uint32_t variables_with_one = 0;
  std::uint32_t variables = 0;
  std::uint32_t wires_with_one = 0;
  std::uint32_t wires = 0;
  std::uint32_t clauses_empty = 0;
  std::uint32_t clauses_with_one = 0;
  std::uint32_t clauses = 0;
  std::uint32_t remaining = 0;
  TerminalShape shape = TerminalShape::Other;
};

Census terminal_census(const LavaBoard& b, const GadgetIndex& idx);

struct PlayoutResult {
  Player winner = Player::P1;
  Player stuck = Player::P2;
  std::uint64_t plies = 0;
  Census census;
  std::uint32_t deviations[2] = {0, 0};
  std::vector<std::string> transcript;
  bool hp_majority_violated = false;

  std::string summary_json() const;
  std::string transcript_text() const;
};

// Plays to the end. Throws IllegalByPolicy if a policy returns an illegal
// move; the message carries the transcript so far.
PlayoutResult playout(std::shared_ptr<const ReductionArtifact> a, Policy& p1, Policy& p2,
                      bool record_transcript = false);

}  // namespace coinlava::strategy
