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
#include <string_view>
#include <vector>

namespace coinlava::gamesat {

// Positive DNF: an OR of ANDs over variables 0..variable_count-1.
struct DnfFormula {
  std::uint32_t variable_count = 0;
  std::vector<std::vector<std::uint32_t>> clauses;  // each sorted, duplicate-free
  std::vector<std::string> names;                   // optional, by variable index

  std::vector<std::uint32_t> occurrences() const;
  std::string variable_name(std::uint32_t v) const;
};

// One clause per line, whitespace-separated variable names, `#` comments.
// Variables are numbered by first appearance.
DnfFormula parse_dnf(std::string_view text);
std::string format_dnf(const DnfFormula& f);

enum class Value : std::uint8_t { Unset = 0, True = 1, False = 2 };
enum class Side { Trudy, Fallon };
enum class GameValue { TrudyWins, FallonWins, Unresolved };

inline Side other(Side s) { return s == Side::Trudy ? Side::Fallon : Side::Trudy; }
const char* side_name(Side s);
Side parse_side(const std::string& text);
const char* game_value_name(GameValue v);

struct GameSatState {
  std::vector<Value> assignment;
  Side mover = Side::Trudy;

  bool terminal() const;
};

struct Move {
  enum class Kind { Set, Skip } kind = Kind::Skip;
  std::uint32_t variable = 0;
  bool value = false;

  static Move skip() { return {}; }
  static Move set(std::uint32_t v, bool value) { return {Kind::Set, v, value}; }
  bool operator==(const Move&) const = default;
};

bool evaluate(const DnfFormula& f, const std::vector<Value>& assignment);

// Every Set move for each unset variable, then Skip. Empty when terminal.
std::vector<Move> gamesat_moves(const GameSatState& s);
GameSatState apply(const GameSatState& s, const Move& m);

inline constexpr std::uint32_t kDefaultGameSatBudget = 12;

// Exact values for every state of one formula, computed layer by layer
// on the number of set variables. With skips allowed each layer carries
// a Trudy-to-move/Fallon-to-move pair joined by the Skip 2-cycle; states
// that neither side can force are Unresolved.
class GameSatTable {
 public:
  GameSatTable(const DnfFormula& f, bool allow_skip,
               std::uint32_t budget = kDefaultGameSatBudget);

  GameValue value(const GameSatState& s) const;
  // Moves from s that keep a forced win for the mover, good-valued Set
  // moves first (true for Trudy, false for Fallon), then by variable.
  std::vector<Move> winning_moves(const GameSatState& s) const;

  bool allow_skip() const { return allow_skip_; }
  std::uint32_t variable_count() const { return n_; }

 private:
  std::uint64_t encode(const std::vector<Value>& a) const;
  GameValue at(std::uint64_t code, Side mover) const;

  std::uint32_t n_;
  bool allow_skip_;
  std::vector<std::uint64_t> pow3_;
  std::vector<GameValue> trudy_to_move_;
  std::vector<GameValue> fallon_to_move_;
};

GameValue solve_gamesat(const DnfFormula& f, Side first, bool allow_skip,
                        std::uint32_t budget = kDefaultGameSatBudget);

bool skip_dominance_check(const DnfFormula& f, Side first,
                          std::uint32_t budget = kDefaultGameSatBudget);

}  // namespace coinlava::gamesat
