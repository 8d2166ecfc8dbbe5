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

#include "coinlava/gamesat.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "coinlava/error.hpp"

namespace coinlava::gamesat {

std::vector<std::uint32_t> DnfFormula::occurrences() const {
  std::vector<std::uint32_t> k(variable_count, 0);
  for (const auto& c : clauses)
    for (auto v : c) ++k.at(v);
  return k;
}

std::string DnfFormula::variable_name(std::uint32_t v) const {
  if (v < names.size() && !names[v].empty()) return names[v];
  return "x" + std::to_string(v + 1);
}

DnfFormula parse_dnf(std::string_view text) {
  DnfFormula f;
  std::map<std::string, std::uint32_t> index;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::vector<std::uint32_t> clause;
    std::string w;
    while (words >> w) {
      auto [it, inserted] = index.emplace(w, f.variable_count);
      if (inserted) {
        f.names.push_back(w);
        ++f.variable_count;
      }
      clause.push_back(it->second);
    }
    if (clause.empty()) continue;
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

std::string format_dnf(const DnfFormula& f) {
  std::ostringstream os;
  for (const auto& c : f.clauses) {
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << f.variable_name(c[i]);
    os << "\n";
  }
  return os.str();
}

const char* side_name(Side s) { return s == Side::Trudy ? "trudy" : "fallon"; }

Side parse_side(const std::string& text) {
  if (text == "trudy" || text == "Trudy") return Side::Trudy;
  if (text == "fallon" || text == "Fallon") return Side::Fallon;
  throw Error(ErrorCode::InvalidArgument, "unknown side '" + text + "' (trudy|fallon)");
}

const char* game_value_name(GameValue v) {
  switch (v) {
    case GameValue::TrudyWins: return "TrudyWins";
    case GameValue::FallonWins: return "FallonWins";
    case GameValue::Unresolved: return "Unresolved";
  }
  return "?";
}

bool GameSatState::terminal() const {
  return std::none_of(assignment.begin(), assignment.end(),
                      [](Value v) { return v == Value::Unset; });
}

bool evaluate(const DnfFormula& f, const std::vector<Value>& assignment) {
  if (assignment.size() != f.variable_count)
    throw Error(ErrorCode::InvalidArgument, "assignment size does not match the formula");
  for (std::uint32_t v = 0; v < f.variable_count; ++v) {
    if (assignment[v] == Value::Unset)
      throw Error(ErrorCode::UnsetVariable, "variable " + f.variable_name(v) + " is unset");
  }
  for (const auto& c : f.clauses) {
    if (std::all_of(c.begin(), c.end(), [&](std::uint32_t v) { return assignment[v] == Value::True; }))
      return true;
  }
  return false;
}

std::vector<Move> gamesat_moves(const GameSatState& s) {
  std::vector<Move> moves;
  if (s.terminal()) return moves;
  for (std::uint32_t v = 0; v < s.assignment.size(); ++v) {
    if (s.assignment[v] != Value::Unset) continue;
    moves.push_back(Move::set(v, true));
    moves.push_back(Move::set(v, false));
  }
  moves.push_back(Move::skip());
  return moves;
}

GameSatState apply(const GameSatState& s, const Move& m) {
  GameSatState next = s;
  if (m.kind == Move::Kind::Set) {
    if (m.variable >= s.assignment.size() || s.assignment[m.variable] != Value::Unset)
      throw Error(ErrorCode::IllegalMove, "variable is already set or out of range");
    next.assignment[m.variable] = m.value ? Value::True : Value::False;
  }
  next.mover = other(s.mover);
  return next;
}

GameSatTable::GameSatTable(const DnfFormula& f, bool allow_skip, std::uint32_t budget)
    : n_(f.variable_count), allow_skip_(allow_skip) {
  if (n_ > budget) {
    throw Error(ErrorCode::BudgetExceeded, std::to_string(n_) +
                                               " variables exceed the GameSAT budget of " +
                                               std::to_string(budget));
  }
  pow3_.assign(n_ + 1, 1);
  for (std::uint32_t i = 1; i <= n_; ++i) pow3_[i] = pow3_[i - 1] * 3;
  const std::uint64_t size = pow3_[n_];
  trudy_to_move_.assign(size, GameValue::Unresolved);
  fallon_to_move_.assign(size, GameValue::Unresolved);

  // Bucket states by how many variables are set.
  std::vector<std::vector<std::uint64_t>> layers(n_ + 1);
  std::vector<Value> a(n_);
  for (std::uint64_t code = 0; code < size; ++code) {
    std::uint64_t c = code;
    std::uint32_t set = 0;
    for (std::uint32_t v = 0; v < n_; ++v, c /= 3) set += (c % 3) != 0 ? 1 : 0;
    layers[set].push_back(code);
  }

  for (std::uint64_t code : layers[n_]) {
    std::uint64_t c = code;
    for (std::uint32_t v = 0; v < n_; ++v, c /= 3) a[v] = static_cast<Value>(c % 3);
    const GameValue v = evaluate(f, a) ? GameValue::TrudyWins : GameValue::FallonWins;
    trudy_to_move_[code] = v;
    fallon_to_move_[code] = v;
  }

  for (std::uint32_t layer = n_; layer-- > 0;) {
    for (std::uint64_t code : layers[layer]) {
      // Summaries of the Set-move successors for each mover.
      bool trudy_has_win = false, trudy_all_lose = true;
      bool fallon_has_win = false, fallon_all_lose = true;
      std::uint64_t c = code;
      for (std::uint32_t v = 0; v < n_; ++v, c /= 3) {
        if (c % 3 != 0) continue;
        for (std::uint64_t val = 1; val <= 2; ++val) {
          const std::uint64_t next = code + val * pow3_[v];
          const GameValue after_trudy = fallon_to_move_[next];
          trudy_has_win |= after_trudy == GameValue::TrudyWins;
          trudy_all_lose &= after_trudy == GameValue::FallonWins;
          const GameValue after_fallon = trudy_to_move_[next];
          fallon_has_win |= after_fallon == GameValue::FallonWins;
          fallon_all_lose &= after_fallon == GameValue::TrudyWins;
        }
      }
      GameValue vt = GameValue::Unresolved, vf = GameValue::Unresolved;
      auto settle = [&](bool with_skip) {
        for (bool changed = true; changed;) {
          changed = false;
          GameValue nt = vt, nf = vf;
          if (trudy_has_win || (with_skip && vf == GameValue::TrudyWins))
            nt = GameValue::TrudyWins;
          else if (trudy_all_lose && (!with_skip || vf == GameValue::FallonWins))
            nt = GameValue::FallonWins;
          if (fallon_has_win || (with_skip && vt == GameValue::FallonWins))
            nf = GameValue::FallonWins;
          else if (fallon_all_lose && (!with_skip || vt == GameValue::TrudyWins))
            nf = GameValue::TrudyWins;
          if (nt != vt || nf != vf) {
            vt = nt;
            vf = nf;
            changed = true;
          }
        }
      };
      settle(allow_skip_);
      trudy_to_move_[code] = vt;
      fallon_to_move_[code] = vf;
    }
  }
}

std::uint64_t GameSatTable::encode(const std::vector<Value>& a) const {
  if (a.size() != n_) throw Error(ErrorCode::InvalidArgument, "assignment size does not match the formula");
  std::uint64_t code = 0;
  for (std::uint32_t v = 0; v < n_; ++v) code += static_cast<std::uint64_t>(a[v]) * pow3_[v];
  return code;
}

GameValue GameSatTable::at(std::uint64_t code, Side mover) const {
  return mover == Side::Trudy ? trudy_to_move_[code] : fallon_to_move_[code];
}

GameValue GameSatTable::value(const GameSatState& s) const { return at(encode(s.assignment), s.mover); }

std::vector<Move> GameSatTable::winning_moves(const GameSatState& s) const {
  std::vector<Move> out;
  if (s.terminal()) return out;
  const GameValue want = s.mover == Side::Trudy ? GameValue::TrudyWins : GameValue::FallonWins;
  const bool good_value = s.mover == Side::Trudy;
  const std::uint64_t code = encode(s.assignment);
  for (int pass = 0; pass < 2; ++pass) {
    const bool value = pass == 0 ? good_value : !good_value;
    for (std::uint32_t v = 0; v < n_; ++v) {
      if (s.assignment[v] != Value::Unset) continue;
      const std::uint64_t next = code + (value ? 1 : 2) * pow3_[v];
      if (at(next, other(s.mover)) == want) out.push_back(Move::set(v, value));
    }
  }
  if (allow_skip_ && at(code, other(s.mover)) == want) out.push_back(Move::skip());
  return out;
}

GameValue solve_gamesat(const DnfFormula& f, Side first, bool allow_skip, std::uint32_t budget) {
  GameSatTable table(f, allow_skip, budget);
  GameSatState s{std::vector<Value>(f.variable_count, Value::Unset), first};
  return table.value(s);
}

bool skip_dominance_check(const DnfFormula& f, Side first, std::uint32_t budget) {
  const GameValue with = solve_gamesat(f, first, true, budget);
  const GameValue without = solve_gamesat(f, first, false, budget);
  return with == without && with != GameValue::Unresolved;
}

}  // namespace coinlava::gamesat
