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

#include "coinlava/strategy.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "coinlava/error.hpp"
#include "json.hpp"

namespace coinlava::strategy {

using gamesat::Side;
using reduce::ClauseRole;
using reduce::GadgetKind;

// ---------------------------------------------------------------- board

LavaBoard::LavaBoard(std::shared_ptr<const ReductionArtifact> artifact) : artifact_(std::move(artifact)) {
  const auto& g = artifact_->graph;
  alive_.assign(g.string_count(), 1);
  degree_ = g.degrees();
  rope_of_.assign(g.string_count(), 0);
  for (const auto& gadget : artifact_->plan) {
    rope_base_.push_back(static_cast<std::uint32_t>(rope_first_.size()));
    for (const auto& r : gadget.ropes) {
      const auto flat = static_cast<std::uint32_t>(rope_first_.size());
      rope_first_.push_back(r.first_id);
      rope_width_.push_back(r.width);
      rope_count_.push_back(r.width);
      rope_cursor_.push_back(r.first_id);
      for (StringId id = r.first_id; id < r.first_id + r.width; ++id) rope_of_[id] = flat;
    }
  }
  alive_list_.resize(g.string_count());
  alive_pos_.resize(g.string_count());
  for (StringId id = 0; id < g.string_count(); ++id) {
    alive_list_[id] = id;
    alive_pos_[id] = id;
  }
}

bool LavaBoard::legal(StringId id) const {
  if (id >= alive_.size() || !alive_[id]) return false;
  const auto& e = artifact_->graph.string(id);
  if (e.a.is_coin() && degree_[e.a.coin_id().index] == 1) return false;
  if (e.b.is_coin() && degree_[e.b.coin_id().index] == 1) return false;
  return true;
}

void LavaBoard::cut(StringId id) {
  if (!legal(id)) throw Error(ErrorCode::IllegalMove, "string " + std::to_string(id) + " cannot be cut");
  const auto& e = artifact_->graph.string(id);
  alive_[id] = 0;
  if (e.a.is_coin()) --degree_[e.a.coin_id().index];
  if (e.b.is_coin()) --degree_[e.b.coin_id().index];
  --rope_count_[rope_of_[id]];
  const std::uint32_t pos = alive_pos_[id];
  const StringId last = alive_list_.back();
  alive_list_[pos] = last;
  alive_pos_[last] = pos;
  alive_list_.pop_back();
  mover_ = opponent(mover_);
  ++ply_;
}

std::uint32_t LavaBoard::rope_alive(std::uint32_t gadget, std::uint32_t slot) const {
  return rope_count_[rope_index(gadget, slot)];
}

std::optional<StringId> LavaBoard::lowest_alive(std::uint32_t gadget, std::uint32_t slot) const {
  const auto r = rope_index(gadget, slot);
  if (rope_count_[r] == 0) return std::nullopt;
  StringId& cur = rope_cursor_[r];
  while (!alive_[cur]) ++cur;
  return cur;
}

std::optional<StringId> LavaBoard::lowest_legal(std::uint32_t gadget, std::uint32_t slot) const {
  auto id = lowest_alive(gadget, slot);
  if (id && legal(*id)) return id;
  return std::nullopt;
}

std::optional<StringId> LavaBoard::lowest_legal() const {
  // A string that is illegal stays illegal until the game ends, so the
  // cursor never has to move backwards.
  while (legal_cursor_ < alive_.size() && !legal(legal_cursor_)) ++legal_cursor_;
  if (legal_cursor_ < alive_.size()) return legal_cursor_;
  return std::nullopt;
}

std::optional<StringId> LavaBoard::random_legal(std::mt19937_64& rng) const {
  if (alive_list_.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, alive_list_.size() - 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const StringId id = alive_list_[pick(rng)];
    if (legal(id)) return id;
  }
  std::vector<StringId> legal_ids;
  for (StringId id : alive_list_)
    if (legal(id)) legal_ids.push_back(id);
  if (legal_ids.empty()) return std::nullopt;
  std::sort(legal_ids.begin(), legal_ids.end());
  std::uniform_int_distribution<std::size_t> pick_legal(0, legal_ids.size() - 1);
  return legal_ids[pick_legal(rng)];
}

GameState LavaBoard::to_game_state() const {
  auto board = std::make_shared<const Multigraph>(artifact_->graph);
  std::vector<bool> alive(alive_.begin(), alive_.end());
  return GameState::initial(board, mover_).with_alive(std::move(alive));
}

// ---------------------------------------------------------------- index

GadgetIndex::GadgetIndex(const ReductionArtifact& a) {
  const std::uint32_t n = a.formula.base.variable_count;
  variables.assign(n, 0);
  clauses.assign(a.formula.clauses.size(), 0);
  from_variable.assign(n, {});
  into_clause.assign(a.formula.clauses.size(), {});
  gadget_of_string.assign(a.graph.string_count(), -1);
  for (std::uint32_t i = 0; i < a.plan.size(); ++i) {
    const auto& g = a.plan[i];
    for (const auto& r : g.ropes)
      for (StringId id = r.first_id; id < r.first_id + r.width; ++id) gadget_of_string[id] = i;
    switch (g.kind) {
      case GadgetKind::Variable: variables[g.variable] = i; break;
      case GadgetKind::Clause: clauses[g.clause] = i; break;
      case GadgetKind::Wire:
        (g.level == 1 ? level1 : level2).push_back(i);
        if (g.level == 1) from_variable[g.variable].push_back(i);
        into_clause[g.clause].push_back(i);
        break;
      case GadgetKind::ParityPad: break;
    }
  }
}

VariableStatus variable_status(const LavaBoard& b, const GadgetIndex& idx, std::uint32_t v) {
  const auto g = idx.variables[v];
  if (b.rope_alive(g, 0) == 0) return VariableStatus::False;
  if (b.rope_alive(g, 1) == 0) return VariableStatus::True;
  return VariableStatus::Unset;
}

WireStatus wire_status(const LavaBoard& b, std::uint32_t wire) {
  if (b.rope_alive(wire, 0) == 0) return WireStatus::Disabled;
  if (b.rope_alive(wire, 1) == 0) return WireStatus::Activated;
  return WireStatus::Intact;
}

std::uint32_t wire_hp(const LavaBoard& b, std::uint32_t wire) { return b.rope_alive(wire, 0); }

std::vector<gamesat::Value> current_assignment(const LavaBoard& b, const GadgetIndex& idx) {
  std::vector<gamesat::Value> out(idx.variables.size(), gamesat::Value::Unset);
  for (std::uint32_t v = 0; v < idx.variables.size(); ++v) {
    switch (variable_status(b, idx, v)) {
      case VariableStatus::True: out[v] = gamesat::Value::True; break;
      case VariableStatus::False: out[v] = gamesat::Value::False; break;
      case VariableStatus::Unset: break;
    }
  }
  return out;
}

// ---------------------------------------------------------------- oracle

GameSatOracle GameSatOracle::exact(const gamesat::DnfFormula& f, std::uint32_t budget) {
  GameSatOracle o;
  o.table_ = std::make_shared<const gamesat::GameSatTable>(f, true, budget);
  return o;
}

GameSatOracle GameSatOracle::scripted(std::vector<gamesat::Move> moves) {
  GameSatOracle o;
  o.moves_ = std::move(moves);
  return o;
}

std::optional<gamesat::Move> GameSatOracle::best(const gamesat::GameSatState& s) {
  if (table_) {
    const auto moves = table_->winning_moves(s);
    if (moves.empty()) return std::nullopt;
    return moves.front();
  }
  while (next_ < moves_.size()) {
    const auto m = moves_[next_++];
    if (m.kind == gamesat::Move::Kind::Skip) return m;
    if (m.variable < s.assignment.size() && s.assignment[m.variable] == gamesat::Value::Unset) return m;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- scripts

void PhaseState::note(const std::string& what) {
  ++deviations;
  if (deviation_notes.size() < 32) deviation_notes.push_back(what);
}

namespace {

bool in_clause(const ReductionArtifact& a, std::uint32_t clause, std::uint32_t v) {
  const auto& vars = a.formula.clauses[clause].variables;
  return std::find(vars.begin(), vars.end(), v) != vars.end();
}

bool is_true(const PhaseState& ps, std::uint32_t v) {
  return std::find(ps.true_variables.begin(), ps.true_variables.end(), v) != ps.true_variables.end();
}

// Lowest-id cut among candidates; wires are in id order already.
template <typename Pred>
std::optional<StringId> first_cut(const LavaBoard& b, const std::vector<std::uint32_t>& wires,
                                  std::uint32_t slot, Pred pred) {
  std::optional<StringId> best;
  for (auto w : wires) {
    if (!pred(w)) continue;
    auto id = b.lowest_legal(w, slot);
    if (id && (!best || *id < *best)) best = id;
  }
  return best;
}

std::uint32_t wire_target(const ReductionArtifact& a, std::uint32_t wire) { return a.plan[wire].clause; }

// Among candidates that are not disabled, the one with most HP, lowest id on ties.
std::int64_t strongest(const LavaBoard& b, const std::vector<std::uint32_t>& wires,
                       const std::function<bool(std::uint32_t)>& pred) {
  std::int64_t best = -1;
  std::uint32_t best_hp = 0;
  for (auto w : wires) {
    if (!pred(w) || wire_status(b, w) == WireStatus::Disabled) continue;
    const auto hp = wire_hp(b, w);
    if (best < 0 || hp > best_hp) {
      best = w;
      best_hp = hp;
    }
  }
  return best;
}

std::optional<StringId> variable_phase_move(Side role, const LavaBoard& b, const GadgetIndex& idx,
                                            PhaseState& ps, GameSatOracle& oracle) {
  const ReductionArtifact& a = b.artifact();
  gamesat::GameSatState s{current_assignment(b, idx), role};
  if (s.terminal()) return std::nullopt;
  if (!oracle.available())
    throw Error(ErrorCode::OracleRequired, "variable-setting phase needs a GameSAT strategy oracle");
  auto move = oracle.best(s);
  if (!move) {
    ps.note("no winning GameSAT move; playing a good-valued set");
    for (std::uint32_t v = 0; v < s.assignment.size(); ++v) {
      if (s.assignment[v] == gamesat::Value::Unset) {
        move = gamesat::Move::set(v, role == Side::Trudy);
        break;
      }
    }
  }
  if (move->kind == gamesat::Move::Kind::Skip) {
    for (auto c : idx.clauses)
      if (auto id = b.lowest_legal(c, 0)) return id;
    return b.lowest_legal();
  }
  // True cuts the top string, false cuts the bottom string.
  auto id = b.lowest_legal(idx.variables[move->variable], move->value ? 1 : 0);
  if (!id) ps.note("variable gadget " + a.formula.base.variable_name(move->variable) + " cannot be set");
  return id;
}

void enter_phase2(Side role, const LavaBoard& b, const GadgetIndex& idx, PhaseState& ps) {
  const ReductionArtifact& a = b.artifact();
  ps.phase = 2;
  ps.step = 'a';
  ps.true_variables.clear();
  for (std::uint32_t v = 0; v < idx.variables.size(); ++v)
    if (variable_status(b, idx, v) == VariableStatus::True) ps.true_variables.push_back(v);
  ps.kept_level1.assign(idx.variables.size(), -1);
  if (role == Side::Trudy) {
    for (std::uint32_t j = 0; j < a.formula.real_count(); ++j) {
      const auto& vars = a.formula.clauses[j].variables;
      if (std::all_of(vars.begin(), vars.end(), [&](std::uint32_t v) { return is_true(ps, v); })) {
        ps.chosen_clause = j;
        break;
      }
    }
    if (!ps.chosen_clause) ps.note("assignment satisfies no real clause");
  }
}

bool keeps_level1(Side role, const PhaseState& ps, const ReductionArtifact& a, std::uint32_t v) {
  if (role == Side::Fallon) return is_true(ps, v);
  return ps.chosen_clause && in_clause(a, *ps.chosen_clause, v);
}

std::optional<StringId> wire_phase2_move(Side role, const LavaBoard& b, const GadgetIndex& idx,
                                         PhaseState& ps, std::optional<StringId> last) {
  const ReductionArtifact& a = b.artifact();
  auto cls = [&](std::uint32_t w) { return classify(role, ps, a, w); };

  // (a) disable bad wires, answering an attack on x_i's good wires with a
  // cut on x_i's bad wires when possible.
  ps.step = 'a';
  if (role == Side::Fallon && last) {
    const auto g = idx.gadget_of_string[*last];
    if (g >= 0) {
      const auto& gp = a.plan[g];
      if (gp.kind == GadgetKind::Wire && gp.level == 1 && gp.ropes[0].contains(*last) &&
          cls(static_cast<std::uint32_t>(g)) == WireClass::Good) {
        if (auto id = first_cut(b, idx.from_variable[gp.variable], 0,
                                [&](std::uint32_t w) { return cls(w) == WireClass::Bad; }))
          return id;
      }
    }
  }
  if (auto id = first_cut(b, idx.level1, 0, [&](std::uint32_t w) { return cls(w) == WireClass::Bad; }))
    return id;

  // (b) choose one good wire per kept variable, disable the rest.
  ps.step = 'b';
  for (std::uint32_t v = 0; v < idx.variables.size(); ++v) {
    if (!keeps_level1(role, ps, a, v)) continue;
    auto& keep = ps.kept_level1[v];
    if (keep >= 0 && wire_status(b, static_cast<std::uint32_t>(keep)) != WireStatus::Disabled) continue;
    const auto& wires = idx.from_variable[v];
    std::int64_t pick = -1;
    if (role == Side::Trudy) {
      pick = strongest(b, wires, [&](std::uint32_t w) { return wire_target(a, w) == *ps.chosen_clause; });
    }
    if (pick < 0) pick = strongest(b, wires, [&](std::uint32_t w) { return cls(w) == WireClass::Good; });
    if (pick < 0) {
      pick = strongest(b, wires, [](std::uint32_t) { return true; });
      ps.note("no good level-1 wire left for " + a.formula.base.variable_name(v));
    }
    keep = pick;
  }
  auto kept = [&](std::uint32_t w) {
    const auto v = a.plan[w].variable;
    return ps.kept_level1[v] == static_cast<std::int64_t>(w);
  };
  if (auto id = first_cut(b, idx.level1, 0, [&](std::uint32_t w) {
        const auto c = cls(w);
        return c == WireClass::Neutral || (c == WireClass::Good && !kept(w));
      }))
    return id;

  // (c) activate the kept wires.
  ps.step = 'c';
  if (auto id = first_cut(b, idx.level1, 1, kept)) return id;
  return std::nullopt;
}

void enter_phase3(Side role, const LavaBoard& b, const GadgetIndex& idx, PhaseState& ps) {
  const ReductionArtifact& a = b.artifact();
  ps.phase = 3;
  ps.step = 'a';
  for (auto w : idx.level1) {
    if (classify(role, ps, a, w) == WireClass::Bad && wire_status(b, w) != WireStatus::Disabled)
      ps.note("bad level-1 wire " + a.provenance(a.plan[w].ropes[0].first_id) + " was not disabled");
  }
  if (role != Side::Trudy) return;
  auto all_activated = [&](std::uint32_t clause) {
    for (auto w : idx.into_clause[clause])
      if (a.plan[w].level == 1 && wire_status(b, w) != WireStatus::Activated) return false;
    return true;
  };
  if (ps.chosen_clause && all_activated(*ps.chosen_clause)) {
    ps.activated_clause = ps.chosen_clause;
    return;
  }
  if (ps.chosen_clause) {
    for (auto v : a.formula.clauses[*ps.chosen_clause].variables) {
      const auto s = a.formula.singleton_index(v);
      bool has_wire = false;
      for (auto w : idx.into_clause[s]) has_wire |= a.plan[w].level == 1;
      if (has_wire && all_activated(s)) {
        ps.activated_clause = s;
        return;
      }
    }
  }
  ps.note("no satisfied clause has only activated level-1 wires");
  ps.activated_clause = ps.chosen_clause;
}

std::optional<StringId> wire_phase3_move(Side role, const LavaBoard& b, const GadgetIndex& idx,
                                         PhaseState& ps) {
  const ReductionArtifact& a = b.artifact();
  auto cls = [&](std::uint32_t w) { return classify(role, ps, a, w); };

  // A clause can only be cut away once one of its wires is disabled.
  // Singletons of variables occurring once have no level-1 wires at all, so
  // Fallon treats their level-2 wires like bad ones.
  auto covered = [&](std::uint32_t clause) {
    for (auto in : idx.into_clause[clause])
      if (wire_status(b, in) == WireStatus::Disabled) return true;
    return false;
  };
  auto unsafe = [&](std::uint32_t w) {
    return role == Side::Fallon && cls(w) == WireClass::Good && !covered(wire_target(a, w));
  };

  ps.step = 'a';
  if (auto id = first_cut(b, idx.level2, 0, [&](std::uint32_t w) { return cls(w) == WireClass::Bad || unsafe(w); }))
    return id;

  ps.step = 'b';
  if (ps.kept_level2 < 0 || wire_status(b, static_cast<std::uint32_t>(ps.kept_level2)) == WireStatus::Disabled) {
    std::int64_t pick = -1;
    if (role == Side::Fallon) {
      // The surviving clause must still hold a disabled level-1 wire.
      pick = strongest(b, idx.level2, [&](std::uint32_t w) { return cls(w) == WireClass::Good && !unsafe(w); });
      if (pick < 0) pick = strongest(b, idx.level2, [&](std::uint32_t w) { return covered(wire_target(a, w)); });
    } else if (ps.activated_clause) {
      pick = strongest(b, idx.level2, [&](std::uint32_t w) { return wire_target(a, w) == *ps.activated_clause; });
    }
    if (pick < 0) pick = strongest(b, idx.level2, [&](std::uint32_t w) { return cls(w) == WireClass::Good; });
    if (pick < 0) {
      pick = strongest(b, idx.level2, [](std::uint32_t) { return true; });
      ps.note("no good level-2 wire left");
    }
    ps.kept_level2 = pick;
  }
  const auto keep = ps.kept_level2;
  if (auto id = first_cut(b, idx.level2, 0, [&](std::uint32_t w) {
        return cls(w) == WireClass::Good && !unsafe(w) && static_cast<std::int64_t>(w) != keep;
      }))
    return id;

  ps.step = 'c';
  if (auto id = first_cut(b, idx.level2, 1, [&](std::uint32_t w) { return static_cast<std::int64_t>(w) == keep; }))
    return id;
  return std::nullopt;
}

std::optional<StringId> clause_phase_move(Side role, const LavaBoard& b, const GadgetIndex& idx,
                                          const PhaseState& ps) {
  for (std::uint32_t j = 0; j < idx.clauses.size(); ++j) {
    if (role == Side::Trudy && ps.final_clause && *ps.final_clause == j) continue;
    if (auto id = b.lowest_legal(idx.clauses[j], 0)) return id;
  }
  return std::nullopt;
}

StringId script_move(Side role, const LavaBoard& b, const GadgetIndex& idx, PhaseState& ps,
                     GameSatOracle& oracle, std::optional<StringId> last) {
  advance_phase(role, b, idx, ps);
  std::optional<StringId> id;
  switch (ps.phase) {
    case 1: id = variable_phase_move(role, b, idx, ps, oracle); break;
    case 2: id = wire_phase2_move(role, b, idx, ps, last); break;
    case 3: id = wire_phase3_move(role, b, idx, ps); break;
    default: id = clause_phase_move(role, b, idx, ps); break;
  }
  if (!id) id = b.lowest_legal();
  if (!id) throw Error(ErrorCode::InvalidArgument, "no legal move: the game is already over");
  return *id;
}

}  // namespace

WireClass classify(Side role, const PhaseState& ps, const ReductionArtifact& a, std::uint32_t wire) {
  const auto& g = a.plan[wire];
  if (g.kind != GadgetKind::Wire || ps.phase < 2) return WireClass::Neutral;
  const auto target = g.clause;
  const auto target_role = a.formula.clauses[target].role;
  if (g.level == 1) {
    const auto v = g.variable;
    if (role == Side::Fallon) {
      if (!is_true(ps, v)) return WireClass::Neutral;
      return target_role == ClauseRole::Real ? WireClass::Good : WireClass::Bad;
    }
    if (!ps.chosen_clause || !in_clause(a, *ps.chosen_clause, v)) return WireClass::Neutral;
    return target == *ps.chosen_clause || target_role == ClauseRole::Singleton ? WireClass::Good
                                                                               : WireClass::Bad;
  }
  if (role == Side::Fallon) return target_role == ClauseRole::Empty ? WireClass::Bad : WireClass::Good;
  const auto mine = ps.activated_clause ? ps.activated_clause : ps.chosen_clause;
  return target_role == ClauseRole::Empty || (mine && target == *mine) ? WireClass::Good : WireClass::Bad;
}

void advance_phase(Side role, const LavaBoard& b, const GadgetIndex& idx, PhaseState& ps) {
  for (;;) {
    if (ps.phase == 1) {
      bool all_set = true;
      for (std::uint32_t v = 0; v < idx.variables.size(); ++v)
        all_set &= variable_status(b, idx, v) != VariableStatus::Unset;
      if (!all_set) return;
      enter_phase2(role, b, idx, ps);
    } else if (ps.phase == 2) {
      if (wire_phase2_move(role, b, idx, ps, std::nullopt)) return;
      enter_phase3(role, b, idx, ps);
    } else if (ps.phase == 3) {
      if (wire_phase3_move(role, b, idx, ps)) return;
      ps.phase = 4;
      ps.step = 'a';
      if (ps.kept_level2 >= 0) ps.final_clause = b.artifact().plan[ps.kept_level2].clause;
    } else {
      return;
    }
  }
}

StringId fallon_policy(const LavaBoard& b, const GadgetIndex& idx, PhaseState& ps, GameSatOracle& oracle,
                       std::optional<StringId> last_opponent_move) {
  return script_move(Side::Fallon, b, idx, ps, oracle, last_opponent_move);
}

StringId trudy_policy(const LavaBoard& b, const GadgetIndex& idx, PhaseState& ps, GameSatOracle& oracle,
                      std::optional<StringId> last_opponent_move) {
  return script_move(Side::Trudy, b, idx, ps, oracle, last_opponent_move);
}

bool hp_majority_holds(const LavaBoard& b, const GadgetIndex& idx, const PhaseState& ps) {
  const ReductionArtifact& a = b.artifact();
  for (auto v : ps.true_variables) {
    std::uint64_t good = 0, bad = 0;
    for (auto w : idx.from_variable[v]) {
      const auto c = classify(Side::Fallon, ps, a, w);
      if (c == WireClass::Good) good += wire_hp(b, w);
      if (c == WireClass::Bad) bad += wire_hp(b, w);
    }
    if (good <= bad) return false;
  }
  return true;
}

// ---------------------------------------------------------------- policies

const char* policy_kind_name(PolicyKind k) {
  switch (k) {
    case PolicyKind::FallonScript: return "fallon";
    case PolicyKind::TrudyScript: return "trudy";
    case PolicyKind::UniformRandom: return "random";
    case PolicyKind::GreedyDisabler: return "greedy";
  }
  return "?";
}

PolicyKind parse_policy_kind(const std::string& text) {
  if (text == "fallon" || text == "FallonScript") return PolicyKind::FallonScript;
  if (text == "trudy" || text == "TrudyScript") return PolicyKind::TrudyScript;
  if (text == "random" || text == "UniformRandom") return PolicyKind::UniformRandom;
  if (text == "greedy" || text == "GreedyDisabler") return PolicyKind::GreedyDisabler;
  throw Error(ErrorCode::InvalidArgument, "unknown policy '" + text + "' (fallon|trudy|random|greedy)");
}

namespace {

class ScriptPolicy final : public Policy {
 public:
  ScriptPolicy(Side role, std::shared_ptr<const ReductionArtifact> a, GameSatOracle oracle)
      : role_(role), artifact_(std::move(a)), index_(*artifact_), oracle_(std::move(oracle)) {}

  std::string name() const override { return role_ == Side::Fallon ? "fallon" : "trudy"; }
  StringId choose(const LavaBoard& b, std::optional<StringId> last) override {
    return script_move(role_, b, index_, state_, oracle_, last);
  }
  int phase() const override { return state_.phase; }
  const PhaseState* tracker() const override { return &state_; }

 private:
  Side role_;
  std::shared_ptr<const ReductionArtifact> artifact_;
  GadgetIndex index_;
  GameSatOracle oracle_;
  PhaseState state_;
};

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  StringId choose(const LavaBoard& b, std::optional<StringId>) override {
    auto id = b.random_legal(rng_);
    if (!id) throw Error(ErrorCode::InvalidArgument, "no legal move: the game is already over");
    return *id;
  }

 private:
  std::mt19937_64 rng_;
};

class GreedyPolicy final : public Policy {
 public:
  GreedyPolicy(Side target_role, std::shared_ptr<const ReductionArtifact> a)
      : target_(target_role), artifact_(std::move(a)), index_(*artifact_) {}

  std::string name() const override { return "greedy"; }
  StringId choose(const LavaBoard& b, std::optional<StringId>) override {
    advance_phase(target_, b, index_, shadow_);
    const std::vector<std::uint32_t>* wires = nullptr;
    if (shadow_.phase == 2) wires = &index_.level1;
    if (shadow_.phase == 3) wires = &index_.level2;
    if (wires) {
      std::optional<StringId> best;
      std::uint32_t best_hp = 0;
      for (auto w : *wires) {
        if (classify(target_, shadow_, *artifact_, w) != WireClass::Good) continue;
        auto id = b.lowest_legal(w, 0);
        if (!id) continue;
        const auto hp = wire_hp(b, w);
        if (!best || hp < best_hp || (hp == best_hp && *id < *best)) {
          best = id;
          best_hp = hp;
        }
      }
      if (best) return *best;
    }
    auto id = b.lowest_legal();
    if (!id) throw Error(ErrorCode::InvalidArgument, "no legal move: the game is already over");
    return *id;
  }

 private:
  Side target_;
  std::shared_ptr<const ReductionArtifact> artifact_;
  GadgetIndex index_;
  PhaseState shadow_;
};

}  // namespace

std::unique_ptr<Policy> make_policy(PolicyKind kind, std::shared_ptr<const ReductionArtifact> a, Player seat,
                                    std::uint64_t seed, GameSatOracle oracle) {
  switch (kind) {
    case PolicyKind::FallonScript:
    case PolicyKind::TrudyScript: {
      const Side role = kind == PolicyKind::FallonScript ? Side::Fallon : Side::Trudy;
      if (a->side_of(seat) != role) {
        throw Error(ErrorCode::InvalidArgument, std::string(policy_kind_name(kind)) + " script cannot sit in " +
                                                    player_name(seat) + ", which plays " +
                                                    gamesat::side_name(a->side_of(seat)));
      }
      if (!oracle.available()) oracle = GameSatOracle::exact(a->formula.base);
      return std::make_unique<ScriptPolicy>(role, std::move(a), std::move(oracle));
    }
    case PolicyKind::UniformRandom: return std::make_unique<RandomPolicy>(seed);
    case PolicyKind::GreedyDisabler: {
      const Side target = a->side_of(opponent(seat));
      return std::make_unique<GreedyPolicy>(target, std::move(a));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown policy");
}

// ---------------------------------------------------------------- playout

const char* terminal_shape_name(TerminalShape s) {
  switch (s) {
    case TerminalShape::Fallon: return "fallon";
    case TerminalShape::Trudy: return "trudy";
    case TerminalShape::Other: return "other";
  }
  return "?";
}

Census terminal_census(const LavaBoard& b, const GadgetIndex& idx) {
  Census c;
  auto total = [&](std::uint32_t g) {
    std::uint32_t n = 0;
    for (std::uint32_t r = 0; r < b.artifact().plan[g].ropes.size(); ++r) n += b.rope_alive(g, r);
    return n;
  };
  for (auto g : idx.variables) {
    ++c.variables;
    c.variables_with_one += total(g) == 1 ? 1 : 0;
  }
  for (const auto* list : {&idx.level1, &idx.level2}) {
    for (auto g : *list) {
      ++c.wires;
      c.wires_with_one += total(g) == 1 ? 1 : 0;
    }
  }
  for (auto g : idx.clauses) {
    ++c.clauses;
    const auto n = total(g);
    c.clauses_empty += n == 0 ? 1 : 0;
    c.clauses_with_one += n == 1 ? 1 : 0;
  }
  c.remaining = b.alive_count();
  const bool skeleton = c.variables_with_one == c.variables && c.wires_with_one == c.wires;
  if (skeleton && c.clauses_empty == c.clauses)
    c.shape = TerminalShape::Fallon;
  else if (skeleton && c.clauses_with_one == 1 && c.clauses_empty + 1 == c.clauses)
    c.shape = TerminalShape::Trudy;
  return c;
}

PlayoutResult playout(std::shared_ptr<const ReductionArtifact> a, Policy& p1, Policy& p2, bool record_transcript) {
  LavaBoard board(a);
  GadgetIndex idx(*a);
  Policy* seats[2] = {&p1, &p2};
  PlayoutResult r;
  std::optional<StringId> previous;
  while (board.has_legal_move()) {
    const Player mover = board.mover();
    Policy& policy = *seats[static_cast<int>(mover)];
    const StringId id = policy.choose(board, previous);
    if (!board.legal(id)) {
      std::string msg = policy.name() + " (" + player_name(mover) + ") emitted illegal cut " +
                        std::to_string(id) + " at ply " + std::to_string(board.ply() + 1);
      if (record_transcript) msg += "\n" + r.transcript_text();
      throw Error(ErrorCode::IllegalByPolicy, msg);
    }
    if (const PhaseState* ps = policy.tracker();
        ps && policy.name() == "fallon" && ps->phase == 2 && ps->step != 'c' && !hp_majority_holds(board, idx, *ps)) {
      r.hp_majority_violated = true;
    }
    board.cut(id);
    if (record_transcript) {
      std::ostringstream line;
      line << "ply " << board.ply() << ' ' << player_name(mover) << " cut " << id << " # " << a->provenance(id)
           << " phase=" << policy.phase();
      r.transcript.push_back(line.str());
    }
    previous = id;
  }
  r.stuck = board.mover();
  r.winner = opponent(r.stuck);
  r.plies = board.ply();
  r.census = terminal_census(board, idx);
  for (int s = 0; s < 2; ++s)
    if (const PhaseState* ps = seats[s]->tracker()) r.deviations[s] = ps->deviations;
  return r;
}

std::string PlayoutResult::summary_json() const {
  nlohmann::json j;
  j["winner"] = player_name(winner);
  j["stuck"] = player_name(stuck);
  j["plies"] = plies;
  j["census"] = {{"remaining", census.remaining},
                 {"variables", census.variables},
                 {"variables_with_one", census.variables_with_one},
                 {"wires", census.wires},
                 {"wires_with_one", census.wires_with_one},
                 {"clauses", census.clauses},
                 {"clauses_empty", census.clauses_empty},
                 {"clauses_with_one", census.clauses_with_one},
                 {"shape", terminal_shape_name(census.shape)}};
  j["deviations"] = {{"P1", deviations[0]}, {"P2", deviations[1]}};
  j["hp_majority_violated"] = hp_majority_violated;
  return j.dump(2) + "\n";
}

std::string PlayoutResult::transcript_text() const {
  std::string out;
  for (const auto& line : transcript) out += line + "\n";
  return out;
}

}  // namespace coinlava::strategy
