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

#include "coinlava/reduce.hpp"

#include <algorithm>
#include <sstream>

#include "coinlava/error.hpp"
#include "json.hpp"

namespace coinlava::reduce {

using nlohmann::json;

Multigraph reduce_nimstring_to_sac(const Multigraph& g) {
  const std::uint32_t n = std::max<std::uint32_t>(2, g.coin_count() + 1);
  Multigraph ring = cycle_graph(n);
  for (StringId id = 0; id < ring.string_count(); ++id) ring.string_labels()[id] = "sac.cycle";
  return disjoint_union(g, ring);
}

Multigraph reduce_lava_to_nimstring(const Multigraph& g, std::uint32_t chain_len) {
  if (chain_len < 5)
    throw Error(ErrorCode::ChainTooShort, "chain length must be at least 5, got " + std::to_string(chain_len));
  Multigraph h = g;
  for (std::uint32_t c = 0; c < g.coin_count(); ++c) {
    const std::string tag = "nim.chain c" + std::to_string(c);
    Endpoint prev = Endpoint::coin(c);
    for (std::uint32_t i = 1; i < chain_len; ++i) {
      const CoinId next = h.add_coin();
      h.coin_labels()[next.index] = tag;
      h.string_labels()[h.add_string(prev, Endpoint::coin(next))] = tag;
      prev = Endpoint::coin(next);
    }
    h.string_labels()[h.add_string(prev, Endpoint::ground())] = tag;
  }
  return h;
}

const char* clause_role_name(ClauseRole r) {
  switch (r) {
    case ClauseRole::Real: return "real";
    case ClauseRole::Singleton: return "singleton";
    case ClauseRole::Empty: return "empty";
  }
  return "?";
}

const char* gadget_kind_name(GadgetKind k) {
  switch (k) {
    case GadgetKind::Variable: return "variable";
    case GadgetKind::Wire: return "wire";
    case GadgetKind::Clause: return "clause";
    case GadgetKind::ParityPad: return "pad";
  }
  return "?";
}

std::string AugmentedFormula::clause_name(std::uint32_t index) const {
  const auto& c = clauses.at(index);
  switch (c.role) {
    case ClauseRole::Empty: return "empty";
    case ClauseRole::Singleton: return "{" + base.variable_name(c.source) + "}";
    case ClauseRole::Real: {
      std::string s;
      for (std::size_t i = 0; i < c.variables.size(); ++i)
        s += (i ? "&" : "") + base.variable_name(c.variables[i]);
      return s;
    }
  }
  return "?";
}

DnfFormula normalize_for_reduction(const DnfFormula& f) {
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    if (f.clauses[j].size() < 2) {
      throw Error(ErrorCode::ClauseTooSmall,
                  "clause " + std::to_string(j + 1) + " has fewer than 2 variables");
    }
  }
  const auto k = f.occurrences();
  std::vector<std::int64_t> remap(f.variable_count, -1);
  DnfFormula out;
  for (std::uint32_t v = 0; v < f.variable_count; ++v) {
    if (k[v] == 0) continue;
    remap[v] = out.variable_count++;
    out.names.push_back(f.variable_name(v));
  }
  for (const auto& c : f.clauses) {
    std::vector<std::uint32_t> mapped;
    for (auto v : c) mapped.push_back(static_cast<std::uint32_t>(remap[v]));
    out.clauses.push_back(std::move(mapped));
  }
  return out;
}

AugmentedFormula augment_formula(const DnfFormula& f) {
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    if (f.clauses[j].size() < 2) {
      throw Error(ErrorCode::ClauseTooSmall,
                  "clause " + std::to_string(j + 1) + " has fewer than 2 variables");
    }
  }
  const auto k = f.occurrences();
  for (std::uint32_t v = 0; v < f.variable_count; ++v) {
    if (k[v] == 0)
      throw Error(ErrorCode::UnusedVariable, "variable " + f.variable_name(v) + " occurs in no clause");
  }
  AugmentedFormula a;
  a.base = f;
  for (std::uint32_t j = 0; j < f.clauses.size(); ++j)
    a.clauses.push_back({ClauseRole::Real, f.clauses[j], j});
  for (std::uint32_t v = 0; v < f.variable_count; ++v)
    a.clauses.push_back({ClauseRole::Singleton, {v}, v});
  a.clauses.push_back({ClauseRole::Empty, {}, 0});
  return a;
}

std::uint64_t closed_form_string_count(std::uint32_t n, std::uint32_t m, std::uint64_t sum_k,
                                       std::uint32_t N) {
  const std::uint64_t w1 = 2 * sum_k - n;
  const std::uint64_t w2 = 2 * (static_cast<std::uint64_t>(n) + m) - 1;
  std::uint64_t p[6] = {1, 0, 0, 0, 0, 0};
  for (int i = 1; i < 6; ++i) p[i] = p[i - 1] * N;
  return 2ULL * n + w1 * (p[1] + p[2]) + w2 * (p[3] + p[4]) + (static_cast<std::uint64_t>(m) + n + 1) * p[5];
}

Player ReductionArtifact::player_of(Side s) const { return s == first ? Player::P1 : Player::P2; }

Side ReductionArtifact::side_of(Player p) const {
  return p == Player::P1 ? first : gamesat::other(first);
}

bool ReductionArtifact::meets_size_bound() const {
  const std::uint64_t n = formula.base.variable_count;
  const std::uint64_t m = formula.real_count();
  return static_cast<std::uint64_t>(N) >= m * m * n * n;
}

std::uint64_t ReductionArtifact::pow(std::uint32_t e) const {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= N;
  return r;
}

namespace {

std::string gadget_descriptor(const AugmentedFormula& f, const GadgetPlan& g) {
  switch (g.kind) {
    case GadgetKind::Variable: return "var " + f.base.variable_name(g.variable);
    case GadgetKind::Clause:
      return std::string("clause ") + clause_role_name(f.clauses[g.clause].role) + " " + f.clause_name(g.clause);
    case GadgetKind::Wire: {
      const std::string src = g.level == 1 ? f.base.variable_name(g.variable) : std::string("root");
      return "wire" + std::to_string(g.level) + " " + src + "->" + f.clause_name(g.clause);
    }
    case GadgetKind::ParityPad: return "pad";
  }
  return "?";
}

std::string rope_role(const GadgetPlan& g, std::size_t r) {
  switch (g.kind) {
    case GadgetKind::Variable:
    case GadgetKind::Wire: return r == 0 ? "bottom" : "top";
    case GadgetKind::Clause: return "rope";
    case GadgetKind::ParityPad: return "string";
  }
  return "?";
}

}  // namespace

std::string ReductionArtifact::provenance(StringId id) const {
  const GadgetPlan& g = plan.at(owner.at(id));
  for (std::size_t r = 0; r < g.ropes.size(); ++r)
    if (g.ropes[r].contains(id)) return gadget_descriptor(formula, g) + " " + rope_role(g, r);
  return gadget_descriptor(formula, g);
}

ReductionArtifact build_gadget_graph(const DnfFormula& input, std::uint32_t N, Side first,
                                     std::uint64_t string_cap) {
  if (N < 2) throw Error(ErrorCode::InvalidArgument, "N must be at least 2");
  ReductionArtifact a;
  a.formula = augment_formula(normalize_for_reduction(input));
  a.N = N;
  a.first = first;
  const auto& f = a.formula.base;
  const std::uint32_t n = f.variable_count;
  const std::uint32_t m = a.formula.real_count();
  a.occurrences = f.occurrences();
  std::uint64_t sum_k = 0;
  for (auto k : a.occurrences) sum_k += k;
  a.level1_wires = 2 * sum_k - n;
  a.level2_wires = 2 * (static_cast<std::uint64_t>(n) + m) - 1;

  if (N > 1000 || closed_form_string_count(n, m, sum_k, N) + 1 > string_cap) {
    throw Error(ErrorCode::OverBudget, "compiled instance would exceed the string cap of " +
                                           std::to_string(string_cap));
  }

  Multigraph& g = a.graph;
  auto add_gadget = [&](GadgetPlan plan) {
    const auto index = static_cast<std::uint32_t>(a.plan.size());
    a.plan.push_back(std::move(plan));
    const std::string desc = gadget_descriptor(a.formula, a.plan.back());
    for (std::size_t r = 0; r < a.plan.back().ropes.size(); ++r) {
      const Rope& rope = a.plan.back().ropes[r];
      const std::string tag = "lava." + desc + " " + rope_role(a.plan.back(), r);
      for (StringId id = rope.first_id; id < rope.first_id + rope.width; ++id) {
        a.owner.resize(std::max<std::size_t>(a.owner.size(), id + 1));
        a.owner[id] = index;
        g.string_labels()[id] = tag;
      }
    }
  };
  auto rope = [&](Endpoint x, Endpoint y, std::uint64_t width) {
    const auto ids = g.add_rope(x, y, static_cast<std::uint32_t>(width));
    return Rope{ids.front(), static_cast<std::uint32_t>(width), x, y};
  };

  std::vector<std::uint32_t> var_out(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    const CoinId out = g.add_coin();
    const CoinId mid = g.add_coin();
    g.coin_labels()[out.index] = "var " + f.variable_name(v) + " out";
    g.coin_labels()[mid.index] = "var " + f.variable_name(v) + " mid";
    var_out[v] = out.index;
    GadgetPlan p;
    p.kind = GadgetKind::Variable;
    p.variable = v;
    p.ropes.push_back(rope(Endpoint::coin(mid), Endpoint::ground(), 1));
    p.ropes.push_back(rope(Endpoint::coin(out), Endpoint::coin(mid), 1));
    p.middle_coin = mid.index;
    p.output_coin = out.index;
    add_gadget(std::move(p));
  }

  a.root_coin = g.add_coin().index;
  g.coin_labels()[a.root_coin] = "root";

  const auto clause_total = static_cast<std::uint32_t>(a.formula.clauses.size());
  std::vector<std::uint32_t> clause_in(clause_total);
  for (std::uint32_t j = 0; j < clause_total; ++j) {
    const CoinId in = g.add_coin();
    clause_in[j] = in.index;
    g.coin_labels()[in.index] = std::string("clause ") + clause_role_name(a.formula.clauses[j].role) +
                                " " + a.formula.clause_name(j);
    GadgetPlan p;
    p.kind = GadgetKind::Clause;
    p.level = 3;
    p.clause = j;
    p.ropes.push_back(rope(Endpoint::coin(in), Endpoint::ground(), a.pow(5)));
    p.input_coin = in.index;
    add_gadget(std::move(p));
  }

  auto wire = [&](std::uint32_t level, std::uint32_t input, std::uint32_t variable, std::uint32_t clause) {
    const CoinId mid = g.add_coin();
    GadgetPlan p;
    p.kind = GadgetKind::Wire;
    p.level = level;
    p.variable = variable;
    p.clause = clause;
    p.ropes.push_back(rope(Endpoint::coin(input), Endpoint::coin(mid), a.pow(2 * level - 1)));
    p.ropes.push_back(rope(Endpoint::coin(mid), Endpoint::coin(clause_in[clause]), a.pow(2 * level)));
    p.input_coin = input;
    p.middle_coin = mid.index;
    p.output_coin = clause_in[clause];
    g.coin_labels()[mid.index] = "wire" + std::to_string(level) + " mid";
    add_gadget(std::move(p));
  };

  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t j = 0; j < m; ++j) {
      const auto& c = f.clauses[j];
      if (std::binary_search(c.begin(), c.end(), v)) wire(1, var_out[v], v, j);
    }
    for (std::uint32_t i = 1; i < a.occurrences[v]; ++i) wire(1, var_out[v], v, a.formula.singleton_index(v));
  }
  for (std::uint32_t j = 0; j < m + n; ++j) wire(2, a.root_coin, 0, j);
  for (std::uint32_t i = 0; i + 1 < n + m; ++i) wire(2, a.root_coin, 0, a.formula.empty_index());

  return a;
}

ReductionArtifact fix_parity(ReductionArtifact a, Side first) {
  if (a.parity.decided) throw Error(ErrorCode::InvalidArgument, "parity pad already decided");
  a.first = first;
  ParityDecision& d = a.parity;
  d.fallon_terminal_remaining = a.formula.base.variable_count + a.level1_wires + a.level2_wires;
  d.fallon_terminal_cuts = a.graph.string_count() - d.fallon_terminal_remaining;
  // After c alternating cuts starting with P1, P1 is to move iff c is even.
  auto to_move_after = [](std::uint64_t cuts) { return cuts % 2 == 0 ? Player::P1 : Player::P2; };
  if (to_move_after(d.fallon_terminal_cuts) == a.player_of(Side::Fallon)) {
    GadgetPlan p;
    p.kind = GadgetKind::ParityPad;
    const StringId id = a.graph.add_string(Endpoint::ground(), Endpoint::ground());
    p.ropes.push_back(Rope{id, 1, Endpoint::ground(), Endpoint::ground()});
    a.owner.push_back(static_cast<std::uint32_t>(a.plan.size()));
    a.graph.string_labels()[id] = "lava.pad string";
    a.plan.push_back(std::move(p));
    d.pad_added = true;
    ++d.fallon_terminal_cuts;
  }
  d.stuck_in_fallon_terminal = to_move_after(d.fallon_terminal_cuts);
  d.stuck_in_trudy_terminal = to_move_after(d.fallon_terminal_cuts - 1);
  d.decided = true;
  return a;
}

ReductionArtifact compile_gamesat_to_lava(const DnfFormula& f, std::uint32_t N, Side first,
                                          std::uint64_t string_cap) {
  return fix_parity(build_gadget_graph(f, N, first, string_cap), first);
}

std::string ReductionArtifact::plan_json() const {
  json j;
  const auto& f = formula.base;
  j["N"] = N;
  j["variables"] = f.variable_count;
  j["real_clauses"] = formula.real_count();
  j["first"] = gamesat::side_name(first);
  j["players"] = {{"P1", gamesat::side_name(side_of(Player::P1))},
                  {"P2", gamesat::side_name(side_of(Player::P2))}};
  j["W1"] = level1_wires;
  j["W2"] = level2_wires;
  j["string_count"] = graph.string_count();
  j["coin_count"] = graph.coin_count();
  j["root_coin"] = root_coin;
  j["meets_size_bound"] = meets_size_bound();
  j["occurrences"] = occurrences;
  json clauses = json::array();
  for (std::uint32_t i = 0; i < formula.clauses.size(); ++i) {
    clauses.push_back({{"index", i},
                       {"role", clause_role_name(formula.clauses[i].role)},
                       {"name", formula.clause_name(i)},
                       {"variables", formula.clauses[i].variables}});
  }
  j["clauses"] = clauses;
  json gadgets = json::array();
  for (std::uint32_t i = 0; i < plan.size(); ++i) {
    const auto& g = plan[i];
    json ropes = json::array();
    for (std::size_t r = 0; r < g.ropes.size(); ++r) {
      ropes.push_back({{"role", rope_role(g, r)},
                       {"first", g.ropes[r].first_id},
                       {"last", g.ropes[r].first_id + g.ropes[r].width - 1},
                       {"width", g.ropes[r].width}});
    }
    json entry = {{"index", i},
                  {"kind", gadget_kind_name(g.kind)},
                  {"descriptor", gadget_descriptor(formula, g)},
                  {"level", g.level},
                  {"ropes", ropes}};
    if (g.kind == GadgetKind::Variable || (g.kind == GadgetKind::Wire && g.level == 1))
      entry["variable"] = g.variable;
    if (g.kind == GadgetKind::Wire || g.kind == GadgetKind::Clause) entry["clause"] = g.clause;
    if (g.input_coin) entry["input_coin"] = *g.input_coin;
    if (g.middle_coin) entry["middle_coin"] = *g.middle_coin;
    if (g.output_coin) entry["output_coin"] = *g.output_coin;
    gadgets.push_back(entry);
  }
  j["gadgets"] = gadgets;
  j["parity"] = {{"fallon_terminal_remaining", parity.fallon_terminal_remaining},
                 {"fallon_terminal_cuts", parity.fallon_terminal_cuts},
                 {"pad_added", parity.pad_added},
                 {"stuck_in_fallon_terminal", player_name(parity.stuck_in_fallon_terminal)},
                 {"stuck_in_trudy_terminal", player_name(parity.stuck_in_trudy_terminal)}};
  return j.dump(2) + "\n";
}

std::string ReductionArtifact::to_dot() const {
  std::vector<std::string> coin_attr(graph.coin_count());
  const char* role_color[] = {"orange", "green", "gray"};
  for (const auto& g : plan) {
    if (g.kind == GadgetKind::Clause) {
      const auto role = formula.clauses[g.clause].role;
      coin_attr[*g.input_coin] = std::string("style=filled, fillcolor=") +
                                 role_color[static_cast<int>(role)] + ", label=\"" +
                                 formula.clause_name(g.clause) + "\", class=\"clause " +
                                 clause_role_name(role) + "\"";
    } else if (g.kind == GadgetKind::Variable) {
      coin_attr[*g.output_coin] = "style=filled, fillcolor=lightblue, label=\"" +
                                  formula.base.variable_name(g.variable) + "\"";
    }
  }
  coin_attr[root_coin] = "style=filled, fillcolor=black, fontcolor=white, label=\"root\"";
  DotStyle style;
  style.coin_attributes = [&](CoinId c) { return coin_attr[c.index]; };
  style.string_attributes = [&](const StringEdge& e) -> std::string {
    const auto& g = plan[owner[e.id]];
    switch (g.kind) {
      case GadgetKind::Variable: return "color=black";
      case GadgetKind::Wire: return g.level == 1 ? "color=blue" : "color=purple";
      case GadgetKind::Clause:
        return std::string("color=") + role_color[static_cast<int>(formula.clauses[g.clause].role)];
      case GadgetKind::ParityPad: return "color=red, style=dashed";
    }
    return {};
  };
  return coinlava::to_dot(graph, style);
}

PipelineResult full_pipeline(const DnfFormula& f, std::uint32_t N, Side first, std::uint64_t string_cap) {
  PipelineResult r{compile_gamesat_to_lava(f, N, first, string_cap), {}, {}};
  r.nimstring = reduce_lava_to_nimstring(r.lava.graph, kDefaultChainLength);
  r.strings_and_coins = reduce_nimstring_to_sac(r.nimstring);
  return r;
}

std::string PipelineResult::report_json() const {
  json j;
  auto stage = [](const Multigraph& g) {
    return json{{"coins", g.coin_count()}, {"strings", g.string_count()}};
  };
  j["lava"] = stage(lava.graph);
  j["nimstring"] = stage(nimstring);
  j["strings_and_coins"] = stage(strings_and_coins);
  j["chain_length"] = kDefaultChainLength;
  j["cycle_length"] = strings_and_coins.coin_count() - nimstring.coin_count();
  j["pad_added"] = lava.parity.pad_added;
  return j.dump(2) + "\n";
}

}  // namespace coinlava::reduce
