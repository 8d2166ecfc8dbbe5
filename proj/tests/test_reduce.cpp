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

#include <memory>

#include "coinlava/error.hpp"
#include "coinlava/reduce.hpp"
#include "coinlava/solver.hpp"
#include "coinlava/verify.hpp"
#include "doctest.h"

using namespace coinlava;
using namespace coinlava::reduce;
using gamesat::Side;

namespace {

Winner winner(const Multigraph& g, GameKind kind) {
  auto s = GameState::initial(std::make_shared<const Multigraph>(g));
  return winner_of(s, solve(s, kind));
}

std::uint64_t pow_u(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("nimstring to strings-and-coins adds a ring") {
  auto lone = parse_text("coins 2\nstring 0 0 1\n");
  auto h = reduce_nimstring_to_sac(lone);
  CHECK(h.coin_count() == 5);
  CHECK(h.string_count() == 4);
  CHECK(winner(lone, GameKind::Nimstring) == Winner::P2);
  CHECK(winner(h, GameKind::StringsAndCoins) == Winner::P2);
  auto empty = reduce_nimstring_to_sac(Multigraph{});
  CHECK(empty.coin_count() == 2);
  CHECK(empty.string_count() == 2);
  CHECK(!empty.has_self_loop());
}

TEST_CASE("lava to nimstring adds a chain per coin") {
  auto g = parse_text("coins 2\nstring 0 0 1\n");
  auto h = reduce_lava_to_nimstring(g);
  CHECK(h.coin_count() == 10);
  CHECK(h.string_count() == 11);
  CHECK_THROWS_AS(reduce_lava_to_nimstring(g, 4), Error);
  auto two = parse_text("coins 1\nstring 0 0 ground\nstring 1 0 ground\n");
  CHECK(winner(two, GameKind::CoinsAreLava) == Winner::P1);
  CHECK(winner(reduce_lava_to_nimstring(two), GameKind::Nimstring) == Winner::P1);
  Multigraph none;
  none.add_coin();
  none.add_string(Endpoint::coin(0), Endpoint::ground());
  none.add_string(Endpoint::coin(0), Endpoint::ground());
  none.add_string(Endpoint::coin(0), Endpoint::ground());
  CHECK(winner(none, GameKind::CoinsAreLava) == winner(reduce_lava_to_nimstring(none), GameKind::Nimstring));
}

TEST_CASE("an isolated coin breaks winner preservation") {
  // Coin 1 has no strings: Lava never touches it, but its chain adds Nimstring moves.
  auto g = parse_text("coins 2\nstring 0 0 ground\n");
  auto h = reduce_lava_to_nimstring(g);
  CHECK(h.coin_count() == 2 + 8);
  CHECK(winner(g, GameKind::CoinsAreLava) == Winner::P2);
  CHECK(winner(h, GameKind::Nimstring) == Winner::P1);
  auto bare = parse_text("coins 1\n");
  CHECK(winner(bare, GameKind::CoinsAreLava) == Winner::P2);
  CHECK(winner(reduce_lava_to_nimstring(bare), GameKind::Nimstring) == Winner::P1);
}

TEST_CASE("augmented formula") {
  auto fig5 = augment_formula(verify::named_fixture("figure5"));
  CHECK(fig5.clauses.size() == 8);
  CHECK(fig5.real_count() == 3);
  CHECK(fig5.clauses[fig5.empty_index()].role == ClauseRole::Empty);
  CHECK(fig5.clauses[fig5.singleton_index(0)].role == ClauseRole::Singleton);
  CHECK(augment_formula(verify::named_fixture("and2")).clauses.size() == 4);
  CHECK_THROWS_AS(augment_formula(gamesat::parse_dnf("x1\n")), Error);
}

TEST_CASE("figure 5 gadget counts") {
  auto a = build_gadget_graph(verify::named_fixture("figure5"), 2, Side::Trudy);
  CHECK(a.level1_wires == 10);
  CHECK(a.level2_wires == 13);
  CHECK(a.formula.clauses.size() == 8);
}

TEST_CASE("smallest instance size and parity pad") {
  auto and2 = verify::named_fixture("and2");
  auto bare = build_gadget_graph(and2, 2, Side::Trudy);
  CHECK(bare.level1_wires == 2);
  CHECK(bare.level2_wires == 5);
  CHECK(bare.graph.string_count() == 264);
  // c_F = 264 - 9 = 255 cuts: P2 moves next. Trudy first puts Fallon there.
  auto trudy = compile_gamesat_to_lava(and2, 2, Side::Trudy);
  CHECK(trudy.parity.fallon_terminal_remaining == 9);
  CHECK(trudy.parity.pad_added);
  CHECK(trudy.graph.string_count() == 265);
  auto fallon = compile_gamesat_to_lava(and2, 2, Side::Fallon);
  CHECK(!fallon.parity.pad_added);
  CHECK(fallon.graph.string_count() == 264);
  const auto degrees_before = bare.graph.degrees();
  CHECK(trudy.graph.degrees() == degrees_before);
  const auto& pad = trudy.graph.string(264);
  CHECK(pad.a.is_ground());
  CHECK(pad.b.is_ground());
}

TEST_CASE("degree audit") {
  for (const char* name : {"and2", "majority", "figure5"}) {
    for (std::uint32_t N : {2u, 3u}) {
      auto a = compile_gamesat_to_lava(verify::named_fixture(name), N, Side::Trudy);
      const auto deg = a.graph.degrees();
      CHECK(deg[a.root_coin] == a.level2_wires * pow_u(N, 3));
      const auto k = a.occurrences;
      for (const auto& g : a.plan) {
        if (g.kind == GadgetKind::Variable) {
          REQUIRE(g.output_coin);
          CHECK(deg[*g.output_coin] == 1 + (2 * k[g.variable] - 1) * N);
        }
        if (g.kind == GadgetKind::Clause) {
          REQUIRE(g.input_coin);
          std::uint64_t expect = pow_u(N, 5);
          for (const auto& w : a.plan)
            if (w.kind == GadgetKind::Wire && w.clause == g.clause) expect += pow_u(N, 2 * w.level);
          CHECK(deg[*g.input_coin] == expect);
        }
      }
    }
  }
}

TEST_CASE("string cap and provenance") {
  auto fig5 = verify::named_fixture("figure5");
  CHECK_THROWS_AS(compile_gamesat_to_lava(fig5, 4, Side::Trudy, 1000), Error);
  auto a = compile_gamesat_to_lava(fig5, 2, Side::Fallon);
  for (StringId id = 0; id < a.graph.string_count(); ++id) CHECK(!a.provenance(id).empty());
}

TEST_CASE("pipeline is deterministic and grows as expected") {
  auto and2 = verify::named_fixture("and2");
  auto p = full_pipeline(and2, 2, Side::Fallon);
  auto q = full_pipeline(and2, 2, Side::Fallon);
  CHECK(canonical_text(p.lava.graph) == canonical_text(q.lava.graph));
  CHECK(canonical_text(p.nimstring) == canonical_text(q.nimstring));
  CHECK(canonical_text(p.strings_and_coins) == canonical_text(q.strings_and_coins));
  const auto coins = p.lava.graph.coin_count();
  CHECK(p.nimstring.string_count() == p.lava.graph.string_count() + 5 * coins);
  CHECK(p.strings_and_coins.coin_count() == 2 * p.nimstring.coin_count() + 1);
  CHECK(p.report_json() == q.report_json());
}

TEST_CASE("structure recount agrees with the closed forms") {
  for (const char* name : {"and2", "majority", "figure5"})
    for (std::uint32_t N : {2u, 3u})
      for (auto first : {Side::Trudy, Side::Fallon}) CHECK(verify::check_structure(verify::named_fixture(name), N, first).ok());
}
