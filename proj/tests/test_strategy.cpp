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
#include "coinlava/strategy.hpp"
#include "coinlava/verify.hpp"
#include "doctest.h"

using namespace coinlava;
using namespace coinlava::strategy;
using gamesat::Side;

namespace {

std::shared_ptr<const ReductionArtifact> compiled(const char* fixture, std::uint32_t N, Side first) {
  return std::make_shared<const ReductionArtifact>(
      reduce::compile_gamesat_to_lava(verify::named_fixture(fixture), N, first));
}

struct Cut {
  reduce::GadgetKind kind;
  std::uint32_t slot;
};

Cut locate(const ReductionArtifact& a, StringId id) {
  const auto& g = a.plan[a.owner[id]];
  for (std::uint32_t slot = 0; slot < g.ropes.size(); ++slot)
    if (g.ropes[slot].contains(id)) return {g.kind, slot};
  FAIL("string outside every rope");
  return {g.kind, 0};
}

}  // namespace

TEST_CASE("fallon opens by setting a variable false") {
  auto a = compiled("and2", 2, Side::Fallon);
  LavaBoard b(a);
  auto fallon = make_policy(PolicyKind::FallonScript, a, Player::P1, 0);
  auto cut = locate(*a, fallon->choose(b, std::nullopt));
  CHECK(cut.kind == reduce::GadgetKind::Variable);
  CHECK(cut.slot == 0);
}

TEST_CASE("trudy opens by setting a variable true") {
  auto a = compiled("majority", 2, Side::Trudy);
  LavaBoard b(a);
  auto trudy = make_policy(PolicyKind::TrudyScript, a, Player::P1, 0);
  auto cut = locate(*a, trudy->choose(b, std::nullopt));
  CHECK(cut.kind == reduce::GadgetKind::Variable);
  CHECK(cut.slot == 1);
}

TEST_CASE("scripts refuse the wrong seat") {
  auto a = compiled("and2", 2, Side::Trudy);
  CHECK_THROWS_AS(make_policy(PolicyKind::FallonScript, a, Player::P1, 0), Error);
}

TEST_CASE("lava board tracks legality") {
  auto a = compiled("and2", 2, Side::Fallon);
  LavaBoard b(a);
  CHECK(b.alive_count() == a->graph.string_count());
  auto id = b.lowest_legal();
  REQUIRE(id);
  b.cut(*id);
  CHECK(!b.alive(*id));
  CHECK(b.mover() == Player::P2);
  CHECK_THROWS_AS(b.cut(*id), Error);
}

TEST_CASE("fallon script beats uniform random on the conjunction") {
  auto a = compiled("and2", 2, Side::Fallon);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto fallon = make_policy(PolicyKind::FallonScript, a, Player::P1, seed);
    auto rnd = make_policy(PolicyKind::UniformRandom, a, Player::P2, seed);
    auto r = playout(a, *fallon, *rnd);
    REQUIRE(r.winner == Player::P1);
    CHECK(r.census.shape == TerminalShape::Fallon);
    CHECK(!r.hp_majority_violated);
  }
}

TEST_CASE("trudy script wins the majority formula and leaves one clause string") {
  auto a = compiled("majority", 2, Side::Trudy);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto trudy = make_policy(PolicyKind::TrudyScript, a, Player::P1, seed);
    auto rnd = make_policy(PolicyKind::UniformRandom, a, Player::P2, seed);
    auto r = playout(a, *trudy, *rnd);
    REQUIRE(r.winner == Player::P1);
    CHECK(r.census.shape == TerminalShape::Trudy);
    CHECK(r.census.clauses_with_one == 1);
  }
}

TEST_CASE("script against script on the conjunction reaches the fallon terminal") {
  for (auto first : {Side::Trudy, Side::Fallon}) {
    auto a = compiled("and2", 2, first);
    const Player fp = a->player_of(Side::Fallon);
    auto fallon = make_policy(PolicyKind::FallonScript, a, fp, 1);
    auto trudy = make_policy(PolicyKind::TrudyScript, a, opponent(fp), 1);
    auto& p1 = fp == Player::P1 ? *fallon : *trudy;
    auto& p2 = fp == Player::P1 ? *trudy : *fallon;
    auto r = playout(a, p1, p2, true);
    CHECK(r.winner == fp);
    CHECK(r.stuck == a->player_of(Side::Trudy));
    CHECK(r.census.shape == TerminalShape::Fallon);
    CHECK(r.census.remaining == 9);
    CHECK(r.transcript.size() == r.plies);
  }
}

TEST_CASE("random play terminates and the tracker phase never decreases") {
  auto a = compiled("figure5", 2, Side::Fallon);
  auto fallon = make_policy(PolicyKind::FallonScript, a, Player::P1, 3);
  auto rnd = make_policy(PolicyKind::UniformRandom, a, Player::P2, 3);
  LavaBoard b(a);
  std::optional<StringId> last[2];
  int phase = 0;
  while (b.has_legal_move()) {
    const int me = static_cast<int>(b.mover());
    Policy& p = me == 0 ? *fallon : *rnd;
    const StringId id = p.choose(b, last[1 - me]);
    CHECK(b.legal(id));
    b.cut(id);
    last[me] = id;
    CHECK(fallon->phase() >= phase);
    phase = fallon->phase();
    REQUIRE(b.ply() <= a->graph.string_count());
  }
}

TEST_CASE("greedy disabler plays only legal cuts") {
  auto a = compiled("majority", 2, Side::Trudy);
  auto rnd = make_policy(PolicyKind::UniformRandom, a, Player::P1, 9);
  auto greedy = make_policy(PolicyKind::GreedyDisabler, a, Player::P2, 9);
  CHECK_NOTHROW(playout(a, *rnd, *greedy));
}
