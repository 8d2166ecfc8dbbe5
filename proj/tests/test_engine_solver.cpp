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

#include "coinlava/engine.hpp"
#include "coinlava/error.hpp"
#include "coinlava/solver.hpp"
#include "coinlava/verify.hpp"
#include "doctest.h"

using namespace coinlava;

namespace {

std::shared_ptr<const Multigraph> board(const char* text) {
  return std::make_shared<const Multigraph>(parse_text(text));
}

GameState start(const char* text, Player first = Player::P1) { return GameState::initial(board(text), first); }

const char* kLoneCoinCoin = "coins 2\nstring 0 0 1\n";
const char* kLoneCoinGround = "coins 1\nstring 0 0 ground\n";
const char* kTwoGround = "coins 1\nstring 0 0 ground\nstring 1 0 ground\n";
// A - B - ground: a = (A,B), b = (B,ground).
const char* kFig4b = "coins 2\nstring 0 0 1\nstring 1 1 ground\n";

}  // namespace

TEST_CASE("lava legality") {
  auto two = start(kTwoGround);
  CHECK(legal_moves(two, GameKind::CoinsAreLava).size() == 2);
  auto one = start(kLoneCoinGround);
  CHECK(legal_moves(one, GameKind::CoinsAreLava).empty());
  CHECK(legal_moves(one, GameKind::Nimstring).size() == 1);
  CHECK_THROWS_AS(apply_move(one, GameKind::CoinsAreLava, 0), Error);
}

TEST_CASE("completing a coin keeps the turn") {
  auto s = apply_move(start(kLoneCoinGround), GameKind::StringsAndCoins, 0);
  CHECK(s.score(Player::P1) == 1);
  CHECK(s.mover() == Player::P1);
  CHECK(s.alive_count() == 0);
  auto t = apply_move(start(kLoneCoinCoin), GameKind::Nimstring, 0);
  CHECK(t.mover() == Player::P1);
  auto out = is_terminal(t, GameKind::Nimstring);
  REQUIRE(out);
  CHECK(out->winner == Winner::P2);
}

TEST_CASE("terminal positions") {
  auto empty = std::make_shared<const Multigraph>();
  auto nim = is_terminal(GameState::initial(empty, Player::P2), GameKind::Nimstring);
  REQUIRE(nim);
  CHECK(nim->winner == Winner::P1);
  auto lava = is_terminal(GameState::initial(empty, Player::P1), GameKind::CoinsAreLava);
  REQUIRE(lava);
  CHECK(lava->winner == Winner::P2);
  // P1 takes both coins of a coin-coin string: 2-0.
  auto s = apply_move(start(kLoneCoinCoin), GameKind::StringsAndCoins, 0);
  auto sac = is_terminal(s, GameKind::StringsAndCoins);
  REQUIRE(sac);
  CHECK(sac->winner == Winner::P1);
  CHECK(sac->final_score[0] == 2);
  CHECK(!is_terminal(start(kTwoGround), GameKind::CoinsAreLava));
}

TEST_CASE("self-loops are rejected by the engine") {
  auto g = std::make_shared<const Multigraph>(cycle_graph(1));
  CHECK_THROWS_AS(apply_move(GameState::initial(g), GameKind::Nimstring, 0), Error);
  CHECK_THROWS_AS(solve(GameState::initial(g), GameKind::Nimstring), Error);
}

TEST_CASE("solver on hand-checked positions") {
  auto lone = start(kLoneCoinCoin);
  CHECK(winner_of(lone, solve(lone, GameKind::Nimstring)) == Winner::P2);
  auto two = start(kTwoGround);
  CHECK(winner_of(two, solve(two, GameKind::CoinsAreLava)) == Winner::P1);
  auto fig = start(kFig4b);
  CHECK(winner_of(fig, solve(fig, GameKind::Nimstring)) == Winner::P1);
  // Triangle: whichever string P1 cuts, P2 then takes all three coins.
  auto tri = GameState::initial(std::make_shared<const Multigraph>(cycle_graph(3)));
  CHECK(solve(tri, GameKind::StringsAndCoins).net_score_for_mover == -3);
  CHECK(naive_solve(tri, GameKind::StringsAndCoins).net_score_for_mover == -3);
  auto empty = GameState::initial(std::make_shared<const Multigraph>());
  CHECK(winner_of(empty, solve(empty, GameKind::CoinsAreLava)) == Winner::P2);
}

TEST_CASE("solver respects its budget") {
  Multigraph g;
  auto c = g.add_coin();
  g.add_rope(Endpoint::coin(c), Endpoint::ground(), 30);
  auto s = GameState::initial(std::make_shared<const Multigraph>(g));
  CHECK_THROWS_AS(solve(s, GameKind::Nimstring), Error);
  CHECK_NOTHROW(solve(s, GameKind::Nimstring, 30));
}

TEST_CASE("memoized and naive solvers agree on random boards") {
  verify::RandomGraphSpec spec{1, 5, 8, 0.3, true};
  for (std::uint64_t i = 0; i < 60; ++i) {
    auto rng = verify::instance_rng(11, 1, i);
    auto s = GameState::initial(std::make_shared<const Multigraph>(verify::random_multigraph(spec, rng)));
    for (auto kind : {GameKind::StringsAndCoins, GameKind::Nimstring, GameKind::CoinsAreLava}) {
      auto fast = solve(s, kind);
      auto slow = naive_solve(s, kind);
      CHECK(winner_of(s, fast) == winner_of(s, slow));
      if (kind == GameKind::StringsAndCoins) CHECK(fast.net_score_for_mover == slow.net_score_for_mover);
      else CHECK(fast.winner_for_mover == slow.winner_for_mover);
    }
  }
}

TEST_CASE("loony witnesses") {
  CHECK(find_loony_witnesses(start(kFig4b)).size() == 1);
  // A - B - C with C on two ground strings: b leads into a degree-3 coin.
  auto fig4a = start("coins 3\nstring 0 0 1\nstring 1 1 2\nstring 2 2 ground\nstring 3 2 ground\n");
  auto w = find_loony_witnesses(fig4a);
  REQUIRE(w.size() == 1);
  CHECK(w[0].a == 0);
  CHECK(w[0].b == 1);
  // Path with two degree-1 ends: the middle coin touches two of them.
  CHECK(find_loony_witnesses(start("coins 3\nstring 0 0 1\nstring 1 1 2\n")).empty());
}

TEST_CASE("loony opening follows the remainder value") {
  // Remainder empty: the mover would be stuck after [a, b], so [b].
  auto fig = start(kFig4b);
  auto w = find_loony_witnesses(fig);
  REQUIRE(w.size() == 1);
  CHECK(loony_first_move(fig, w[0]) == std::vector<StringId>{1});
  // Remainder is C on two ground strings, a first-player Nimstring win: [a, b].
  auto won = start("coins 3\nstring 0 0 1\nstring 1 1 2\nstring 2 2 ground\nstring 3 2 ground\n");
  auto wa = find_loony_witnesses(won);
  REQUIRE(wa.size() == 1);
  CHECK(loony_first_move(won, wa[0]) == std::vector<StringId>{0, 1});
  // Remainder is a lone C-ground string, a first-player loss: [b].
  auto lost = start("coins 3\nstring 0 0 1\nstring 1 1 2\nstring 2 2 ground\n");
  auto wl = find_loony_witnesses(lost);
  REQUIRE(wl.size() == 1);
  CHECK(loony_first_move(lost, wl[0]) == std::vector<StringId>{1});
}

TEST_CASE("planted loony boards are first-player wins") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    auto rng = verify::instance_rng(5, 2, i);
    auto s = GameState::initial(std::make_shared<const Multigraph>(verify::planted_loony(12, rng)));
    REQUIRE(!find_loony_witnesses(s).empty());
    CHECK(winner_of(s, solve(s, GameKind::Nimstring)) == Winner::P1);
  }
}
