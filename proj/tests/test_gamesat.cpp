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

#include "coinlava/error.hpp"
#include "coinlava/gamesat.hpp"
#include "coinlava/verify.hpp"
#include "doctest.h"

using namespace coinlava;
using namespace coinlava::gamesat;

TEST_CASE("evaluate") {
  auto and2 = parse_dnf("x1 x2\n");
  CHECK(evaluate(and2, {Value::True, Value::True}));
  CHECK(!evaluate(and2, {Value::True, Value::False}));
  auto fig5 = verify::named_fixture("figure5");
  CHECK(fig5.variable_count == 4);
  CHECK(evaluate(fig5, {Value::False, Value::False, Value::True, Value::True}));
}

TEST_CASE("evaluate is monotone in each variable") {
  for (const auto& f : verify::enumerate_formulas(3, 3)) {
    const std::uint32_t n = f.variable_count;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<Value> a(n);
      for (std::uint32_t v = 0; v < n; ++v) a[v] = (bits >> v) & 1 ? Value::True : Value::False;
      if (!evaluate(f, a)) continue;
      for (std::uint32_t v = 0; v < n; ++v) {
        auto b = a;
        b[v] = Value::True;
        CHECK(evaluate(f, b));
      }
    }
  }
}

TEST_CASE("move generation") {
  GameSatState s{{Value::Unset, Value::Unset}, Side::Trudy};
  CHECK(gamesat_moves(s).size() == 5);
  s.assignment[0] = Value::True;
  CHECK(gamesat_moves(s).size() == 3);
  s.assignment[1] = Value::False;
  CHECK(s.terminal());
  CHECK(gamesat_moves(s).empty());
  GameSatState t{{Value::Unset}, Side::Trudy};
  auto next = apply(t, Move::set(0, true));
  CHECK(next.assignment[0] == Value::True);
  CHECK(next.mover == Side::Fallon);
  CHECK_THROWS_AS(apply(next, Move::set(0, false)), Error);
}

TEST_CASE("game values") {
  auto single = parse_dnf("x1\n");
  CHECK(solve_gamesat(single, Side::Trudy, true) == GameValue::TrudyWins);
  auto and2 = verify::named_fixture("and2");
  for (auto first : {Side::Trudy, Side::Fallon}) {
    CHECK(solve_gamesat(and2, first, true) == GameValue::FallonWins);
    CHECK(solve_gamesat(and2, first, false) == GameValue::FallonWins);
  }
  CHECK(solve_gamesat(verify::named_fixture("majority"), Side::Trudy, true) == GameValue::TrudyWins);
  CHECK(solve_gamesat(verify::named_fixture("majority"), Side::Fallon, true) == GameValue::FallonWins);
}

TEST_CASE("winning moves favour the good value") {
  GameSatTable table(verify::named_fixture("majority"), true);
  GameSatState s{{Value::Unset, Value::Unset, Value::Unset}, Side::Trudy};
  auto moves = table.winning_moves(s);
  REQUIRE(!moves.empty());
  CHECK(moves.front().kind == Move::Kind::Set);
  CHECK(moves.front().value);
}

TEST_CASE("skips never change the value") {
  CHECK(skip_dominance_check(parse_dnf("x1\n"), Side::Trudy));
  CHECK(skip_dominance_check(parse_dnf("x1\n"), Side::Fallon));
  for (auto first : {Side::Trudy, Side::Fallon}) CHECK(skip_dominance_check(verify::named_fixture("and2"), first));
  auto report = verify::check_skip_dominance(3, 3);
  CHECK(report.ok());
  CHECK(report.total == report.passed);
}

TEST_CASE("dnf text round-trips") {
  auto f = verify::named_fixture("figure5");
  auto back = parse_dnf(format_dnf(f));
  CHECK(back.clauses == f.clauses);
  CHECK(back.variable_count == f.variable_count);
}
