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

#include <random>

#include "coinlava/error.hpp"
#include "coinlava/multigraph.hpp"
#include "coinlava/verify.hpp"
#include "doctest.h"

using namespace coinlava;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("add_coin counts from zero") {
  Multigraph g;
  CHECK(g.add_coin().index == 0);
  g.add_coin();
  g.add_coin();
  CHECK(g.add_coin().index == 3);
  CHECK(g.coin_count() == 4);
}

TEST_CASE("add_string updates degrees and keeps parallel strings distinct") {
  Multigraph g;
  auto c0 = g.add_coin();
  auto c1 = g.add_coin();
  auto s0 = g.add_string(Endpoint::coin(c0), Endpoint::coin(c1));
  auto s1 = g.add_string(Endpoint::coin(c0), Endpoint::coin(c1));
  CHECK(s0 != s1);
  CHECK(g.degree(c0) == 2);
  CHECK(g.degree(c1) == 2);
  g.add_string(Endpoint::ground(), Endpoint::ground());
  CHECK(g.degree(c0) == 2);
  CHECK(code_of([&] { g.add_string(Endpoint::coin(7), Endpoint::ground()); }) == ErrorCode::InvalidEndpoint);
}

TEST_CASE("add_rope adds width parallel strings") {
  Multigraph g;
  auto c0 = g.add_coin();
  auto c1 = g.add_coin();
  auto ids = g.add_rope(Endpoint::coin(c0), Endpoint::coin(c1), 5);
  CHECK(ids.size() == 5);
  CHECK(g.degree(c0) == 5);
  g.add_rope(Endpoint::coin(c0), Endpoint::ground(), 3);
  CHECK(g.degree(c0) == 8);
  CHECK(code_of([&] { g.add_rope(Endpoint::coin(c0), Endpoint::ground(), 0); }) == ErrorCode::ZeroWidth);
}

TEST_CASE("disjoint union and cycles") {
  Multigraph g;
  auto a = g.add_coin();
  auto b = g.add_coin();
  g.add_string(Endpoint::coin(a), Endpoint::coin(b));
  auto h = disjoint_union(g, cycle_graph(3));
  CHECK(h.coin_count() == 5);
  CHECK(h.string_count() == 4);
  CHECK(disjoint_union(g, Multigraph{}) == g);
  auto cc = disjoint_union(cycle_graph(3), cycle_graph(3));
  CHECK(cc.coin_count() == 6);
  CHECK(cc.string_count() == 6);
  for (auto d : cycle_graph(3).degrees()) CHECK(d == 2);
  auto c2 = cycle_graph(2);
  CHECK(c2.string_count() == 2);
  CHECK(c2.degree(CoinId{0}) == 2);
  CHECK(cycle_graph(1).has_self_loop());
  CHECK(code_of([] { cycle_graph(0); }) == ErrorCode::ZeroLength);
}

TEST_CASE("canonical text format") {
  Multigraph g;
  g.add_string(Endpoint::ground(), Endpoint::ground());
  CHECK(canonical_text(g) == "coins 0\nstring 0 ground ground\n");
  CHECK(code_of([] { parse_text("coins 1\nstring 0 0 5\n"); }) == ErrorCode::InvalidEndpoint);
  CHECK(code_of([] { parse_text("bogus\n"); }) == ErrorCode::Parse);
}

TEST_CASE("random graphs round-trip and satisfy the handshake identity") {
  verify::RandomGraphSpec spec{0, 6, 10, 0.3, true};
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = verify::instance_rng(2026, 0, i);
    auto g = verify::random_multigraph(spec, rng);
    const auto text = canonical_text(g);
    auto back = parse_text(text);
    CHECK(back == g);
    CHECK(canonical_text(back) == text);
    std::uint64_t sum = 0;
    for (auto d : g.degrees()) sum += d;
    std::uint64_t ends = 0;
    for (const auto& s : g.strings()) ends += (s.a.is_coin() ? 1 : 0) + (s.b.is_coin() ? 1 : 0);
    CHECK(sum == ends);
  }
}

TEST_CASE("dot export lists every string") {
  auto g = cycle_graph(3);
  const auto dot = to_dot(g);
  CHECK(dot.find("graph") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t p = dot.find("--"); p != std::string::npos; p = dot.find("--", p + 2)) ++edges;
  CHECK(edges == 3);
}
