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

#include <string>

#include "coinlava/coinlava.h"
#include "doctest.h"
#include "json.hpp"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  cl_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("graph handles") {
  cl_graph* g = nullptr;
  REQUIRE(cl_graph_parse("coins 2\nstring 0 0 1\n", &g) == CL_OK);
  uint32_t coins = 0, strings = 0;
  REQUIRE(cl_graph_size(g, &coins, &strings) == CL_OK);
  CHECK(coins == 2);
  CHECK(strings == 1);
  cl_solve_result r{};
  REQUIRE(cl_solve(g, CL_GAME_NIMSTRING, CL_P1, 0, &r) == CL_OK);
  CHECK(r.winner == CL_WINNER_P2);
  cl_graph* h = nullptr;
  REQUIRE(cl_reduce_nim_to_sac(g, &h) == CL_OK);
  REQUIRE(cl_solve(h, CL_GAME_SAC, CL_P1, 0, &r) == CL_OK);
  CHECK(r.winner == CL_WINNER_P2);
  char* text = nullptr;
  REQUIRE(cl_graph_text(h, &text) == CL_OK);
  CHECK(take(text).rfind("coins 5\n", 0) == 0);
  cl_graph_free(h);
  cl_graph_free(g);
}

TEST_CASE("errors carry a status and a message") {
  cl_graph* g = nullptr;
  CHECK(cl_graph_parse("nonsense", &g) == CL_PARSE);
  CHECK(g == nullptr);
  CHECK(std::string(cl_last_error_message()).size() > 0);
  CHECK(cl_graph_parse(nullptr, &g) == CL_INVALID_ARGUMENT);
  CHECK(std::string(cl_status_name(CL_OK)) == "Ok");
  cl_formula* f = nullptr;
  CHECK(cl_formula_parse("x1\n", &f) == CL_OK);
  cl_artifact* a = nullptr;
  CHECK(cl_compile(f, 2, CL_TRUDY, 0, &a) == CL_CLAUSE_TOO_SMALL);
  cl_formula_free(f);
}

TEST_CASE("compile, play and replay") {
  cl_formula* f = nullptr;
  REQUIRE(cl_formula_fixture("and2", &f) == CL_OK);
  cl_value v{};
  REQUIRE(cl_formula_solve(f, CL_TRUDY, 1, &v) == CL_OK);
  CHECK(v == CL_VALUE_FALLON_WINS);
  cl_artifact* a = nullptr;
  REQUIRE(cl_compile(f, 2, CL_FALLON, 0, &a) == CL_OK);
  cl_player fp{};
  REQUIRE(cl_artifact_player_of(a, CL_FALLON, &fp) == CL_OK);
  CHECK(fp == CL_P1);
  char *transcript = nullptr, *summary = nullptr;
  REQUIRE(cl_play(a, "fallon", "random", 4, nullptr, &transcript, &summary) == CL_OK);
  auto s = nlohmann::json::parse(take(summary));
  CHECK(s["winner"] == "P1");
  const std::string t = take(transcript);
  cl_graph* g = nullptr;
  REQUIRE(cl_artifact_graph(a, &g) == CL_OK);
  char* report = nullptr;
  int valid = 0;
  REQUIRE(cl_replay(g, CL_GAME_LAVA, t.c_str(), &report, &valid) == CL_OK);
  CHECK(valid == 1);
  CHECK(nlohmann::json::parse(take(report))["winner"] == "P1");
  REQUIRE(cl_replay(g, CL_GAME_LAVA, "ply 1 P2 cut 0\n", &report, &valid) == CL_OK);
  CHECK(valid == 0);
  cl_string_free(report);
  cl_graph_free(g);
  cl_artifact_free(a);
  cl_formula_free(f);
}

TEST_CASE("verify through the c api") {
  char* report = nullptr;
  int passed = 0;
  REQUIRE(cl_verify("lemma1", R"({"seed": 2, "count": 10})", &report, &passed) == CL_OK);
  CHECK(passed == 1);
  CHECK(nlohmann::json::parse(take(report))["total"] == 10);
  CHECK(cl_verify("lemma1", "{", &report, &passed) == CL_PARSE);
}
