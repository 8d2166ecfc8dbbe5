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

#include "coinlava/coinlava.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "coinlava/error.hpp"
#include "coinlava/gamesat.hpp"
#include "coinlava/multigraph.hpp"
#include "coinlava/reduce.hpp"
#include "coinlava/solver.hpp"
#include "coinlava/strategy.hpp"
#include "coinlava/verify.hpp"
#include "json.hpp"

using namespace coinlava;

struct cl_graph {
  Multigraph g;
};
struct cl_formula {
  gamesat::DnfFormula f;
};
struct cl_artifact {
  std::shared_ptr<const reduce::ReductionArtifact> a;
};

namespace {

thread_local std::string last_error;

cl_status fail(cl_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename F>
cl_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return CL_OK;
  } catch (const Error& e) {
    return fail(static_cast<cl_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(CL_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CL_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CL_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

GameKind kind_of(cl_game game) {
  switch (game) {
    case CL_GAME_SAC: return GameKind::StringsAndCoins;
    case CL_GAME_NIMSTRING: return GameKind::Nimstring;
    case CL_GAME_LAVA: return GameKind::CoinsAreLava;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown game kind");
}

gamesat::Side side_of(cl_side s) { return s == CL_FALLON ? gamesat::Side::Fallon : gamesat::Side::Trudy; }
cl_player to_c(Player p) { return p == Player::P1 ? CL_P1 : CL_P2; }

std::vector<gamesat::Move> parse_oracle_moves(const gamesat::DnfFormula& f, const std::string& text) {
  std::vector<gamesat::Move> moves;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "skip") {
      moves.push_back(gamesat::Move::skip());
      continue;
    }
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Parse, "oracle move '" + tok + "' is not name=0|1 or skip");
    const std::string name = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    bool value;
    if (val == "1" || val == "true" || val == "T")
      value = true;
    else if (val == "0" || val == "false" || val == "F")
      value = false;
    else
      throw Error(ErrorCode::Parse, "oracle move '" + tok + "' has no truth value");
    std::optional<std::uint32_t> var;
    for (std::uint32_t v = 0; v < f.variable_count; ++v)
      if (f.variable_name(v) == name) var = v;
    if (!var) throw Error(ErrorCode::Parse, "oracle move names unknown variable '" + name + "'");
    moves.push_back(gamesat::Move::set(*var, value));
  }
  return moves;
}

}  // namespace

extern "C" {

const char* cl_version(void) { return "1.0.0"; }

const char* cl_status_name(cl_status status) {
  if (status == CL_OK) return "Ok";
  if (status == CL_INTERNAL) return "Internal";
  if (status >= CL_INVALID_ARGUMENT && status <= CL_IO) return error_code_name(static_cast<ErrorCode>(status));
  return "Unknown";
}

const char* cl_last_error_message(void) { return last_error.c_str(); }

void cl_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------- graphs

cl_status cl_graph_parse(const char* text, cl_graph** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new cl_graph{parse_text(text)};
  });
}

cl_status cl_graph_text(const cl_graph* g, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = dup(canonical_text(g->g));
  });
}

cl_status cl_graph_dot(const cl_graph* g, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = dup(to_dot(g->g));
  });
}

cl_status cl_graph_size(const cl_graph* g, uint32_t* coins, uint32_t* strings) {
  return guarded([&] {
    require(g, "graph");
    if (coins) *coins = g->g.coin_count();
    if (strings) *strings = g->g.string_count();
  });
}

void cl_graph_free(cl_graph* g) { delete g; }

// ---------------------------------------------------------------- solving

cl_status cl_solve(const cl_graph* g, cl_game game, cl_player first, uint32_t budget, cl_solve_result* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    const GameKind kind = kind_of(game);
    const Player mover = first == CL_P2 ? Player::P2 : Player::P1;
    const auto s = GameState::initial(std::make_shared<const Multigraph>(g->g), mover);
    const auto r = solve(s, kind, budget == 0 ? kDefaultSearchBudget : budget);
    cl_solve_result res{};
    const Winner w = winner_of(s, r);
    res.winner = w == Winner::P1 ? CL_WINNER_P1 : w == Winner::P2 ? CL_WINNER_P2 : CL_WINNER_DRAW;
    res.mover_wins = r.winner_for_mover ? 1 : 0;
    res.net_score_for_mover = r.net_score_for_mover;
    res.principal_move = r.principal_move ? static_cast<int64_t>(*r.principal_move) : -1;
    res.states_visited = r.states_visited;
    if (kind == GameKind::StringsAndCoins) {
      // Every coin with a string is eventually freed and scored.
      const auto deg = g->g.degrees();
      int scoreable = 0;
      for (auto d : deg) scoreable += d > 0 ? 1 : 0;
      const int mine = (scoreable + r.net_score_for_mover) / 2;
      const int theirs = scoreable - mine;
      res.score_p1 = mover == Player::P1 ? mine : theirs;
      res.score_p2 = mover == Player::P1 ? theirs : mine;
    }
    *out = res;
  });
}

// ---------------------------------------------------------------- reductions

cl_status cl_reduce_nim_to_sac(const cl_graph* g, cl_graph** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = new cl_graph{reduce::reduce_nimstring_to_sac(g->g)};
  });
}

cl_status cl_reduce_lava_to_nim(const cl_graph* g, uint32_t chain_len, cl_graph** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = new cl_graph{reduce::reduce_lava_to_nimstring(g->g, chain_len == 0 ? reduce::kDefaultChainLength : chain_len)};
  });
}

// ---------------------------------------------------------------- formulas

cl_status cl_formula_parse(const char* text, cl_formula** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new cl_formula{gamesat::parse_dnf(text)};
  });
}

cl_status cl_formula_fixture(const char* name, cl_formula** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = new cl_formula{verify::named_fixture(name)};
  });
}

cl_status cl_formula_text(const cl_formula* f, char** out) {
  return guarded([&] {
    require(f, "formula");
    require(out, "out");
    *out = dup(gamesat::format_dnf(f->f));
  });
}

cl_status cl_formula_solve(const cl_formula* f, cl_side first, int allow_skip, cl_value* out) {
  return guarded([&] {
    require(f, "formula");
    require(out, "out");
    switch (gamesat::solve_gamesat(f->f, side_of(first), allow_skip != 0)) {
      case gamesat::GameValue::TrudyWins: *out = CL_VALUE_TRUDY_WINS; break;
      case gamesat::GameValue::FallonWins: *out = CL_VALUE_FALLON_WINS; break;
      case gamesat::GameValue::Unresolved: *out = CL_VALUE_UNRESOLVED; break;
    }
  });
}

void cl_formula_free(cl_formula* f) { delete f; }

// ---------------------------------------------------------------- artifacts

cl_status cl_compile(const cl_formula* f, uint32_t N, cl_side first, uint64_t string_cap, cl_artifact** out) {
  return guarded([&] {
    require(f, "formula");
    require(out, "out");
    auto a = reduce::compile_gamesat_to_lava(f->f, N, side_of(first),
                                             string_cap == 0 ? reduce::kDefaultStringCap : string_cap);
    *out = new cl_artifact{std::make_shared<const reduce::ReductionArtifact>(std::move(a))};
  });
}

cl_status cl_artifact_graph(const cl_artifact* a, cl_graph** out) {
  return guarded([&] {
    require(a, "artifact");
    require(out, "out");
    *out = new cl_graph{a->a->graph};
  });
}

cl_status cl_artifact_plan_json(const cl_artifact* a, char** out) {
  return guarded([&] {
    require(a, "artifact");
    require(out, "out");
    *out = dup(a->a->plan_json());
  });
}

cl_status cl_artifact_dot(const cl_artifact* a, char** out) {
  return guarded([&] {
    require(a, "artifact");
    require(out, "out");
    *out = dup(a->a->to_dot());
  });
}

cl_status cl_artifact_player_of(const cl_artifact* a, cl_side side, cl_player* out) {
  return guarded([&] {
    require(a, "artifact");
    require(out, "out");
    *out = to_c(a->a->player_of(side_of(side)));
  });
}

void cl_artifact_free(cl_artifact* a) { delete a; }

cl_status cl_pipeline(const cl_formula* f, uint32_t N, cl_side first, uint64_t string_cap, cl_artifact** lava,
                      cl_graph** nimstring, cl_graph** sac, char** report_json) {
  return guarded([&] {
    require(f, "formula");
    auto r = reduce::full_pipeline(f->f, N, side_of(first), string_cap == 0 ? reduce::kDefaultStringCap : string_cap);
    // Allocate everything before handing anything out.
    std::unique_ptr<char, decltype(&std::free)> report(report_json ? dup(r.report_json()) : nullptr, &std::free);
    std::unique_ptr<cl_graph> nim(nimstring ? new cl_graph{std::move(r.nimstring)} : nullptr);
    std::unique_ptr<cl_graph> sc(sac ? new cl_graph{std::move(r.strings_and_coins)} : nullptr);
    std::unique_ptr<cl_artifact> art(
        lava ? new cl_artifact{std::make_shared<const reduce::ReductionArtifact>(std::move(r.lava))} : nullptr);
    if (report_json) *report_json = report.release();
    if (nimstring) *nimstring = nim.release();
    if (sac) *sac = sc.release();
    if (lava) *lava = art.release();
  });
}

// ---------------------------------------------------------------- playouts

cl_status cl_play(const cl_artifact* a, const char* policy_p1, const char* policy_p2, uint64_t seed,
                  const char* oracle_moves, char** transcript, char** summary_json) {
  return guarded([&] {
    require(a, "artifact");
    require(policy_p1, "policy_p1");
    require(policy_p2, "policy_p2");
    auto oracle = oracle_moves ? strategy::GameSatOracle::scripted(parse_oracle_moves(a->a->formula.base, oracle_moves))
                               : strategy::GameSatOracle::none();
    auto p1 = strategy::make_policy(strategy::parse_policy_kind(policy_p1), a->a, Player::P1, seed, oracle);
    auto p2 = strategy::make_policy(strategy::parse_policy_kind(policy_p2), a->a, Player::P2, seed ^ 0x5bd1e995ULL,
                                    oracle);
    const auto r = strategy::playout(a->a, *p1, *p2, transcript != nullptr);
    std::unique_ptr<char, decltype(&std::free)> t(transcript ? dup(r.transcript_text()) : nullptr, &std::free);
    std::unique_ptr<char, decltype(&std::free)> s(summary_json ? dup(r.summary_json()) : nullptr, &std::free);
    if (transcript) *transcript = t.release();
    if (summary_json) *summary_json = s.release();
  });
}

cl_status cl_replay(const cl_graph* g, cl_game game, const char* transcript, char** report_json, int* valid) {
  return guarded([&] {
    require(g, "graph");
    require(transcript, "transcript");
    const GameKind kind = kind_of(game);
    GameState s = GameState::initial(std::make_shared<const Multigraph>(g->g));
    nlohmann::json report;
    bool ok = true;
    std::uint64_t plies = 0, line_no = 0;
    std::istringstream in(transcript);
    std::string line;
    while (ok && std::getline(in, line)) {
      ++line_no;
      std::istringstream words(line);
      std::string ply_word, player, cut_word;
      std::uint64_t k = 0, id = 0;
      if (!(words >> ply_word) || ply_word.empty() || ply_word[0] == '#') continue;
      auto reject = [&](const std::string& why) {
        ok = false;
        report["error"] = {{"line", line_no}, {"message", why}};
      };
      if (ply_word != "ply" || !(words >> k >> player >> cut_word >> id) || cut_word != "cut") {
        reject("expected 'ply <k> <P1|P2> cut <id>'");
        break;
      }
      if (k != plies + 1) {
        reject("ply " + std::to_string(k) + " out of sequence");
        break;
      }
      if (player != player_name(s.mover())) {
        reject(player + " moved but " + player_name(s.mover()) + " was to move");
        break;
      }
      if (is_terminal(s, kind)) {
        reject("move after the game ended");
        break;
      }
      try {
        s = apply_move(s, kind, static_cast<StringId>(id));
      } catch (const Error& e) {
        reject(e.what());
        break;
      }
      ++plies;
    }
    report["valid"] = ok;
    report["plies"] = plies;
    report["game"] = game_kind_name(kind);
    report["to_move"] = player_name(s.mover());
    report["score"] = {s.score(Player::P1), s.score(Player::P2)};
    if (auto end = is_terminal(s, kind)) {
      report["finished"] = true;
      report["winner"] = winner_name(end->winner);
    } else {
      report["finished"] = false;
    }
    if (report_json) *report_json = dup(report.dump(2) + "\n");
    if (valid) *valid = ok ? 1 : 0;
  });
}

// ---------------------------------------------------------------- verification

cl_status cl_verify(const char* check, const char* options_json, char** report_json, int* passed) {
  return guarded([&] {
    require(check, "check");
    const auto options = options_json && *options_json ? nlohmann::json::parse(options_json) : nlohmann::json::object();
    const auto r = verify::run_check(check, options);
    if (report_json) *report_json = dup(r.to_json());
    if (passed) *passed = r.ok() ? 1 : 0;
  });
}

// ---------------------------------------------------------------- generators

cl_status cl_generate_graph(uint64_t seed, uint32_t max_coins, uint32_t max_strings, double ground_prob,
                            int allow_isolated, cl_graph** out) {
  return guarded([&] {
    require(out, "out");
    if (ground_prob < 0.0 || ground_prob > 1.0)
      throw Error(ErrorCode::InvalidArgument, "ground probability must be in [0, 1]");
    auto rng = verify::instance_rng(seed, 101, 0);
    verify::RandomGraphSpec spec{1, std::max<uint32_t>(max_coins, 1), max_strings, ground_prob, allow_isolated != 0};
    *out = new cl_graph{verify::random_multigraph(spec, rng)};
  });
}

cl_status cl_generate_formula(uint64_t seed, uint32_t max_n, uint32_t max_m, cl_formula** out) {
  return guarded([&] {
    require(out, "out");
    auto rng = verify::instance_rng(seed, 103, 0);
    *out = new cl_formula{verify::random_formula(max_n, max_m, rng)};
  });
}

}  // extern "C"
