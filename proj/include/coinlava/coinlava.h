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

/* C interface to libcoinlava. All objects are opaque handles owned by the
 * caller and released with the matching *_free function. Strings returned
 * through char** are heap copies released with cl_string_free. On failure a
 * function returns a nonzero cl_status and cl_last_error_message() describes
 * it; output pointers are left untouched. */

#ifndef COINLAVA_COINLAVA_H_
#define COINLAVA_COINLAVA_H_

#include <stdint.h>

#if defined(COINLAVA_BUILDING)
#define CL_API __attribute__((visibility("default")))
#else
#define CL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cl_status {
  CL_OK = 0,
  CL_INVALID_ARGUMENT = 1,
  CL_PARSE = 2,
  CL_INVALID_ENDPOINT = 3,
  CL_ZERO_WIDTH = 4,
  CL_ZERO_LENGTH = 5,
  CL_ILLEGAL_MOVE = 6,
  CL_DEGENERATE_INPUT = 7,
  CL_BUDGET_EXCEEDED = 8,
  CL_UNSET_VARIABLE = 9,
  CL_CLAUSE_TOO_SMALL = 10,
  CL_UNUSED_VARIABLE = 11,
  CL_CHAIN_TOO_SHORT = 12,
  CL_OVER_BUDGET = 13,
  CL_PHASE_INVARIANT_BROKEN = 14,
  CL_ORACLE_REQUIRED = 15,
  CL_ILLEGAL_BY_POLICY = 16,
  CL_IO = 17,
  CL_INTERNAL = 99
} cl_status;

typedef enum cl_game { CL_GAME_SAC = 0, CL_GAME_NIMSTRING = 1, CL_GAME_LAVA = 2 } cl_game;
typedef enum cl_player { CL_P1 = 0, CL_P2 = 1 } cl_player;
typedef enum cl_winner { CL_WINNER_P1 = 0, CL_WINNER_P2 = 1, CL_WINNER_DRAW = 2 } cl_winner;
typedef enum cl_side { CL_TRUDY = 0, CL_FALLON = 1 } cl_side;
typedef enum cl_value { CL_VALUE_TRUDY_WINS = 0, CL_VALUE_FALLON_WINS = 1, CL_VALUE_UNRESOLVED = 2 } cl_value;

typedef struct cl_graph cl_graph;
typedef struct cl_formula cl_formula;
typedef struct cl_artifact cl_artifact;

CL_API const char* cl_version(void);
CL_API const char* cl_status_name(cl_status status);
/* Message of the last failure on the calling thread. */
CL_API const char* cl_last_error_message(void);
CL_API void cl_string_free(char* s);

/* ---- multigraphs ---- */
CL_API cl_status cl_graph_parse(const char* text, cl_graph** out);
CL_API cl_status cl_graph_text(const cl_graph* g, char** out);
CL_API cl_status cl_graph_dot(const cl_graph* g, char** out);
CL_API cl_status cl_graph_size(const cl_graph* g, uint32_t* coins, uint32_t* strings);
CL_API void cl_graph_free(cl_graph* g);

/* ---- solving ---- */
typedef struct cl_solve_result {
  cl_winner winner;          /* overall, under optimal play */
  int32_t score_p1;          /* final Strings-and-Coins score; 0 for other games */
  int32_t score_p2;
  int32_t mover_wins;        /* 1 if the player to move wins */
  int32_t net_score_for_mover;
  int64_t principal_move;    /* -1 if none */
  uint64_t states_visited;
} cl_solve_result;

/* budget 0 selects the default. */
CL_API cl_status cl_solve(const cl_graph* g, cl_game game, cl_player first, uint32_t budget, cl_solve_result* out);

/* ---- reductions ---- */
CL_API cl_status cl_reduce_nim_to_sac(const cl_graph* g, cl_graph** out);
/* chain_len 0 selects the default of 5. */
CL_API cl_status cl_reduce_lava_to_nim(const cl_graph* g, uint32_t chain_len, cl_graph** out);

/* ---- GameSAT formulas ---- */
CL_API cl_status cl_formula_parse(const char* text, cl_formula** out);
/* Named fixtures: and2, majority, figure5. */
CL_API cl_status cl_formula_fixture(const char* name, cl_formula** out);
CL_API cl_status cl_formula_text(const cl_formula* f, char** out);
CL_API cl_status cl_formula_solve(const cl_formula* f, cl_side first, int allow_skip, cl_value* out);
CL_API void cl_formula_free(cl_formula* f);

/* ---- GameSAT to Coins-are-Lava ---- */
/* string_cap 0 selects the default. */
CL_API cl_status cl_compile(const cl_formula* f, uint32_t N, cl_side first, uint64_t string_cap, cl_artifact** out);
CL_API cl_status cl_artifact_graph(const cl_artifact* a, cl_graph** out);
CL_API cl_status cl_artifact_plan_json(const cl_artifact* a, char** out);
CL_API cl_status cl_artifact_dot(const cl_artifact* a, char** out);
/* Player mapped to the given side. */
CL_API cl_status cl_artifact_player_of(const cl_artifact* a, cl_side side, cl_player* out);
CL_API void cl_artifact_free(cl_artifact* a);

/* Compiles to Lava, then Nimstring, then Strings-and-Coins. Any output
 * pointer may be NULL. */
CL_API cl_status cl_pipeline(const cl_formula* f, uint32_t N, cl_side first, uint64_t string_cap, cl_artifact** lava,
                             cl_graph** nimstring, cl_graph** sac, char** report_json);

/* ---- playouts ---- */
/* Policies: fallon, trudy, random, greedy. oracle_moves may be NULL; when
 * given, it replaces the exact GameSAT oracle with a line such as
 * "x1=1 x2=0 skip". Either of transcript and summary_json may be NULL. */
CL_API cl_status cl_play(const cl_artifact* a, const char* policy_p1, const char* policy_p2, uint64_t seed,
                         const char* oracle_moves, char** transcript, char** summary_json);

/* Checks a transcript move by move against a fresh game on g. *valid is 1
 * when every line is a legal move by the right player. */
CL_API cl_status cl_replay(const cl_graph* g, cl_game game, const char* transcript, char** report_json, int* valid);

/* ---- verification ---- */
/* check: oracle, lemma1, lemma3, loony, structure, skip-dominance,
 * strategies, parity. options_json may be NULL. *passed is 1 when the
 * report has no failures and no skips. */
CL_API cl_status cl_verify(const char* check, const char* options_json, char** report_json, int* passed);

/* ---- generators ---- */
CL_API cl_status cl_generate_graph(uint64_t seed, uint32_t max_coins, uint32_t max_strings, double ground_prob,
                                   int allow_isolated, cl_graph** out);
CL_API cl_status cl_generate_formula(uint64_t seed, uint32_t max_n, uint32_t max_m, cl_formula** out);

#ifdef __cplusplus
}
#endif

#endif /* COINLAVA_COINLAVA_H_ */
