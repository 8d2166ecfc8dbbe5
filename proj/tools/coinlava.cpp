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

// coinlava: command-line front end over the libcoinlava C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coinlava/coinlava.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

// Library failure carrying the status for exit-code selection.
struct ApiFailure : std::runtime_error {
  ApiFailure(cl_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  cl_status status;
};

void check(cl_status s) {
  if (s != CL_OK) throw ApiFailure(s, std::string(cl_status_name(s)) + ": " + cl_last_error_message());
}

struct GraphDeleter {
  void operator()(cl_graph* g) const { cl_graph_free(g); }
};
struct FormulaDeleter {
  void operator()(cl_formula* f) const { cl_formula_free(f); }
};
struct ArtifactDeleter {
  void operator()(cl_artifact* a) const { cl_artifact_free(a); }
};
using Graph = std::unique_ptr<cl_graph, GraphDeleter>;
using Formula = std::unique_ptr<cl_formula, FormulaDeleter>;
using Artifact = std::unique_ptr<cl_artifact, ArtifactDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  cl_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiFailure(CL_IO, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ApiFailure(CL_IO, "cannot write " + path);
  std::cerr << "wrote " << path << "\n";
}

Graph load_graph(const std::string& path) {
  cl_graph* g = nullptr;
  check(cl_graph_parse(read_file(path).c_str(), &g));
  return Graph(g);
}

cl_side parse_side(const std::string& s) {
  if (s == "trudy") return CL_TRUDY;
  if (s == "fallon") return CL_FALLON;
  throw CLI::ValidationError("--first", "expected trudy or fallon, got '" + s + "'");
}

cl_game parse_game(const std::string& s) {
  if (s == "sac") return CL_GAME_SAC;
  if (s == "nimstring") return CL_GAME_NIMSTRING;
  if (s == "lava") return CL_GAME_LAVA;
  throw CLI::ValidationError("--game", "expected sac, nimstring or lava, got '" + s + "'");
}

// Formula source shared by the GameSAT commands.
struct FormulaArgs {
  std::string file;
  std::string fixture;

  void add(CLI::App* app) {
    auto* f = app->add_option("--formula", file, "Formula file (.dnf): one clause of variable names per line");
    auto* x = app->add_option("--fixture", fixture, "Named formula: and2, majority, figure5");
    f->excludes(x);
  }
  Formula load() const {
    cl_formula* out = nullptr;
    if (!file.empty())
      check(cl_formula_parse(read_file(file).c_str(), &out));
    else if (!fixture.empty())
      check(cl_formula_fixture(fixture.c_str(), &out));
    else
      throw CLI::ValidationError("formula", "one of --formula or --fixture is required");
    return Formula(out);
  }
};

struct CompileArgs {
  FormulaArgs formula;
  std::uint32_t N = 2;
  std::string first = "trudy";
  std::uint64_t cap = 0;

  void add(CLI::App* app) {
    formula.add(app);
    app->add_option("--N", N, "Rope width base N (>= 2)")->capture_default_str();
    app->add_option("--first", first, "Side mapped to P1: trudy or fallon")->capture_default_str();
    app->add_option("--string-cap", cap, "Refuse to build more strings than this (0 = 5000000)");
  }
  Artifact compile() const {
    auto f = formula.load();
    cl_artifact* a = nullptr;
    check(cl_compile(f.get(), N, parse_side(first), cap, &a));
    return Artifact(a);
  }
};

// ---------------------------------------------------------------- commands

int run_solve(const std::string& in, const std::string& game, const std::string& first, std::uint32_t budget) {
  auto g = load_graph(in);
  cl_solve_result r{};
  check(cl_solve(g.get(), parse_game(game), first == "P2" ? CL_P2 : CL_P1, budget, &r));
  const char* w = r.winner == CL_WINNER_P1 ? "P1" : r.winner == CL_WINNER_P2 ? "P2" : "Draw";
  std::cout << "winner=" << w << " score=" << r.score_p1 << "-" << r.score_p2 << " states=" << r.states_visited
            << "\n";
  return kExitOk;
}

int run_verify(const std::string& check_name, const nlohmann::json& options, const std::string& out) {
  char* report = nullptr;
  int passed = 0;
  check(cl_verify(check_name.c_str(), options.dump().c_str(), &report, &passed));
  write_output(out, take(report));
  std::cerr << check_name << ": " << (passed ? "PASS" : "FAIL") << "\n";
  return passed ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coinlava: Strings-and-Coins, Nimstring and Coins-are-Lava solver, reductions and checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cl_version()));

  // solve
  std::string solve_in, solve_game, solve_first = "P1";
  std::uint32_t solve_budget = 0;
  auto* solve = app.add_subcommand("solve", "Solve a board exactly");
  solve->add_option("--in", solve_in, "Board file (.coins)")->required();
  solve->add_option("--game", solve_game, "sac, nimstring or lava")->required();
  solve->add_option("--first", solve_first, "Player to move: P1 or P2")->check(CLI::IsMember({"P1", "P2"}));
  solve->add_option("--budget", solve_budget, "Maximum alive strings searched (0 = 24, at most 63)");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Run a reduction");
  reduce->require_subcommand(1);
  std::string red_in, red_out;
  std::uint32_t chain_len = 0;
  auto* nim2sac = reduce->add_subcommand("nim-to-sac", "Nimstring board to Strings-and-Coins board");
  nim2sac->add_option("--in", red_in, "Input board")->required();
  nim2sac->add_option("--out", red_out, "Output board (default stdout)");
  auto* lava2nim = reduce->add_subcommand("lava-to-nim", "Coins-are-Lava board to Nimstring board");
  lava2nim->add_option("--in", red_in, "Input board")->required();
  lava2nim->add_option("--out", red_out, "Output board (default stdout)");
  lava2nim->add_option("--chain-len", chain_len, "Chain length per coin (default 5, at least 5)");
  CompileArgs red_compile;
  std::string red_plan, red_dot;
  auto* gs2lava = reduce->add_subcommand("gamesat-to-lava", "Compile a positive DNF formula to a Lava board");
  red_compile.add(gs2lava);
  gs2lava->add_option("--out", red_out, "Output board (default stdout)");
  gs2lava->add_option("--plan", red_plan, "Gadget plan JSON");
  gs2lava->add_option("--dot", red_dot, "Gadget-coloured DOT");
  CompileArgs pipe_compile;
  std::string pipe_lava, pipe_nim, pipe_sac, pipe_report;
  auto* pipeline = reduce->add_subcommand("pipeline", "GameSAT to Lava to Nimstring to Strings-and-Coins");
  pipe_compile.add(pipeline);
  pipeline->add_option("--lava", pipe_lava, "Lava board output");
  pipeline->add_option("--nim", pipe_nim, "Nimstring board output");
  pipeline->add_option("--sac", pipe_sac, "Strings-and-Coins board output");
  pipeline->add_option("--report", pipe_report, "Report JSON (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification campaign; exit 1 if it fails");
  verify->require_subcommand(1);
  std::uint64_t v_seed = 0, v_count = 0, v_seeds = 200;
  std::uint32_t v_jobs = 1, v_max_strings = 0, v_max_coins = 0, v_max_n = 3, v_max_m = 3;
  std::vector<std::uint32_t> v_Ns;
  std::string v_first, v_out;
  FormulaArgs v_formula;
  bool v_allow_isolated = false;
  struct VerifyCmd {
    std::string name;
    CLI::App* app;
    bool seeded;
  };
  std::vector<VerifyCmd> vcmds;
  auto add_verify = [&](const std::string& name, const std::string& help, bool seeded) {
    auto* c = verify->add_subcommand(name, help);
    if (seeded) c->add_option("--seed", v_seed, "Campaign seed (required)")->required();
    c->add_option("--jobs", v_jobs, "Worker threads")->capture_default_str();
    c->add_option("--out", v_out, "Report JSON (default stdout)");
    vcmds.push_back({name, c, seeded});
    return c;
  };
  auto* v_oracle = add_verify("oracle", "Memoized solver against plain recursion on random boards", true);
  v_oracle->add_option("--count", v_count, "Boards per game kind (default 200)");
  v_oracle->add_option("--max-strings", v_max_strings, "Strings per board (default 10)");
  auto* v_l1 = add_verify("lemma1", "Nimstring[G] winner equals Strings-and-Coins[G + ring] winner", true);
  v_l1->add_option("--count", v_count, "Boards (default 100)");
  v_l1->add_option("--max-coins", v_max_coins, "Coins per board (default 4)");
  v_l1->add_option("--max-strings", v_max_strings, "Strings per board (default 7)");
  auto* v_l3 = add_verify("lemma3", "Lava[G] winner equals Nimstring[G + chains] winner", true);
  v_l3->add_option("--count", v_count, "Boards (default 100)");
  v_l3->add_option("--max-coins", v_max_coins, "Coins per board (default 2)");
  v_l3->add_option("--max-strings", v_max_strings, "Strings per board (default 4)");
  v_l3->add_option("--chain-len", chain_len, "Chain length (default 5)");
  v_l3->add_flag("--allow-isolated", v_allow_isolated, "Also generate coins without strings");
  auto* v_loony = add_verify("loony", "Planted loony boards are first-player wins", true);
  v_loony->add_option("--count", v_count, "Boards (default 100)");
  v_loony->add_option("--max-strings", v_max_strings, "Strings per board (default 12)");
  auto* v_struct = add_verify("structure", "Recount compiled boards against the closed forms", true);
  v_struct->add_option("--count", v_count, "Random formulas besides figure5 (default 50)");
  v_struct->add_option("--N", v_Ns, "Widths to compile at (default 2 3)");
  v_struct->add_option("--first", v_first, "With --formula/--fixture: trudy or fallon");
  v_formula.add(v_struct);
  auto* v_skip = add_verify("skip-dominance", "Skips never change GameSAT values (exhaustive)", false);
  v_skip->add_option("--max-n", v_max_n, "Variables")->capture_default_str();
  v_skip->add_option("--max-m", v_max_m, "Clauses")->capture_default_str();
  auto* v_strat = add_verify("strategies", "Scripted strategy campaign", true);
  FormulaArgs v_strat_formula;
  v_strat_formula.add(v_strat);
  v_strat->add_option("--first", v_first, "trudy or fallon (default trudy)");
  v_strat->add_option("--N", v_Ns, "Widths to try (default 2 3)");
  v_strat->add_option("--seeds", v_seeds, "Playouts per opponent")->capture_default_str();
  auto* v_parity = add_verify("parity", "Stuck player in canonical terminals matches the parity rule", true);
  v_parity->add_option("--count", v_count, "Random formulas besides the fixtures (default 30)");
  v_parity->add_option("--N", v_Ns, "Width (default 2)");

  // play
  CompileArgs play_compile;
  std::string pa, pb, play_transcript, play_summary, play_oracle;
  std::uint64_t play_seed = 0;
  auto* play = app.add_subcommand("play", "Play out a compiled Lava board between two policies");
  play_compile.add(play);
  play->add_option("--policy-a", pa, "P1 policy: fallon, trudy, random, greedy")->required();
  play->add_option("--policy-b", pb, "P2 policy: fallon, trudy, random, greedy")->required();
  play->add_option("--seed", play_seed, "Playout seed")->required();
  play->add_option("--transcript", play_transcript, "Transcript output (.transcript)");
  play->add_option("--summary", play_summary, "Summary JSON (default stdout)");
  play->add_option("--oracle-moves", play_oracle, "GameSAT line for the scripts, e.g. \"x1=1 x2=0 skip\"");

  // gen
  auto* gen = app.add_subcommand("gen", "Write random fixtures");
  gen->require_subcommand(1);
  std::uint64_t gen_seed = 0;
  std::uint32_t gen_coins = 4, gen_strings = 7, gen_n = 3, gen_m = 3;
  double gen_ground = 0.3;
  bool gen_isolated = false;
  std::string gen_out;
  auto* gen_graph = gen->add_subcommand("graph", "Random multigraph (.coins)");
  gen_graph->add_option("--seed", gen_seed, "Seed")->required();
  gen_graph->add_option("--max-coins", gen_coins, "Maximum coins")->capture_default_str();
  gen_graph->add_option("--max-strings", gen_strings, "Maximum strings")->capture_default_str();
  gen_graph->add_option("--ground-prob", gen_ground, "Chance that an endpoint is the ground")->capture_default_str();
  gen_graph->add_flag("--allow-isolated", gen_isolated, "Allow coins without strings");
  gen_graph->add_option("--out", gen_out, "Output (default stdout)");
  auto* gen_formula = gen->add_subcommand("formula", "Random positive DNF (.dnf)");
  gen_formula->add_option("--seed", gen_seed, "Seed")->required();
  gen_formula->add_option("--max-n", gen_n, "Maximum variables")->capture_default_str();
  gen_formula->add_option("--max-m", gen_m, "Maximum clauses")->capture_default_str();
  gen_formula->add_option("--out", gen_out, "Output (default stdout)");

  // export-dot
  std::string dot_in, dot_out;
  CompileArgs dot_compile;
  auto* dot = app.add_subcommand("export-dot", "Write Graphviz DOT for a board or a compiled formula");
  dot->add_option("--in", dot_in, "Board file (.coins)");
  dot_compile.add(dot);
  dot->add_option("--out", dot_out, "Output (default stdout)");

  // replay
  std::string rep_in, rep_game = "lava", rep_transcript, rep_out;
  CompileArgs rep_compile;
  auto* replay = app.add_subcommand("replay", "Check a transcript move by move");
  replay->add_option("--in", rep_in, "Board file (.coins)");
  rep_compile.add(replay);
  replay->add_option("--game", rep_game, "sac, nimstring or lava")->capture_default_str();
  replay->add_option("--transcript", rep_transcript, "Transcript file")->required();
  replay->add_option("--out", rep_out, "Report JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return run_solve(solve_in, solve_game, solve_first, solve_budget);

    if (*nim2sac || *lava2nim) {
      auto g = load_graph(red_in);
      cl_graph* h = nullptr;
      check(*nim2sac ? cl_reduce_nim_to_sac(g.get(), &h) : cl_reduce_lava_to_nim(g.get(), chain_len, &h));
      Graph out(h);
      char* text = nullptr;
      check(cl_graph_text(out.get(), &text));
      write_output(red_out, take(text));
      return kExitOk;
    }
    if (*gs2lava) {
      auto a = red_compile.compile();
      cl_graph* g = nullptr;
      check(cl_artifact_graph(a.get(), &g));
      Graph graph(g);
      char* text = nullptr;
      check(cl_graph_text(graph.get(), &text));
      write_output(red_out, take(text));
      if (!red_plan.empty()) {
        char* plan = nullptr;
        check(cl_artifact_plan_json(a.get(), &plan));
        write_output(red_plan, take(plan));
      }
      if (!red_dot.empty()) {
        char* d = nullptr;
        check(cl_artifact_dot(a.get(), &d));
        write_output(red_dot, take(d));
      }
      return kExitOk;
    }
    if (*pipeline) {
      auto f = pipe_compile.formula.load();
      cl_artifact* lava = nullptr;
      cl_graph *nim = nullptr, *sac = nullptr;
      char* report = nullptr;
      check(cl_pipeline(f.get(), pipe_compile.N, parse_side(pipe_compile.first), pipe_compile.cap, &lava, &nim, &sac,
                        &report));
      Artifact la(lava);
      Graph ng(nim), sg(sac);
      const std::string rep = take(report);
      auto save = [&](const std::string& path, cl_graph* g) {
        if (path.empty()) return;
        char* text = nullptr;
        check(cl_graph_text(g, &text));
        write_output(path, take(text));
      };
      if (!pipe_lava.empty()) {
        cl_graph* lg = nullptr;
        check(cl_artifact_graph(la.get(), &lg));
        Graph lgraph(lg);
        save(pipe_lava, lgraph.get());
      }
      save(pipe_nim, ng.get());
      save(pipe_sac, sg.get());
      write_output(pipe_report, rep);
      return kExitOk;
    }

    for (const auto& vc : vcmds) {
      if (!*vc.app) continue;
      nlohmann::json o = {{"jobs", v_jobs}};
      if (vc.seeded) o["seed"] = v_seed;
      if (v_count) o["count"] = v_count;
      if (v_max_strings) o["max_strings"] = v_max_strings;
      if (v_max_coins) o["max_coins"] = v_max_coins;
      if (chain_len) o["chain_len"] = chain_len;
      if (v_allow_isolated) o["allow_isolated"] = true;
      if (!v_first.empty()) o["first"] = v_first;
      if (vc.name == "skip-dominance") {
        o["max_n"] = v_max_n;
        o["max_m"] = v_max_m;
      }
      if (vc.name == "parity") {
        if (!v_Ns.empty()) o["N"] = v_Ns.front();
      } else if (!v_Ns.empty()) {
        o["Ns"] = v_Ns;
      }
      const FormulaArgs& fa = vc.name == "strategies" ? v_strat_formula : v_formula;
      if (!fa.file.empty()) o["formula"] = read_file(fa.file);
      if (!fa.fixture.empty()) o["fixture"] = fa.fixture;
      if (vc.name == "strategies") o["seeds"] = v_seeds;
      return run_verify(vc.name, o, v_out);
    }

    if (*play) {
      auto a = play_compile.compile();
      char *transcript = nullptr, *summary = nullptr;
      check(cl_play(a.get(), pa.c_str(), pb.c_str(), play_seed, play_oracle.empty() ? nullptr : play_oracle.c_str(),
                    play_transcript.empty() ? nullptr : &transcript, &summary));
      if (!play_transcript.empty()) write_output(play_transcript, take(transcript));
      write_output(play_summary, take(summary));
      return kExitOk;
    }

    if (*gen_graph) {
      cl_graph* g = nullptr;
      check(cl_generate_graph(gen_seed, gen_coins, gen_strings, gen_ground, gen_isolated ? 1 : 0, &g));
      Graph graph(g);
      char* text = nullptr;
      check(cl_graph_text(graph.get(), &text));
      write_output(gen_out, take(text));
      return kExitOk;
    }
    if (*gen_formula) {
      cl_formula* f = nullptr;
      check(cl_generate_formula(gen_seed, gen_n, gen_m, &f));
      Formula formula(f);
      char* text = nullptr;
      check(cl_formula_text(formula.get(), &text));
      write_output(gen_out, take(text));
      return kExitOk;
    }

    if (*dot) {
      char* text = nullptr;
      if (!dot_in.empty()) {
        auto g = load_graph(dot_in);
        check(cl_graph_dot(g.get(), &text));
      } else {
        auto a = dot_compile.compile();
        check(cl_artifact_dot(a.get(), &text));
      }
      write_output(dot_out, take(text));
      return kExitOk;
    }

    if (*replay) {
      Graph g;
      if (!rep_in.empty()) {
        g = load_graph(rep_in);
      } else {
        auto a = rep_compile.compile();
        cl_graph* ag = nullptr;
        check(cl_artifact_graph(a.get(), &ag));
        g.reset(ag);
      }
      char* report = nullptr;
      int valid = 0;
      check(cl_replay(g.get(), parse_game(rep_game), read_file(rep_transcript).c_str(), &report, &valid));
      write_output(rep_out, take(report));
      return valid ? kExitOk : kExitFailed;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ApiFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool usage = e.status == CL_INVALID_ARGUMENT || e.status == CL_PARSE || e.status == CL_IO;
    return usage ? kExitUsage : kExitFailed;
  }
  return kExitUsage;
}
