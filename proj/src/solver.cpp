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

#include "coinlava/solver.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_map>

#include "coinlava/error.hpp"

namespace coinlava {

namespace {

using Mask = std::uint64_t;

// The alive strings renumbered 0..k-1 in id order, with per-coin incidence
// masks so that degree tests are a single AND.
struct Compact {
  std::vector<StringId> ids;
  std::vector<int> end_a, end_b;  // compact coin index, -1 for ground
  std::vector<Mask> coin_inc;
  Mask full = 0;

  int freed(Mask mask, int s) const {
    const Mask bit = Mask{1} << s;
    int f = 0;
    if (end_a[s] >= 0 && (mask & coin_inc[end_a[s]]) == bit) ++f;
    if (end_b[s] >= 0 && end_b[s] != end_a[s] && (mask & coin_inc[end_b[s]]) == bit) ++f;
    return f;
  }

  // Freeing moves first, then ascending id.
  int ordered_moves(Mask mask, int* out, int* freed_out) const {
    int n = 0;
    for (Mask m = mask; m; m &= m - 1) {
      const int s = std::countr_zero(m);
      const int f = freed(mask, s);
      if (f > 0) {
        out[n] = s;
        freed_out[n++] = f;
      }
    }
    for (Mask m = mask; m; m &= m - 1) {
      const int s = std::countr_zero(m);
      const int f = freed(mask, s);
      if (f == 0) {
        out[n] = s;
        freed_out[n++] = 0;
      }
    }
    return n;
  }
};

Compact compact(const GameState& s, std::uint32_t budget) {
  if (s.board().has_self_loop())
    throw Error(ErrorCode::DegenerateInput, "board contains a self-loop");
  Compact c;
  c.ids = s.alive_ids();
  if (c.ids.size() > budget) {
    throw Error(ErrorCode::BudgetExceeded, std::to_string(c.ids.size()) +
                                               " alive strings exceed the search budget of " +
                                               std::to_string(budget));
  }
  std::vector<int> coin_map(s.board().coin_count(), -1);
  auto local = [&](Endpoint e) {
    if (e.is_ground()) return -1;
    int& slot = coin_map[e.coin_id().index];
    if (slot < 0) {
      slot = static_cast<int>(c.coin_inc.size());
      c.coin_inc.push_back(0);
    }
    return slot;
  };
  for (std::size_t i = 0; i < c.ids.size(); ++i) {
    const auto& e = s.board().string(c.ids[i]);
    const int la = local(e.a);
    const int lb = local(e.b);
    c.end_a.push_back(la);
    c.end_b.push_back(lb);
    if (la >= 0) c.coin_inc[la] |= Mask{1} << i;
    if (lb >= 0) c.coin_inc[lb] |= Mask{1} << i;
  }
  c.full = c.ids.empty() ? 0 : (c.ids.size() == 64 ? ~Mask{0} : (Mask{1} << c.ids.size()) - 1);
  return c;
}

class MemoSearch {
 public:
  MemoSearch(const Compact& c, GameKind kind) : c_(c), kind_(kind) {}

  bool win(Mask mask) {
    if (mask == 0) return false;
    if (auto it = bool_memo_.find(mask); it != bool_memo_.end()) return it->second;
    ++visited_;
    int moves[64], freed[64];
    const int n = c_.ordered_moves(mask, moves, freed);
    bool result = false;
    for (int i = 0; i < n && !result; ++i) {
      const Mask next = mask & ~(Mask{1} << moves[i]);
      if (kind_ == GameKind::CoinsAreLava) {
        if (freed[i] == 0 && !win(next)) result = true;
      } else if (freed[i] > 0) {
        result = win(next);
      } else {
        result = !win(next);
      }
    }
    bool_memo_.emplace(mask, result);
    return result;
  }

  int net(Mask mask) {
    if (mask == 0) return 0;
    if (auto it = int_memo_.find(mask); it != int_memo_.end()) return it->second;
    ++visited_;
    int moves[64], freed[64];
    const int n = c_.ordered_moves(mask, moves, freed);
    int best = std::numeric_limits<int>::min();
    for (int i = 0; i < n; ++i) {
      const Mask next = mask & ~(Mask{1} << moves[i]);
      const int v = freed[i] > 0 ? freed[i] + net(next) : -net(next);
      best = std::max(best, v);
    }
    int_memo_.emplace(mask, best);
    return best;
  }

  std::uint64_t visited() const { return visited_; }

 private:
  const Compact& c_;
  GameKind kind_;
  std::unordered_map<Mask, bool> bool_memo_;
  std::unordered_map<Mask, int> int_memo_;
  std::uint64_t visited_ = 0;
};

class NaiveSearch {
 public:
  NaiveSearch(const Compact& c, GameKind kind) : c_(c), kind_(kind) {}

  bool win(Mask mask) {
    ++visited_;
    bool result = false;
    for (Mask m = mask; m; m &= m - 1) {
      const int s = std::countr_zero(m);
      const int f = c_.freed(mask, s);
      const Mask next = mask & ~(Mask{1} << s);
      bool v;
      if (kind_ == GameKind::CoinsAreLava) {
        if (f > 0) continue;
        v = !win(next);
      } else {
        v = f > 0 ? win(next) : !win(next);
      }
      result = result || v;
    }
    return result;
  }

  int net(Mask mask) {
    ++visited_;
    if (mask == 0) return 0;
    int best = std::numeric_limits<int>::min();
    for (Mask m = mask; m; m &= m - 1) {
      const int s = std::countr_zero(m);
      const int f = c_.freed(mask, s);
      const Mask next = mask & ~(Mask{1} << s);
      best = std::max(best, f > 0 ? f + net(next) : -net(next));
    }
    return best;
  }

  std::uint64_t visited() const { return visited_; }

 private:
  const Compact& c_;
  GameKind kind_;
  std::uint64_t visited_ = 0;
};

template <typename Search>
SolveResult run_root(const Compact& c, GameKind kind, Search& search) {
  SolveResult r;
  r.game = kind;
  const Mask root = c.full;
  int moves[64], freed[64];
  const int n = c.ordered_moves(root, moves, freed);
  if (kind == GameKind::StringsAndCoins) {
    int best = 0;
    for (int i = 0; i < n; ++i) {
      const Mask next = root & ~(Mask{1} << moves[i]);
      const int v = freed[i] > 0 ? freed[i] + search.net(next) : -search.net(next);
      if (!r.principal_move || v > best) {
        best = v;
        r.principal_move = c.ids[moves[i]];
      }
    }
    r.net_score_for_mover = best;
  } else {
    for (int i = 0; i < n; ++i) {
      const Mask next = root & ~(Mask{1} << moves[i]);
      bool wins;
      if (kind == GameKind::CoinsAreLava) {
        if (freed[i] > 0) continue;
        wins = !search.win(next);
      } else {
        wins = freed[i] > 0 ? search.win(next) : !search.win(next);
      }
      if (wins) {
        r.winner_for_mover = true;
        r.principal_move = c.ids[moves[i]];
        break;
      }
    }
  }
  r.states_visited = search.visited() + 1;
  return r;
}

}  // namespace

Winner winner_of(const GameState& s, const SolveResult& r) {
  const Player mover = s.mover();
  if (r.game != GameKind::StringsAndCoins)
    return as_winner(r.winner_for_mover ? mover : opponent(mover));
  const int lead = s.score(mover) - s.score(opponent(mover)) + r.net_score_for_mover;
  if (lead > 0) return as_winner(mover);
  if (lead < 0) return as_winner(opponent(mover));
  return Winner::Draw;
}

SolveResult solve(const GameState& s, GameKind kind, std::uint32_t budget) {
  if (budget > kMaxSearchBudget)
    throw Error(ErrorCode::InvalidArgument,
                "search budget above " + std::to_string(kMaxSearchBudget) + " is not supported");
  const Compact c = compact(s, budget);
  MemoSearch search(c, kind);
  return run_root(c, kind, search);
}

SolveResult naive_solve(const GameState& s, GameKind kind) {
  const Compact c = compact(s, kNaiveBudget);
  NaiveSearch search(c, kind);
  return run_root(c, kind, search);
}

std::vector<LoonyWitness> find_loony_witnesses(const GameState& s) {
  const auto& g = s.board();
  std::vector<std::uint32_t> deg(g.coin_count(), 0);
  std::vector<std::vector<StringId>> inc(g.coin_count());
  for (const auto& e : g.strings()) {
    if (!s.is_alive(e.id) || e.is_self_loop()) continue;
    if (e.a.is_coin()) {
      ++deg[e.a.coin_id().index];
      inc[e.a.coin_id().index].push_back(e.id);
    }
    if (e.b.is_coin()) {
      ++deg[e.b.coin_id().index];
      inc[e.b.coin_id().index].push_back(e.id);
    }
  }

  std::vector<LoonyWitness> out;
  for (const auto& e : g.strings()) {
    if (!s.is_alive(e.id) || !e.a.is_coin() || !e.b.is_coin() || e.is_self_loop()) continue;
    for (int orient = 0; orient < 2; ++orient) {
      const CoinId A = orient == 0 ? e.a.coin_id() : e.b.coin_id();
      const CoinId B = orient == 0 ? e.b.coin_id() : e.a.coin_id();
      if (deg[A.index] != 1 || deg[B.index] != 2) continue;
      const auto& around_b = inc[B.index];
      const StringId b = around_b[0] == e.id ? around_b[1] : around_b[0];
      const auto& eb = g.string(b);
      const Endpoint far = eb.a.is_coin() && eb.a.coin_id() == B ? eb.b : eb.a;
      // B must be adjacent to exactly one degree-1 coin.
      if (far.is_coin() && deg[far.coin_id().index] == 1) continue;
      out.push_back(LoonyWitness{e.id, b, A, B});
    }
  }
  return out;
}

std::vector<StringId> loony_first_move(const GameState& s, const LoonyWitness& w,
                                       std::uint32_t budget) {
  auto alive = s.alive();
  alive[w.a] = false;
  alive[w.b] = false;
  const GameState rest = s.with_alive(std::move(alive));
  const SolveResult r = solve(rest, GameKind::Nimstring, budget);
  if (r.winner_for_mover) return {w.a, w.b};
  return {w.b};
}

}  // namespace coinlava
