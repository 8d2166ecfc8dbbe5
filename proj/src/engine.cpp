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

#include "coinlava/engine.hpp"

#include "coinlava/error.hpp"

namespace coinlava {

const char* game_kind_name(GameKind kind) {
  switch (kind) {
    case GameKind::StringsAndCoins: return "sac";
    case GameKind::Nimstring: return "nimstring";
    case GameKind::CoinsAreLava: return "lava";
  }
  return "?";
}

const char* player_name(Player p) { return p == Player::P1 ? "P1" : "P2"; }

const char* winner_name(Winner w) {
  switch (w) {
    case Winner::P1: return "P1";
    case Winner::P2: return "P2";
    case Winner::Draw: return "Draw";
  }
  return "?";
}

GameKind parse_game_kind(const std::string& text) {
  if (text == "sac" || text == "strings-and-coins") return GameKind::StringsAndCoins;
  if (text == "nimstring" || text == "nim") return GameKind::Nimstring;
  if (text == "lava" || text == "coins-are-lava") return GameKind::CoinsAreLava;
  throw Error(ErrorCode::InvalidArgument, "unknown game '" + text + "'");
}

Player parse_player(const std::string& text) {
  if (text == "P1" || text == "p1" || text == "1") return Player::P1;
  if (text == "P2" || text == "p2" || text == "2") return Player::P2;
  throw Error(ErrorCode::InvalidArgument, "unknown player '" + text + "'");
}

GameState GameState::initial(std::shared_ptr<const Multigraph> board, Player first) {
  GameState s;
  s.alive_.assign(board->string_count(), true);
  s.board_ = std::move(board);
  s.mover_ = first;
  return s;
}

std::uint32_t GameState::alive_count() const {
  std::uint32_t n = 0;
  for (bool b : alive_) n += b ? 1 : 0;
  return n;
}

std::vector<StringId> GameState::alive_ids() const {
  std::vector<StringId> ids;
  for (StringId i = 0; i < alive_.size(); ++i)
    if (alive_[i]) ids.push_back(i);
  return ids;
}

std::uint32_t GameState::alive_degree(CoinId c) const {
  std::uint32_t d = 0;
  for (const auto& s : board_->strings()) {
    if (!alive_[s.id]) continue;
    if (s.a.is_coin() && s.a.coin_id() == c) ++d;
    if (s.b.is_coin() && s.b.coin_id() == c) ++d;
  }
  return d;
}

int GameState::coins_freed_by(StringId id) const {
  const auto& s = board_->string(id);
  int freed = 0;
  if (s.a.is_coin() && alive_degree(s.a.coin_id()) == 1) ++freed;
  if (s.b.is_coin() && !(s.b == s.a) && alive_degree(s.b.coin_id()) == 1) ++freed;
  return freed;
}

GameState GameState::with_alive(std::vector<bool> alive) const {
  if (alive.size() != alive_.size())
    throw Error(ErrorCode::InvalidArgument, "alive mask size does not match the board");
  GameState s = *this;
  s.alive_ = std::move(alive);
  return s;
}

GameState GameState::with_mover(Player p) const {
  GameState s = *this;
  s.mover_ = p;
  return s;
}

std::vector<StringId> legal_moves(const GameState& s, GameKind kind) {
  std::vector<StringId> moves;
  if (kind != GameKind::CoinsAreLava) return s.alive_ids();
  const auto& g = s.board();
  std::vector<std::uint32_t> deg(g.coin_count(), 0);
  for (const auto& e : g.strings()) {
    if (!s.is_alive(e.id)) continue;
    if (e.a.is_coin()) ++deg[e.a.coin_id().index];
    if (e.b.is_coin()) ++deg[e.b.coin_id().index];
  }
  for (const auto& e : g.strings()) {
    if (!s.is_alive(e.id)) continue;
    const bool frees = (e.a.is_coin() && deg[e.a.coin_id().index] == 1) ||
                       (e.b.is_coin() && deg[e.b.coin_id().index] == 1);
    if (!frees) moves.push_back(e.id);
  }
  return moves;
}

GameState apply_move(const GameState& s, GameKind kind, StringId id) {
  if (s.board().has_self_loop())
    throw Error(ErrorCode::DegenerateInput, "board contains a self-loop");
  if (!s.is_alive(id))
    throw Error(ErrorCode::IllegalMove, "string " + std::to_string(id) + " is not alive");
  const int freed = s.coins_freed_by(id);
  if (kind == GameKind::CoinsAreLava && freed > 0)
    throw Error(ErrorCode::IllegalMove, "cutting string " + std::to_string(id) + " frees a coin");

  GameState next = s;
  next.alive_[id] = false;
  if (kind == GameKind::CoinsAreLava || freed == 0) {
    next.mover_ = opponent(s.mover_);
  } else if (kind == GameKind::StringsAndCoins) {
    next.score_[static_cast<int>(s.mover_)] += freed;
  }
  return next;
}

std::optional<Outcome> is_terminal(const GameState& s, GameKind kind) {
  Outcome out;
  switch (kind) {
    case GameKind::StringsAndCoins: {
      if (s.alive_count() != 0) return std::nullopt;
      out.final_score = {s.score(Player::P1), s.score(Player::P2)};
      if (out.final_score[0] > out.final_score[1])
        out.winner = Winner::P1;
      else if (out.final_score[0] < out.final_score[1])
        out.winner = Winner::P2;
      else
        out.winner = Winner::Draw;
      return out;
    }
    case GameKind::Nimstring:
      if (s.alive_count() != 0) return std::nullopt;
      out.winner = as_winner(opponent(s.mover()));
      return out;
    case GameKind::CoinsAreLava:
      if (!legal_moves(s, kind).empty()) return std::nullopt;
      out.winner = as_winner(opponent(s.mover()));
      return out;
  }
  return std::nullopt;
}

}  // namespace coinlava
