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

#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coinlava/multigraph.hpp"

namespace coinlava {

enum class GameKind { StringsAndCoins, Nimstring, CoinsAreLava };
enum class Player { P1 = 0, P2 = 1 };
enum class Winner { P1, P2, Draw };

inline Player opponent(Player p) { return p == Player::P1 ? Player::P2 : Player::P1; }
inline Winner as_winner(Player p) { return p == Player::P1 ? Winner::P1 : Winner::P2; }

const char* game_kind_name(GameKind kind);
const char* player_name(Player p);
const char* winner_name(Winner w);
GameKind parse_game_kind(const std::string& text);
Player parse_player(const std::string& text);

struct Outcome {
  Winner winner = Winner::Draw;
  std::array<int, 2> final_score{0, 0};
};

// Snapshot of a game in progress. The board is shared and never mutated;
// removed strings are tracked by the alive mask so string ids stay stable.
class GameState {
 public:
  static GameState initial(std::shared_ptr<const Multigraph> board, Player first = Player::P1);

  const Multigraph& board() const { return *board_; }
  const std::shared_ptr<const Multigraph>& board_ptr() const { return board_; }
  const std::vector<bool>& alive() const { return alive_; }
  bool is_alive(StringId id) const { return id < alive_.size() && alive_[id]; }
  std::uint32_t alive_count() const;
  std::vector<StringId> alive_ids() const;
  Player mover() const { return mover_; }
  int score(Player p) const { return score_[static_cast<int>(p)]; }

  // Degree of a coin counting alive strings only.
  std::uint32_t alive_degree(CoinId c) const;
  // Number of coins this cut would free (0, 1 or 2).
  int coins_freed_by(StringId id) const;

  GameState with_alive(std::vector<bool> alive) const;
  GameState with_mover(Player p) const;

 private:
  std::shared_ptr<const Multigraph> board_;
  std::vector<bool> alive_;
  Player mover_ = Player::P1;
  std::array<int, 2> score_{0, 0};

  friend GameState apply_move(const GameState&, GameKind, StringId);
};

std::vector<StringId> legal_moves(const GameState& s, GameKind kind);
GameState apply_move(const GameState& s, GameKind kind, StringId id);
std::optional<Outcome> is_terminal(const GameState& s, GameKind kind);

}  // namespace coinlava
