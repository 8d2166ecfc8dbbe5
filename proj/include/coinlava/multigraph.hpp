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

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coinlava {

using StringId = std::uint32_t;

struct CoinId {
  std::uint32_t index = 0;
  auto operator<=>(const CoinId&) const = default;
};

// One end of a string: a coin or the ground.
class Endpoint {
 public:
  static Endpoint ground() { return Endpoint(); }
  static Endpoint coin(CoinId c) { return Endpoint(c.index); }
  static Endpoint coin(std::uint32_t index) { return Endpoint(index); }

  bool is_ground() const { return ground_; }
  bool is_coin() const { return !ground_; }
  // Only meaningful for coin endpoints.
  CoinId coin_id() const { return CoinId{index_}; }

  bool operator==(const Endpoint&) const = default;
  // Ground sorts after every coin.
  bool operator<(const Endpoint& other) const {
    if (ground_ != other.ground_) return !ground_;
    return index_ < other.index_;
  }

 private:
  Endpoint() : ground_(true) {}
  explicit Endpoint(std::uint32_t index) : ground_(false), index_(index) {}

  bool ground_ = true;
  std::uint32_t index_ = 0;
};

struct StringEdge {
  StringId id = 0;
  Endpoint a = Endpoint::ground();
  Endpoint b = Endpoint::ground();

  bool is_self_loop() const { return a.is_coin() && a == b; }
  bool touches(CoinId c) const {
    return (a.is_coin() && a.coin_id() == c) || (b.is_coin() && b.coin_id() == c);
  }
  // Endpoint pair with the smaller endpoint first.
  std::pair<Endpoint, Endpoint> normalized() const {
    return b < a ? std::pair{b, a} : std::pair{a, b};
  }
};

// Coins plus strings whose ends are coins or the ground. Parallel strings
// are separate entries with their own ids; ids are dense and never reused.
class Multigraph {
 public:
  CoinId add_coin();
  StringId add_string(Endpoint a, Endpoint b);
  // `width` parallel strings with contiguous ids.
  std::vector<StringId> add_rope(Endpoint a, Endpoint b, std::uint32_t width);

  std::uint32_t coin_count() const { return coin_count_; }
  std::uint32_t string_count() const { return static_cast<std::uint32_t>(strings_.size()); }
  const StringEdge& string(StringId id) const { return strings_.at(id); }
  std::span<const StringEdge> strings() const { return strings_; }

  // Counts string endpoints equal to the coin; a self-loop counts twice.
  std::uint32_t degree(CoinId c) const;
  std::vector<std::uint32_t> degrees() const;
  std::vector<std::vector<StringId>> incidence() const;
  bool has_self_loop() const;

  // Provenance tags. Not part of the structural identity of the graph.
  std::map<StringId, std::string>& string_labels() { return string_labels_; }
  const std::map<StringId, std::string>& string_labels() const { return string_labels_; }
  std::map<std::uint32_t, std::string>& coin_labels() { return coin_labels_; }
  const std::map<std::uint32_t, std::string>& coin_labels() const { return coin_labels_; }

  // Structural equality: same coin count and identical string list.
  bool operator==(const Multigraph& other) const;

 private:
  void check_endpoint(Endpoint e) const;

  std::uint32_t coin_count_ = 0;
  std::vector<StringEdge> strings_;
  std::map<StringId, std::string> string_labels_;
  std::map<std::uint32_t, std::string> coin_labels_;
};

// h's coins and strings are renumbered after g's. Labels of both operands
// are kept at their new ids.
Multigraph disjoint_union(const Multigraph& g, const Multigraph& h);

// n coins joined in a ring. n == 1 is a self-loop, n == 2 a double edge.
Multigraph cycle_graph(std::uint32_t n);

// `coins <count>` followed by `string <id> <end> <end>` lines.
std::string canonical_text(const Multigraph& g);
Multigraph parse_text(std::string_view text);

struct DotStyle {
  std::function<std::string(CoinId)> coin_attributes;
  std::function<std::string(const StringEdge&)> string_attributes;
};

std::string to_dot(const Multigraph& g, const DotStyle& style = {});

}  // namespace coinlava
