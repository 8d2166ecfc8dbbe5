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

#include "coinlava/multigraph.hpp"

#include <charconv>
#include <sstream>

#include "coinlava/error.hpp"

namespace coinlava {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidEndpoint: return "InvalidEndpoint";
    case ErrorCode::ZeroWidth: return "ZeroWidth";
    case ErrorCode::ZeroLength: return "ZeroLength";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnsetVariable: return "UnsetVariable";
    case ErrorCode::ClauseTooSmall: return "ClauseTooSmall";
    case ErrorCode::UnusedVariable: return "UnusedVariable";
    case ErrorCode::ChainTooShort: return "ChainTooShort";
    case ErrorCode::OverBudget: return "OverBudget";
    case ErrorCode::PhaseInvariantBroken: return "PhaseInvariantBroken";
    case ErrorCode::OracleRequired: return "OracleRequired";
    case ErrorCode::IllegalByPolicy: return "IllegalByPolicy";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

CoinId Multigraph::add_coin() { return CoinId{coin_count_++}; }

void Multigraph::check_endpoint(Endpoint e) const {
  if (e.is_coin() && e.coin_id().index >= coin_count_) {
    throw Error(ErrorCode::InvalidEndpoint,
                "coin " + std::to_string(e.coin_id().index) + " out of range (coin_count=" +
                    std::to_string(coin_count_) + ")");
  }
}

StringId Multigraph::add_string(Endpoint a, Endpoint b) {
  check_endpoint(a);
  check_endpoint(b);
  const auto id = static_cast<StringId>(strings_.size());
  strings_.push_back(StringEdge{id, a, b});
  return id;
}

std::vector<StringId> Multigraph::add_rope(Endpoint a, Endpoint b, std::uint32_t width) {
  if (width == 0) throw Error(ErrorCode::ZeroWidth, "rope width must be at least 1");
  check_endpoint(a);
  check_endpoint(b);
  std::vector<StringId> ids;
  ids.reserve(width);
  for (std::uint32_t i = 0; i < width; ++i) ids.push_back(add_string(a, b));
  return ids;
}

std::uint32_t Multigraph::degree(CoinId c) const {
  std::uint32_t d = 0;
  for (const auto& s : strings_) {
    if (s.a.is_coin() && s.a.coin_id() == c) ++d;
    if (s.b.is_coin() && s.b.coin_id() == c) ++d;
  }
  return d;
}

std::vector<std::uint32_t> Multigraph::degrees() const {
  std::vector<std::uint32_t> d(coin_count_, 0);
  for (const auto& s : strings_) {
    if (s.a.is_coin()) ++d[s.a.coin_id().index];
    if (s.b.is_coin()) ++d[s.b.coin_id().index];
  }
  return d;
}

std::vector<std::vector<StringId>> Multigraph::incidence() const {
  std::vector<std::vector<StringId>> inc(coin_count_);
  for (const auto& s : strings_) {
    if (s.a.is_coin()) inc[s.a.coin_id().index].push_back(s.id);
    if (s.b.is_coin() && !(s.a == s.b)) inc[s.b.coin_id().index].push_back(s.id);
  }
  return inc;
}

bool Multigraph::has_self_loop() const {
  for (const auto& s : strings_)
    if (s.is_self_loop()) return true;
  return false;
}

bool Multigraph::operator==(const Multigraph& other) const {
  if (coin_count_ != other.coin_count_ || strings_.size() != other.strings_.size()) return false;
  for (std::size_t i = 0; i < strings_.size(); ++i) {
    if (strings_[i].a != other.strings_[i].a || strings_[i].b != other.strings_[i].b) return false;
  }
  return true;
}

Multigraph disjoint_union(const Multigraph& g, const Multigraph& h) {
  Multigraph out;
  for (std::uint32_t i = 0; i < g.coin_count() + h.coin_count(); ++i) out.add_coin();
  for (const auto& s : g.strings()) out.add_string(s.a, s.b);
  const std::uint32_t offset = g.coin_count();
  auto shift = [offset](Endpoint e) {
    return e.is_ground() ? e : Endpoint::coin(e.coin_id().index + offset);
  };
  for (const auto& s : h.strings()) out.add_string(shift(s.a), shift(s.b));

  out.string_labels() = g.string_labels();
  out.coin_labels() = g.coin_labels();
  for (const auto& [id, tag] : h.string_labels()) out.string_labels()[id + g.string_count()] = tag;
  for (const auto& [id, tag] : h.coin_labels()) out.coin_labels()[id + offset] = tag;
  return out;
}

Multigraph cycle_graph(std::uint32_t n) {
  if (n == 0) throw Error(ErrorCode::ZeroLength, "cycle length must be at least 1");
  Multigraph g;
  for (std::uint32_t i = 0; i < n; ++i) g.add_coin();
  for (std::uint32_t i = 0; i < n; ++i) g.add_string(Endpoint::coin(i), Endpoint::coin((i + 1) % n));
  return g;
}

namespace {

void write_endpoint(std::ostringstream& os, Endpoint e) {
  if (e.is_ground())
    os << "ground";
  else
    os << e.coin_id().index;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint32_t parse_u32(std::string_view tok, std::size_t line_no) {
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw Error(ErrorCode::Parse,
                "line " + std::to_string(line_no) + ": expected integer, got '" + std::string(tok) + "'");
  }
  return v;
}

Endpoint parse_endpoint(std::string_view tok, std::size_t line_no) {
  if (tok == "ground") return Endpoint::ground();
  return Endpoint::coin(parse_u32(tok, line_no));
}

}  // namespace

std::string canonical_text(const Multigraph& g) {
  std::ostringstream os;
  os << "coins " << g.coin_count() << "\n";
  for (const auto& s : g.strings()) {
    os << "string " << s.id << ' ';
    write_endpoint(os, s.a);
    os << ' ';
    write_endpoint(os, s.b);
    os << "\n";
  }
  return os.str();
}

Multigraph parse_text(std::string_view text) {
  Multigraph g;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (toks[0] == "coins") {
      if (have_header) throw Error(ErrorCode::Parse, where + "duplicate coins header");
      if (toks.size() != 2) throw Error(ErrorCode::Parse, where + "expected 'coins <count>'");
      const auto count = parse_u32(toks[1], line_no);
      for (std::uint32_t i = 0; i < count; ++i) g.add_coin();
      have_header = true;
    } else if (toks[0] == "string") {
      if (!have_header) throw Error(ErrorCode::Parse, where + "string before coins header");
      if (toks.size() != 4) throw Error(ErrorCode::Parse, where + "expected 'string <id> <end> <end>'");
      const auto id = parse_u32(toks[1], line_no);
      if (id != g.string_count()) {
        throw Error(ErrorCode::Parse,
                    where + "string ids must increase from 0; expected " + std::to_string(g.string_count()));
      }
      g.add_string(parse_endpoint(toks[2], line_no), parse_endpoint(toks[3], line_no));
    } else {
      throw Error(ErrorCode::Parse, where + "unknown record '" + std::string(toks[0]) + "'");
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw Error(ErrorCode::Parse, "missing 'coins <count>' header");
  return g;
}

std::string to_dot(const Multigraph& g, const DotStyle& style) {
  std::ostringstream os;
  os << "graph coins {\n";
  os << "  node [shape=circle, label=\"\", width=0.25];\n";
  bool uses_ground = false;
  for (const auto& s : g.strings())
    if (s.a.is_ground() || s.b.is_ground()) uses_ground = true;
  if (uses_ground) os << "  ground [shape=box, label=\"ground\", width=0.6];\n";
  for (std::uint32_t c = 0; c < g.coin_count(); ++c) {
    os << "  c" << c;
    std::string attrs = style.coin_attributes ? style.coin_attributes(CoinId{c}) : std::string();
    if (!attrs.empty()) os << " [" << attrs << "]";
    os << ";\n";
  }
  auto name = [](Endpoint e) {
    return e.is_ground() ? std::string("ground") : "c" + std::to_string(e.coin_id().index);
  };
  for (const auto& s : g.strings()) {
    os << "  " << name(s.a) << " -- " << name(s.b);
    std::string attrs = style.string_attributes ? style.string_attributes(s) : std::string();
    os << " [id=\"s" << s.id << "\"";
    if (!attrs.empty()) os << ", " << attrs;
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace coinlava
