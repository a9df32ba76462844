// Copyright 2026 The acypart Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "acypart/io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace acypart {

namespace {

bool checked_mul_add(std::int64_t& acc, std::int64_t mul, std::int64_t add) {
  return !__builtin_mul_overflow(acc, mul, &acc) && !__builtin_add_overflow(acc, add, &acc);
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

std::optional<std::int64_t> to_int(std::string_view tok) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

std::int64_t expect_int(std::string_view tok, std::size_t line, const char* what) {
  auto v = to_int(tok);
  if (!v) throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
  return *v;
}

// Calls fn(line_number, tokens) for each non-comment, non-blank line.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == '%') continue;
    fn(line_no, tokens);
  }
}

}  // namespace

bool parse_exact_decimal(std::string_view text, Rational& out) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::int64_t num = 0;
  std::int64_t exp10 = 0;
  std::size_t digits = 0;
  for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, ++digits) {
    if (!checked_mul_add(num, 10, text[i] - '0')) return false;
  }
  if (i < text.size() && text[i] == '.') {
    for (++i; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, ++digits) {
      if (!checked_mul_add(num, 10, text[i] - '0')) return false;
      --exp10;
    }
  }
  if (digits == 0) return false;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    std::string_view rest = text.substr(i + 1);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto e = to_int(rest);
    if (!e || *e > 40 || *e < -40) return false;
    exp10 += *e;
    i = text.size();
  }
  if (i != text.size()) return false;
  std::int64_t scale = 1;
  for (std::int64_t k = 0; k < (exp10 < 0 ? -exp10 : exp10); ++k) {
    if (__builtin_mul_overflow(scale, 10, &scale)) return false;
  }
  if (exp10 >= 0) {
    if (__builtin_mul_overflow(num, scale, &num)) return false;
    out = Rational(negative ? -num : num);
  } else {
    out = Rational(negative ? -num : num, scale);
  }
  return true;
}

Rational parse_ratio(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto n = to_int(text.substr(0, slash));
    auto d = to_int(text.substr(slash + 1));
    if (!n || !d || *n < 0 || *d <= 0) throw ParseError(0, "invalid ratio '" + std::string(text) + "'");
    return Rational(*n, *d);
  }
  Rational r;
  if (!parse_exact_decimal(text, r) || r < Rational(0)) {
    throw ParseError(0, "invalid non-negative number '" + std::string(text) + "'");
  }
  return r;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

RawGraph parse_dag_text(std::string_view text) {
  RawGraph raw;
  bool header = false;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t last_line = 0;
  for_each_line(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    last_line = line;
    if (!header) {
      if (tok.size() != 4 || tok[0] != "p" || tok[1] != "adag") {
        throw ParseError(line, "expected header 'p adag <n> <m>'");
      }
      const std::int64_t nn = expect_int(tok[2], line, "vertex count");
      const std::int64_t mm = expect_int(tok[3], line, "edge count");
      if (nn < 0 || mm < 0) throw ParseError(line, "counts must be non-negative");
      n = static_cast<std::size_t>(nn);
      m = static_cast<std::size_t>(mm);
      header = true;
      return;
    }
    if (tok[0] == "v") {
      if (tok.size() != 2) throw ParseError(line, "expected 'v <weight>'");
      if (!raw.edges.empty()) throw ParseError(line, "vertex line after edge lines");
      if (raw.weights.size() == n) throw ParseError(line, "more vertex lines than the header declares");
      raw.weights.push_back(expect_int(tok[1], line, "weight"));
    } else if (tok[0] == "e") {
      if (tok.size() != 4) throw ParseError(line, "expected 'e <u> <v> <cost>'");
      if (raw.edges.size() == m) throw ParseError(line, "more edge lines than the header declares");
      const std::int64_t u = expect_int(tok[1], line, "source");
      const std::int64_t v = expect_int(tok[2], line, "target");
      const std::int64_t c = expect_int(tok[3], line, "cost");
      constexpr std::int64_t kMax = std::numeric_limits<Vertex>::max();
      if (u < -kMax || u > kMax || v < -kMax || v > kMax) throw ParseError(line, "vertex id out of range");
      raw.edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), c});
    } else {
      throw ParseError(line, "unknown line type '" + std::string(tok[0]) + "'");
    }
  });
  if (!header) throw ParseError(1, "missing header 'p adag <n> <m>'");
  if (raw.weights.size() != n) {
    throw ParseError(last_line, "header declares " + std::to_string(n) + " vertices, found " +
                                    std::to_string(raw.weights.size()));
  }
  if (raw.edges.size() != m) {
    throw ParseError(last_line, "header declares " + std::to_string(m) + " edges, found " +
                                    std::to_string(raw.edges.size()));
  }
  return raw;
}

Dag read_dag_text(std::string_view text) { return Dag(parse_dag_text(text)); }

std::string write_dag_text(const Dag& g) {
  std::ostringstream os;
  os << "p adag " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (Weight w : g.weights()) os << "v " << w << '\n';
  for (const Edge& e : g.edges()) os << "e " << e.from << ' ' << e.to << ' ' << e.cost << '\n';
  return os.str();
}

Partition parse_partition_text(std::string_view text, std::size_t num_vertices, PartId k) {
  std::vector<PartId> parts;
  std::vector<std::size_t> lines;
  for_each_line(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    if (tok.size() != 1) throw ParseError(line, "expected one part id per line");
    const std::int64_t id = expect_int(tok[0], line, "part id");
    if (id < 0 || id > std::numeric_limits<PartId>::max()) throw ParseError(line, "part id out of range");
    if (k > 0 && id >= k) throw ParseError(line, "part id " + std::to_string(id) + " is not below k=" + std::to_string(k));
    parts.push_back(static_cast<PartId>(id));
    lines.push_back(line);
  });
  if (parts.size() != num_vertices) {
    throw ParseError(lines.empty() ? 0 : lines.back(), "expected " + std::to_string(num_vertices) +
                                                           " part ids, found " + std::to_string(parts.size()));
  }
  PartId parts_k = k;
  if (parts_k == 0) {
    for (PartId p : parts) parts_k = std::max(parts_k, p + 1);
    parts_k = std::max<PartId>(parts_k, 1);
  }
  return Partition(std::move(parts), parts_k);
}

std::string write_partition_text(const Partition& p) {
  std::string out;
  for (PartId s : p.assignment) {
    out += std::to_string(s);
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace acypart
