#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "profinite/alphabet.hpp"
#include "profinite/bigint.hpp"
#include "profinite/error.hpp"
#include "profinite/words.hpp"

namespace profinite {

struct StallingsEdge {
  std::uint32_t source = 0;
  Generator label;
  std::uint32_t target = 0;

  friend auto operator<=>(const StallingsEdge&, const StallingsEdge&) = default;
};

// Based, edge-labelled graph; vertex 0 is the basepoint. Once folded, each
// label is a partial injection on the vertices and out/in lookups are O(1).
class StallingsGraph {
 public:
  static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

  StallingsGraph(const FactorPartition& p, std::uint32_t vertex_count,
                 std::vector<StallingsEdge> edges)
      : partition_(p), vertex_count_(std::max<std::uint32_t>(vertex_count, 1)),
        edges_(std::move(edges)) {
    for (const auto& e : edges_) {
      if (e.source >= vertex_count_ || e.target >= vertex_count_ || !p.contains(e.label)) {
        throw InvalidArgument("edge outside the graph");
      }
    }
  }

  const FactorPartition& partition() const { return partition_; }
  std::uint32_t vertex_count() const { return vertex_count_; }
  const std::vector<StallingsEdge>& edges() const { return edges_; }
  bool is_folded() const { return folded_; }

  std::uint32_t out(std::uint32_t v, Generator g) const {
    require_folded();
    return out_[std::size_t(v) * partition_.rank() + partition_.ordinal(g)];
  }
  std::uint32_t in(std::uint32_t v, Generator g) const {
    require_folded();
    return in_[std::size_t(v) * partition_.rank() + partition_.ordinal(g)];
  }

  friend bool operator==(const StallingsGraph& a, const StallingsGraph& b) {
    return a.partition_ == b.partition_ && a.vertex_count_ == b.vertex_count_ &&
           a.edges_ == b.edges_ && a.folded_ == b.folded_;
  }

 private:
  friend StallingsGraph fold(const StallingsGraph& g);

  void require_folded() const {
    if (!folded_) throw PreconditionError("graph is not folded");
  }

  FactorPartition partition_;
  std::uint32_t vertex_count_;
  std::vector<StallingsEdge> edges_;
  bool folded_ = false;
  std::vector<std::uint32_t> out_;
  std::vector<std::uint32_t> in_;
};

namespace detail {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::uint32_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Smaller representative wins, so the basepoint stays 0.
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Letters of w with exponents +-1. Throws when the expansion is too long.
inline std::vector<std::pair<Generator, int>> expand_letters(const Word& w, std::size_t limit) {
  if (word_length(w) > limit) {
    throw CapExceeded("word too long to expand into a graph path (limit " +
                      std::to_string(limit) + " letters)");
  }
  std::vector<std::pair<Generator, int>> out;
  for (const Run& r : w.runs()) {
    std::size_t n = boost::multiprecision::abs(r.exponent).convert_to<std::size_t>();
    int sign = r.exponent > 0 ? 1 : -1;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(r.gen, sign);
  }
  return out;
}

// Adds the path spelled by w from `from`; ends at `to` when given, otherwise
// at a fresh vertex. Returns the end vertex.
inline std::uint32_t add_path(std::vector<StallingsEdge>& edges, std::uint32_t& vertex_count,
                              std::uint32_t from, std::optional<std::uint32_t> to,
                              const Word& w, std::size_t limit) {
  auto letters = expand_letters(w, limit);
  std::uint32_t cur = from;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    bool last = i + 1 == letters.size();
    std::uint32_t next = (last && to) ? *to : vertex_count++;
    auto [g, sign] = letters[i];
    if (sign > 0) {
      edges.push_back({cur, g, next});
    } else {
      edges.push_back({next, g, cur});
    }
    cur = next;
  }
  if (letters.empty() && to) return *to;
  return cur;
}

}  // namespace detail

inline constexpr std::size_t default_path_limit = 1'000'000;

// Identifies edges sharing (source, label) or (target, label) until none
// remain, then renumbers vertices in BFS order from the basepoint (out-edges
// before in-edges, generators in the fixed order). The folded graph of a
// connected input is unique, and so is this numbering.
inline StallingsGraph fold(const StallingsGraph& g) {
  const FactorPartition& p = g.partition();
  const std::uint32_t rank = p.rank();
  detail::UnionFind uf(g.vertex_count());
  std::vector<StallingsEdge> edges = g.edges();

  for (;;) {
    bool merged = false;
    for (auto& e : edges) {
      e.source = uf.find(e.source);
      e.target = uf.find(e.target);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> by_source, by_target;
    for (const auto& e : edges) {
      std::uint32_t o = p.ordinal(e.label);
      auto [it, fresh] = by_source.try_emplace({e.source, o}, e.target);
      if (!fresh) merged |= uf.unite(it->second, e.target);
      auto [jt, fresh2] = by_target.try_emplace({e.target, o}, e.source);
      if (!fresh2) merged |= uf.unite(jt->second, e.source);
    }
    if (!merged) break;
  }

  // Adjacency over representatives.
  std::map<std::uint32_t, std::vector<std::uint32_t>> out_adj, in_adj;
  auto slot = [&](std::map<std::uint32_t, std::vector<std::uint32_t>>& m, std::uint32_t v)
      -> std::vector<std::uint32_t>& {
    auto [it, fresh] = m.try_emplace(v);
    if (fresh) it->second.assign(rank, StallingsGraph::npos);
    return it->second;
  };
  for (const auto& e : edges) {
    slot(out_adj, e.source)[p.ordinal(e.label)] = e.target;
    slot(in_adj, e.target)[p.ordinal(e.label)] = e.source;
  }

  std::vector<std::uint32_t> reps;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (uf.find(v) == v) reps.push_back(v);
  }
  std::map<std::uint32_t, std::uint32_t> number;
  std::queue<std::uint32_t> queue;
  number[0] = 0;
  queue.push(0);
  auto visit = [&](std::uint32_t v) {
    if (v != StallingsGraph::npos && number.try_emplace(v, number.size()).second) queue.push(v);
  };
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop();
    for (std::uint32_t o = 0; o < rank; ++o) {
      if (auto it = out_adj.find(v); it != out_adj.end()) visit(it->second[o]);
    }
    for (std::uint32_t o = 0; o < rank; ++o) {
      if (auto it = in_adj.find(v); it != in_adj.end()) visit(it->second[o]);
    }
  }
  for (std::uint32_t v : reps) number.try_emplace(v, number.size());

  std::vector<StallingsEdge> renamed;
  for (const auto& e : edges) renamed.push_back({number[e.source], e.label, number[e.target]});
  std::sort(renamed.begin(), renamed.end());

  StallingsGraph result(p, static_cast<std::uint32_t>(number.size()), std::move(renamed));
  result.folded_ = true;
  result.out_.assign(std::size_t(result.vertex_count_) * rank, StallingsGraph::npos);
  result.in_.assign(std::size_t(result.vertex_count_) * rank, StallingsGraph::npos);
  for (const auto& e : result.edges_) {
    result.out_[std::size_t(e.source) * rank + p.ordinal(e.label)] = e.target;
    result.in_[std::size_t(e.target) * rank + p.ordinal(e.label)] = e.source;
  }
  return result;
}

// Wedge of one basepoint loop per generator word, folded.
inline StallingsGraph build_stallings(const FactorPartition& p, const std::vector<Word>& gens,
                                      std::size_t path_limit = default_path_limit) {
  std::vector<StallingsEdge> edges;
  std::uint32_t n = 1;
  for (const Word& w : gens) {
    if (!over_partition(w, p)) throw InvalidArgument("subgroup generator outside partition");
    detail::add_path(edges, n, 0, 0u, w, path_limit);
  }
  return fold(StallingsGraph(p, n, std::move(edges)));
}

// End of the path spelled by w from `start`, or nullopt if it leaves the
// graph. Long runs are shortened modulo the length of the label's cycle.
inline std::optional<std::uint32_t> trace(const StallingsGraph& g, const Word& w,
                                          std::uint32_t start = 0) {
  std::uint32_t cur = start;
  for (const Run& r : w.runs()) {
    if (!g.partition().contains(r.gen)) return std::nullopt;
    const bool forward = r.exponent > 0;
    BigInt remaining = boost::multiprecision::abs(r.exponent);
    const std::uint32_t origin = cur;
    std::uint32_t walked = 0;
    while (remaining > 0) {
      std::uint32_t next = forward ? g.out(cur, r.gen) : g.in(cur, r.gen);
      if (next == StallingsGraph::npos) return std::nullopt;
      cur = next;
      --remaining;
      ++walked;
      if (cur == origin) remaining %= walked;
    }
  }
  return cur;
}

inline bool membership(const StallingsGraph& g, const Word& w) {
  auto end = trace(g, w);
  return end && *end == 0;
}

inline std::string to_dot(const StallingsGraph& g, const Alphabet& alphabet) {
  std::ostringstream os;
  os << "digraph stallings {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  0 [shape=doublecircle];\n";
  for (std::uint32_t v = 1; v < g.vertex_count(); ++v) os << "  " << v << ";\n";
  for (const auto& e : g.edges()) {
    os << "  " << e.source << " -> " << e.target << " [label=\"" << alphabet.name(e.label)
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace profinite
