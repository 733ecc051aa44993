#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "profinite/bigint.hpp"
#include "profinite/error.hpp"

namespace profinite {

// Bijection on the points 0..d-1. Composition is left to right:
// (x.then(y))[p] == y[x[p]], matching words read left to right.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<std::uint32_t> map) : map_(std::move(map)) {
    if (!is_bijection()) throw InvalidArgument("permutation table is not a bijection");
  }

  // Skips the bijection check; used when loading untrusted certificates so the
  // verifier can report the defect instead of the loader throwing.
  static Permutation unchecked(std::vector<std::uint32_t> map) {
    Permutation p;
    p.map_ = std::move(map);
    return p;
  }

  static Permutation identity(std::uint32_t degree) {
    std::vector<std::uint32_t> m(degree);
    for (std::uint32_t i = 0; i < degree; ++i) m[i] = i;
    return unchecked(std::move(m));
  }

  static Permutation from_cycles(std::uint32_t degree,
                                 const std::vector<std::vector<std::uint32_t>>& cycles) {
    std::vector<std::uint32_t> m = identity(degree).map_;
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= degree) throw InvalidArgument("cycle point out of range");
        m[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return Permutation(std::move(m));
  }

  std::uint32_t degree() const { return static_cast<std::uint32_t>(map_.size()); }
  std::uint32_t operator[](std::uint32_t p) const { return map_[p]; }
  std::span<const std::uint32_t> values() const { return map_; }
  const std::vector<std::uint32_t>& table() const { return map_; }

  bool is_bijection() const {
    std::vector<bool> seen(map_.size(), false);
    for (std::uint32_t v : map_) {
      if (v >= map_.size() || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }

  bool is_identity() const {
    for (std::uint32_t i = 0; i < map_.size(); ++i) {
      if (map_[i] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    std::vector<std::uint32_t> m(map_.size());
    for (std::uint32_t i = 0; i < map_.size(); ++i) m[map_[i]] = i;
    return unchecked(std::move(m));
  }

  Permutation then(const Permutation& next) const {
    std::vector<std::uint32_t> m(map_.size());
    for (std::uint32_t i = 0; i < map_.size(); ++i) m[i] = next.map_[map_[i]];
    return unchecked(std::move(m));
  }

  std::vector<std::vector<std::uint32_t>> cycles() const {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<bool> seen(map_.size(), false);
    for (std::uint32_t s = 0; s < map_.size(); ++s) {
      if (seen[s]) continue;
      std::vector<std::uint32_t> c;
      for (std::uint32_t p = s; !seen[p]; p = map_[p]) {
        seen[p] = true;
        c.push_back(p);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  BigInt order() const {
    BigInt r = 1;
    for (const auto& c : cycles()) r = boost::multiprecision::lcm(r, BigInt(c.size()));
    return r;
  }

  // x^e in O(d), reducing e modulo each cycle length.
  Permutation pow(const BigInt& e) const {
    std::vector<std::uint32_t> m(map_.size());
    std::map<std::size_t, std::size_t> shift_by_length;
    for (const auto& c : cycles()) {
      auto [it, fresh] = shift_by_length.try_emplace(c.size(), 0);
      if (fresh) it->second = mod_u64(e, c.size());
      std::size_t s = it->second;
      for (std::size_t i = 0; i < c.size(); ++i) m[c[i]] = c[(i + s) % c.size()];
    }
    return unchecked(std::move(m));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> map_;
};

}  // namespace profinite
