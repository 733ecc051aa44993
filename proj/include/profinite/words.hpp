#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "profinite/bigint.hpp"
#include "profinite/error.hpp"

namespace profinite {

enum class Factor : std::uint8_t { K = 0, L = 1 };

// A free generator, identified by its factor and its position inside it.
// Ordered by (factor, index): all of K ascending, then all of L ascending.
struct Generator {
  Factor factor = Factor::K;
  std::uint32_t index = 0;

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

inline Generator k_gen(std::uint32_t i) { return {Factor::K, i}; }
inline Generator l_gen(std::uint32_t i) { return {Factor::L, i}; }

// Sizes of the two blocks of the free generating set K u L.
class FactorPartition {
 public:
  FactorPartition(std::uint32_t k_size, std::uint32_t l_size)
      : k_size_(k_size), l_size_(l_size) {
    if (k_size < 1 || l_size < 1) {
      throw InvalidArgument("factor partition needs k >= 1 and l >= 1");
    }
  }

  std::uint32_t k_size() const { return k_size_; }
  std::uint32_t l_size() const { return l_size_; }
  std::uint32_t rank() const { return k_size_ + l_size_; }

  bool contains(Generator g) const {
    return g.index < (g.factor == Factor::K ? k_size_ : l_size_);
  }

  // Position of g in the fixed generator order.
  std::uint32_t ordinal(Generator g) const {
    return g.factor == Factor::K ? g.index : k_size_ + g.index;
  }

  Generator generator(std::uint32_t ordinal) const {
    return ordinal < k_size_ ? k_gen(ordinal) : l_gen(ordinal - k_size_);
  }

  std::vector<Generator> generators() const {
    std::vector<Generator> out;
    out.reserve(rank());
    for (std::uint32_t i = 0; i < rank(); ++i) out.push_back(generator(i));
    return out;
  }

  friend bool operator==(const FactorPartition&, const FactorPartition&) = default;

 private:
  std::uint32_t k_size_;
  std::uint32_t l_size_;
};

struct Run {
  Generator gen;
  BigInt exponent;

  friend bool operator==(const Run&, const Run&) = default;
};

class Word;
Word reduce(std::span<const Run> raw);

// Reduced element of the free group, stored as maximal runs g^e with e != 0.
// Adjacent runs carry distinct generators; the empty word is the identity.
class Word {
 public:
  Word() = default;

  static Word letter(Generator g, BigInt exponent = 1) {
    Run r{g, std::move(exponent)};
    return reduce(std::span<const Run>(&r, 1));
  }

  std::span<const Run> runs() const { return runs_; }
  std::size_t run_count() const { return runs_.size(); }
  bool is_identity() const { return runs_.empty(); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Run> runs_;

  friend Word reduce(std::span<const Run> raw);
  friend Word multiply(const Word& u, const Word& v);
  friend Word invert(const Word& w);
  friend Word power(const Word& w, const BigInt& e);

  // Appends one run, cancelling against the tail.
  void push(const Generator& g, const BigInt& e) {
    if (e == 0) return;
    if (!runs_.empty() && runs_.back().gen == g) {
      runs_.back().exponent += e;
      if (runs_.back().exponent == 0) runs_.pop_back();
      return;
    }
    runs_.push_back(Run{g, e});
  }
};

inline Word reduce(std::span<const Run> raw) {
  Word w;
  for (const Run& r : raw) w.push(r.gen, r.exponent);
  return w;
}

inline Word reduce(const std::vector<Run>& raw) {
  return reduce(std::span<const Run>(raw));
}

inline Word multiply(const Word& u, const Word& v) {
  Word out = u;
  for (const Run& r : v.runs_) out.push(r.gen, r.exponent);
  return out;
}

inline Word invert(const Word& w) {
  Word out;
  out.runs_.reserve(w.runs_.size());
  for (auto it = w.runs_.rbegin(); it != w.runs_.rend(); ++it) {
    out.runs_.push_back(Run{it->gen, -it->exponent});
  }
  return out;
}

inline Word power(const Word& w, const BigInt& e) {
  if (e == 0 || w.is_identity()) return Word{};
  if (e < 0) return power(invert(w), -e);
  if (w.run_count() == 1) {
    Word out;
    out.runs_.push_back(Run{w.runs_[0].gen, w.runs_[0].exponent * e});
    return out;
  }
  // Square-and-multiply. Conjugates of single runs stay compact because
  // multiply merges the inner runs.
  Word result;
  Word base = w;
  BigInt n = e;
  while (n > 0) {
    if ((n & 1) != 0) result = multiply(result, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

inline Word power(const Word& w, long long e) { return power(w, BigInt(e)); }

inline BigInt exponent_sum(const Word& w, Generator g) {
  BigInt s = 0;
  for (const Run& r : w.runs()) {
    if (r.gen == g) s += r.exponent;
  }
  return s;
}

inline BigInt word_length(const Word& w) {
  BigInt n = 0;
  for (const Run& r : w.runs()) n += boost::multiprecision::abs(r.exponent);
  return n;
}

struct Syllable {
  Factor factor;
  Word segment;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Maximal alternating decomposition into <K>- and <L>-segments.
inline std::vector<Syllable> syllables(const Word& w, const FactorPartition& p) {
  std::vector<Syllable> out;
  std::vector<Run> current;
  for (const Run& r : w.runs()) {
    if (!p.contains(r.gen)) {
      throw InvalidArgument("generator outside the factor partition");
    }
    if (!current.empty() && current.front().gen.factor != r.gen.factor) {
      out.push_back(Syllable{current.front().gen.factor, reduce(current)});
      current.clear();
    }
    current.push_back(r);
  }
  if (!current.empty()) {
    out.push_back(Syllable{current.front().gen.factor, reduce(current)});
  }
  return out;
}

// True when every run of w lies in the given factor (the identity lies in both).
inline bool lies_in_factor(const Word& w, Factor f) {
  for (const Run& r : w.runs()) {
    if (r.gen.factor != f) return false;
  }
  return true;
}

inline bool over_partition(const Word& w, const FactorPartition& p) {
  for (const Run& r : w.runs()) {
    if (!p.contains(r.gen)) return false;
  }
  return true;
}

}  // namespace profinite
