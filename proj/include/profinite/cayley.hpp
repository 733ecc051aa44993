#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "profinite/error.hpp"

namespace profinite {

// Image of a word in a finite quotient: a point map for the permutation
// backend, a residue vector for the abelian one.
class QuotientElement {
 public:
  QuotientElement() = default;
  explicit QuotientElement(std::vector<std::uint32_t> values) : values_(std::move(values)) {}

  std::span<const std::uint32_t> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  std::uint32_t operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const QuotientElement&, const QuotientElement&) = default;

 private:
  std::vector<std::uint32_t> values_;
};

// How elements of one quotient multiply; shared by every enumeration.
struct ElementAlgebra {
  enum class Rule { compose, add_mod };
  Rule rule = Rule::compose;
  std::uint32_t modulus = 0;  // add_mod only
  std::uint32_t width = 0;    // values per element
  std::uint32_t bound = 0;    // every value is < bound

  QuotientElement multiply(const QuotientElement& x, const QuotientElement& y) const {
    std::vector<std::uint32_t> out(width);
    if (rule == Rule::compose) {
      for (std::uint32_t i = 0; i < width; ++i) out[i] = y[x[i]];
    } else {
      for (std::uint32_t i = 0; i < width; ++i) out[i] = (x[i] + y[i]) % modulus;
    }
    return QuotientElement(std::move(out));
  }
};

namespace detail {

inline std::uint64_t mix_hash(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

// Flat element table with an index-keyed hash set, so each stored element
// costs `width` values of T plus one slot.
template <class T>
class ElementStore {
 public:
  explicit ElementStore(std::uint32_t width)
      : width_(width), index_(16, Hash{this}, Eq{this}) {}
  ElementStore(const ElementStore&) = delete;
  ElementStore& operator=(const ElementStore&) = delete;

  std::uint32_t size() const { return size_; }
  const T* at(std::uint32_t i) const { return data_.data() + std::size_t(i) * width_; }

  // Stages a candidate at the end of the table and returns a pointer to fill.
  T* stage() {
    data_.resize(std::size_t(size_ + 1) * width_);
    return data_.data() + std::size_t(size_) * width_;
  }

  // Commits the staged candidate if new. Returns (index, inserted).
  std::pair<std::uint32_t, bool> commit() {
    auto [it, inserted] = index_.insert(size_);
    if (inserted) return {size_++, true};
    data_.resize(std::size_t(size_) * width_);
    return {*it, false};
  }

  std::optional<std::uint32_t> find_staged() {
    auto it = index_.find(size_);
    std::optional<std::uint32_t> r;
    if (it != index_.end()) r = *it;
    data_.resize(std::size_t(size_) * width_);
    return r;
  }

 private:
  struct Hash {
    const ElementStore* self;
    std::size_t operator()(std::uint32_t i) const {
      const T* p = self->data_.data() + std::size_t(i) * self->width_;
      std::uint64_t h = 0x84222325cbf29ce4ULL;
      for (std::uint32_t k = 0; k < self->width_; ++k) h = mix_hash(h, p[k]);
      return static_cast<std::size_t>(h);
    }
  };
  struct Eq {
    const ElementStore* self;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      const T* pa = self->data_.data() + std::size_t(a) * self->width_;
      const T* pb = self->data_.data() + std::size_t(b) * self->width_;
      for (std::uint32_t k = 0; k < self->width_; ++k) {
        if (pa[k] != pb[k]) return false;
      }
      return true;
    }
  };

  std::uint32_t width_;
  std::uint32_t size_ = 0;
  std::vector<T> data_;
  std::unordered_set<std::uint32_t, Hash, Eq> index_;
};

}  // namespace detail

// Breadth-first closure of the identity under a list of right-multiplication
// moves. Index 0 is the identity; indices follow BFS order, with neighbours
// expanded in move order, so distances and tree paths are reproducible.
class Enumeration {
 public:
  static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

  struct Options {
    std::size_t cap = 1'000'000;
    bool keep_neighbors = true;
    std::optional<std::uint32_t> max_radius;  // stop expanding past this distance
  };

  Enumeration(const ElementAlgebra& algebra, const QuotientElement& identity,
              std::vector<QuotientElement> moves, const Options& options)
      : algebra_(algebra), moves_(std::move(moves)), keep_neighbors_(options.keep_neighbors) {
    if (algebra_.bound <= 256) {
      store_ = std::make_unique<detail::ElementStore<std::uint8_t>>(algebra_.width);
    } else {
      store_ = std::make_unique<detail::ElementStore<std::uint32_t>>(algebra_.width);
    }
    std::visit([&](auto& store) { run(*store, identity, options); }, store_);
  }

  std::uint32_t size() const {
    return std::visit([](const auto& s) { return s->size(); }, store_);
  }
  std::size_t move_count() const { return moves_.size(); }
  const std::vector<QuotientElement>& moves() const { return moves_; }
  bool complete() const { return complete_; }

  QuotientElement element(std::uint32_t i) const {
    return std::visit(
        [&](const auto& s) {
          const auto* p = s->at(i);
          return QuotientElement(std::vector<std::uint32_t>(p, p + algebra_.width));
        },
        store_);
  }

  std::optional<std::uint32_t> find(const QuotientElement& x) const {
    if (x.size() != algebra_.width) return std::nullopt;
    for (std::uint32_t v : x.values()) {
      if (v >= algebra_.bound) return std::nullopt;
    }
    std::lock_guard lock(find_mutex_);
    return std::visit(
        [&](const auto& s) {
          auto* dst = s->stage();
          for (std::uint32_t k = 0; k < algebra_.width; ++k) dst[k] = static_cast<std::remove_pointer_t<decltype(dst)>>(x[k]);
          return s->find_staged();
        },
        store_);
  }

  std::uint32_t distance(std::uint32_t i) const { return dist_[i]; }
  std::uint32_t parent(std::uint32_t i) const { return parent_[i]; }
  std::uint32_t parent_move(std::uint32_t i) const { return parent_move_[i]; }

  // Index reached from i by move m; npos when outside a radius-limited ball.
  std::uint32_t neighbor(std::uint32_t i, std::size_t m) const {
    if (!keep_neighbors_) throw Error("enumeration was built without neighbour table");
    return neighbors_[std::size_t(i) * moves_.size() + m];
  }

  // Moves labelling the BFS tree path from the identity to i.
  std::vector<std::uint32_t> path_moves(std::uint32_t i) const {
    std::vector<std::uint32_t> out;
    for (; i != 0; i = parent_[i]) out.push_back(parent_move_[i]);
    return {out.rbegin(), out.rend()};
  }

 private:
  template <class T>
  void run(detail::ElementStore<T>& store, const QuotientElement& identity,
           const Options& options) {
    const std::uint32_t w = algebra_.width;
    const std::size_t mcount = moves_.size();
    T* first = store.stage();
    for (std::uint32_t k = 0; k < w; ++k) first[k] = static_cast<T>(identity[k]);
    store.commit();
    dist_.push_back(0);
    parent_.push_back(npos);
    parent_move_.push_back(0);

    std::vector<T> current(w);
    for (std::uint32_t head = 0; head < store.size(); ++head) {
      if (options.max_radius && dist_[head] >= *options.max_radius) {
        if (keep_neighbors_) neighbors_.resize(neighbors_.size() + mcount, npos);
        complete_ = false;
        continue;
      }
      const T* src = store.at(head);
      std::copy(src, src + w, current.begin());
      for (std::size_t m = 0; m < mcount; ++m) {
        const QuotientElement& mv = moves_[m];
        T* dst = store.stage();
        if (algebra_.rule == ElementAlgebra::Rule::compose) {
          for (std::uint32_t k = 0; k < w; ++k) dst[k] = static_cast<T>(mv[current[k]]);
        } else {
          for (std::uint32_t k = 0; k < w; ++k) {
            dst[k] = static_cast<T>((current[k] + mv[k]) % algebra_.modulus);
          }
        }
        auto [idx, inserted] = store.commit();
        if (inserted) {
          if (store.size() > options.cap) {
            throw CapExceeded("enumeration exceeded cap of " + std::to_string(options.cap) +
                              " elements");
          }
          dist_.push_back(dist_[head] + 1);
          parent_.push_back(head);
          parent_move_.push_back(static_cast<std::uint32_t>(m));
        }
        if (keep_neighbors_) neighbors_.push_back(idx);
      }
    }
  }

  ElementAlgebra algebra_;
  std::vector<QuotientElement> moves_;
  bool keep_neighbors_;
  bool complete_ = true;
  std::variant<std::unique_ptr<detail::ElementStore<std::uint8_t>>,
               std::unique_ptr<detail::ElementStore<std::uint32_t>>>
      store_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> parent_move_;
  std::vector<std::uint32_t> neighbors_;
  mutable std::mutex find_mutex_;
};

}  // namespace profinite
