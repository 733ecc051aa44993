#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "profinite/bigint.hpp"
#include "profinite/cayley.hpp"
#include "profinite/error.hpp"
#include "profinite/permutation.hpp"
#include "profinite/words.hpp"

namespace profinite {

// A homomorphism from the free group onto a finite group. Its kernel is a
// normal subgroup of finite index; the index is the size of the image.
//
// Two backends: generators act as permutations of 0..d-1, or the map is the
// exponent-sum vector modulo n (image (Z/n)^rank). The Cayley enumeration of
// the image is built lazily on first use and shared between copies.
class FiniteQuotient {
 public:
  enum class Kind { permutation, abelian };
  static constexpr std::size_t default_cap = 1'000'000;

  // The trivial quotient of the rank-two group.
  FiniteQuotient() : FiniteQuotient(FactorPartition(1, 1), default_cap) {
    degree_ = 1;
    images_.assign(2, Permutation::identity(1));
  }

  Kind kind() const { return kind_; }
  const FactorPartition& partition() const { return partition_; }
  std::size_t cap() const { return cap_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t modulus() const { return modulus_; }

  const Permutation& permutation_image(Generator g) const {
    require_permutation();
    return images_.at(ordinal(g));
  }
  const std::vector<Permutation>& permutation_images() const {
    require_permutation();
    return images_;
  }

  // Describes the first structural defect, if any.
  std::optional<std::string> validate() const {
    if (kind_ == Kind::abelian) {
      if (modulus_ < 2) return "abelian modulus must be >= 2";
      return std::nullopt;
    }
    if (degree_ < 1) return "permutation degree must be >= 1";
    if (images_.size() != partition_.rank()) return "missing generator images";
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i].degree() != degree_) {
        return "image of generator " + std::to_string(i) + " has wrong degree";
      }
      if (!images_[i].is_bijection()) {
        return "image of generator " + std::to_string(i) + " is not a bijection";
      }
    }
    return std::nullopt;
  }

  FiniteQuotient with_cap(std::size_t cap) const {
    FiniteQuotient q = *this;
    q.cap_ = cap;
    q.cache_ = std::make_shared<Cache>();
    return q;
  }

  ElementAlgebra algebra() const {
    ElementAlgebra a;
    if (kind_ == Kind::permutation) {
      a.rule = ElementAlgebra::Rule::compose;
      a.width = degree_;
      a.bound = degree_;
    } else {
      a.rule = ElementAlgebra::Rule::add_mod;
      a.modulus = modulus_;
      a.width = partition_.rank();
      a.bound = modulus_;
    }
    return a;
  }

  QuotientElement identity() const {
    if (kind_ == Kind::permutation) {
      return QuotientElement(Permutation::identity(degree_).table());
    }
    return QuotientElement(std::vector<std::uint32_t>(partition_.rank(), 0));
  }

  QuotientElement multiply(const QuotientElement& x, const QuotientElement& y) const {
    return algebra().multiply(x, y);
  }

  QuotientElement inverse(const QuotientElement& x) const {
    std::vector<std::uint32_t> out(x.size());
    if (kind_ == Kind::permutation) {
      for (std::uint32_t i = 0; i < x.size(); ++i) out[x[i]] = i;
    } else {
      for (std::uint32_t i = 0; i < x.size(); ++i) out[i] = (modulus_ - x[i]) % modulus_;
    }
    return QuotientElement(std::move(out));
  }

  // Image of g^e; the exponent is reduced modulo cycle lengths (or n) first,
  // so exponents such as 20! cost O(degree).
  QuotientElement run_image(Generator g, const BigInt& e) const {
    std::uint32_t o = ordinal(g);
    if (kind_ == Kind::permutation) {
      return QuotientElement(images_[o].pow(e).table());
    }
    std::vector<std::uint32_t> out(partition_.rank(), 0);
    out[o] = static_cast<std::uint32_t>(mod_u64(e, modulus_));
    return QuotientElement(std::move(out));
  }

  // Generator images, then their inverses, in the fixed generator order.
  std::vector<QuotientElement> standard_moves() const {
    std::vector<QuotientElement> moves;
    for (std::uint32_t i = 0; i < partition_.rank(); ++i) {
      moves.push_back(run_image(partition_.generator(i), 1));
    }
    for (std::uint32_t i = 0; i < partition_.rank(); ++i) {
      moves.push_back(run_image(partition_.generator(i), -1));
    }
    return moves;
  }

  // Word spelled by a sequence of standard moves.
  Word word_of_moves(const std::vector<std::uint32_t>& moves) const {
    std::vector<Run> raw;
    for (std::uint32_t m : moves) {
      std::uint32_t r = partition_.rank();
      raw.push_back(Run{partition_.generator(m % r), m < r ? BigInt(1) : BigInt(-1)});
    }
    return reduce(raw);
  }

  // Full Cayley enumeration of the image. Throws CapExceeded.
  const Enumeration& enumeration() const {
    std::lock_guard lock(cache_->mutex);
    if (!cache_->table) {
      if (auto err = validate()) throw InvalidArgument(*err);
      Enumeration::Options opt;
      opt.cap = cap_;
      cache_->table = std::make_shared<const Enumeration>(algebra(), identity(),
                                                          standard_moves(), opt);
    }
    return *cache_->table;
  }

  friend bool operator==(const FiniteQuotient& a, const FiniteQuotient& b) {
    return a.kind_ == b.kind_ && a.partition_ == b.partition_ && a.degree_ == b.degree_ &&
           a.modulus_ == b.modulus_ && a.images_ == b.images_;
  }

  static FiniteQuotient permutation(const FactorPartition& p, std::uint32_t degree,
                                    std::vector<Permutation> images, std::size_t cap) {
    FiniteQuotient q(p, cap);
    q.kind_ = Kind::permutation;
    q.degree_ = degree;
    q.images_ = std::move(images);
    return q;
  }

  static FiniteQuotient abelian(const FactorPartition& p, std::uint32_t modulus,
                                std::size_t cap) {
    FiniteQuotient q(p, cap);
    q.kind_ = Kind::abelian;
    q.modulus_ = modulus;
    return q;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::shared_ptr<const Enumeration> table;
  };

  FiniteQuotient(const FactorPartition& p, std::size_t cap)
      : partition_(p), cap_(cap), cache_(std::make_shared<Cache>()) {}

  std::uint32_t ordinal(Generator g) const {
    if (!partition_.contains(g)) throw InvalidArgument("generator outside the quotient's partition");
    return partition_.ordinal(g);
  }

  void require_permutation() const {
    if (kind_ != Kind::permutation) throw InvalidArgument("quotient is not permutation-backed");
  }

  Kind kind_ = Kind::permutation;
  FactorPartition partition_;
  std::size_t cap_;
  std::uint32_t degree_ = 0;
  std::uint32_t modulus_ = 0;
  std::vector<Permutation> images_;
  std::shared_ptr<Cache> cache_;
};

inline FiniteQuotient make_permutation_quotient(const FactorPartition& p,
                                                std::vector<Permutation> images,
                                                std::size_t cap = FiniteQuotient::default_cap) {
  if (images.size() != p.rank()) {
    throw InvalidArgument("expected " + std::to_string(p.rank()) + " generator images, got " +
                          std::to_string(images.size()));
  }
  std::uint32_t d = images.empty() ? 0 : images.front().degree();
  auto q = FiniteQuotient::permutation(p, d, std::move(images), cap);
  if (auto err = q.validate()) throw InvalidArgument(*err);
  return q;
}

inline FiniteQuotient make_abelian_quotient(const FactorPartition& p, std::uint64_t n,
                                            std::size_t cap = FiniteQuotient::default_cap) {
  if (n < 2) throw InvalidArgument("abelian quotient needs modulus >= 2");
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("abelian modulus too large");
  }
  return FiniteQuotient::abelian(p, static_cast<std::uint32_t>(n), cap);
}

inline FiniteQuotient trivial_quotient(const FactorPartition& p,
                                       std::size_t cap = FiniteQuotient::default_cap) {
  return make_permutation_quotient(p, std::vector<Permutation>(p.rank(), Permutation::identity(1)),
                                   cap);
}

inline QuotientElement image(const FiniteQuotient& q, const Word& w) {
  QuotientElement x = q.identity();
  for (const Run& r : w.runs()) x = q.multiply(x, q.run_image(r.gen, r.exponent));
  return x;
}

inline bool in_kernel(const FiniteQuotient& q, const Word& w) {
  return image(q, w) == q.identity();
}

inline bool coset_equal(const FiniteQuotient& q, const Word& u, const Word& v) {
  return image(q, u) == image(q, v);
}

inline std::uint64_t quotient_order(const FiniteQuotient& q) {
  return q.enumeration().size();
}

// Order of an element of the image, from its cycle type (or residues).
inline std::uint64_t element_order(const FiniteQuotient& q, const QuotientElement& x) {
  BigInt order = 1;
  if (q.kind() == FiniteQuotient::Kind::permutation) {
    std::vector<std::uint32_t> m(x.values().begin(), x.values().end());
    order = Permutation::unchecked(std::move(m)).order();
  } else {
    for (std::uint32_t v : x.values()) {
      std::uint64_t g = std::gcd<std::uint64_t, std::uint64_t>(q.modulus(), v);
      order = boost::multiprecision::lcm(order, BigInt(q.modulus() / g));
    }
  }
  if (!fits_u64(order)) throw CapExceeded("element order does not fit in 64 bits");
  return order.convert_to<std::uint64_t>();
}

inline std::uint64_t element_order(const FiniteQuotient& q, const Word& w) {
  return element_order(q, image(q, w));
}

// Word-metric distance from the identity to image(w), generators K u L and
// their inverses.
inline std::uint32_t cayley_distance(const FiniteQuotient& q, const Word& w) {
  const Enumeration& e = q.enumeration();
  auto idx = e.find(image(q, w));
  if (!idx) throw Error("image not found in enumeration");
  return e.distance(*idx);
}

// Closure of the images of gens (with inverses) inside the image group.
inline Enumeration subgroup_enumeration(const FiniteQuotient& q, const std::vector<Word>& gens,
                                        bool keep_neighbors = false) {
  if (auto err = q.validate()) throw InvalidArgument(*err);
  std::vector<QuotientElement> moves;
  for (const Word& g : gens) moves.push_back(image(q, g));
  for (const Word& g : gens) moves.push_back(q.inverse(image(q, g)));
  Enumeration::Options opt;
  opt.cap = q.cap();
  opt.keep_neighbors = keep_neighbors;
  return Enumeration(q.algebra(), q.identity(), std::move(moves), opt);
}

inline std::uint64_t subgroup_image_order(const FiniteQuotient& q, const std::vector<Word>& gens) {
  return subgroup_enumeration(q, gens).size();
}

inline std::vector<Word> k_generators(const FactorPartition& p) {
  std::vector<Word> out;
  for (std::uint32_t i = 0; i < p.k_size(); ++i) out.push_back(Word::letter(k_gen(i)));
  return out;
}

// Abelian backend rewritten as permutations: generator i shifts block i of
// `rank` blocks of n points.
inline std::vector<Permutation> as_permutations(const FiniteQuotient& q) {
  if (q.kind() == FiniteQuotient::Kind::permutation) return q.permutation_images();
  const std::uint32_t n = q.modulus();
  const std::uint32_t rank = q.partition().rank();
  std::vector<Permutation> out;
  for (std::uint32_t i = 0; i < rank; ++i) {
    std::vector<std::uint32_t> map = Permutation::identity(n * rank).table();
    for (std::uint32_t x = 0; x < n; ++x) map[i * n + x] = i * n + (x + 1) % n;
    out.push_back(Permutation::unchecked(std::move(map)));
  }
  return out;
}

// Kernel of the product is the intersection of the kernels. Two abelian
// factors collapse to one abelian quotient modulo lcm(n1, n2).
inline FiniteQuotient direct_product(const FiniteQuotient& a, const FiniteQuotient& b) {
  if (!(a.partition() == b.partition())) {
    throw InvalidArgument("direct product of quotients over different partitions");
  }
  std::size_t cap = std::max(a.cap(), b.cap());
  if (a.kind() == FiniteQuotient::Kind::abelian && b.kind() == FiniteQuotient::Kind::abelian) {
    return make_abelian_quotient(a.partition(), std::lcm<std::uint64_t, std::uint64_t>(a.modulus(), b.modulus()),
                                 cap);
  }
  auto pa = as_permutations(a);
  auto pb = as_permutations(b);
  const std::uint32_t da = pa.front().degree();
  const std::uint32_t db = pb.front().degree();
  std::vector<Permutation> images;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    std::vector<std::uint32_t> m(da + db);
    for (std::uint32_t x = 0; x < da; ++x) m[x] = pa[i][x];
    for (std::uint32_t x = 0; x < db; ++x) m[da + x] = da + pb[i][x];
    images.push_back(Permutation(std::move(m)));
  }
  return make_permutation_quotient(a.partition(), std::move(images), cap);
}

struct Refinement {
  bool refines = false;
  // A word in ker(coarse) but not in ker(fine), when the kernels differ.
  std::optional<Word> strictness_witness;
  std::string detail;
};

// Decides whether ker(fine) <= ker(coarse), i.e. the coarse image is a
// quotient of the fine image compatible with the generator images, by
// pushing the fine BFS tree into the coarse group and checking every edge.
inline Refinement refines(const FiniteQuotient& fine, const FiniteQuotient& coarse) {
  Refinement out;
  if (!(fine.partition() == coarse.partition())) {
    out.detail = "partitions differ";
    return out;
  }
  const Enumeration& f = fine.enumeration();
  const Enumeration& c = coarse.enumeration();
  const std::size_t moves = f.move_count();
  std::vector<std::uint32_t> label(f.size());
  label[0] = 0;
  for (std::uint32_t i = 1; i < f.size(); ++i) {
    label[i] = c.neighbor(label[f.parent(i)], f.parent_move(i));
  }
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    for (std::size_t m = 0; m < moves; ++m) {
      if (label[f.neighbor(i, m)] != c.neighbor(label[i], m)) {
        out.detail = "fine element " + std::to_string(i) + " has no consistent coarse image";
        return out;
      }
    }
  }
  out.refines = true;
  for (std::uint32_t i = 1; i < f.size(); ++i) {
    if (label[i] == 0) {
      out.strictness_witness = fine.word_of_moves(f.path_moves(i));
      break;
    }
  }
  return out;
}

}  // namespace profinite
