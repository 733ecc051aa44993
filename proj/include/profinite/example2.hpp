#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "profinite/alphabet.hpp"
#include "profinite/bigint.hpp"
#include "profinite/error.hpp"
#include "profinite/quotients.hpp"
#include "profinite/report.hpp"
#include "profinite/words.hpp"

// The free-product construction over F = <K> * <L>: a descending chain of
// finite quotients Q_1, Q_2, ... (kernels G_1 > G_2 > ...), elements r_m of
// <K> far from the identity in Q_m, and s_m = r_m b^(e_m) ending in <L>, such
// that S = {s_m} is discrete and closed while S<K> is not closed.
namespace profinite::example2 {

struct Params {
  FactorPartition partition{2, 2};
  std::uint32_t steps = 4;
  std::vector<std::uint32_t> f;  // f(1), ..., f(N); empty means f(n) = n + 1
  std::uint64_t seed = 0;
  std::size_t cap = FiniteQuotient::default_cap;
  std::size_t max_candidates = 400;
  // Each step leaves room for this growth factor per remaining step.
  std::uint32_t growth_reserve = 16;

  std::vector<std::uint32_t> f_values() const {
    if (!f.empty()) return f;
    std::vector<std::uint32_t> out;
    for (std::uint32_t n = 1; n <= steps; ++n) out.push_back(n + 1);
    return out;
  }

  friend bool operator==(const Params&, const Params&) = default;
};

struct Step {
  FiniteQuotient quotient;  // cumulative product; kernel G_m
  Word r;                   // in <K>
  Word s;                   // r b^e
  std::uint64_t e = 0;      // order of the image of b
  std::uint32_t f_value = 0;
  std::uint64_t k_index = 0;  // [<K> : G_m n <K>] = size of the <K>-image
};

struct Certificate {
  Params params;
  std::vector<Step> steps;
  BigRational reciprocal_sum;
};

using QuotientSource = std::function<FiniteQuotient()>;

// Sum of 2k(2k-1)^(i-1) for i = 1..radius: the free-group sphere sizes.
inline BigInt sphere_bound(std::uint32_t k, std::uint32_t radius) {
  if (radius == 0) return 1;
  return BigInt(2 * k) * boost::multiprecision::pow(BigInt(2 * k - 1), radius - 1);
}

inline BigInt ball_bound(std::uint32_t k, std::uint32_t radius) {
  BigInt total = 1;
  for (std::uint32_t i = 1; i <= radius; ++i) total += sphere_bound(k, i);
  return total;
}

// Deterministic stream of candidate quotients: two random permutation
// quotients (degree 5..9) then one abelian filler, repeating.
class SeededSource {
 public:
  SeededSource(const FactorPartition& p, std::uint64_t seed, std::size_t cap)
      : partition_(p), rng_(seed), cap_(cap) {}

  FiniteQuotient operator()() {
    const std::uint64_t i = drawn_++;
    if (i % 3 == 2) {
      static constexpr std::uint32_t fillers[] = {2, 3, 4, 8};
      return make_abelian_quotient(partition_, fillers[rng_() % 4], cap_);
    }
    const std::uint32_t degree = 5 + static_cast<std::uint32_t>(rng_() % 5);
    std::vector<Permutation> images;
    for (std::uint32_t g = 0; g < partition_.rank(); ++g) {
      std::vector<std::uint32_t> m(degree);
      for (std::uint32_t x = 0; x < degree; ++x) m[x] = x;
      for (std::uint32_t x = degree - 1; x > 0; --x) {
        std::swap(m[x], m[rng_() % (x + 1)]);
      }
      images.push_back(Permutation(std::move(m)));
    }
    return make_permutation_quotient(partition_, std::move(images), cap_);
  }

 private:
  FactorPartition partition_;
  std::mt19937_64 rng_;
  std::size_t cap_;
  std::uint64_t drawn_ = 0;
};

// One earlier step's coset that a new r must avoid.
struct Forbidden {
  const FiniteQuotient* quotient;
  Word r;
};

struct CandidateScan {
  std::uint64_t k_image_order = 0;
  std::uint64_t k_ball_count = 0;     // K-metric ball of radius f
  std::uint64_t full_ball_count = 0;  // <K>-image elements within full distance f
  std::uint64_t forbidden_count = 0;
  std::uint64_t admissible_count = 0;
  std::optional<Word> first;  // BFS-first admissible element
};

// Walks the <K>-image of `next` breadth first (moves: K generators, then
// their inverses) and classifies each element: too close to the identity in
// the full Cayley graph, in a forbidden coset of a coarser quotient, or
// admissible.
inline CandidateScan scan_candidates(const FiniteQuotient& next,
                                     std::span<const Forbidden> forbidden,
                                     std::uint32_t f_next) {
  const FactorPartition& p = next.partition();
  const std::vector<Word> kgens = k_generators(p);
  Enumeration kimage = subgroup_enumeration(next, kgens);
  const Enumeration& full = next.enumeration();

  std::vector<QuotientElement> targets;
  for (const auto& fb : forbidden) targets.push_back(image(*fb.quotient, fb.r));

  CandidateScan out;
  out.k_image_order = kimage.size();
  const std::uint32_t k = p.k_size();
  for (std::uint32_t i = 0; i < kimage.size(); ++i) {
    if (kimage.distance(i) <= f_next) ++out.k_ball_count;
    auto idx = full.find(kimage.element(i));
    const bool close = full.distance(*idx) <= f_next;
    if (close) ++out.full_ball_count;

    std::vector<Run> raw;
    for (std::uint32_t m : kimage.path_moves(i)) {
      raw.push_back(Run{k_gen(m % k), m < k ? BigInt(1) : BigInt(-1)});
    }
    const Word u = reduce(raw);
    bool hit = false;
    for (std::size_t t = 0; t < forbidden.size() && !hit; ++t) {
      hit = image(*forbidden[t].quotient, u) == targets[t];
    }
    if (hit) ++out.forbidden_count;
    if (!close && !hit) {
      ++out.admissible_count;
      if (!out.first) out.first = u;
    }
  }
  return out;
}

inline Word choose_r(const FiniteQuotient& next, std::span<const Forbidden> forbidden,
                     std::uint32_t f_next) {
  CandidateScan scan = scan_candidates(next, forbidden, f_next);
  if (!scan.first) {
    throw ConstructionError("no admissible r: the <K>-image is too small");
  }
  return *scan.first;
}

// s = r b^e with e the order of b's image: b^e lies in the kernel, hence so
// does r b^e r^-1, and s ends with an <L>-syllable.
inline std::pair<Word, std::uint64_t> make_s(const Word& r, const FiniteQuotient& q) {
  if (r.is_identity()) throw PreconditionError("r must be a nonempty <K>-word");
  if (!lies_in_factor(r, Factor::K)) throw InvalidArgument("r must lie in <K>");
  const Generator b = l_gen(0);
  const std::uint64_t e = element_order(q, Word::letter(b));
  return {multiply(r, Word::letter(b, e)), e};
}

inline void check_params(const Params& p) {
  if (p.steps < 1) throw InvalidArgument("need at least one step");
  const auto f = p.f_values();
  if (f.size() != p.steps) throw InvalidArgument("f must list one value per step");
  if (f.front() < 1) throw InvalidArgument("f(1) must be >= 1");
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i] <= f[i - 1]) throw InvalidArgument("f must be strictly increasing");
  }
}

inline Certificate construct_ex2(const Params& params, const QuotientSource& source) {
  check_params(params);
  const FactorPartition& p = params.partition;
  const auto f = params.f_values();
  const std::vector<Word> kgens = k_generators(p);
  const BigInt first_bound = sphere_bound(p.k_size(), f.front());

  Certificate cert;
  cert.params = params;
  cert.reciprocal_sum = 0;
  std::uint64_t current_order = 1;

  for (std::uint32_t n = 0; n < params.steps; ++n) {
    BigInt budget_big = params.cap;
    for (std::uint32_t i = n + 1; i < params.steps; ++i) budget_big /= params.growth_reserve;
    const std::size_t budget = std::max<std::size_t>(1, budget_big.convert_to<std::size_t>());

    bool accepted = false;
    for (std::size_t attempt = 0; attempt < params.max_candidates && !accepted; ++attempt) {
      FiniteQuotient candidate = source();
      if (!(candidate.partition() == p)) throw InvalidArgument("source quotient over wrong partition");
      FiniteQuotient next =
          (n == 0 ? candidate : direct_product(cert.steps.back().quotient, candidate)).with_cap(budget);
      std::uint64_t order = 0;
      std::uint64_t k_index = 0;
      try {
        order = quotient_order(next);
        if (order <= current_order) continue;  // kernel would not shrink
        k_index = subgroup_image_order(next, kgens);
      } catch (const CapExceeded&) {
        continue;
      }
      if (n == 0 && BigInt(k_index) <= first_bound) continue;
      BigRational sum = cert.reciprocal_sum + BigRational(1, k_index);
      if (sum >= BigRational(1, 2)) continue;

      std::vector<Forbidden> forbidden;
      for (const Step& st : cert.steps) forbidden.push_back({&st.quotient, st.r});
      CandidateScan scan = scan_candidates(next, forbidden, f[n]);
      if (!scan.first) continue;

      auto [s, e] = make_s(*scan.first, next);
      cert.steps.push_back(Step{next, *scan.first, s, e, f[n], k_index});
      cert.reciprocal_sum = sum;
      current_order = order;
      accepted = true;
    }
    if (!accepted) {
      throw ConstructionError("quotient source exhausted at step " + std::to_string(n + 1) +
                              (n == 0 ? " (index bound unreachable)" : ""));
    }
  }
  return cert;
}

inline Certificate construct_ex2(const Params& params) {
  SeededSource source(params.partition, params.seed, params.cap);
  return construct_ex2(params, std::ref(source));
}

// Re-checks a certificate from its stored quotients and words alone, using
// only word and quotient primitives.
inline Report verify_ex2(const Certificate& c) {
  Report r;
  const Params& params = c.params;
  const FactorPartition& p = params.partition;
  const std::size_t N = c.steps.size();

  {
    std::string why;
    try {
      check_params(params);
    } catch (const Error& e) {
      why = e.what();
    }
    if (why.empty() && N != params.steps) why = "step count differs from params";
    for (std::size_t m = 1; why.empty() && m < N; ++m) {
      if (c.steps[m].f_value <= c.steps[m - 1].f_value) why = "f values are not increasing";
    }
    if (why.empty() && N > 0 && c.steps.front().f_value < 1) why = "f(1) < 1";
    r.add("params", why.empty(), why);
    if (!why.empty() && N == 0) return r;
  }
  const auto f = params.f_values();

  std::vector<bool> usable(N, false);
  for (std::size_t m = 0; m < N; ++m) {
    const Step& st = c.steps[m];
    const long long mm = static_cast<long long>(m + 1);
    std::optional<std::string> err = st.quotient.validate();
    if (!err && !(st.quotient.partition() == p)) err = "wrong partition";
    if (!err && (!over_partition(st.r, p) || !over_partition(st.s, p))) err = "word outside partition";
    r.add("quotient_valid", !err, err.value_or(""), mm);
    usable[m] = !err;
    r.add("f_value", m < f.size() && st.f_value == f[m], "", mm);
  }

  const Generator b = l_gen(0);
  const std::vector<Word> kgens = k_generators(p);
  std::vector<std::optional<std::uint64_t>> k_index(N);
  for (std::size_t m = 0; m < N; ++m) {
    if (!usable[m]) continue;
    const Step& st = c.steps[m];
    const FiniteQuotient& q = st.quotient;
    const long long mm = static_cast<long long>(m + 1);

    r.add("r_in_K", !st.r.is_identity() && lies_in_factor(st.r, Factor::K), "", mm);
    try {
      const std::uint32_t d = cayley_distance(q, st.r);
      r.add("condition1", d > st.f_value,
            "distance " + std::to_string(d) + " vs f " + std::to_string(st.f_value), mm);
    } catch (const CapExceeded& e) {
      r.add("condition1", false, e.what(), mm);
    }
    r.add("condition2", coset_equal(q, st.s, st.r), "", mm);
    auto syl = syllables(st.s, p);
    r.add("condition3", !syl.empty() && syl.back().factor == Factor::L, "", mm);

    const std::uint64_t e = element_order(q, Word::letter(b));
    const bool form = st.e == e && st.s == multiply(st.r, Word::letter(b, BigInt(st.e)));
    r.add("s_form", form, "order of b is " + std::to_string(e), mm);

    try {
      k_index[m] = subgroup_image_order(q, kgens);
      r.add("k_index", *k_index[m] == st.k_index,
            "recomputed " + std::to_string(*k_index[m]), mm);
    } catch (const CapExceeded& ex) {
      r.add("k_index", false, ex.what(), mm);
    }
  }

  for (std::size_t m = 0; m < N; ++m) {
    for (std::size_t k = m + 1; k < N; ++k) {
      if (!usable[m]) continue;
      const bool distinct = !coset_equal(c.steps[m].quotient, c.steps[k].r, c.steps[m].r);
      r.add("condition4", distinct, "", static_cast<long long>(m + 1),
            static_cast<long long>(k + 1));
    }
  }

  if (N > 0 && k_index[0]) {
    const BigInt bound = sphere_bound(p.k_size(), c.steps.front().f_value);
    r.add("index_bound", BigInt(*k_index[0]) > bound,
          std::to_string(*k_index[0]) + " > " + to_decimal(bound), 1);
  } else {
    r.add("index_bound", false, "first index unavailable", 1);
  }

  for (std::size_t m = 0; m + 1 < N; ++m) {
    const long long mm = static_cast<long long>(m + 1);
    if (!usable[m] || !usable[m + 1]) {
      r.add("chain", false, "invalid quotient", mm, mm + 1);
      continue;
    }
    try {
      Refinement ref = refines(c.steps[m + 1].quotient, c.steps[m].quotient);
      if (!ref.refines) {
        r.add("chain", false, "not a refinement: " + ref.detail, mm, mm + 1);
      } else if (!ref.strictness_witness) {
        r.add("chain", false, "unwitnessed: kernels are equal", mm, mm + 1);
      } else {
        r.add("chain", true,
              "witness " + Alphabet::standard(p).format(*ref.strictness_witness), mm, mm + 1);
      }
    } catch (const CapExceeded& e) {
      r.add("chain", false, std::string("unwitnessed: ") + e.what(), mm, mm + 1);
    }
  }

  BigRational sum = 0;
  bool complete = true;
  for (const auto& ki : k_index) {
    if (!ki || *ki == 0) {
      complete = false;
      break;
    }
    sum += BigRational(1, *ki);
  }
  const bool sum_ok = complete && sum < BigRational(1, 2) && sum == c.reciprocal_sum;
  r.add("reciprocal_sum", sum_ok, complete ? sum.str() : "indices unavailable");
  return r;
}

inline void require_step(const Certificate& c, std::uint32_t n) {
  if (n < 1 || n > c.steps.size()) throw InvalidArgument("step index out of range");
}

struct DiscretenessWitness {
  std::vector<std::uint32_t> members;  // m with G_n s_m = G_n s_n
  bool ok = false;                     // n is a member and no member exceeds n
};

inline DiscretenessWitness discreteness_witness(const Certificate& c, std::uint32_t n) {
  require_step(c, n);
  const FiniteQuotient& q = c.steps[n - 1].quotient;
  DiscretenessWitness out;
  const QuotientElement target = image(q, c.steps[n - 1].s);
  bool self = false, bounded = true;
  for (std::uint32_t m = 1; m <= c.steps.size(); ++m) {
    if (image(q, c.steps[m - 1].s) == target) {
      out.members.push_back(m);
      self |= m == n;
      bounded &= m <= n;
    }
  }
  out.ok = self && bounded;
  return out;
}

struct IntersectionRecord {
  std::uint32_t m = 0;
  std::uint32_t f_value = 0;
  std::uint32_t distance = 0;  // from G_n to G_n x
  BigInt length;               // word length of x
  bool distance_within_length = false;
};

struct IntersectionWitness {
  std::vector<std::uint32_t> members;  // m with G_n s_m = G_n x
  std::uint32_t distance = 0;
  BigInt length;
  std::vector<IntersectionRecord> records;
};

inline IntersectionWitness finite_intersection_witness(const Certificate& c, const Word& x,
                                                       std::uint32_t n) {
  require_step(c, n);
  const FiniteQuotient& q = c.steps[n - 1].quotient;
  IntersectionWitness out;
  out.distance = cayley_distance(q, x);
  out.length = word_length(x);
  const QuotientElement target = image(q, x);
  for (std::uint32_t m = 1; m <= c.steps.size(); ++m) {
    if (image(q, c.steps[m - 1].s) != target) continue;
    out.members.push_back(m);
    out.records.push_back(IntersectionRecord{m, c.steps[m - 1].f_value, out.distance, out.length,
                                             BigInt(out.distance) <= out.length});
  }
  return out;
}

// s_n r_n^-1 is in the kernel of Q_n, so every basic neighbourhood of 1 meets
// S<K>; yet no s_m lies in <K>, so 1 is not in S<K>.
inline std::pair<Word, Word> not_closed_witness2(const Certificate& c, std::uint32_t n) {
  require_step(c, n);
  const Step& st = c.steps[n - 1];
  Word u = st.s;
  Word v = invert(st.r);
  if (!lies_in_factor(st.r, Factor::K)) throw AssertionFailure("r_n is not in <K>");
  if (!in_kernel(st.quotient, multiply(u, v))) {
    throw AssertionFailure("s_n r_n^-1 is not in the kernel of Q_n");
  }
  for (std::size_t m = 0; m < c.steps.size(); ++m) {
    auto syl = syllables(c.steps[m].s, c.params.partition);
    if (syl.empty() || syl.back().factor != Factor::L) {
      throw AssertionFailure("s_" + std::to_string(m + 1) + " does not end in <L>");
    }
  }
  return {u, v};
}

// Cayley ball of Q_n of radius f(n)+1 around the identity; the coset of r_n
// is filled when it falls inside.
inline std::string ball_dot(const Certificate& c, std::uint32_t n, const Alphabet& alphabet) {
  require_step(c, n);
  const Step& st = c.steps[n - 1];
  const FiniteQuotient& q = st.quotient;
  Enumeration::Options opt;
  opt.cap = q.cap();
  opt.max_radius = st.f_value + 1;
  Enumeration ball(q.algebra(), q.identity(), q.standard_moves(), opt);
  const QuotientElement target = image(q, st.r);
  const std::uint32_t rank = q.partition().rank();

  std::ostringstream os;
  os << "digraph ball {\n  node [shape=circle];\n";
  for (std::uint32_t i = 0; i < ball.size(); ++i) {
    os << "  " << i << " [label=\"" << alphabet.format(q.word_of_moves(ball.path_moves(i)))
       << "\"";
    if (i == 0) os << ", shape=doublecircle";
    if (ball.element(i) == target) os << ", style=filled, fillcolor=red";
    os << "];\n";
  }
  for (std::uint32_t i = 0; i < ball.size(); ++i) {
    for (std::uint32_t m = 0; m < rank; ++m) {
      std::uint32_t j = ball.neighbor(i, m);
      if (j == Enumeration::npos) continue;
      os << "  " << i << " -> " << j << " [label=\"" << alphabet.name(q.partition().generator(m))
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace profinite::example2
