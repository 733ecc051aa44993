#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "profinite/alphabet.hpp"
#include "profinite/bigint.hpp"
#include "profinite/error.hpp"
#include "profinite/quotients.hpp"
#include "profinite/report.hpp"
#include "profinite/separation.hpp"
#include "profinite/words.hpp"

// The rank-two construction: A = {a^(j!)}, the integer sequence m_j tending
// to a non-integral profinite limit m_0, and S = {a^(j!) b^(m_j)}. Closedness
// of S and non-closedness of S<b> are exhibited through finite quotients.
namespace profinite::example1 {

inline FactorPartition partition() { return FactorPartition(1, 1); }
inline Alphabet alphabet() { return Alphabet::standard(partition()); }
inline constexpr Generator gen_a{Factor::K, 0};
inline constexpr Generator gen_b{Factor::L, 0};

namespace detail {

inline BigInt inverse_mod(const BigInt& x, const BigInt& n) {
  BigInt old_r = mod_floor(x, n), r = n, old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw InvalidArgument("not invertible");
  return mod_floor(old_s, n);
}

}  // namespace detail

// Residue of m_0 modulo n: 0 on the 2-primary part, 1 on the odd part.
inline BigInt m0_residue(const BigInt& n) {
  if (n < 1) throw InvalidArgument("modulus must be >= 1");
  BigInt two_part = 1, odd = n;
  while ((odd & 1) == 0) {
    odd >>= 1;
    two_part <<= 1;
  }
  if (odd == 1) return 0;
  // x = 0 mod two_part and x = 1 mod odd.
  return mod_floor(two_part * detail::inverse_mod(two_part, odd), n);
}

// m_j = m_0 reduced modulo lcm(1..j): agrees with m_0 modulo every n <= j.
inline BigInt m_sequence(std::uint64_t j) {
  if (j < 1) throw InvalidArgument("sequence index starts at 1");
  return m0_residue(lcm_upto(j));
}

inline Word a_element(std::uint64_t j) {
  if (j < 1) throw InvalidArgument("sequence index starts at 1");
  return Word::letter(gen_a, factorial(j));
}

// a^(j!) b^(m_j); the b-run vanishes when m_j = 0 (so s_1 = a).
inline Word s_element(std::uint64_t j) {
  return multiply(a_element(j), Word::letter(gen_b, m_sequence(j)));
}

inline bool in_S(const Word& w) {
  const BigInt len = word_length(w);
  BigInt fact = 1;
  for (std::uint64_t j = 1;; ++j) {
    fact *= j;
    if (fact > len) return false;
    if (s_element(j) == w) return true;
  }
}

// Order k0 of the image of a; a^(k!) is then in the kernel for every
// k >= k0. Checks this over [k0, k0 + range].
inline std::uint64_t convergence_witness(const FiniteQuotient& q, std::uint64_t range = 10) {
  if (!(q.partition() == partition())) throw InvalidArgument("quotient is not over <a, b>");
  const std::uint64_t k0 = element_order(q, Word::letter(gen_a));
  for (std::uint64_t k = k0; k <= k0 + range; ++k) {
    if (!in_kernel(q, a_element(k))) {
      throw AssertionFailure("a^(" + std::to_string(k) + "!) is not in the kernel");
    }
  }
  return k0;
}

// A modulus at which t and m_0 disagree.
inline BigInt separate_integer_from_m0(const BigInt& t) {
  if (t == 0) return 3;
  BigInt bound = boost::multiprecision::abs(t);
  BigInt n = 1;
  while (n <= bound) n <<= 1;
  return n;
}

struct TailCertificate {
  Word target;
  std::uint64_t modulus = 0;     // abelian quotient separating the tail
  std::uint64_t head_bound = 0;  // J: heads cover 1 <= j < J
  std::vector<SeparationCertificate> heads;
  FiniteQuotient composite;
};

struct NotClosedWitness {
  FiniteQuotient quotient;
  std::uint64_t k = 0;
  Word s_element;
  Word cofactor;
};

// Image of s_j in the abelian quotient mod n for every j >= n.
inline QuotientElement tail_value(const FiniteQuotient& abelian_n) {
  std::vector<std::uint32_t> v(2, 0);
  v[1] = m0_residue(abelian_n.modulus()).convert_to<std::uint32_t>();
  return QuotientElement(std::move(v));
}

namespace detail {

inline std::uint64_t tail_modulus(const Word& w) {
  const BigInt ea = exponent_sum(w, gen_a);
  const BigInt eb = exponent_sum(w, gen_b);
  // The documented rule gives a modulus that always works; the least working
  // modulus is never larger and keeps the head range short.
  const BigInt rule = ea != 0 ? BigInt(boost::multiprecision::abs(ea) + 1)
                              : separate_integer_from_m0(eb);
  for (BigInt n = 2; n <= rule; ++n) {
    if (mod_floor(ea, n) != 0 || mod_floor(eb, n) != m0_residue(n)) {
      if (!fits_u64(n) || n > std::numeric_limits<std::uint32_t>::max()) break;
      return n.convert_to<std::uint64_t>();
    }
  }
  throw CapExceeded("tail modulus out of range");
}

// Least modulus at which the exponent vectors of u and v differ.
inline std::optional<std::uint64_t> abelian_separator(const Word& u, const Word& v) {
  const BigInt da = exponent_sum(u, gen_a) - exponent_sum(v, gen_a);
  const BigInt db = exponent_sum(u, gen_b) - exponent_sum(v, gen_b);
  if (da == 0 && db == 0) return std::nullopt;
  const BigInt d = da != 0 ? boost::multiprecision::abs(da) : boost::multiprecision::abs(db);
  for (BigInt n = 2; n <= d + 1; ++n) {
    if (mod_floor(da, n) != 0 || mod_floor(db, n) != 0) {
      if (n > std::numeric_limits<std::uint32_t>::max()) break;
      return n.convert_to<std::uint64_t>();
    }
  }
  throw CapExceeded("abelian separator out of range");
}

}  // namespace detail

inline TailCertificate separate_from_S(const Word& w, std::uint64_t head_margin = 0,
                                       std::size_t cap = FiniteQuotient::default_cap) {
  const FactorPartition p = partition();
  if (!over_partition(w, p)) throw InvalidArgument("word is not over <a, b>");
  if (in_S(w)) throw PreconditionError("word is a member of S");

  TailCertificate c;
  c.target = w;
  c.modulus = detail::tail_modulus(w);
  c.head_bound = std::max(c.modulus, head_margin);
  const FiniteQuotient tail_q = make_abelian_quotient(p, c.modulus, cap);

  std::uint64_t abelian_lcm = c.modulus;
  std::vector<FiniteQuotient> perm_heads;
  for (std::uint64_t j = 1; j < c.head_bound; ++j) {
    const Word s = s_element(j);
    const Word diff = multiply(w, invert(s));
    if (!coset_equal(tail_q, w, s)) {
      c.heads.push_back({tail_q, {}, diff, WitnessKind::image_differs});
    } else if (auto n = detail::abelian_separator(w, s)) {
      c.heads.push_back({make_abelian_quotient(p, *n, cap), {}, diff, WitnessKind::image_differs});
      abelian_lcm = std::lcm(abelian_lcm, *n);
    } else {
      c.heads.push_back(separate_from_identity(p, diff));
      perm_heads.push_back(c.heads.back().quotient);
    }
  }

  c.composite = make_abelian_quotient(p, abelian_lcm, cap);
  std::vector<FiniteQuotient> used;
  for (const auto& q : perm_heads) {
    if (std::find(used.begin(), used.end(), q) != used.end()) continue;
    used.push_back(q);
    c.composite = direct_product(c.composite, q);
  }
  c.composite = c.composite.with_cap(cap);
  return c;
}

// Re-derives everything from the certificate's own quotients: the heads are
// separated by the composite quotient, the composite refines the abelian
// quotient mod n, and from J on every s_j has the fixed tail image, which
// differs from the target's.
inline Report verify_ex1(const TailCertificate& c) {
  Report r;
  const FactorPartition p = partition();
  const Word& w = c.target;

  bool range_ok = c.modulus >= 2 && c.modulus <= c.head_bound &&
                  c.modulus <= std::numeric_limits<std::uint32_t>::max();
  r.add("modulus_bound", range_ok,
        "n=" + std::to_string(c.modulus) + " J=" + std::to_string(c.head_bound));
  if (!range_ok) return r;
  if (auto err = c.composite.validate()) {
    r.add("composite_valid", false, *err);
    return r;
  }
  if (!(c.composite.partition() == p) || !over_partition(w, p)) {
    r.add("partition", false, "certificate is not over <a, b>");
    return r;
  }

  const FiniteQuotient tail_q = make_abelian_quotient(p, c.modulus);
  const QuotientElement tail = tail_value(tail_q);
  const QuotientElement target_image = image(tail_q, w);
  r.add("tail_separation", target_image != tail);
  for (std::uint64_t j = c.head_bound; j <= c.head_bound + 10; ++j) {
    r.add("tail_residue", image(tail_q, s_element(j)) == tail, "",
          static_cast<long long>(j));
  }

  try {
    Refinement ref = refines(c.composite, tail_q);
    r.add("composite_refines_tail", ref.refines, ref.detail);
  } catch (const CapExceeded& e) {
    r.add("composite_refines_tail", false, e.what());
  }

  for (std::uint64_t j = 1; j < c.head_bound; ++j) {
    bool separated = !coset_equal(c.composite, w, s_element(j));
    r.add("head_separation", separated, "", static_cast<long long>(j));
  }

  bool heads_ok = c.heads.size() + 1 == c.head_bound;
  r.add("head_count", heads_ok,
        std::to_string(c.heads.size()) + " heads for J=" + std::to_string(c.head_bound));
  for (std::size_t i = 0; heads_ok && i < c.heads.size(); ++i) {
    const auto& h = c.heads[i];
    const std::uint64_t j = i + 1;
    bool matches = h.excluded == multiply(w, invert(s_element(j))) && h.subgroup_gens.empty();
    bool ok = matches && verify_separation(h).passed();
    r.add("head_certificate", ok, matches ? "" : "head does not separate target from s_j",
          static_cast<long long>(j));
  }
  return r;
}

// Every kernel meets S<b>: with k the order of a's image, s_k b^(-m_k) = a^(k!)
// is in the kernel. The identity itself is not in S<b>, because every element
// s_j b^t has a-exponent sum j! != 0.
inline NotClosedWitness not_closed_witness(const FiniteQuotient& q) {
  if (!(q.partition() == partition())) throw InvalidArgument("quotient is not over <a, b>");
  NotClosedWitness out{q, element_order(q, Word::letter(gen_a)), {}, {}};
  out.s_element = s_element(out.k);
  out.cofactor = Word::letter(gen_b, -m_sequence(out.k));
  const Word product = multiply(out.s_element, out.cofactor);
  if (!in_kernel(q, product)) throw AssertionFailure("s_k b^(-m_k) is not in the kernel");
  if (product != a_element(out.k)) throw AssertionFailure("s_k b^(-m_k) differs from a^(k!)");
  if (exponent_sum(product, gen_a) != factorial(out.k)) {
    throw AssertionFailure("a-exponent of the witness is not k!");
  }
  return out;
}

}  // namespace profinite::example1
