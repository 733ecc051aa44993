#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "profinite/example1.hpp"

using namespace profinite;
using namespace profinite::example1;

namespace {

const Alphabet AB = alphabet();
Word W(const char* s) { return AB.parse(s); }

FiniteQuotient c3() {
  return make_permutation_quotient(partition(),
                                   {Permutation::from_cycles(3, {{0, 1, 2}}), Permutation::identity(3)});
}

// Every reduced word over {a, b} with at most `len` letters.
std::vector<Word> all_words(int len) {
  std::vector<oracle::Letters> layer{{}};
  std::vector<Word> out{Word()};
  const FactorPartition p = partition();
  for (int l = 1; l <= len; ++l) {
    std::vector<oracle::Letters> next;
    for (const auto& w : layer) {
      for (Generator g : p.generators()) {
        for (int s : {1, -1}) {
          if (!w.empty() && w.back().gen == g && w.back().sign == -s) continue;
          auto x = w;
          x.push_back({g, s});
          next.push_back(x);
        }
      }
    }
    for (const auto& w : next) {
      std::vector<profinite::Run> runs;
      for (const auto& x : w) runs.push_back(profinite::Run{x.gen, BigInt(x.sign)});
      out.push_back(reduce(runs));
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Example1, M0Residue) {
  EXPECT_EQ(m0_residue(2), 0);
  EXPECT_EQ(m0_residue(3), 1);
  EXPECT_EQ(m0_residue(60), 16);
  EXPECT_EQ(m0_residue(1), 0);
  for (std::uint64_t n = 1; n <= 3000; ++n) EXPECT_EQ(m0_residue(n), oracle::m0_scan(n)) << n;
  EXPECT_EQ(m0_residue(60), *oracle::crt_scan({{0, 4}, {1, 3}, {1, 5}}));
}

TEST(Example1, M0ResiduesAreCompatible) {
  for (std::uint64_t m = 1; m <= 10000; ++m) {
    const BigInt rm = m0_residue(m);
    for (std::uint64_t n = 1; n * n <= m; ++n) {
      if (m % n) continue;
      EXPECT_EQ(mod_floor(rm, n), m0_residue(n));
      EXPECT_EQ(mod_floor(rm, m / n), m0_residue(m / n));
    }
  }
}

TEST(Example1, Sequence) {
  EXPECT_EQ(m_sequence(1), 0);
  EXPECT_EQ(m_sequence(3), 4);
  EXPECT_EQ(m_sequence(5), 16);
  for (std::uint64_t j = 1; j <= 40; ++j) {
    for (std::uint64_t i = 1; i <= j; ++i) {
      EXPECT_EQ(mod_floor(m_sequence(j), lcm_upto(i)), m_sequence(i));
    }
  }
  for (std::uint64_t n = 1; n <= 20; ++n) {
    for (std::uint64_t k = n; k <= 40; ++k) {
      EXPECT_EQ(mod_floor(factorial(k), n), 0);
      EXPECT_EQ(mod_floor(m_sequence(k), n), m0_residue(n));
    }
  }
}

TEST(Example1, Elements) {
  EXPECT_EQ(AB.format(a_element(3)), "a^6");
  EXPECT_EQ(AB.format(s_element(3)), "a^6 b^4");
  EXPECT_EQ(AB.format(s_element(1)), "a");
  EXPECT_EQ(AB.format(s_element(5)), "a^120 b^16");
  EXPECT_EQ(word_length(a_element(20)), factorial(20));
  EXPECT_TRUE(in_S(W("a^6 b^4")));
  EXPECT_FALSE(in_S(W("a^6")));
  EXPECT_FALSE(in_S(Word()));
}

TEST(Example1, IntegerSeparator) {
  EXPECT_EQ(separate_integer_from_m0(0), 3);
  EXPECT_EQ(separate_integer_from_m0(4), 8);
  EXPECT_EQ(separate_integer_from_m0(16), 32);
  for (long long t = -500; t <= 500; ++t) {
    const BigInt n = separate_integer_from_m0(t);
    EXPECT_NE(mod_floor(BigInt(t), n), m0_residue(n)) << t;
  }
}

TEST(Example1, Convergence) {
  EXPECT_EQ(convergence_witness(trivial_quotient(partition())), 1u);
  EXPECT_EQ(convergence_witness(c3()), 3u);
  EXPECT_TRUE(in_kernel(c3(), W("a^6")));
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    const std::uint32_t d = 2 + static_cast<std::uint32_t>(rng() % 7);
    FiniteQuotient q = make_permutation_quotient(
        partition(), {Permutation(oracle::random_table(rng, d)), Permutation(oracle::random_table(rng, d))});
    const std::uint64_t k0 = convergence_witness(q);
    // naive: the smallest k with a^k trivial on every point
    std::vector<std::uint32_t> t(q.permutation_image(gen_a).table());
    std::uint64_t naive = 1;
    for (;; ++naive) {
      auto img = oracle::compose(partition(), {t, t}, oracle::Letters(naive, {gen_a, 1}));
      bool id = true;
      for (std::uint32_t x = 0; x < d; ++x) id &= img[x] == x;
      if (id) break;
    }
    EXPECT_EQ(k0, naive);
  }
}

TEST(Example1, SeparateWorkedExamples) {
  TailCertificate id = separate_from_S(Word());
  EXPECT_EQ(id.modulus, 3u);
  EXPECT_EQ(id.head_bound, 3u);
  ASSERT_EQ(id.heads.size(), 2u);
  EXPECT_EQ(id.heads[0].quotient, make_abelian_quotient(partition(), 3));
  EXPECT_EQ(id.heads[1].quotient, make_abelian_quotient(partition(), 3));
  EXPECT_NE(image(id.heads[0].quotient, Word()), tail_value(make_abelian_quotient(partition(), 3)));
  EXPECT_TRUE(verify_ex1(id).passed());

  TailCertificate b = separate_from_S(W("b"));
  EXPECT_EQ(b.modulus, 2u);
  EXPECT_EQ(b.head_bound, 2u);
  EXPECT_TRUE(verify_ex1(b).passed());

  EXPECT_THROW(separate_from_S(W("a^6 b^4")), PreconditionError);
  EXPECT_THROW(separate_from_S(W("a")), PreconditionError);

  TailCertificate wide = separate_from_S(W("b"), 6);
  EXPECT_EQ(wide.head_bound, 6u);
  EXPECT_TRUE(verify_ex1(wide).passed());
}

TEST(Example1, TailModulusNeverExceedsDocumentedRule) {
  for (const Word& w : all_words(4)) {
    if (in_S(w)) continue;
    const BigInt ea = exponent_sum(w, gen_a), eb = exponent_sum(w, gen_b);
    const BigInt rule = ea != 0 ? BigInt(abs(ea) + 1) : separate_integer_from_m0(eb);
    TailCertificate c = separate_from_S(w);
    EXPECT_LE(BigInt(c.modulus), rule);
    EXPECT_GE(c.modulus, 2u);
  }
}

TEST(Example1, ClosednessSweepLength3) {
  int n = 0;
  for (const Word& w : all_words(3)) {
    if (in_S(w)) continue;
    ++n;
    Report r = verify_ex1(separate_from_S(w));
    EXPECT_TRUE(r.passed()) << AB.format(w);
  }
  EXPECT_GT(n, 50);
}

TEST(Example1, CorruptionsFail) {
  TailCertificate c = separate_from_S(Word());
  TailCertificate low = c;
  low.head_bound = c.modulus - 1;
  EXPECT_FALSE(verify_ex1(low).passed());

  TailCertificate mod = c;
  mod.modulus = 4;
  mod.head_bound = 4;
  EXPECT_FALSE(verify_ex1(mod).passed());

  TailCertificate wrong_target = c;
  wrong_target.target = W("a^2");  // equals s_2
  EXPECT_FALSE(verify_ex1(wrong_target).passed());

  TailCertificate dropped = c;
  dropped.heads.pop_back();
  EXPECT_FALSE(verify_ex1(dropped).passed());
}

TEST(Example1, NotClosed) {
  NotClosedWitness t = not_closed_witness(trivial_quotient(partition()));
  EXPECT_EQ(t.k, 1u);
  EXPECT_EQ(t.s_element, W("a"));
  EXPECT_EQ(t.cofactor, Word());

  NotClosedWitness w3 = not_closed_witness(c3());
  EXPECT_EQ(w3.k, 3u);
  EXPECT_EQ(w3.s_element, W("a^6 b^4"));
  EXPECT_EQ(w3.cofactor, W("b^-4"));
  EXPECT_TRUE(in_kernel(c3(), multiply(w3.s_element, w3.cofactor)));

  NotClosedWitness w4 = not_closed_witness(make_abelian_quotient(partition(), 4));
  EXPECT_EQ(w4.k, 4u);
  EXPECT_TRUE(in_kernel(w4.quotient, a_element(4)));

  // no element s_j b^t is trivial: its a-exponent is j!
  for (std::uint64_t j = 1; j <= 12; ++j) {
    for (long long t = -5; t <= 5; ++t) {
      Word x = multiply(s_element(j), Word::letter(gen_b, t));
      EXPECT_EQ(exponent_sum(x, gen_a), factorial(j));
      EXPECT_FALSE(x.is_identity());
    }
  }
}
