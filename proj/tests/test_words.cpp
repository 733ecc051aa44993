#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "profinite/alphabet.hpp"
#include "profinite/words.hpp"

using namespace profinite;

namespace {

const FactorPartition P11(1, 1);
const Alphabet AB = Alphabet::standard(P11);

Word W(const char* s) { return AB.parse(s); }

}  // namespace

TEST(Words, ReduceCancels) {
  const Generator a = k_gen(0), b = l_gen(0);
  EXPECT_TRUE(reduce(std::vector<profinite::Run>{{a, 1}, {a, -1}}).is_identity());
  Word w = reduce(std::vector<profinite::Run>{{a, 1}, {b, 1}});
  ASSERT_EQ(w.run_count(), 2u);
  EXPECT_EQ(w.runs()[0], (profinite::Run{a, 1}));
  EXPECT_EQ(w.runs()[1], (profinite::Run{b, 1}));
  // cancellation cascades through a vanished middle run
  EXPECT_EQ(reduce(std::vector<profinite::Run>{{a, 2}, {b, 3}, {b, -3}, {a, -2}, {b, 0}}), Word());
}

TEST(Words, ReduceMatchesNaiveOracle) {
  std::mt19937_64 rng(7);
  const FactorPartition p(2, 1);
  for (int i = 0; i < 1000; ++i) {
    auto raw = oracle::random_runs(rng, p, 20, 2);
    Word w = reduce(raw);
    EXPECT_EQ(oracle::expand(w), oracle::reduce(oracle::expand(raw)));
    // maximal runs, no zero exponents
    for (std::size_t j = 0; j < w.run_count(); ++j) {
      EXPECT_NE(w.runs()[j].exponent, 0);
      if (j) EXPECT_FALSE(w.runs()[j].gen == w.runs()[j - 1].gen);
    }
    EXPECT_EQ(reduce(w.runs()), w);  // idempotent
  }
}

TEST(Words, MultiplyInvertPower) {
  EXPECT_EQ(multiply(W("a b"), Word()), W("a b"));
  EXPECT_EQ(multiply(W("a^3"), W("a^-5")), W("a^-2"));
  EXPECT_EQ(invert(Word()), Word());
  EXPECT_EQ(invert(W("a b^2")), W("b^-2 a^-1"));
  EXPECT_EQ(power(W("a"), 120), W("a^120"));
  EXPECT_EQ(power(W("a b"), 0), Word());
  EXPECT_EQ(power(W("a b"), 3), W("a b a b a b"));
  EXPECT_EQ(power(W("a b"), -2), W("b^-1 a^-1 b^-1 a^-1"));
  EXPECT_EQ(power(W("a"), factorial(20)).runs()[0].exponent, factorial(20));
}

TEST(Words, GroupLawsAgainstOracle) {
  std::mt19937_64 rng(11);
  const FactorPartition p(2, 2);
  for (int i = 0; i < 500; ++i) {
    Word u = oracle::random_word(rng, p, 6, 3);
    Word v = oracle::random_word(rng, p, 6, 3);
    Word x = oracle::random_word(rng, p, 6, 3);
    EXPECT_EQ(oracle::expand(multiply(u, v)),
              oracle::reduce(oracle::concat(oracle::expand(u), oracle::expand(v))));
    EXPECT_EQ(oracle::expand(invert(u)), oracle::inverse(oracle::expand(u)));
    EXPECT_TRUE(multiply(u, invert(u)).is_identity());
    EXPECT_EQ(multiply(multiply(u, v), x), multiply(u, multiply(v, x)));
    EXPECT_EQ(invert(invert(u)), u);
    const long long m = static_cast<long long>(rng() % 7) - 3, n = static_cast<long long>(rng() % 7) - 3;
    EXPECT_EQ(power(u, m + n), multiply(power(u, m), power(u, n)));
    Word naive;
    for (long long k = 0; k < (m < 0 ? -m : m); ++k) naive = multiply(naive, m < 0 ? invert(u) : u);
    EXPECT_EQ(power(u, m), naive);
  }
}

TEST(Words, ExponentSumAndLength) {
  const Generator a = k_gen(0);
  EXPECT_EQ(exponent_sum(W("a b a^-1"), a), 0);
  EXPECT_EQ(exponent_sum(W("a^6 b^4"), a), 6);
  EXPECT_EQ(word_length(Word()), 0);
  EXPECT_EQ(word_length(W("a^120")), 120);
  EXPECT_EQ(word_length(W("a^-3 b^2")), 5);

  std::mt19937_64 rng(3);
  const FactorPartition p(2, 2);
  for (int i = 0; i < 300; ++i) {
    Word u = oracle::random_word(rng, p, 5, 4), v = oracle::random_word(rng, p, 5, 4);
    for (Generator g : p.generators()) {
      EXPECT_EQ(exponent_sum(multiply(u, v), g), exponent_sum(u, g) + exponent_sum(v, g));
    }
    EXPECT_EQ(word_length(u), BigInt(oracle::expand(u).size()));
  }
}

TEST(Words, Syllables) {
  const FactorPartition p(2, 2);
  const Alphabet al = Alphabet::standard(p);
  EXPECT_TRUE(syllables(Word(), p).empty());
  auto s = syllables(al.parse("a^3 c b^4"), p);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].factor, Factor::K);
  EXPECT_EQ(s[0].segment, al.parse("a^3 c"));
  EXPECT_EQ(s[1].factor, Factor::L);
  EXPECT_EQ(s[1].segment, al.parse("b^4"));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    Word w = oracle::random_word(rng, p, 8, 3);
    auto syl = syllables(w, p);
    Word back;
    for (std::size_t j = 0; j < syl.size(); ++j) {
      EXPECT_TRUE(lies_in_factor(syl[j].segment, syl[j].factor));
      EXPECT_FALSE(syl[j].segment.is_identity());
      if (j) EXPECT_NE(syl[j].factor, syl[j - 1].factor);
      back = multiply(back, syl[j].segment);
    }
    EXPECT_EQ(back, w);
  }
}

TEST(Alphabet, StandardNaming) {
  const Alphabet a22 = Alphabet::standard(FactorPartition(2, 2));
  EXPECT_EQ(a22.k_names(), (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(a22.l_names(), (std::vector<std::string>{"b", "d"}));
  const Alphabet a31 = Alphabet::standard(FactorPartition(3, 1));
  EXPECT_EQ(a31.k_names(), (std::vector<std::string>{"a", "c", "d"}));
  EXPECT_EQ(a31.l_names(), (std::vector<std::string>{"b"}));
}

TEST(Alphabet, ParseFormatRoundTrip) {
  EXPECT_EQ(AB.format(W("a a^-1 b")), "b");
  EXPECT_EQ(AB.format(Word()), "1");
  EXPECT_EQ(W("1"), Word());
  EXPECT_EQ(W("a^120 b^16"), multiply(Word::letter(k_gen(0), 120), Word::letter(l_gen(0), 16)));
  EXPECT_EQ(W("ab"), W("a b"));  // juxtaposition
  EXPECT_EQ(AB.format(W("a^2432902008176640000")), "a^2432902008176640000");
  EXPECT_THROW(W("x"), InvalidArgument);
  EXPECT_THROW(W("a^"), InvalidArgument);

  const Alphabet named({"x1", "x"}, {"y"});
  EXPECT_EQ(named.format(named.parse("x1 x^2 y^-1")), "x1 x^2 y^-1");

  std::mt19937_64 rng(9);
  const FactorPartition p(2, 2);
  const Alphabet al = Alphabet::standard(p);
  for (int i = 0; i < 300; ++i) {
    Word w = oracle::random_word(rng, p, 8, 30);
    EXPECT_EQ(al.parse(al.format(w)), w);
  }
}

TEST(Alphabet, RejectsBadNames) {
  EXPECT_THROW(Alphabet({"a"}, {"a"}), InvalidArgument);
  EXPECT_THROW(Alphabet({"1a"}, {"b"}), InvalidArgument);
  EXPECT_THROW(Alphabet({}, {"b"}), InvalidArgument);
}
