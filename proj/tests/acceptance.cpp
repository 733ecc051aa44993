// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "ex2_fixture.hpp"
#include "oracles.hpp"
#include "profinite/profinite.hpp"

using namespace profinite;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << "  (" << o.detail << ")" << std::endl;
}

std::vector<std::uint32_t> to_vec(const QuotientElement& x) {
  return std::vector<std::uint32_t>(x.values().begin(), x.values().end());
}

Word from_letters(const oracle::Letters& l) {
  std::vector<Run> runs;
  for (const auto& x : l) runs.push_back(Run{x.gen, BigInt(x.sign)});
  return reduce(runs);
}

std::vector<Word> random_subgroup(std::mt19937_64& rng, const FactorPartition& p) {
  std::vector<Word> gens;
  const int n = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n; ++i) gens.push_back(oracle::random_reduced(rng, p, 1 + static_cast<int>(rng() % 4)));
  return gens;
}

// 50 quotients over <a, b> of order at most 10^4: random permutation images
// of degree 2..8 (rejection-sampled on order) plus abelian ones.
std::vector<FiniteQuotient> ex1_family() {
  std::mt19937_64 rng(2024);
  std::vector<FiniteQuotient> out;
  const FactorPartition p = example1::partition();
  out.push_back(trivial_quotient(p));
  for (std::uint32_t n : {2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u, 12u}) out.push_back(make_abelian_quotient(p, n));
  while (out.size() < 50) {
    const std::uint32_t d = 2 + static_cast<std::uint32_t>(rng() % 7);
    FiniteQuotient q = make_permutation_quotient(
        p, {Permutation(oracle::random_table(rng, d)), Permutation(oracle::random_table(rng, d))}, 10'000);
    try {
      quotient_order(q);
    } catch (const CapExceeded&) {
      continue;
    }
    out.push_back(q);
  }
  return out;
}

std::vector<Word> words_up_to(const FactorPartition& p, int len) {
  std::vector<oracle::Letters> layer{{}};
  std::vector<Word> out{Word()};
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
    for (const auto& w : next) out.push_back(from_letters(w));
    layer = std::move(next);
  }
  return out;
}

}  // namespace

int main() {
  criterion("words: 10^4 reduce/multiply/invert cases match the letter oracle, < 10 s", [] {
    std::mt19937_64 rng(1);
    const FactorPartition p(2, 2);
    auto t0 = Clock::now();
    int bad = 0;
    for (int i = 0; i < 10'000; ++i) {
      auto raw = oracle::random_runs(rng, p, 12, 3);
      Word u = reduce(raw);
      bad += oracle::expand(u) != oracle::reduce(oracle::expand(raw));
      Word v = oracle::random_word(rng, p, 8, 3);
      bad += oracle::expand(multiply(u, v)) !=
             oracle::reduce(oracle::concat(oracle::expand(u), oracle::expand(v)));
      bad += oracle::expand(invert(u)) != oracle::inverse(oracle::expand(u));
    }
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << bad << " mismatches, " << dt << " s";
    return Outcome{bad == 0 && dt < 10.0, os.str()};
  });

  criterion("quotients: 10^3 homomorphism/fast-power cases exact; a^(20!) < 1 ms at order <= 10^4", [] {
    std::mt19937_64 rng(2);
    const FactorPartition p(1, 1);
    const Word huge = Word::letter(k_gen(0), factorial(20));
    int bad = 0, timed = 0;
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      const std::uint32_t d = 2 + static_cast<std::uint32_t>(rng() % 7);
      std::vector<std::vector<std::uint32_t>> t{oracle::random_table(rng, d), oracle::random_table(rng, d)};
      FiniteQuotient q = make_permutation_quotient(p, {Permutation(t[0]), Permutation(t[1])});
      Word u = oracle::random_word(rng, p, 5, 3), v = oracle::random_word(rng, p, 5, 3);
      bad += image(q, multiply(u, v)) != q.multiply(image(q, u), image(q, v));
      bad += image(q, invert(u)) != q.inverse(image(q, u));
      bad += to_vec(image(q, u)) != oracle::compose(p, t, oracle::expand(u));
      const long long e = static_cast<long long>(rng() % 1001);
      oracle::Letters rep;
      for (long long k = 0; k < e; ++k) rep = oracle::concat(rep, oracle::expand(u));
      bad += to_vec(image(q, power(u, e))) != oracle::compose(p, t, rep);
      if (quotient_order(q) <= 10'000) {
        auto t0 = Clock::now();
        QuotientElement x = image(q, huge);
        worst = std::max(worst, seconds_since(t0));
        ++timed;
        bad += x != image(q, Word::letter(k_gen(0), BigInt(mod_u64(factorial(20), element_order(q, Word::letter(k_gen(0))))))) ;
      }
    }
    std::ostringstream os;
    os << bad << " mismatches; a^(20!) worst " << worst * 1e3 << " ms over " << timed << " quotients";
    return Outcome{bad == 0 && timed > 0 && worst < 1e-3, os.str()};
  });

  criterion("stallings: membership agrees with brute-force products (6-factor ball, radius-10 closure) on 200 subgroups", [] {
    std::mt19937_64 rng(3);
    const FactorPartition p(1, 1);
    int bad = 0;
    std::size_t checked = 0;
    for (int i = 0; i < 200; ++i) {
      auto gens = random_subgroup(rng, p);
      StallingsGraph g = build_stallings(p, gens);
      auto ball = oracle::subgroup_ball(gens, 6);
      for (const auto& l : ball) {
        bad += !membership(g, from_letters(l));
        ++checked;
      }
      auto closure = oracle::subgroup_closure(gens, 10);
      for (int t = 0; t < 25; ++t) {
        Word w = oracle::random_reduced(rng, p, 1 + static_cast<int>(rng() % 4));
        bad += membership(g, w) != (closure.count(oracle::expand(w)) == 1);
        ++checked;
      }
    }
    return Outcome{bad == 0, std::to_string(bad) + " disagreements over " + std::to_string(checked) + " words"};
  });

  criterion("separation: 100 random (H, w), w not in H, certificates verify, degree <= folded vertices", [] {
    std::mt19937_64 rng(4);
    const FactorPartition p(1, 2);
    int bad = 0, done = 0;
    while (done < 100) {
      auto gens = random_subgroup(rng, p);
      Word w = oracle::random_reduced(rng, p, 1 + static_cast<int>(rng() % 6));
      if (membership(build_stallings(p, gens), w)) continue;
      ++done;
      SeparationCertificate c = separate_from_subgroup(p, gens, w);
      // the folded graph of H's generators with the open w-path adjoined
      std::vector<StallingsEdge> edges;
      std::uint32_t n = 1;
      for (const Word& h : gens) detail::add_path(edges, n, 0, 0u, h, default_path_limit);
      detail::add_path(edges, n, 0, std::nullopt, w, default_path_limit);
      const std::uint32_t folded = fold(StallingsGraph(p, n, edges)).vertex_count();
      bad += !verify_separation(c).passed() || c.quotient.degree() > folded;
    }
    return Outcome{bad == 0, std::to_string(bad) + " failures over 100"};
  });

  const std::vector<FiniteQuotient> family = ex1_family();

  criterion("example 1 convergence: a^(k!) in the kernel for k in [k0, k0+10] on 50 quotients", [&] {
    int bad = 0;
    for (const auto& q : family) {
      try {
        example1::convergence_witness(q);
      } catch (const AssertionFailure&) {
        ++bad;
      }
    }
    return Outcome{bad == 0 && family.size() == 50,
                   std::to_string(bad) + " failures over " + std::to_string(family.size())};
  });

  criterion("example 1 closedness: every reduced word of length <= 4 outside S certified, < 2 min", [] {
    auto t0 = Clock::now();
    int bad = 0, n = 0;
    for (const Word& w : words_up_to(example1::partition(), 4)) {
      if (example1::in_S(w)) continue;
      ++n;
      bad += !example1::verify_ex1(example1::separate_from_S(w, 0)).passed();
    }
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << bad << " failures over " << n << " words, " << dt << " s";
    return Outcome{bad == 0 && dt < 120.0, os.str()};
  });

  criterion("example 1 non-closedness: s_k b^(-m_k) in every kernel of the family", [&] {
    int bad = 0;
    for (const auto& q : family) {
      auto w = example1::not_closed_witness(q);
      bad += !in_kernel(q, multiply(w.s_element, w.cofactor)) || w.s_element != example1::s_element(w.k) ||
             w.cofactor != Word::letter(example1::gen_b, -example1::m_sequence(w.k));
    }
    return Outcome{bad == 0, std::to_string(bad) + " failures over " + std::to_string(family.size())};
  });

  criterion("example 2: k=l=2, N=4, f(n)=n+1, seed 0 builds < 5 min and verifies", [] {
    auto t0 = Clock::now();
    const auto& c = fixture::ex2_certificate();
    const double dt = seconds_since(t0);
    Report r = example2::verify_ex2(c);
    const std::uint64_t idx1 = c.steps.at(0).k_index;
    const BigInt sphere_limit = example2::sphere_bound(2, c.steps[0].f_value);
    std::ostringstream os;
    os << dt << " s; " << r.clauses().size() << " clauses, " << r.failures().size() << " failed; "
       << "[<K>:H_1]=" << idx1 << " (> 4, and > " << sphere_limit << " at f(1)=" << c.steps[0].f_value
       << "); reciprocal sum " << c.reciprocal_sum;
    for (const auto& f : r.failures()) os << "; failed " << f.clause << " " << f.detail;
    const bool ok = dt < 300.0 && r.passed() && idx1 > 4 && BigInt(idx1) > sphere_limit &&
                    c.reciprocal_sum < BigRational(1, 2);
    return Outcome{ok, os.str()};
  });

  criterion("example 2 witnesses: discreteness, non-closedness, 20-mutation sweep fully detected", [] {
    const auto& c = fixture::ex2_certificate();
    int bad = 0;
    for (std::uint32_t n = 1; n <= 4; ++n) {
      auto d = example2::discreteness_witness(c, n);
      bad += !d.ok;
      for (auto m : d.members) bad += m > n;
      auto [u, v] = example2::not_closed_witness2(c, n);
      bad += !in_kernel(c.steps[n - 1].quotient, multiply(u, v));
    }
    auto muts = fixture::ex2_mutations(c);
    int detected = 0;
    std::string missed;
    for (const auto& m : muts) {
      if (!example2::verify_ex2(m.certificate).passed()) {
        ++detected;
      } else {
        missed += " " + m.name;
      }
    }
    std::ostringstream os;
    os << bad << " witness failures; mutations detected " << detected << "/" << muts.size();
    if (!missed.empty()) os << "; missed:" << missed;
    return Outcome{bad == 0 && muts.size() == 20 && detected == 20, os.str()};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
