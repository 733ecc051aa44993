// A short walk through both examples. Prints plain text, no JSON.

#include <iostream>

#include "profinite/profinite.hpp"

using namespace profinite;

int main() {
  std::cout << std::boolalpha;
  const Alphabet ab = example1::alphabet();

  std::cout << "example 1: S = { a^(j!) b^(m_j) }\n";
  for (std::uint64_t j = 1; j <= 5; ++j) {
    std::cout << "  s_" << j << " = " << ab.format(example1::s_element(j)) << "\n";
  }
  for (const char* w : {"1", "b", "a b a^-1"}) {
    example1::TailCertificate c = example1::separate_from_S(ab.parse(w));
    std::cout << "  " << w << " kept out of S by Z/" << c.modulus << " tail, " << c.heads.size()
              << " head quotients, verified: " << example1::verify_ex1(c).passed() << "\n";
  }
  example1::NotClosedWitness nc = example1::not_closed_witness(make_abelian_quotient(example1::partition(), 6));
  std::cout << "  but in Z/6, " << ab.format(nc.s_element) << " * " << ab.format(nc.cofactor)
            << " dies, so S meets every coset of b-powers there\n";

  std::cout << "\nexample 2: two steps, k = l = 2\n";
  example2::Params p;
  p.steps = 2;
  example2::Certificate c = example2::construct_ex2(p);
  const Alphabet al = Alphabet({"a", "c"}, {"b", "d"});
  for (std::size_t n = 0; n < c.steps.size(); ++n) {
    const auto& s = c.steps[n];
    std::cout << "  step " << n + 1 << ": |Q| = " << quotient_order(s.quotient) << ", r = " << al.format(s.r)
              << ", s = " << al.format(s.s) << ", [<K>:H] = " << s.k_index << "\n";
  }
  std::cout << "  sum of 1/index = " << c.reciprocal_sum << ", verified: " << example2::verify_ex2(c).passed()
            << "\n";
}
