#pragma once

#include <string>
#include <vector>

#include "profinite/error.hpp"
#include "profinite/quotients.hpp"
#include "profinite/report.hpp"
#include "profinite/stallings.hpp"
#include "profinite/words.hpp"

namespace profinite {

enum class WitnessKind {
  basepoint_moved,  // subgroup fixes point 0, excluded word moves it
  image_differs,    // subgroup lies in the kernel, excluded word does not
};

inline const char* to_string(WitnessKind k) {
  return k == WitnessKind::basepoint_moved ? "basepoint-moved" : "image-differs";
}

// A finite quotient that places the excluded word outside an open subgroup
// containing the subgroup generators. Stores the quotient itself so checking
// never repeats the search.
struct SeparationCertificate {
  FiniteQuotient quotient;
  std::vector<Word> subgroup_gens;
  Word excluded;
  WitnessKind witness_kind = WitnessKind::basepoint_moved;
};

// Completes each label's partial injection to a permutation by pairing
// vertices lacking an out-edge with vertices lacking an in-edge, both in
// ascending order.
inline std::vector<Permutation> complete_to_permutations(const StallingsGraph& g) {
  const FactorPartition& p = g.partition();
  const std::uint32_t n = g.vertex_count();
  std::vector<Permutation> out;
  for (Generator gen : p.generators()) {
    std::vector<std::uint32_t> map(n, StallingsGraph::npos);
    std::vector<std::uint32_t> free_sources, free_targets;
    for (std::uint32_t v = 0; v < n; ++v) {
      std::uint32_t t = g.out(v, gen);
      if (t == StallingsGraph::npos) {
        free_sources.push_back(v);
      } else {
        map[v] = t;
      }
      if (g.in(v, gen) == StallingsGraph::npos) free_targets.push_back(v);
    }
    for (std::size_t i = 0; i < free_sources.size(); ++i) map[free_sources[i]] = free_targets[i];
    out.push_back(Permutation(std::move(map)));
  }
  return out;
}

// Folds the subgroup's wedge together with an open path for w, then
// completes the labels to permutations. The subgroup fixes the basepoint and
// w sends it to the (distinct) end of its path.
inline SeparationCertificate separate_from_subgroup(const FactorPartition& p,
                                                    const std::vector<Word>& gens, const Word& w,
                                                    std::size_t path_limit = default_path_limit) {
  if (!over_partition(w, p)) throw InvalidArgument("excluded word outside partition");
  std::vector<StallingsEdge> edges;
  std::uint32_t n = 1;
  for (const Word& h : gens) {
    if (!over_partition(h, p)) throw InvalidArgument("subgroup generator outside partition");
    detail::add_path(edges, n, 0, 0u, h, path_limit);
  }
  detail::add_path(edges, n, 0, std::nullopt, w, path_limit);
  StallingsGraph g = fold(StallingsGraph(p, n, std::move(edges)));
  auto end = trace(g, w);
  if (!end) throw Error("adjoined path missing after folding");
  if (*end == 0) throw PreconditionError("word lies in the subgroup");
  auto perms = complete_to_permutations(g);
  return SeparationCertificate{make_permutation_quotient(p, std::move(perms)), gens, w,
                               WitnessKind::basepoint_moved};
}

inline SeparationCertificate separate_from_identity(const FactorPartition& p, const Word& w,
                                                    std::size_t path_limit = default_path_limit) {
  if (w.is_identity()) throw PreconditionError("cannot separate the identity from itself");
  return separate_from_subgroup(p, {}, w, path_limit);
}

// Recomputes every image from the stored quotient.
inline Report verify_separation(const SeparationCertificate& c) {
  Report r;
  const FiniteQuotient& q = c.quotient;
  if (auto err = q.validate()) {
    r.add("quotient_table", false, *err);
    return r;
  }
  r.add("quotient_table", true);
  const FactorPartition& p = q.partition();
  bool words_ok = over_partition(c.excluded, p);
  for (const Word& h : c.subgroup_gens) words_ok = words_ok && over_partition(h, p);
  r.add("words_in_partition", words_ok);
  if (!words_ok) return r;

  if (c.witness_kind == WitnessKind::basepoint_moved) {
    if (q.kind() != FiniteQuotient::Kind::permutation) {
      r.add("witness_kind", false, "basepoint witness needs a permutation quotient");
      return r;
    }
    for (std::size_t i = 0; i < c.subgroup_gens.size(); ++i) {
      auto x = image(q, c.subgroup_gens[i]);
      r.add("generator_fixes_basepoint", x[0] == 0,
            x[0] == 0 ? "" : "basepoint goes to " + std::to_string(x[0]),
            static_cast<long long>(i));
    }
    auto x = image(q, c.excluded);
    r.add("excluded_moves_basepoint", x[0] != 0,
          x[0] != 0 ? "basepoint goes to " + std::to_string(x[0]) : "basepoint fixed");
  } else {
    for (std::size_t i = 0; i < c.subgroup_gens.size(); ++i) {
      bool ok = in_kernel(q, c.subgroup_gens[i]);
      r.add("generator_in_kernel", ok, "", static_cast<long long>(i));
    }
    r.add("excluded_outside_kernel", !in_kernel(q, c.excluded));
  }
  return r;
}

}  // namespace profinite
