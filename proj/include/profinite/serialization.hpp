#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "profinite/alphabet.hpp"
#include "profinite/bigint.hpp"
#include "profinite/error.hpp"
#include "profinite/example1.hpp"
#include "profinite/example2.hpp"
#include "profinite/quotients.hpp"
#include "profinite/report.hpp"
#include "profinite/separation.hpp"
#include "profinite/stallings.hpp"

// Certificates as JSON. Keys are sorted (nlohmann's default std::map
// objects), integers that may exceed 64 bits travel as decimal strings, and
// readers reject unknown fields, reporting the offending path.
namespace profinite::io {

using nlohmann::json;

inline std::string canonical(const json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline void expect_object(const json& j, const std::string& path,
                          std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw SchemaError((path.empty() ? "<root>" : path) + ": expected an object");
  for (const char* k : keys) {
    if (!j.contains(k)) throw SchemaError(join(path, k) + ": missing field");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known |= it.key() == k;
    if (!known) throw SchemaError(join(path, it.key()) + ": unknown field");
  }
}

inline std::uint64_t get_uint(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw SchemaError(path + ": expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

inline const std::string& get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path + ": expected a string");
  return j.get_ref<const std::string&>();
}

inline const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array");
  return j;
}

inline std::uint32_t get_u32(const json& j, const std::string& path) {
  std::uint64_t v = get_uint(j, path);
  if (v > 0xffffffffULL) throw SchemaError(path + ": value out of range");
  return static_cast<std::uint32_t>(v);
}

inline BigInt get_decimal(const json& j, const std::string& path) {
  try {
    return parse_decimal(get_string(j, path));
  } catch (const InvalidArgument&) {
    throw SchemaError(path + ": expected a decimal integer string");
  }
}

}  // namespace detail

// ---- alphabet and words ----

inline json to_json(const Alphabet& a) { return json{{"K", a.k_names()}, {"L", a.l_names()}}; }

inline Alphabet alphabet_from_json(const json& j, const std::string& path = "alphabet") {
  detail::expect_object(j, path, {"K", "L"});
  std::vector<std::string> k, l;
  for (const char* side : {"K", "L"}) {
    const std::string p = detail::join(path, side);
    const json& arr = detail::get_array(j.at(side), p);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      (side[0] == 'K' ? k : l).push_back(detail::get_string(arr[i], detail::index(p, i)));
    }
  }
  try {
    return Alphabet(std::move(k), std::move(l));
  } catch (const Error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

inline Word word_from_json(const json& j, const Alphabet& a, const std::string& path) {
  try {
    return a.parse(detail::get_string(j, path));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

inline json words_to_json(const std::vector<Word>& ws, const Alphabet& a) {
  json arr = json::array();
  for (const Word& w : ws) arr.push_back(a.format(w));
  return arr;
}

inline std::vector<Word> words_from_json(const json& j, const Alphabet& a, const std::string& path) {
  std::vector<Word> out;
  const json& arr = detail::get_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(word_from_json(arr[i], a, detail::index(path, i)));
  }
  return out;
}

// ---- quotients ----

inline json to_json(const FiniteQuotient& q, const Alphabet& a) {
  if (q.kind() == FiniteQuotient::Kind::abelian) {
    return json{{"kind", "abelian"}, {"modulus", q.modulus()}};
  }
  json images = json::object();
  for (Generator g : q.partition().generators()) {
    images[a.name(g)] = q.permutation_image(g).table();
  }
  return json{{"kind", "perm"}, {"degree", q.degree()}, {"images", images}};
}

// Tables are loaded unchecked: a corrupted permutation is reported by the
// verifiers (quotient validation clause), not rejected here.
inline FiniteQuotient quotient_from_json(const json& j, const Alphabet& a, std::size_t cap,
                                         const std::string& path = "quotient") {
  if (!j.is_object() || !j.contains("kind")) throw SchemaError(detail::join(path, "kind") + ": missing field");
  const std::string& kind = detail::get_string(j.at("kind"), detail::join(path, "kind"));
  const FactorPartition& p = a.partition();
  if (kind == "abelian") {
    detail::expect_object(j, path, {"kind", "modulus"});
    return FiniteQuotient::abelian(p, detail::get_u32(j.at("modulus"), detail::join(path, "modulus")),
                                   cap);
  }
  if (kind != "perm") throw SchemaError(detail::join(path, "kind") + ": expected \"perm\" or \"abelian\"");
  detail::expect_object(j, path, {"kind", "degree", "images"});
  const std::uint32_t degree = detail::get_u32(j.at("degree"), detail::join(path, "degree"));
  const std::string ipath = detail::join(path, "images");
  const json& images = j.at("images");
  if (!images.is_object()) throw SchemaError(ipath + ": expected an object");
  if (images.size() != p.rank()) throw SchemaError(ipath + ": expected one table per generator");
  std::vector<Permutation> tables;
  for (Generator g : p.generators()) {
    const std::string& name = a.name(g);
    const std::string gpath = detail::join(ipath, name);
    if (!images.contains(name)) throw SchemaError(gpath + ": missing field");
    const json& arr = detail::get_array(images.at(name), gpath);
    std::vector<std::uint32_t> t;
    for (std::size_t i = 0; i < arr.size(); ++i) t.push_back(detail::get_u32(arr[i], detail::index(gpath, i)));
    tables.push_back(Permutation::unchecked(std::move(t)));
  }
  return FiniteQuotient::permutation(p, degree, std::move(tables), cap);
}

// ---- reports ----

inline json to_json(const Report& r) {
  json clauses = json::array();
  for (const ClauseResult& c : r.clauses()) {
    clauses.push_back(json{{"clause", c.clause},
                           {"m", c.m ? json(*c.m) : json(nullptr)},
                           {"k", c.k ? json(*c.k) : json(nullptr)},
                           {"pass", c.pass},
                           {"detail", c.detail}});
  }
  return json{{"passed", r.passed()}, {"clauses", clauses}};
}

// ---- separation certificates ----

inline json to_json(const SeparationCertificate& c, const Alphabet& a, bool with_alphabet = true) {
  json j{{"quotient", to_json(c.quotient, a)},
         {"subgroup_gens", words_to_json(c.subgroup_gens, a)},
         {"excluded", a.format(c.excluded)},
         {"witness_kind", to_string(c.witness_kind)}};
  if (with_alphabet) j["alphabet"] = to_json(a);
  return j;
}

inline SeparationCertificate separation_from_json(const json& j, const Alphabet& a, std::size_t cap,
                                                  const std::string& path) {
  detail::expect_object(j, path, {"quotient", "subgroup_gens", "excluded", "witness_kind"});
  SeparationCertificate c;
  c.quotient = quotient_from_json(j.at("quotient"), a, cap, detail::join(path, "quotient"));
  c.subgroup_gens = words_from_json(j.at("subgroup_gens"), a, detail::join(path, "subgroup_gens"));
  c.excluded = word_from_json(j.at("excluded"), a, detail::join(path, "excluded"));
  const std::string kpath = detail::join(path, "witness_kind");
  const std::string& kind = detail::get_string(j.at("witness_kind"), kpath);
  if (kind == "basepoint-moved") {
    c.witness_kind = WitnessKind::basepoint_moved;
  } else if (kind == "image-differs") {
    c.witness_kind = WitnessKind::image_differs;
  } else {
    throw SchemaError(kpath + ": unknown witness kind");
  }
  return c;
}

struct LoadedSeparation {
  Alphabet alphabet;
  SeparationCertificate certificate;
};

inline LoadedSeparation separation_from_json(const json& j, std::size_t cap = FiniteQuotient::default_cap) {
  if (!j.is_object() || !j.contains("alphabet")) throw SchemaError("alphabet: missing field");
  Alphabet a = alphabet_from_json(j.at("alphabet"));
  json rest = j;
  rest.erase("alphabet");
  return {a, separation_from_json(rest, a, cap, "")};
}

// ---- example 1 ----

inline json to_json(const example1::TailCertificate& c, const Alphabet& a) {
  json heads = json::array();
  for (const auto& h : c.heads) heads.push_back(to_json(h, a, false));
  return json{{"alphabet", to_json(a)},
              {"target", a.format(c.target)},
              {"modulus", c.modulus},
              {"head_bound", c.head_bound},
              {"heads", heads},
              {"composite", to_json(c.composite, a)}};
}

inline example1::TailCertificate tail_certificate_from_json(const json& j,
                                                            std::size_t cap = FiniteQuotient::default_cap) {
  detail::expect_object(j, "", {"alphabet", "target", "modulus", "head_bound", "heads", "composite"});
  Alphabet a = alphabet_from_json(j.at("alphabet"));
  if (!(a.partition() == example1::partition())) throw SchemaError("alphabet: expected one K and one L generator");
  example1::TailCertificate c;
  c.target = word_from_json(j.at("target"), a, "target");
  c.modulus = detail::get_uint(j.at("modulus"), "modulus");
  c.head_bound = detail::get_uint(j.at("head_bound"), "head_bound");
  const json& heads = detail::get_array(j.at("heads"), "heads");
  for (std::size_t i = 0; i < heads.size(); ++i) {
    c.heads.push_back(separation_from_json(heads[i], a, cap, detail::index("heads", i)));
  }
  c.composite = quotient_from_json(j.at("composite"), a, cap, "composite");
  return c;
}

inline json to_json(const example1::NotClosedWitness& w, const Alphabet& a) {
  return json{{"alphabet", to_json(a)},
              {"quotient", to_json(w.quotient, a)},
              {"k", w.k},
              {"s_element", a.format(w.s_element)},
              {"cofactor", a.format(w.cofactor)}};
}

// ---- example 2 ----

inline json to_json(const example2::Certificate& c, const Alphabet& a) {
  const example2::Params& p = c.params;
  json params{{"steps", p.steps},
              {"f", p.f_values()},
              {"seed", p.seed},
              {"cap", p.cap},
              {"max_candidates", p.max_candidates},
              {"growth_reserve", p.growth_reserve}};
  json steps = json::array();
  for (const auto& st : c.steps) {
    steps.push_back(json{{"quotient", to_json(st.quotient, a)},
                         {"r", a.format(st.r)},
                         {"s", a.format(st.s)},
                         {"e", std::to_string(st.e)},
                         {"f_value", st.f_value},
                         {"k_index", std::to_string(st.k_index)}});
  }
  const BigRational& sum = c.reciprocal_sum;
  return json{{"alphabet", to_json(a)},
              {"params", params},
              {"steps", steps},
              {"reciprocal_sum", to_decimal(boost::multiprecision::numerator(sum)) + "/" +
                                     to_decimal(boost::multiprecision::denominator(sum))}};
}

struct LoadedEx2 {
  Alphabet alphabet;
  example2::Certificate certificate;
};

inline LoadedEx2 ex2_certificate_from_json(const json& j) {
  detail::expect_object(j, "", {"alphabet", "params", "steps", "reciprocal_sum"});
  Alphabet a = alphabet_from_json(j.at("alphabet"));
  example2::Certificate c;
  c.params.partition = a.partition();

  const json& pj = j.at("params");
  detail::expect_object(pj, "params", {"steps", "f", "seed", "cap", "max_candidates", "growth_reserve"});
  c.params.steps = detail::get_u32(pj.at("steps"), "params.steps");
  const json& f = detail::get_array(pj.at("f"), "params.f");
  for (std::size_t i = 0; i < f.size(); ++i) {
    c.params.f.push_back(detail::get_u32(f[i], detail::index("params.f", i)));
  }
  c.params.seed = detail::get_uint(pj.at("seed"), "params.seed");
  c.params.cap = detail::get_uint(pj.at("cap"), "params.cap");
  c.params.max_candidates = detail::get_uint(pj.at("max_candidates"), "params.max_candidates");
  c.params.growth_reserve = detail::get_u32(pj.at("growth_reserve"), "params.growth_reserve");

  auto to_u64 = [](const BigInt& v, const std::string& path) {
    if (v < 0 || !fits_u64(v)) throw SchemaError(path + ": value out of range");
    return v.convert_to<std::uint64_t>();
  };
  const json& steps = detail::get_array(j.at("steps"), "steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string sp = detail::index("steps", i);
    const json& sj = steps[i];
    detail::expect_object(sj, sp, {"quotient", "r", "s", "e", "f_value", "k_index"});
    example2::Step st;
    st.quotient = quotient_from_json(sj.at("quotient"), a, c.params.cap, detail::join(sp, "quotient"));
    st.r = word_from_json(sj.at("r"), a, detail::join(sp, "r"));
    st.s = word_from_json(sj.at("s"), a, detail::join(sp, "s"));
    st.e = to_u64(detail::get_decimal(sj.at("e"), detail::join(sp, "e")), detail::join(sp, "e"));
    st.f_value = detail::get_u32(sj.at("f_value"), detail::join(sp, "f_value"));
    st.k_index = to_u64(detail::get_decimal(sj.at("k_index"), detail::join(sp, "k_index")),
                        detail::join(sp, "k_index"));
    c.steps.push_back(std::move(st));
  }

  const std::string& sum = detail::get_string(j.at("reciprocal_sum"), "reciprocal_sum");
  const auto slash = sum.find('/');
  if (slash == std::string::npos) throw SchemaError("reciprocal_sum: expected \"p/q\"");
  try {
    BigInt num = parse_decimal(sum.substr(0, slash));
    BigInt den = parse_decimal(sum.substr(slash + 1));
    if (den <= 0) throw SchemaError("reciprocal_sum: denominator must be positive");
    c.reciprocal_sum = BigRational(num, den);
  } catch (const InvalidArgument&) {
    throw SchemaError("reciprocal_sum: expected \"p/q\"");
  }
  return {a, std::move(c)};
}

// ---- stallings graphs ----

inline json to_json(const StallingsGraph& g, const Alphabet& a) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back(json{{"source", e.source}, {"label", a.name(e.label)}, {"target", e.target}});
  }
  return json{{"alphabet", to_json(a)}, {"vertices", g.vertex_count()}, {"basepoint", 0}, {"edges", edges}};
}

// ---- files ----

inline json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(origin + ": not valid JSON (" + e.what() + ")");
  }
}

inline json load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

}  // namespace profinite::io
