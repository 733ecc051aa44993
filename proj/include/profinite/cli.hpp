#pragma once

#include <algorithm>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "profinite/alphabet.hpp"
#include "profinite/error.hpp"
#include "profinite/example1.hpp"
#include "profinite/example2.hpp"
#include "profinite/quotients.hpp"
#include "profinite/separation.hpp"
#include "profinite/serialization.hpp"
#include "profinite/stallings.hpp"

namespace profinite::cli {

enum ExitStatus : int { ok = 0, verification_failed = 1, usage_error = 2, cap_exceeded = 3 };

namespace detail {

inline std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  for (auto& x : out) {
    auto b = x.find_first_not_of(' ');
    auto e = x.find_last_not_of(' ');
    x = b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  }
  return out;
}

// A quotient argument is either inline JSON or a path to a JSON file.
inline io::json read_json_arg(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') return io::parse_text(arg, "argument");
  return io::load_file(arg);
}

struct Shared {
  std::string k_names;
  std::string l_names;
  std::size_t cap = FiniteQuotient::default_cap;
  std::uint64_t seed = 0;
  bool dot = false;

  Alphabet alphabet(const char* dk, const char* dl) const {
    return Alphabet(split_list(k_names.empty() ? dk : k_names, ','),
                    split_list(l_names.empty() ? dl : l_names, ','));
  }
};

inline void add_alphabet(CLI::App* sub, Shared& s) {
  sub->add_option("--K", s.k_names, "comma-separated names of the K generators");
  sub->add_option("--L", s.l_names, "comma-separated names of the L generators");
}

}  // namespace detail

// Parses argv (without the program name), dispatches, and writes JSON or DOT
// to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-quotient certificates for closed subsets of free groups", "profinite"};
  app.require_subcommand(1);
  app.fallthrough(false);

  detail::Shared sh;
  auto common = [&sh](CLI::App* sub) {
    detail::add_alphabet(sub, sh);
    sub->add_option("--cap", sh.cap, "enumeration cap (image elements)");
  };
  int status = ok;
  auto emit = [&out](const io::json& j) { out << io::canonical(j); };

  // reduce
  std::string word;
  auto* reduce = app.add_subcommand("reduce", "freely reduce a word");
  reduce->add_option("word", word, "word, e.g. \"a a^-1 b\"")->required();
  detail::add_alphabet(reduce, sh);
  reduce->callback([&] {
    Alphabet a = sh.alphabet("a", "b");
    Word w = a.parse(word);
    emit(io::json{{"word", a.format(w)}, {"length", to_decimal(word_length(w))}});
  });

  // image / distance
  std::string quotient_arg;
  auto* img = app.add_subcommand("image", "image of a word in a finite quotient");
  img->add_option("--quotient", quotient_arg, "quotient JSON (inline or file)")->required();
  img->add_option("--word", word, "word")->required();
  common(img);
  img->callback([&] {
    Alphabet a = sh.alphabet("a", "b");
    FiniteQuotient q = io::quotient_from_json(detail::read_json_arg(quotient_arg), a, sh.cap);
    if (auto e = q.validate()) throw InvalidArgument("quotient: " + *e);
    Word w = a.parse(word);
    const QuotientElement x = image(q, w);
    emit(io::json{{"kind", q.kind() == FiniteQuotient::Kind::abelian ? "abelian" : "perm"},
                  {"image", std::vector<std::uint32_t>(x.values().begin(), x.values().end())},
                  {"in_kernel", x == q.identity()}});
  });

  auto* dist = app.add_subcommand("distance", "Cayley distance of a word's image from the identity");
  dist->add_option("--quotient", quotient_arg, "quotient JSON (inline or file)")->required();
  dist->add_option("--word", word, "word")->required();
  common(dist);
  dist->callback([&] {
    Alphabet a = sh.alphabet("a", "b");
    FiniteQuotient q = io::quotient_from_json(detail::read_json_arg(quotient_arg), a, sh.cap);
    if (auto e = q.validate()) throw InvalidArgument("quotient: " + *e);
    Word w = a.parse(word);
    emit(io::json{{"distance", cayley_distance(q, w)},
                  {"length", to_decimal(word_length(w))},
                  {"order", quotient_order(q)}});
  });

  // stallings
  std::string gens_arg;
  std::vector<std::string> members;
  auto* st = app.add_subcommand("stallings", "folded Stallings graph of a subgroup");
  st->add_option("--gens", gens_arg, "comma-separated subgroup generators")->required();
  st->add_option("--member", members, "words to test for membership");
  st->add_flag("--dot", sh.dot, "emit DOT instead of JSON");
  detail::add_alphabet(st, sh);
  st->callback([&] {
    Alphabet a = sh.alphabet("a", "b");
    std::vector<Word> gens;
    for (const auto& g : detail::split_list(gens_arg, ',')) gens.push_back(a.parse(g));
    StallingsGraph g = build_stallings(a.partition(), gens);
    if (sh.dot) {
      out << to_dot(g, a);
      return;
    }
    io::json j = io::to_json(g, a);
    if (!members.empty()) {
      io::json m = io::json::array();
      for (const auto& w : members) {
        Word x = a.parse(w);
        m.push_back(io::json{{"word", a.format(x)}, {"member", membership(g, x)}});
      }
      j["membership"] = m;
    }
    emit(j);
  });

  // separate
  std::string verify_path;
  auto* sep = app.add_subcommand("separate", "finite quotient separating a word from a subgroup");
  sep->add_option("--gens", gens_arg, "comma-separated subgroup generators (omit for the trivial subgroup)");
  sep->add_option("--word", word, "excluded word");
  sep->add_option("--verify", verify_path, "re-check a separation certificate file instead");
  common(sep);
  sep->callback([&] {
    if (!verify_path.empty()) {
      auto loaded = io::separation_from_json(io::load_file(verify_path), sh.cap);
      Report r = verify_separation(loaded.certificate);
      emit(io::to_json(r));
      if (!r.passed()) status = verification_failed;
      return;
    }
    if (word.empty()) throw InvalidArgument("--word is required unless --verify is given");
    Alphabet a = sh.alphabet("a", "b");
    std::vector<Word> gens;
    if (!gens_arg.empty()) {
      for (const auto& g : detail::split_list(gens_arg, ',')) gens.push_back(a.parse(g));
    }
    Word w = a.parse(word);
    SeparationCertificate c = gens.empty() ? separate_from_identity(a.partition(), w)
                                           : separate_from_subgroup(a.partition(), gens, w);
    emit(io::to_json(c, a));
  });

  // example 1
  std::uint64_t j_index = 1;
  auto* e1elem = app.add_subcommand("ex1-elem", "elements a^(j!), s_j = a^(j!) b^(m_j) and m_j");
  e1elem->add_option("--j", j_index, "index j >= 1")->required()->check(CLI::PositiveNumber);
  e1elem->callback([&] {
    Alphabet a = example1::alphabet();
    emit(io::json{{"j", j_index},
                  {"a_element", a.format(example1::a_element(j_index))},
                  {"s_element", a.format(example1::s_element(j_index))},
                  {"m", to_decimal(example1::m_sequence(j_index))}});
  });

  std::uint64_t margin = 0;
  auto* e1sep = app.add_subcommand("ex1-separate", "certificate that a word lies outside S");
  e1sep->add_option("--word", word, "word over a, b")->required();
  e1sep->add_option("--margin", margin, "minimum head bound");
  e1sep->add_option("--cap", sh.cap, "enumeration cap");
  e1sep->callback([&] {
    Alphabet a = example1::alphabet();
    auto c = example1::separate_from_S(a.parse(word), margin, sh.cap);
    emit(io::to_json(c, a));
  });

  std::string cert_path;
  auto* e1ver = app.add_subcommand("ex1-verify", "re-check an example-1 certificate");
  e1ver->add_option("certificate", cert_path, "certificate file")->required();
  e1ver->add_option("--cap", sh.cap, "enumeration cap");
  e1ver->callback([&] {
    auto c = io::tail_certificate_from_json(io::load_file(cert_path), sh.cap);
    Report r = example1::verify_ex1(c);
    emit(io::to_json(r));
    if (!r.passed()) status = verification_failed;
  });

  auto* e1wit = app.add_subcommand("ex1-witness", "kernel element of S<b> in a given quotient");
  e1wit->add_option("--quotient", quotient_arg, "quotient JSON over a, b (inline or file)")->required();
  e1wit->add_option("--cap", sh.cap, "enumeration cap");
  e1wit->callback([&] {
    Alphabet a = example1::alphabet();
    FiniteQuotient q = io::quotient_from_json(detail::read_json_arg(quotient_arg), a, sh.cap);
    if (auto e = q.validate()) throw InvalidArgument("quotient: " + *e);
    io::json j = io::to_json(example1::not_closed_witness(q), a);
    j["convergence_k0"] = example1::convergence_witness(q);
    emit(j);
  });

  // example 2
  example2::Params params;
  std::string f_arg;
  auto* e2c = app.add_subcommand("ex2-construct", "build the example-2 chain certificate");
  e2c->add_option("--steps", params.steps, "number of steps N")->check(CLI::PositiveNumber);
  e2c->add_option("--f", f_arg, "comma-separated thresholds f(1),...,f(N) (default n+1)");
  e2c->add_option("--seed", sh.seed, "seed of the quotient stream");
  e2c->add_option("--max-candidates", params.max_candidates, "candidates tried per step");
  common(e2c);
  e2c->callback([&] {
    Alphabet a = sh.alphabet("a,c", "b,d");
    params.partition = a.partition();
    params.seed = sh.seed;
    params.cap = sh.cap;
    if (!f_arg.empty()) {
      for (const auto& v : detail::split_list(f_arg, ',')) {
        try {
          params.f.push_back(static_cast<std::uint32_t>(std::stoul(v)));
        } catch (const std::exception&) {
          throw InvalidArgument("--f: not an integer: " + v);
        }
      }
    }
    emit(io::to_json(example2::construct_ex2(params), a));
  });

  auto* e2v = app.add_subcommand("ex2-verify", "re-check an example-2 certificate");
  e2v->add_option("certificate", cert_path, "certificate file")->required();
  e2v->callback([&] {
    auto loaded = io::ex2_certificate_from_json(io::load_file(cert_path));
    Report r = example2::verify_ex2(loaded.certificate);
    emit(io::to_json(r));
    if (!r.passed()) status = verification_failed;
  });

  std::uint32_t n_index = 1;
  auto* e2w = app.add_subcommand("ex2-witness", "discreteness / intersection / non-closedness witnesses");
  e2w->add_option("certificate", cert_path, "certificate file")->required();
  e2w->add_option("--n", n_index, "step index n")->required();
  e2w->add_option("--word", word, "x for the finite-intersection witness");
  e2w->add_flag("--dot", sh.dot, "emit the Cayley ball of Q_n as DOT instead");
  e2w->callback([&] {
    auto loaded = io::ex2_certificate_from_json(io::load_file(cert_path));
    const auto& c = loaded.certificate;
    const Alphabet& a = loaded.alphabet;
    if (sh.dot) {
      out << example2::ball_dot(c, n_index, a);
      return;
    }
    auto d = example2::discreteness_witness(c, n_index);
    io::json j{{"n", n_index}, {"discreteness", {{"members", d.members}, {"ok", d.ok}}}};
    try {
      auto [u, v] = example2::not_closed_witness2(c, n_index);
      j["not_closed"] = {{"u", a.format(u)}, {"v", a.format(v)}, {"ok", true}};
    } catch (const AssertionFailure& e) {
      j["not_closed"] = {{"ok", false}, {"detail", e.what()}};
      status = verification_failed;
    }
    if (!word.empty()) {
      auto w = example2::finite_intersection_witness(c, a.parse(word), n_index);
      io::json recs = io::json::array();
      for (const auto& r : w.records) {
        recs.push_back({{"m", r.m},
                        {"f_value", r.f_value},
                        {"distance", r.distance},
                        {"length", to_decimal(r.length)},
                        {"distance_within_length", r.distance_within_length}});
      }
      j["intersection"] = {{"members", w.members},
                           {"distance", w.distance},
                           {"length", to_decimal(w.length)},
                           {"records", recs}};
    }
    if (!d.ok) status = verification_failed;
    emit(j);
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage_error;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return cap_exceeded;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return usage_error;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return usage_error;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return usage_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return verification_failed;
  }
  return status;
}

}  // namespace profinite::cli
