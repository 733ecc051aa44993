#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "profinite/error.hpp"
#include "profinite/words.hpp"

namespace profinite {

// Names of the free generators. Word text is juxtaposition of `name` or
// `name^e` tokens, e.g. `a^120 b^16`; `1` (or empty text) is the identity.
class Alphabet {
 public:
  Alphabet(std::vector<std::string> k_names, std::vector<std::string> l_names)
      : partition_(static_cast<std::uint32_t>(k_names.size()),
                   static_cast<std::uint32_t>(l_names.size())),
        k_names_(std::move(k_names)),
        l_names_(std::move(l_names)) {
    std::vector<std::string> all = k_names_;
    all.insert(all.end(), l_names_.begin(), l_names_.end());
    for (const auto& n : all) {
      if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0])) ||
          !std::all_of(n.begin(), n.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
          })) {
        throw InvalidArgument("invalid generator name '" + n + "'");
      }
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
      throw InvalidArgument("duplicate generator name");
    }
  }

  // Letters a, b, c, ... handed out alternately to K and L while both still
  // need names; k = l = 1 gives K = {a}, L = {b}, k = l = 2 gives
  // K = {a, c}, L = {b, d}.
  static Alphabet standard(const FactorPartition& p) {
    std::vector<std::string> k, l;
    std::uint32_t next = 0;
    auto name = [&next] {
      std::uint32_t i = next++;
      std::string s(1, static_cast<char>('a' + i % 26));
      if (i >= 26) s += std::to_string(i / 26);
      return s;
    };
    while (k.size() < p.k_size() || l.size() < p.l_size()) {
      if (k.size() < p.k_size()) k.push_back(name());
      if (l.size() < p.l_size()) l.push_back(name());
    }
    return Alphabet(std::move(k), std::move(l));
  }

  const FactorPartition& partition() const { return partition_; }
  const std::vector<std::string>& k_names() const { return k_names_; }
  const std::vector<std::string>& l_names() const { return l_names_; }

  const std::string& name(Generator g) const {
    if (!partition_.contains(g)) throw InvalidArgument("generator outside alphabet");
    return g.factor == Factor::K ? k_names_[g.index] : l_names_[g.index];
  }

  std::optional<Generator> find(std::string_view n) const {
    for (std::uint32_t i = 0; i < k_names_.size(); ++i) {
      if (k_names_[i] == n) return k_gen(i);
    }
    for (std::uint32_t i = 0; i < l_names_.size(); ++i) {
      if (l_names_[i] == n) return l_gen(i);
    }
    return std::nullopt;
  }

  Generator at(std::string_view n) const {
    auto g = find(n);
    if (!g) throw InvalidArgument("unknown generator '" + std::string(n) + "'");
    return *g;
  }

  Word parse(std::string_view text) const {
    std::vector<Run> raw;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
      throw InvalidArgument("cannot parse word '" + std::string(text) + "' at " +
                            std::to_string(i) + ": " + why);
    };
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      if (text[i] == '1' && (i + 1 == text.size() || text[i + 1] != '^')) {
        ++i;
        continue;
      }
      std::optional<Generator> best;
      std::size_t best_len = 0;
      for (const auto* names : {&k_names_, &l_names_}) {
        for (std::uint32_t j = 0; j < names->size(); ++j) {
          const std::string& n = (*names)[j];
          if (n.size() > best_len && text.substr(i, n.size()) == n) {
            best_len = n.size();
            best = names == &k_names_ ? k_gen(j) : l_gen(j);
          }
        }
      }
      if (!best) fail("unknown generator");
      i += best_len;
      BigInt e = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start || !std::isdigit(static_cast<unsigned char>(text[i - 1]))) {
          fail("missing exponent");
        }
        e = parse_decimal(text.substr(start, i - start));
      }
      raw.push_back(Run{*best, e});
    }
    return reduce(raw);
  }

  std::string format(const Word& w) const {
    if (w.is_identity()) return "1";
    std::string out;
    for (const Run& r : w.runs()) {
      if (!out.empty()) out += ' ';
      out += name(r.gen);
      if (r.exponent != 1) {
        out += '^';
        out += to_decimal(r.exponent);
      }
    }
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.k_names_ == b.k_names_ && a.l_names_ == b.l_names_;
  }

 private:
  FactorPartition partition_;
  std::vector<std::string> k_names_;
  std::vector<std::string> l_names_;
};

}  // namespace profinite
