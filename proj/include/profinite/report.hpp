#pragma once

#include <optional>
#include <string>
#include <vector>

namespace profinite {

struct ClauseResult {
  std::string clause;
  std::optional<long long> m;
  std::optional<long long> k;
  bool pass = false;
  std::string detail;

  friend bool operator==(const ClauseResult&, const ClauseResult&) = default;
};

// Outcome of re-checking a certificate: one entry per checked clause.
class Report {
 public:
  void add(std::string clause, bool pass, std::string detail = {},
           std::optional<long long> m = std::nullopt, std::optional<long long> k = std::nullopt) {
    clauses_.push_back(ClauseResult{std::move(clause), m, k, pass, std::move(detail)});
  }

  const std::vector<ClauseResult>& clauses() const { return clauses_; }

  bool passed() const {
    if (clauses_.empty()) return false;
    for (const auto& c : clauses_) {
      if (!c.pass) return false;
    }
    return true;
  }

  std::vector<ClauseResult> failures() const {
    std::vector<ClauseResult> out;
    for (const auto& c : clauses_) {
      if (!c.pass) out.push_back(c);
    }
    return out;
  }

  bool failed(const std::string& clause) const {
    for (const auto& c : clauses_) {
      if (c.clause == clause && !c.pass) return true;
    }
    return false;
  }

  explicit operator bool() const { return passed(); }

 private:
  std::vector<ClauseResult> clauses_;
};

}  // namespace profinite
