#pragma once

#include "staircase/exactnum.hpp"

#include <string>
#include <vector>

namespace staircase {

enum class BoundKind { class_obstruction, ech_ratio, embedding, corner, volume_only };

inline const char* bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::class_obstruction: return "class-obstruction";
    case BoundKind::ech_ratio: return "ech-ratio";
    case BoundKind::embedding: return "embedding";
    case BoundKind::corner: return "corner";
    case BoundKind::volume_only: return "volume-only";
  }
  return "?";
}

// A point (z, lambda) near the capacity function. `tag` names the source: a
// class tuple, a mutation word or a corner label; `k` is the ECH index for
// ech-ratio samples.
struct BoundSample {
  QuadNum z;
  QuadNum lambda;
  BoundKind kind = BoundKind::volume_only;
  std::string tag;
  long long k = -1;
};

struct CheckResult {
  std::string check;
  long long k = -1;
  bool pass = false;
  std::vector<QuadNum> lhs;
  std::vector<QuadNum> rhs;
  std::string note;
};

struct Report {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
  size_t failures() const {
    size_t n = 0;
    for (auto& c : checks) n += !c.pass;
    return n;
  }
  CheckResult& add(std::string check, long long k, bool pass, std::vector<QuadNum> lhs = {},
                   std::vector<QuadNum> rhs = {}, std::string note = {}) {
    checks.push_back({std::move(check), k, pass, std::move(lhs), std::move(rhs), std::move(note)});
    return checks.back();
  }
  // equality check on two value lists
  CheckResult& expect_eq(std::string check, long long k, std::vector<QuadNum> lhs, std::vector<QuadNum> rhs) {
    bool ok = lhs == rhs;
    return add(std::move(check), k, ok, std::move(lhs), std::move(rhs));
  }
  void merge(const Report& other) {
    for (auto c : other.checks) {
      if (!other.suite.empty()) c.check = other.suite + "/" + c.check;
      checks.push_back(std::move(c));
    }
  }
};

}  // namespace staircase
