// One line per acceptance criterion; exit status is nonzero if any fails.

#include "staircase/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace staircase;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome from_report(const Report& r) {
  for (auto& c : r.checks)
    if (!c.pass) {
      std::string s = r.suite + ": " + c.check + " k=" + std::to_string(c.k);
      if (!c.note.empty()) s += " (" + c.note + ")";
      return {false, s + "; " + std::to_string(r.failures()) + " failing checks"};
    }
  return {r.passed(), std::to_string(r.checks.size()) + " checks"};
}

Outcome c1() {
  Report r{"classes", {}};
  for (unsigned k = 0; k <= 20; ++k) {
    r.add("qp_check E_k", k, qp::qp_check(qp::outer_family(k)).ok);
    if (k >= 1) r.add("qp_check Ehat_k", k, qp::qp_check(qp::inner_family(k)).ok);
  }
  const std::pair<const char*, qp::QuasiPerfectClass> literals[] = {
      {"E_0 literal", {3, 1, 7, 1, 4}},
      {"E_1 literal", {64, 23, 155, 19, 82}},
      {"Ehat_1 literal", {239, 86, 579, 71, 250}},
      {"E literal", {17, 6, 41, 5, 22}},
  };
  for (auto& [name, c] : literals) {
    auto v = qp::qp_check(c);
    r.add(name, -1, v.ok, {}, {}, v.ok ? c.str() : c.str() + " " + v.violations.front());
  }
  return from_report(r);
}

Outcome c5() {
  QuadNum beta = stairs::main_beta();
  Report r{"ratio_at", {}};
  r.expect_eq("ratio_at(beta, 7, 7) = 7/(3+beta)", 7, {ech::ratio_at(beta, 7, 7)}, {QuadNum(7) / (beta + 3)});
  r.expect_eq("ratio_at(beta, 125, 41/5) = 41/(17+6beta)", 125, {ech::ratio_at(beta, 125, QuadNum(Rational(41, 5)))},
              {QuadNum(41) / (QuadNum(17) + QuadNum(6) * beta)});
  r.expect_eq("ratio_at(beta, 20879, 579/71) = 579/(239+86beta)", 20879,
              {ech::ratio_at(beta, 20879, QuadNum(Rational(579, 71)))},
              {QuadNum(579) / (QuadNum(239) + QuadNum(86) * beta)});
  return from_report(r);
}

Outcome c6() {
  auto r = verify::atf(8);
  return from_report(r);
}

Outcome c7() {
  QuadNum beta = stairs::main_beta();
  Report r{"inner-corners", {}};
  auto base = atf::init_polydisk(beta);
  for (unsigned k = 0; k <= 8; ++k) {
    auto s = atf::extract_embedding(atf::apply_word(base, "v2yxy" + std::to_string(k) + "xy"));
    auto I = stairs::inner_corners(k, beta).first;
    r.expect_eq("extract_embedding(v2yxy^kxy) = I_{k+1}", k, {s.z, s.lambda}, {I.z, I.lambda});
  }
  return from_report(r);
}

Outcome c8() {
  QuadNum beta = stairs::main_beta();
  QuadNum acc = stairs::acc_point(beta), vol = stairs::vol_at_acc(beta);
  Report r{"full-filling", {}};
  auto poly = atf::apply_word(atf::init_polydisk(beta), "v2yx");
  QuadNum prev;
  for (unsigned k = 0; k <= 8; ++k) {
    if (k > 0) poly = atf::mutate(poly, 'y');
    auto v = atf::quad_view(poly);
    QuadNum z = v.OY / v.OX;
    r.expect_eq("vol |OY| = |OY|/|OX|", k, {vol * v.OY}, {z});
    r.add("z_k < acc", k, z < acc, {z}, {acc});
    if (k > 0) r.add("z_k strictly increasing", k, prev < z, {prev}, {z});
    if (k == 4) r.add("acc - z_4 < 10^-10", k, acc - z < QuadNum(Rational(1, 10000000000L)), {acc - z});
    prev = z;
  }
  r.merge(stairs::verify_closed_forms(8));
  return from_report(r);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0 = no time bound
    std::function<Outcome()> run;
  };
  const QuadNum beta = stairs::main_beta();
  std::vector<Criterion> criteria = {
      {1, "diophantine families", 1, c1},
      {2, "accumulation identities", 1, [] { return from_report(verify::acc()); }},
      {3, "continued fraction structure", 1, [] { return from_report(verify::cf(10)); }},
      {4, "capacity oracles", 60, [] { return from_report(verify::ech(60, verify::default_ech_betas())); }},
      {5, "ratio_at reproduction", 30, c5},
      {6, "ATF formula suite", 5, c6},
      {7, "inner-corner agreement", 0, c7},
      {8, "full-filling convergence", 0, c8},
      {9, "blocked integers", 0, [] { return from_report(verify::blocked()); }},
      {10, "alternation", 0, [&] { return from_report(stairs::verify_alternation(10, beta)); }},
      {11, "sweep consistency", 300, [] { return from_report(verify::sweep(2000, verify::default_samples()).report); }},
  };
  int failed = 0;
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += "; over time budget " + std::to_string(c.budget_s) + " s";
    }
    failed += !o.pass;
    std::printf("criterion %2d %-30s %s  %.2fs  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
