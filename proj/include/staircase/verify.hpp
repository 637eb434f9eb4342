#pragma once

#include "staircase/atf.hpp"
#include "staircase/cfweights.hpp"
#include "staircase/ech.hpp"
#include "staircase/perfclass.hpp"
#include "staircase/staircase.hpp"

#include <map>
#include <string>
#include <vector>

namespace staircase::verify {

using qp::QuasiPerfectClass;

inline std::vector<QuadNum> pair(const atf::IVec& v) { return {QuadNum(v.x), QuadNum(v.y)}; }
inline std::vector<QuadNum> pair(const Integer& a, const Integer& b) { return {QuadNum(a), QuadNum(b)}; }

inline Report classes(unsigned kmax) {
  Report r{"classes", {}};
  const auto& E = qp::main_class();
  for (unsigned k = 0; k <= kmax; ++k) {
    auto Ek = qp::outer_family(k);
    auto v = qp::qp_check(Ek);
    r.add("qp_check E_k", k, v.ok, {}, {}, v.ok ? Ek.str() : v.violations.front());
    r.add("mu(E_k) at center = p/(d+e beta)", k,
          qp::mu(Ek, stairs::main_beta(), QuadNum(Ek.center())) == stairs::center_point(Ek, stairs::main_beta()).lambda);
    r.add("ech_index formulas agree E_k", k, [&] {
      try {
        qp::ech_index(Ek);
        return true;
      } catch (const Error&) {
        return false;
      }
    }());
    if (k >= 1) {
      auto Fk = qp::inner_family(k);
      auto w = qp::qp_check(Fk);
      r.add("qp_check Ehat_k", k, w.ok, {}, {}, w.ok ? Fk.str() : w.violations.front());
      r.add("Ehat_k = t_{k-1} E_k - E", k, Fk == qp::combine(qp::outer_family(k - 1).t, Ek, E));
    }
    auto Ek1 = qp::outer_family(k + 1);
    r.add("adjacent(E_k, E_k+1)", k, qp::adjacency(Ek, Ek1));
    r.add("22-compatible(E_k, E_k+1)", k, qp::t_compat(Ek, Ek1, 22));
    auto Fk1 = qp::inner_family(k + 1);
    r.add("adjacent(Ehat_k+1, E_k+1)", k, qp::adjacency(Fk1, Ek1));
    r.add("t_k-compatible(Ehat_k+1, E_k+1)", k, qp::t_compat(Fk1, Ek1, Ek.t));
    auto t1 = qp::check_triple(Ek, Ek1, E);
    r.add("identities (E_k, E_k+1, E)", k, t1.ok, {}, {}, t1.first_failure);
    auto t2 = qp::check_triple(Ek, Fk1, Ek1);
    r.add("identities (E_k, Ehat_k+1, E_k+1)", k, t2.ok, {}, {}, t2.first_failure);
  }
  return r;
}

inline Report acc() {
  Report r{"acc", {}};
  QuadNum beta = stairs::main_beta();
  QuadNum a = stairs::acc_point(beta);
  r.expect_eq("acc(main) = (54+11√30)/14", -1, {a}, {QuadNum(Rational(27, 7), Rational(11, 14), 30)});
  QuadNum s = QuadNum(2) * (beta + 1) * (beta + 1) / beta - 2;
  r.expect_eq("acc solves the quadratic", -1, {a * a - s * a + 1}, {QuadNum(0)});
  r.expect_eq("acc(1) = 3+2√2", -1, {stairs::acc_point(1)}, {QuadNum(3, 2, 2)});
  r.expect_eq("vol(1) = 1+√2/2", -1, {stairs::vol_at_acc(1)}, {QuadNum(1, Rational(1, 2), 2)});
  QuadNum vol = stairs::vol_at_acc(beta);
  r.expect_eq("1/vol = (4 beta - 7)/5", -1, {QuadNum(1) / vol}, {(QuadNum(4) * beta - 7) / 5});
  r.expect_eq("vol = 5 acc/(17+6 beta)", -1, {vol}, {QuadNum(5) * a / (QuadNum(17) + QuadNum(6) * beta)});
  r.expect_eq("acc(2) = (7+3√5)/2", -1, {stairs::acc_point(2)}, {QuadNum(Rational(7, 2), Rational(3, 2), 5)});
  return r;
}

inline Report cf(unsigned kmax) {
  Report r{"cf", {}};
  QuadNum a = stairs::acc_point(stairs::main_beta());
  auto c = cf::cf_of_quadratic(a);
  r.add("cf(acc) = [{8,6,4,2}]", -1, c.pre.empty() && c.period == std::vector<Integer>{8, 6, 4, 2});
  auto conv = cf::convergents(c, 4 * kmax + 3);
  r.expect_eq("convergent 2", 2, pair(conv[2].first, conv[2].second), pair(204, 25));
  r.expect_eq("convergent 3", 3, pair(conv[3].first, conv[3].second), pair(457, 56));
  for (size_t n = 0; n + 1 < conv.size(); ++n) {
    Integer det = conv[n + 1].first * conv[n].second - conv[n].first * conv[n + 1].second;
    r.expect_eq("r_{n+1}s_n - r_n s_{n+1} = (-1)^n", static_cast<long long>(n), {QuadNum(det)},
                {QuadNum(n % 2 ? -1 : 1)});
  }
  r.merge(stairs::verify_cf_recursion(std::max(2u, kmax)));
  return r;
}

inline Report ech(unsigned kmax, const std::vector<QuadNum>& betas) {
  Report r{"ech", {}};
  for (auto& beta : betas) {
    auto brute = ech::polydisk_caps_bruteforce(kmax, beta);
    for (unsigned k = 0; k <= kmax; ++k) {
      auto fast = ech::polydisk_cap(k, beta);
      auto& c = r.expect_eq("polydisk_cap = brute force", k, {fast}, {brute[k]});
      c.note = "beta=" + format(beta);
    }
  }
  for (long p = 1; p <= 30; ++p)
    for (long q = 1; q <= 30; ++q) {
      if (ech::igcd(p, q) != 1 || p < q) continue;
      auto idx = static_cast<size_t>((p + 1) * (q + 1) / 2 - 1);
      auto t = ech::ellipsoid_caps(1, QuadNum(Rational(p, q)), idx);
      auto& c = r.expect_eq("N_{(p+1)(q+1)/2-1}(1,p/q) = p", static_cast<long long>(idx), {t.values[idx]}, {QuadNum(p)});
      c.note = std::to_string(p) + "/" + std::to_string(q);
    }
  return r;
}

inline std::vector<QuadNum> default_ech_betas() { return {1, 2, QuadNum(Rational(5, 2)), stairs::main_beta()}; }

// Lemma-by-lemma check of the v^2 y x y^k (x y) mutation flow.
inline Report atf(unsigned kmax) {
  Report r{"atf", {}};
  const QuadNum beta = stairs::main_beta();
  const QuadNum vol = stairs::vol_at_acc(beta);
  const QuadNum acc = stairs::acc_point(beta);
  auto invariants = [&](const atf::AtfPolygon& p, const std::string& what, long long k) {
    bool ok = true;
    try {
      atf::check_invariants(p);
    } catch (const Error&) {
      ok = false;
    }
    r.add("closure, convexity, area = beta after " + what, k, ok, {atf::area(p)}, {beta});
  };

  auto poly = atf::init_polydisk(beta);
  auto m1 = atf::mutate_detailed(poly, 'v');
  r.add("first v: M = [[2,-1],[1,0]]", -1, m1.matrix == atf::Mat2{2, -1, 1, 0});
  r.expect_eq("first v hits OX at (beta-1, 0)", -1, {m1.hit.point.x, m1.hit.point.y}, {beta - 1, 0});
  {
    auto v = atf::quad_view(m1.polygon);
    r.expect_eq("after v: |OY|,|OX|,|YV|,|XV|", -1, {v.OY, v.OX, v.YV, v.XV}, {1, beta - 1, beta + 1, 1});
  }
  poly = atf::apply_word(poly, "v2yx");
  invariants(poly, "v2yx", -1);
  {
    auto v = atf::quad_view(poly);
    r.expect_eq("v2yx rays", -1, {QuadNum(v.nY.x), QuadNum(v.nY.y), QuadNum(v.nV.x), QuadNum(v.nV.y), QuadNum(v.nX.x), QuadNum(v.nX.y)},
                {1, -7, -3, -1, 11, 5});
    r.expect_eq("v2yx directions OY, OX, YV, XV", -1,
                {QuadNum(poly.nodes[0].edge.x), QuadNum(poly.nodes[0].edge.y), QuadNum(-poly.nodes[3].edge.x),
                 QuadNum(-poly.nodes[3].edge.y), QuadNum(v.dir_YV.x), QuadNum(v.dir_YV.y), QuadNum(v.dir_XV.x),
                 QuadNum(v.dir_XV.y)},
                {0, 1, 1, 0, 1, -6, 56, 25});
    r.expect_eq("v2yx lengths", -1, {v.OY, v.OX, v.YV, v.XV},
                {beta + 3, QuadNum(1) / vol, (QuadNum(7) + QuadNum(4) * beta) / 19, (QuadNum(3) - beta) / 95});
  }

  QuadNum prev_z;
  auto state = poly;  // v2yx y^k
  for (unsigned k = 0; k <= kmax; ++k) {
    if (k > 0) {
      auto step = atf::mutate_detailed(state, 'y');
      r.add("y-ray hits side XV", k, step.side == "XV", {}, {}, step.side);
      state = step.polygon;
      invariants(state, "v2yxy^k", k);
    }
    auto Ek = qp::outer_family(k), Ek1 = qp::outer_family(k + 1);
    auto Fk1 = qp::inner_family(k + 1);
    QuadNum dk(Ek.d), ek(Ek.e), qk(Ek.q), pk(Ek.p), qk1(Ek1.q), qh(Fk1.q);
    auto v = atf::quad_view(state);
    r.expect_eq("lengths after v2yxy^k", k, {v.OY, v.OX, v.YV, v.XV},
                {(dk + ek * beta) / qk, (QuadNum(4) * beta - 7) / 5, (QuadNum(4) * beta + 7) / (qk * qk1),
                 (dk - ek * beta) / (QuadNum(5) * qk1)});
    r.merge(atf::verify_rays(state, k));

    QuadNum z = v.OY / v.OX;
    r.add("full filling z_k = |OY|/|OX| < acc", k, z < acc, {z}, {acc});
    if (k > 0) r.add("full filling z_k increasing", k, prev_z < z, {prev_z}, {z});
    prev_z = z;
    if (k == 4) {
      QuadNum gap = acc - z;
      r.add("acc - z_4 < 10^-10", k, gap < QuadNum(Rational(1, 10000000000L)), {gap}, {QuadNum(Rational(1, 10000000000L))});
    }

    auto xs = atf::mutate_detailed(state, 'x');
    r.add("x-ray hits side YV", k, xs.side == "YV", {}, {}, xs.side);
    auto sx = xs.polygon;
    invariants(sx, "v2yxy^kx", k);
    auto [pm, qm] = atf::outer_pq(static_cast<long>(k) - 1);
    auto vx = atf::quad_view(sx);
    r.expect_eq("rays after x", k, {QuadNum(vx.nY.x), QuadNum(vx.nY.y), QuadNum(vx.nV.x), QuadNum(vx.nV.y), QuadNum(vx.nX.x), QuadNum(vx.nX.y)},
                {qk, -pk, -11, -5, QuadNum(121 * pm + 54 * qm), QuadNum(56 * pm + 25 * qm)});
    // the displayed X_xV_x vector is the V_x -> X_x edge direction
    Integer Pk = Ek.p, Qk = Ek.q;
    r.expect_eq("directions after x", k,
                {QuadNum(vx.dir_YV.x), QuadNum(vx.dir_YV.y), QuadNum(sx.nodes[2].edge.x), QuadNum(sx.nodes[2].edge.y)},
                {QuadNum(Qk * Qk), QuadNum(-Pk * Qk + 1), QuadNum(-54 * Qk * Qk - 121 * Pk * Qk + 121),
                 QuadNum(-25 * Qk * Qk - 56 * Pk * Qk + 56)});
    QuadNum dp = QuadNum(2) * qk1 - QuadNum(Ek1.d), ep = QuadNum(2) * qk1 - QuadNum(Ek1.e);
    r.expect_eq("lengths after x", k, {vx.OY, vx.OX, vx.YV, vx.XV},
                {(dk + ek * beta) / qk, (dp + ep * beta) / qk1, (-dp + ep * beta) / (qk * qh),
                 (dk - ek * beta) / (qk1 * qh)});

    auto ys = atf::mutate_detailed(sx, 'y');
    r.add("final y-ray hits side OX", k, ys.side == "OX", {}, {}, ys.side);
    auto sy = ys.polygon;
    invariants(sy, "v2yxy^kxy", k);
    auto vy = atf::quad_view(sy);
    r.expect_eq("axis lengths after xy", k, {vy.OY, vy.OX},
                {(QuadNum(Fk1.d) + QuadNum(Fk1.e) * beta) / qh, (dk + ek * beta) / pk});
    auto emb = atf::extract_embedding(sy);
    auto I = stairs::inner_corners(k, beta).first;
    r.expect_eq("extracted embedding = I_{k+1}", k, {emb.z, emb.lambda}, {I.z, I.lambda});
  }
  // y phase side check continues to k = 12 independently of kmax
  for (unsigned k = kmax + 1; k <= 12; ++k) {
    auto step = atf::mutate_detailed(state, 'y');
    r.add("y-ray hits side XV", k, step.side == "XV", {}, {}, step.side);
    state = step.polygon;
  }
  return r;
}

// Points from v^2 y x y^k x y^2. No formula is known for them; failures to
// mutate are reported in the tag.
inline std::vector<BoundSample> conjecture_points(unsigned kmax) {
  std::vector<BoundSample> out;
  auto base = atf::init_polydisk(stairs::main_beta());
  for (unsigned k = 0; k <= kmax; ++k) {
    std::string word = "v2yxy" + std::to_string(k) + "xy2";
    try {
      auto s = atf::extract_embedding(atf::apply_word(base, word));
      s.tag = word;
      out.push_back(s);
    } catch (const Error& e) {
      out.push_back({0, 0, BoundKind::embedding, word + " failed: " + e.what(), -1});
    }
  }
  return out;
}

inline Report blocked() {
  Report r{"blocked", {}};
  for (unsigned n : {2u, 3u, 4u}) {
    auto f = qp::family_n(n);
    auto b = stairs::is_blocked(f.blocker, QuadNum(static_cast<long>(n)));
    r.add(std::string("E(n) blocks beta = n: ") + stairs::blocked_name(b), n, b == stairs::Blocked::blocked);
  }
  auto beta = stairs::main_beta();
  auto e = stairs::is_blocked(qp::main_class(), beta);
  r.add(std::string("E at main beta: ") + stairs::blocked_name(e), -1, e == stairs::Blocked::equal);
  auto e0 = stairs::is_blocked(qp::outer_family(0), beta);
  r.add(std::string("E_0 at main beta: ") + stairs::blocked_name(e0), -1, e0 == stairs::Blocked::below);
  auto a2 = stairs::acc_point(2);
  r.add("acc(2) ~ 6.854", 2, qn_decimal(a2, 3) == "6.854", {a2});
  auto v2 = stairs::vol_at_acc(2);
  r.add("vol(2) ~ 1.309", 2, qn_decimal(v2, 3) == "1.309", {v2});
  return r;
}

// 200 samples z = 1 + i/25, i = 1..200
inline std::vector<QuadNum> default_samples() {
  std::vector<QuadNum> z;
  for (long i = 1; i <= 200; ++i) z.push_back(QuadNum(Rational(25 + i, 25)));
  return z;
}

inline std::vector<QuasiPerfectClass> classes_up_to_index(const Integer& K) {
  std::vector<QuasiPerfectClass> out;
  std::vector<QuasiPerfectClass> cand = {qp::main_class()};
  for (unsigned k = 0; k < 6; ++k) cand.push_back(qp::outer_family(k));
  for (unsigned k = 1; k < 6; ++k) cand.push_back(qp::inner_family(k));
  for (auto& c : cand)
    if (qp::ech_index(c) <= K) out.push_back(c);
  return out;
}

struct SweepCheck {
  Report report;
  std::vector<BoundSample> sweep;
  std::vector<BoundSample> envelope;
};

inline SweepCheck sweep(size_t K, const std::vector<QuadNum>& samples, unsigned threads = 0) {
  SweepCheck out{{"sweep", {}}, {}, {}};
  auto beta = stairs::main_beta();
  auto& r = out.report;
  out.sweep = ech::lower_bound_sweep(beta, K, samples, threads);
  auto classes = classes_up_to_index(Integer(static_cast<unsigned long>(K)));
  out.envelope = stairs::envelope(beta, classes, samples);
  for (size_t i = 0; i < samples.size(); ++i) {
    const auto& s = out.sweep[i];
    const auto& e = out.envelope[i];
    if (samples[i] == QuadNum(7))
      r.expect_eq("sweep max at z = 7 equals 7/(3+beta)", s.k, {s.lambda}, {QuadNum(7) / (beta + 3)});
    auto& c1 = r.add("envelope <= sweep", static_cast<long long>(i), e.lambda <= s.lambda, {samples[i], e.lambda},
                     {samples[i], s.lambda});
    c1.note = e.tag;
    auto& c2 = r.add("sweep above volume curve", static_cast<long long>(i), stairs::is_above_volume(s.lambda, samples[i], beta),
                     {samples[i], s.lambda * s.lambda * 2 * beta}, {samples[i]});
    c2.note = "argmax k=" + std::to_string(s.k);
  }
  return out;
}

}  // namespace staircase::verify
