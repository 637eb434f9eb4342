#pragma once

#include "staircase/cfweights.hpp"
#include "staircase/exactnum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace staircase::qp {

struct QuasiPerfectClass {
  Integer d, e, p, q, t;

  friend bool operator==(const QuasiPerfectClass&, const QuasiPerfectClass&) = default;
  std::string str() const {
    return "(" + d.get_str() + "," + e.get_str() + "," + p.get_str() + "," + q.get_str() + "," + t.get_str() + ")";
  }
  Rational center() const { return make_rational(p, q); }
  QuasiPerfectClass operator*(const Integer& k) const { return {k * d, k * e, k * p, k * q, k * t}; }
  QuasiPerfectClass operator-(const QuasiPerfectClass& o) const {
    return {d - o.d, e - o.e, p - o.p, q - o.q, t - o.t};
  }
};

struct Verdict {
  bool ok = true;
  std::vector<std::string> violations;
  explicit operator bool() const { return ok; }
};

inline Verdict qp_check(const QuasiPerfectClass& c) {
  Verdict v;
  auto fail = [&](std::string what, const Integer& lhs, const Integer& rhs) {
    v.ok = false;
    v.violations.push_back(what + ": " + lhs.get_str() + " != " + rhs.get_str());
  };
  const auto& [d, e, p, q, t] = c;
  if (Integer l = 2 * (d + e), r = p + q; l != r) fail("2(d+e) = p+q", l, r);
  if (Integer l = 2 * d * e, r = p * q - 1; l != r) fail("2de = pq-1", l, r);
  if (Integer l = t * t, r = p * p + q * q - 6 * p * q + 8; l != r) fail("t^2 = p^2+q^2-6pq+8", l, r);
  if (Integer l = 4 * d, r = p + q + t; l != r) fail("4d = p+q+t", l, r);
  if (Integer l = 4 * e, r = p + q - t; l != r) fail("4e = p+q-t", l, r);
  if (!(p > q && q >= 1)) {
    v.ok = false;
    v.violations.push_back("p > q >= 1");
  }
  if (!(d > e && e >= 1)) {
    v.ok = false;
    v.violations.push_back("d > e >= 1");
  }
  if (p > 0 && q > 0 && gcd(p, q) != 1) fail("gcd(p,q) = 1", gcd(p, q), Integer(1));
  return v;
}

inline std::optional<QuasiPerfectClass> from_pq(const Integer& p, const Integer& q) {
  if (!(p > q && q >= 1) || gcd(p, q) != 1) throw Error(Errc::PreconditionViolated, "from_pq needs p > q >= 1 coprime");
  Integer t2 = p * p + q * q - 6 * p * q + 8;
  if (!is_square(t2)) return std::nullopt;
  Integer t = isqrt(t2);
  Integer dd = p + q + t, ee = p + q - t;
  if (dd % 4 != 0 || ee % 4 != 0) return std::nullopt;
  QuasiPerfectClass c{dd / 4, ee / 4, p, q, t};
  if (!qp_check(c)) return std::nullopt;
  return c;
}

// x^T A y with A = [[-1,3,0],[3,-1,0],[0,0,1]] on (p,q,t)
inline Integer quad_form(const QuasiPerfectClass& x, const QuasiPerfectClass& y) {
  return -x.p * y.p + 3 * x.p * y.q + 3 * x.q * y.p - x.q * y.q + x.t * y.t;
}

inline std::vector<QuasiPerfectClass> recurse(const QuasiPerfectClass& x0, const QuasiPerfectClass& x1,
                                              const Integer& nu, size_t n) {
  if (quad_form(x0, x0) != 8 || quad_form(x1, x1) != 8 || quad_form(x1, x0) != 4 * nu)
    throw Error(Errc::SeedIncompatible, "seeds must satisfy x^T A x = 8 and x1^T A x0 = 4nu");
  std::vector<QuasiPerfectClass> out;
  QuasiPerfectClass a = x0, b = x1;
  for (size_t i = 0; i < n; ++i) {
    QuasiPerfectClass c = b * nu - a;
    if (auto v = qp_check(c); !v)
      throw Error(Errc::SeedIncompatible, "step " + std::to_string(i + 2) + " fails: " + v.violations.front());
    out.push_back(c);
    a = b;
    b = c;
  }
  return out;
}

inline const QuasiPerfectClass& main_class() {
  static const QuasiPerfectClass E{17, 6, 41, 5, 22};
  return E;
}

inline QuasiPerfectClass outer_family(unsigned k) {
  QuasiPerfectClass a{3, 1, 7, 1, 4}, b{64, 23, 155, 19, 82};
  if (k == 0) return a;
  for (unsigned i = 1; i < k; ++i) {
    QuasiPerfectClass c = b * Integer(22) - a;
    a = b;
    b = c;
  }
  return b;
}

// t_{k-1} E_k - E
inline QuasiPerfectClass inner_family(unsigned k) {
  if (k < 1) throw Error(Errc::PreconditionViolated, "inner_family needs k >= 1");
  QuasiPerfectClass c = outer_family(k) * outer_family(k - 1).t - main_class();
  if (auto v = qp_check(c); !v) throw Error(Errc::PreconditionViolated, "inner class fails: " + v.violations.front());
  return c;
}

inline QuasiPerfectClass combine(const Integer& t, const QuasiPerfectClass& c1, const QuasiPerfectClass& c2) {
  return c1 * t - c2;
}

// W(p,q) . w(z) / (d + e beta), shorter sequence padded with zeros
inline QuadNum mu(const QuasiPerfectClass& c, const QuadNum& beta, const QuadNum& z) {
  auto W = cf::integral_weights(c.p, c.q);
  auto w = cf::weight_prefix(z, W.size());
  QuadNum dot;
  for (size_t i = 0; i < w.size(); ++i) dot += QuadNum(W[i]) * w[i];
  return dot / (QuadNum(c.d) + QuadNum(c.e) * beta);
}

inline bool t_compat(const QuasiPerfectClass& c, const QuasiPerfectClass& c2, const Integer& t2) {
  return quad_form(c, c2) == 4 * t2;
}

inline bool adjacency(QuasiPerfectClass c, QuasiPerfectClass c2) {
  if (c.p * c2.q > c2.p * c.q) std::swap(c, c2);
  return (c.p + c.q) * (c2.p + c2.q) - c.t * c2.t == 8 * c.p * c2.q;
}

inline Integer ech_index(const QuasiPerfectClass& c) {
  Integer k1 = (c.d + 1) * (c.e + 1) - 1;
  Integer twice = (c.p + 1) * (c.q + 1);
  if (twice % 2 != 0 || twice / 2 - 1 != k1)
    throw Error(Errc::PreconditionViolated, "ech index formulas disagree for " + c.str());
  return k1;
}

inline QuadNum brahmagupta_shift(const QuadNum& z) {
  if (z < QuadNum(1)) throw Error(Errc::PreconditionViolated, "S(z) needs z >= 1");
  return QuadNum(6) - QuadNum(1) / z;
}

// 1/2 + (2n+1) sqrt(n(n^3+2n^2-1)) / (2n(n+1))
inline QuadNum beta_n(unsigned n) {
  if (n < 2) throw Error(Errc::PreconditionViolated, "beta_n needs n >= 2");
  Integer N(n);
  Integer rad = N * (N * N * N + 2 * N * N - 1);
  QuadNum root = QuadNum::sqrt_of(Rational(rad));
  return QuadNum(Rational(1, 2)) + root * QuadNum(make_rational(2 * N + 1, 2 * N * (N + 1)));
}

struct Family {
  unsigned n = 0;
  QuadNum beta;
  QuasiPerfectClass blocker;
  QuasiPerfectClass step_class;
  std::vector<Rational> seed_centers;
  std::vector<std::optional<QuasiPerfectClass>> seed_classes;
};

// Seeds come from the centers p_k/q_k of the n = 2 outer family, with 2n-4
// added to every continued fraction entry.
inline Family family_n(unsigned n, unsigned seeds = 3) {
  Family f;
  f.n = n;
  f.beta = beta_n(n);
  Integer N(n);
  f.blocker = {N + 1, 1, 2 * N + 3, 1, 2 * N};
  f.step_class = {2 * N * N + 4 * N + 1, 2 * N + 2, 4 * N * N + 10 * N + 5, 2 * N + 1, 2 * (2 * N * N + 2 * N - 1)};
  for (unsigned k = 0; k < seeds; ++k) {
    auto c = outer_family(k);
    auto shifted = cf::cf_shift_entries(cf::cf_of_rational(c.p, c.q), 2 * static_cast<long>(n) - 4);
    Rational center = cf::cf_eval(shifted).to_rational();
    f.seed_centers.push_back(center);
    f.seed_classes.push_back(center.get_den() < center.get_num() ? from_pq(center.get_num(), center.get_den())
                                                                  : std::nullopt);
  }
  return f;
}

struct TripleVerdict {
  bool ok = true;
  std::string first_failure;
  explicit operator bool() const { return ok; }
};

// Instance check of the seven identities relating a triple (lambda, mu, rho),
// after checking the compatibility/adjacency hypotheses.
inline TripleVerdict check_triple(const QuasiPerfectClass& L, const QuasiPerfectClass& M, const QuasiPerfectClass& R) {
  TripleVerdict v;
  auto need = [&](bool cond, const char* what) {
    if (v.ok && !cond) {
      v.ok = false;
      v.first_failure = what;
    }
  };
  need(adjacency(L, M), "lambda,mu adjacent");
  need(t_compat(L, M, R.t), "lambda,mu t_rho-compatible");
  need(adjacency(R, M), "rho,mu adjacent");
  need(t_compat(R, M, L.t), "rho,mu t_lambda-compatible");
  const Integer &pl = L.p, &ql = L.q, &tl = L.t, &pm = M.p, &qm = M.q, &tm = M.t, &pr = R.p, &qr = R.q, &tr = R.t;
  need(pl + ql == qm * tr - qr * tm, "(i) p_l+q_l");
  need(7 * pl - ql == pm * tr - tm * pr, "(i) 7p_l-q_l");
  need(pr + qr == pm * tl - pl * tm, "(ii) p_r+q_r");
  need(pr - 7 * qr == ql * tm - qm * tl, "(ii) p_r-7q_r");
  need(pm + qm == qr * tl + pl * tr, "(iii) p_m+q_m");
  need(7 * pm - qm == 6 * pl * tr + pr * tl - ql * tr, "(iii) 7p_m-q_m");
  need(7 * qm - pm == 6 * qr * tl + ql * tr - pr * tl, "(iii) 7q_m-p_m");
  need(pl * (pr - 6 * qr) + ql * qr == tm, "(iv)");
  need(ql * tl + qr * tr + qm * tm == qm * tl * tr, "(v)");
  Integer qx = (M * tl - R).q, qy = (M * tr - L).q;
  need(tl * (1 + pm * qm - 6 * qm * qm) == qx * (pm - 6 * qm) + qm * (pr - 6 * qr), "(vi) first");
  need(tl * qm * qm == qx * qm + qm * qr, "(vi) second");
  need(-tr * (-qm * qm) == qy * qm + qm * ql, "(vii) first");
  need(-tr * (qm * pm - 1) == qy * (-pm) + qm * (-pl), "(vii) second");
  return v;
}

}  // namespace staircase::qp
