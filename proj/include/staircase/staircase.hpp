#pragma once

#include "staircase/cfweights.hpp"
#include "staircase/exactnum.hpp"
#include "staircase/perfclass.hpp"
#include "staircase/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace staircase::stairs {

using qp::QuasiPerfectClass;

// (6 + 5 sqrt 30) / 12
inline QuadNum main_beta() { return QuadNum(Rational(1, 2), Rational(5, 12), 30); }

namespace detail {

inline bool rational_square(const Rational& r, Rational& root) {
  if (r < 0 || !is_square(r.get_num()) || !is_square(r.get_den())) return false;
  root = make_rational(isqrt(r.get_num()), isqrt(r.get_den()));
  return true;
}

}  // namespace detail

// Positive square root of x >= 0 inside Q(sqrt D) where D is x's radicand (or
// `field` when x is rational). Throws RadicandExplosion when it lies outside.
inline QuadNum sqrt_in_field(const QuadNum& x, std::int64_t field) {
  if (x.sign() < 0) throw Error(Errc::PreconditionViolated, "sqrt of a negative value");
  if (x.is_rational()) {
    QuadNum r = QuadNum::sqrt_of(x.a());
    if (!r.is_rational() && field != 0 && r.radicand() != field)
      throw Error(Errc::RadicandExplosion, "square root leaves Q(sqrt " + std::to_string(field) + ")");
    return r;
  }
  const Rational &X = x.a(), &Y = x.b();
  Rational s;
  if (detail::rational_square(X * X - Y * Y * x.radicand(), s)) {
    for (const Rational& cand : {Rational((X + s) / 2), Rational((X - s) / 2)}) {
      Rational a;
      if (cand > 0 && detail::rational_square(cand, a)) {
        QuadNum r(a, Y / (2 * a), x.radicand());
        if (r.sign() < 0) r = -r;
        if (r * r == x) return r;
      }
    }
  }
  throw Error(Errc::RadicandExplosion, "square root of " + format(x) + " is not in the field");
}

// Larger root of z^2 - (2(beta+1)^2/beta - 2) z + 1 = 0.
inline QuadNum acc_point(const QuadNum& beta) {
  if (beta < QuadNum(1)) throw Error(Errc::PreconditionViolated, "beta must be >= 1");
  QuadNum s = QuadNum(2) * (beta + 1) * (beta + 1) / beta - 2;
  QuadNum root = sqrt_in_field(s * s - 4, beta.radicand());
  return (s + root) / 2;
}

struct AccDecimal {
  bool exact = false;
  std::string lower, upper;
};

// Directed decimal bounds on acc(beta); falls back to an enclosure when the
// root leaves the field of beta.
inline AccDecimal acc_point_decimal(const QuadNum& beta, unsigned digits) {
  try {
    QuadNum z = acc_point(beta);
    return {true, qn_decimal(z, digits, Rounding::down), qn_decimal(z, digits, Rounding::up)};
  } catch (const Error& e) {
    if (e.code() != Errc::RadicandExplosion) throw;
  }
  QuadNum s = QuadNum(2) * (beta + 1) * (beta + 1) / beta - 2;
  QuadNum disc = s * s - 4;
  unsigned extra = digits + 4;
  Integer scale = pow10(extra);
  Integer r = isqrt(qn_floor(disc * QuadNum(scale * scale)));  // floor(sqrt(disc) * 10^extra)
  QuadNum lo = (s + QuadNum(make_rational(r, scale))) / 2;
  QuadNum hi = (s + QuadNum(make_rational(r + 1, scale))) / 2;
  return {false, qn_decimal(lo, digits, Rounding::down), qn_decimal(hi, digits, Rounding::up)};
}

inline QuadNum vol_at_acc(const QuadNum& beta) { return (QuadNum(1) + acc_point(beta)) / (QuadNum(2) + QuadNum(2) * beta); }

struct AccumulationData {
  QuadNum beta, acc, vol_at_acc;
};

inline AccumulationData accumulation(const QuadNum& beta) {
  QuadNum a = acc_point(beta);
  return {beta, a, (QuadNum(1) + a) / (QuadNum(2) + QuadNum(2) * beta)};
}

// lambda >= sqrt(z / (2 beta)), decided by squaring
inline bool is_above_volume(const QuadNum& lambda, const QuadNum& z, const QuadNum& beta) {
  if (lambda.sign() <= 0) throw Error(Errc::PreconditionViolated, "lambda must be positive");
  return lambda * lambda * 2 * beta >= z;
}

enum class Blocked { blocked, equal, below };

inline const char* blocked_name(Blocked b) {
  switch (b) {
    case Blocked::blocked: return "blocked";
    case Blocked::equal: return "equal";
    case Blocked::below: return "below";
  }
  return "?";
}

inline Blocked is_blocked(const QuasiPerfectClass& c, const QuadNum& beta) {
  auto data = accumulation(beta);
  QuadNum m = qp::mu(c, beta, data.acc);
  auto cmp = m <=> data.vol_at_acc;
  return cmp > 0 ? Blocked::blocked : (cmp == 0 ? Blocked::equal : Blocked::below);
}

struct Point {
  QuadNum z, lambda;
  friend bool operator==(const Point&, const Point&) = default;
};

inline QuadNum class_size(const QuasiPerfectClass& c, const QuadNum& beta) { return QuadNum(c.d) + QuadNum(c.e) * beta; }

inline Point center_point(const QuasiPerfectClass& c, const QuadNum& beta) {
  return {QuadNum(c.center()), QuadNum(c.p) / class_size(c, beta)};
}

struct Corners {
  Point outer;                       // O_k
  std::optional<Point> inner_class;  // O-hat_k, defined for k >= 1
};

inline Corners corner_points(unsigned k, const QuadNum& beta) {
  Corners c{center_point(qp::outer_family(k), beta), std::nullopt};
  if (k >= 1) c.inner_class = center_point(qp::inner_family(k), beta);
  return c;
}

// (I_{k+1}, I-hat_{k+1})
inline std::pair<Point, Point> inner_corners(unsigned k, const QuadNum& beta) {
  auto Ek = qp::outer_family(k), Ek1 = qp::outer_family(k + 1);
  auto Fk1 = qp::inner_family(k + 1);
  QuadNum sk = class_size(Ek, beta), sk1 = class_size(Ek1, beta), fk1 = class_size(Fk1, beta);
  Point I{QuadNum(Ek.p) * fk1 / (QuadNum(Fk1.q) * sk), QuadNum(Ek.p) / sk};
  Point Ih{QuadNum(Fk1.p) * sk1 / (QuadNum(Ek1.q) * fk1), QuadNum(Fk1.p) / fk1};
  return {I, Ih};
}

inline Report verify_alternation(unsigned K, const QuadNum& beta) {
  if (K < 1) throw Error(Errc::PreconditionViolated, "K >= 1");
  Report r{"alternation", {}};
  for (unsigned k = 0; k < K; ++k) {
    auto Ek = qp::outer_family(k), Ek1 = qp::outer_family(k + 1);
    auto Fk1 = qp::inner_family(k + 1);
    QuadNum ck = Ek.center(), cf = Fk1.center(), ck1 = Ek1.center();
    r.add("centers p_k/q_k < phat/qhat", k, ck < cf, {ck}, {cf});
    r.add("centers phat/qhat < p_{k+1}/q_{k+1}", k, cf < ck1, {cf}, {ck1});
    QuadNum ok = center_point(Ek, beta).lambda, of = center_point(Fk1, beta).lambda,
            ok1 = center_point(Ek1, beta).lambda;
    r.add("obstructions E_k < Ehat_{k+1}", k, ok < of, {ok}, {of});
    r.add("obstructions Ehat_{k+1} < E_{k+1}", k, of < ok1, {of}, {ok1});
    QuadNum zin = inner_corners(k, beta).first.z;
    r.add("p_k/q_k <= z_in", k, ck <= zin, {ck}, {zin});
    r.add("z_in <= phat/qhat", k, zin <= cf, {zin}, {cf});
  }
  return r;
}

inline Report verify_cf_recursion(unsigned K) {
  if (K < 2) throw Error(Errc::PreconditionViolated, "K >= 2");
  Report r{"cf-recursion", {}};
  QuadNum acc = acc_point(main_beta());
  std::vector<Integer> u{7, 155}, v{1, 19};
  QuadNum prev_gap;
  for (unsigned k = 0; k <= K; ++k) {
    if (k >= 2) {
      u.push_back(457 * u[k - 2] + 204 * v[k - 2]);
      v.push_back(56 * u[k - 2] + 25 * v[k - 2]);
    }
    auto c = qp::outer_family(k);
    r.expect_eq("matrix recursion (p_k,q_k)", k, {QuadNum(u[k]), QuadNum(v[k])}, {QuadNum(c.p), QuadNum(c.q)});
    // p_k/q_k = [{8,6,4,2} repeated to length 2k, then 7 (k even) or 3 (k odd)]
    auto cf = cf::cf_of_rational(c.p, c.q);
    static const long pat[4] = {8, 6, 4, 2};
    bool prefix_ok = cf.finite() && cf.pre.size() == 2 * k + 1 && cf.pre.back() == (k % 2 ? 3 : 7);
    for (size_t i = 0; prefix_ok && i < 2 * k; ++i) prefix_ok = cf.pre[i] == pat[i % 4];
    r.add("cf prefix [8,6,4,2,...]", k, prefix_ok, {}, {}, [&] {
      std::string s;
      for (auto& a : cf.pre) s += (s.empty() ? "" : ",") + a.get_str();
      return "[" + s + "]";
    }());
    QuadNum gap = QuadNum(c.center()) - acc;
    if (gap.sign() < 0) gap = -gap;
    if (k > 0) r.add("|p_k/q_k - acc| decreasing", k, gap < prev_gap, {gap}, {prev_gap});
    prev_gap = gap;
  }
  return r;
}

struct ClosedFormConstants {
  QuadNum r, d, e, q, p;
};

inline ClosedFormConstants closed_form_constants() {
  return {QuadNum(Rational(11), Rational(2), 30), QuadNum(Rational(3, 2), Rational(31, 120), 30),
          QuadNum(Rational(1, 2), Rational(1, 10), 30), QuadNum(Rational(1, 2), Rational(1, 15), 30),
          QuadNum(Rational(7, 2), Rational(13, 20), 30)};
}

// x_k r^k = x r^{2k} + conj(x) for x in {d, e, q, p}
inline Report verify_closed_forms(unsigned K) {
  Report r{"closed-forms", {}};
  auto C = closed_form_constants();
  for (unsigned k = 0; k <= K; ++k) {
    auto c = qp::outer_family(k);
    QuadNum rk = pow(C.r, k), r2k = rk * rk;
    auto one = [&](const char* name, const Integer& xk, const QuadNum& x) {
      QuadNum lhs = QuadNum(xk) * rk, rhs = x * r2k + x.conjugate();
      r.add(std::string(name) + "_k r^k = x r^2k + conj", k, lhs == rhs, {lhs}, {rhs});
    };
    one("d", c.d, C.d);
    one("e", c.e, C.e);
    one("q", c.q, C.q);
    one("p", c.p, C.p);
  }
  return r;
}

// Max over classes of mu(c, beta, z) per sample.
inline std::vector<BoundSample> envelope(const QuadNum& beta, const std::vector<QuasiPerfectClass>& classes,
                                         const std::vector<QuadNum>& samples) {
  for (auto& c : classes)
    if (auto v = qp::qp_check(c); !v) throw Error(Errc::PreconditionViolated, "invalid class " + c.str());
  std::vector<BoundSample> out;
  for (auto& z : samples) {
    if (classes.empty()) {
      out.push_back({z, QuadNum(0), BoundKind::volume_only, "volume", -1});
      continue;
    }
    BoundSample best{z, QuadNum(0), BoundKind::class_obstruction, {}, -1};
    for (auto& c : classes) {
      QuadNum m = qp::mu(c, beta, z);
      if (best.tag.empty() || best.lambda < m) {
        best.lambda = m;
        best.tag = c.str();
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace staircase::stairs
