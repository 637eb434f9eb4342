#pragma once

#include "staircase/exactnum.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace staircase::cf {

using WeightSeq = std::vector<QuadNum>;

struct ContinuedFraction {
  std::vector<Integer> pre;
  std::vector<Integer> period;

  bool finite() const { return period.empty(); }
  // entry i of the unrolled expansion
  const Integer& entry(size_t i) const {
    if (i < pre.size()) return pre[i];
    if (period.empty()) throw Error(Errc::PreconditionViolated, "entry index past end of finite CF");
    return period[(i - pre.size()) % period.size()];
  }
  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

inline void require_coprime(const Integer& p, const Integer& q) {
  if (p <= 0 || q <= 0) throw Error(Errc::PreconditionViolated, "p, q must be positive");
  if (gcd(p, q) != 1) throw Error(Errc::NotCoprime, p.get_str() + "," + q.get_str());
}

// W(p,q): q repeated floor(p/q) times, then W(q, p mod q).
inline std::vector<Integer> integral_weights(Integer p, Integer q) {
  require_coprime(p, q);
  if (p < q) std::swap(p, q);
  std::vector<Integer> w;
  while (q > 0) {
    Integer n = p / q;
    if (!n.fits_ulong_p() || n > 50000000) throw Error(Errc::TooLarge, "weight multiplicity too large");
    for (unsigned long i = 0; i < n.get_ui(); ++i) w.push_back(q);
    Integer r = p - n * q;
    p = q;
    q = r;
  }
  return w;
}

inline std::vector<Rational> weight_expansion(Rational z) {
  z.canonicalize();
  if (z < 1) throw Error(Errc::PreconditionViolated, "weight expansion needs z >= 1");
  std::vector<Rational> out;
  for (auto& w : integral_weights(z.get_num(), z.get_den())) out.push_back(make_rational(w, z.get_den()));
  return out;
}

// First M weights of w(z) by subtract/swap on (z, 1). Stops early when z is rational.
inline WeightSeq weight_prefix(const QuadNum& z, size_t M) {
  if (z < QuadNum(1)) throw Error(Errc::PreconditionViolated, "weight expansion needs z >= 1");
  WeightSeq out;
  QuadNum big = z, small = 1;
  while (out.size() < M && !small.is_zero()) {
    Integer n = qn_floor(big / small);
    for (Integer i = 0; i < n && out.size() < M; ++i) out.push_back(small);
    QuadNum r = big - QuadNum(n) * small;
    big = small;
    small = r;
  }
  return out;
}

inline ContinuedFraction cf_of_rational(Integer p, Integer q) {
  require_coprime(p, q);
  ContinuedFraction cf;
  while (q != 0) {
    Integer a = floor_div(p, q);
    cf.pre.push_back(a);
    Integer r = p - a * q;
    p = q;
    q = r;
  }
  return cf;
}

inline ContinuedFraction cf_of_rational(const Rational& r) { return cf_of_rational(r.get_num(), r.get_den()); }

inline QuadNum cf_eval(std::span<const Integer> entries, std::optional<QuadNum> tail = std::nullopt) {
  if (entries.empty() && !tail) throw Error(Errc::PreconditionViolated, "empty continued fraction");
  QuadNum v;
  size_t i = entries.size();
  if (tail) {
    v = *tail;
  } else {
    v = QuadNum(entries[--i]);
  }
  while (i-- > 0) v = QuadNum(entries[i]) + QuadNum(1) / v;
  return v;
}

inline QuadNum cf_eval(const ContinuedFraction& cf, std::optional<QuadNum> tail = std::nullopt) {
  if (!cf.finite()) throw Error(Errc::PreconditionViolated, "cf_eval needs a finite preperiod only");
  return cf_eval(std::span<const Integer>(cf.pre), std::move(tail));
}

// (r_0,s_0) .. (r_n,s_n)
inline std::vector<std::pair<Integer, Integer>> convergents(const ContinuedFraction& cf, size_t n) {
  if (cf.finite() && n >= cf.pre.size()) throw Error(Errc::PreconditionViolated, "not enough entries");
  std::vector<std::pair<Integer, Integer>> out;
  Integer r2 = 0, s2 = 1, r1 = 1, s1 = 0;
  for (size_t i = 0; i <= n; ++i) {
    const Integer& a = cf.entry(i);
    Integer r = a * r1 + r2, s = a * s1 + s2;
    out.emplace_back(r, s);
    r2 = r1;
    s2 = s1;
    r1 = r;
    s1 = s;
  }
  return out;
}

// Minimal period, earliest start.
inline ContinuedFraction canonicalize(ContinuedFraction cf) {
  if (cf.finite()) {
    if (cf.pre.size() > 1 && cf.pre.back() == 1) {
      cf.pre.pop_back();
      cf.pre.back() += 1;
    }
    return cf;
  }
  auto& per = cf.period;
  for (size_t len = 1; len <= per.size(); ++len) {
    if (per.size() % len) continue;
    bool ok = true;
    for (size_t i = len; i < per.size() && ok; ++i) ok = per[i] == per[i - len];
    if (ok) {
      per.resize(len);
      break;
    }
  }
  while (!cf.pre.empty() && cf.pre.back() == per.back()) {
    cf.pre.pop_back();
    std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
  }
  return cf;
}

inline ContinuedFraction cf_of_quadratic(const QuadNum& x) {
  if (x.is_rational()) throw Error(Errc::PreconditionViolated, "cf_of_quadratic needs an irrational value");
  if (x.sign() <= 0) throw Error(Errc::PreconditionViolated, "cf_of_quadratic needs x > 0");
  auto f = integer_form(x);
  // x = (P + sqrt(N)) / Q with Q | N - P^2
  Integer P = f.A, Q = f.C, N = f.B * f.B * f.D;
  if (f.B < 0) {
    P = -P;
    Q = -Q;
  }
  Integer diff = N - P * P;
  if (diff % Q != 0) {
    Integer aq = abs(Q);
    P *= aq;
    N *= aq * aq;
    Q *= aq;
  }
  Integer s = isqrt(N);
  std::map<std::pair<Integer, Integer>, size_t> seen;
  std::vector<Integer> entries;
  for (size_t step = 0;; ++step) {
    auto key = std::make_pair(P, Q);
    if (auto it = seen.find(key); it != seen.end()) {
      ContinuedFraction cf;
      cf.pre.assign(entries.begin(), entries.begin() + it->second);
      cf.period.assign(entries.begin() + it->second, entries.end());
      return canonicalize(cf);
    }
    if (step > 1000000) throw Error(Errc::TooLarge, "period detection did not terminate");
    seen.emplace(key, entries.size());
    Integer a = Q > 0 ? floor_div(P + s, Q) : floor_div(-P - s - 1, -Q);
    entries.push_back(a);
    P = a * Q - P;
    Q = (N - P * P) / Q;
  }
}

inline ContinuedFraction cf_shift_entries(const ContinuedFraction& cf, long delta) {
  ContinuedFraction out = cf;
  auto shift = [&](std::vector<Integer>& v) {
    for (auto& a : v) {
      a += delta;
      if (a < 1) throw Error(Errc::EntryUnderflow, "entry shifted to " + a.get_str());
    }
  };
  shift(out.pre);
  shift(out.period);
  return canonicalize(out);
}

}  // namespace staircase::cf
