#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace staircase {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Errc {
  MixedRadicand,
  DivisionByZero,
  NotCoprime,
  EntryUnderflow,
  InvalidPath,
  TooLarge,
  KZero,
  SeedIncompatible,
  RadicandExplosion,
  NoIntersection,
  AmbiguousHit,
  ConvexityLost,
  NonUnimodular,
  ParseError,
  PreconditionViolated,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::MixedRadicand: return "MixedRadicand";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::EntryUnderflow: return "EntryUnderflow";
    case Errc::InvalidPath: return "InvalidPath";
    case Errc::TooLarge: return "TooLarge";
    case Errc::KZero: return "KZero";
    case Errc::SeedIncompatible: return "SeedIncompatible";
    case Errc::RadicandExplosion: return "RadicandExplosion";
    case Errc::NoIntersection: return "NoIntersection";
    case Errc::AmbiguousHit: return "AmbiguousHit";
    case Errc::ConvexityLost: return "ConvexityLost";
    case Errc::NonUnimodular: return "NonUnimodular";
    case Errc::ParseError: return "ParseError";
    case Errc::PreconditionViolated: return "PreconditionViolated";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const noexcept { return code_; }
  const char* name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

inline Rational make_rational(const Integer& n, const Integer& d) {
  if (d == 0) throw Error(Errc::DivisionByZero, "zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer floor_of(const Rational& r) { return floor_div(r.get_num(), r.get_den()); }

inline Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer pow10(unsigned k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

// n = s^2 * f with f square-free, n > 0. Trial division up to the cube root of
// what remains; the leftover is then 1, a prime, a product of two primes or a
// prime square.
inline std::pair<Integer, Integer> square_free_split(Integer n) {
  if (n <= 0) throw Error(Errc::PreconditionViolated, "square_free_split needs n > 0");
  Integer s = 1, f = 1;
  constexpr unsigned long kLimit = 5000000;
  unsigned long p = 2;
  for (; p <= kLimit; p += (p == 2 ? 1 : 2)) {
    Integer pp = Integer(p) * p * p;
    if (pp > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        n /= p;
        s *= p;
      } else {
        f *= p;
        break;
      }
    }
  }
  if (p > kLimit && Integer(p) * p * p <= n)
    throw Error(Errc::RadicandExplosion, "radicand too large to factor");
  if (n > 1) {
    if (is_square(n)) {
      s *= isqrt(n);
    } else {
      f *= n;
    }
  }
  return {s, f};
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// a + b*sqrt(D). Rational values are stored with b = 0 and D = 0.
class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(int v) : a_(v) {}
  QuadNum(long v) : a_(v) {}
  QuadNum(long long v) : a_(Integer(std::to_string(v))) {}
  QuadNum(const Integer& v) : a_(v) {}
  QuadNum(const Rational& v) : a_(v) { a_.canonicalize(); }
  template <class T, class U>
  QuadNum(const __gmp_expr<T, U>& v) : a_(v) {
    a_.canonicalize();
  }

  QuadNum(const Rational& a, const Rational& b, std::int64_t D) : a_(a), b_(b), d_(D) {
    a_.canonicalize();
    b_.canonicalize();
    if (b_ == 0 || D == 0) {
      if (b_ != 0) throw Error(Errc::PreconditionViolated, "radicand must be >= 1");
      d_ = 0;
      return;
    }
    if (D < 0) throw Error(Errc::PreconditionViolated, "radicand must be >= 1");
    auto [sq, f] = square_free_split(Integer(std::to_string(D)));
    b_ *= sq;
    if (f == 1) {
      a_ += b_;
      b_ = 0;
      d_ = 0;
    } else {
      d_ = f.get_si();
    }
  }

  // sqrt(r) for r >= 0, exact; the radicand is reduced to square-free form.
  static QuadNum sqrt_of(const Rational& r) {
    if (r < 0) throw Error(Errc::PreconditionViolated, "sqrt of negative rational");
    if (r == 0) return {};
    Integer prod = r.get_num() * r.get_den();
    auto [s, f] = square_free_split(prod);
    Rational coef = make_rational(s, r.get_den());
    if (f == 1) return QuadNum(coef);
    if (!f.fits_slong_p()) throw Error(Errc::RadicandExplosion, "radicand exceeds 64 bits");
    return raw(Rational(0), coef, f.get_si());
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::int64_t radicand() const { return d_; }
  bool is_rational() const { return d_ == 0; }
  bool is_zero() const { return d_ == 0 && a_ == 0; }

  int sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with D b^2 (never equal, D is not a square)
    Rational a2 = a_ * a_;
    Rational db2 = b_ * b_ * d_;
    return a2 > db2 ? sa : sb;
  }

  QuadNum conjugate() const { return raw(a_, -b_, d_); }
  Rational norm() const { return a_ * a_ - b_ * b_ * d_; }

  QuadNum operator-() const { return raw(-a_, -b_, d_); }

  friend QuadNum operator+(const QuadNum& x, const QuadNum& y) {
    auto D = common(x, y);
    return raw(x.a_ + y.a_, x.b_ + y.b_, D);
  }
  friend QuadNum operator-(const QuadNum& x, const QuadNum& y) {
    auto D = common(x, y);
    return raw(x.a_ - y.a_, x.b_ - y.b_, D);
  }
  friend QuadNum operator*(const QuadNum& x, const QuadNum& y) {
    auto D = common(x, y);
    if (D == 0) return QuadNum(Rational(x.a_ * y.a_));
    return raw(x.a_ * y.a_ + x.b_ * y.b_ * D, x.a_ * y.b_ + x.b_ * y.a_, D);
  }
  friend QuadNum operator/(const QuadNum& x, const QuadNum& y) {
    if (y.is_zero()) throw Error(Errc::DivisionByZero, "division by zero");
    auto D = common(x, y);
    if (y.is_rational()) return raw(x.a_ / y.a_, x.b_ / y.a_, D);
    Rational n = y.norm();
    QuadNum num = x * y.conjugate();
    return raw(num.a_ / n, num.b_ / n, D);
  }
  QuadNum& operator+=(const QuadNum& y) { return *this = *this + y; }
  QuadNum& operator-=(const QuadNum& y) { return *this = *this - y; }
  QuadNum& operator*=(const QuadNum& y) { return *this = *this * y; }
  QuadNum& operator/=(const QuadNum& y) { return *this = *this / y; }

  friend bool operator==(const QuadNum& x, const QuadNum& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadNum& x, const QuadNum& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational to_rational() const {
    if (!is_rational()) throw Error(Errc::PreconditionViolated, "value is irrational");
    return a_;
  }

 private:
  Rational a_{0};
  Rational b_{0};
  std::int64_t d_ = 0;

  static int sgn(const Rational& r) { return ::sgn(r); }

  static QuadNum raw(Rational a, Rational b, std::int64_t D) {
    QuadNum r;
    r.a_ = std::move(a);
    if (b != 0) {
      r.b_ = std::move(b);
      r.d_ = D;
    }
    return r;
  }

  static std::int64_t common(const QuadNum& x, const QuadNum& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
    throw Error(Errc::MixedRadicand,
                "sqrt(" + std::to_string(x.d_) + ") vs sqrt(" + std::to_string(y.d_) + ")");
  }
};

enum class Ordering { less, equal, greater };

inline Ordering qn_cmp(const QuadNum& x, const QuadNum& y) {
  int s = (x - y).sign();
  return s < 0 ? Ordering::less : (s > 0 ? Ordering::greater : Ordering::equal);
}

inline QuadNum qn_max(const QuadNum& x, const QuadNum& y) { return x < y ? y : x; }
inline QuadNum qn_min(const QuadNum& x, const QuadNum& y) { return y < x ? y : x; }

inline QuadNum pow(QuadNum x, unsigned n) {
  QuadNum r(1);
  while (n) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

// x = (A + B*sqrt(D)) / C with integers and C > 0.
struct IntegerForm {
  Integer A, B, C;
  std::int64_t D;
};

inline IntegerForm integer_form(const QuadNum& x) {
  Integer C = x.a().get_den();
  if (!x.is_rational()) C = lcm(C, Integer(x.b().get_den()));
  Rational ca = x.a() * C, cb = x.b() * C;
  return {ca.get_num(), cb.get_num(), C, x.radicand()};
}

inline Integer qn_floor(const QuadNum& x) {
  if (x.is_rational()) return floor_of(x.a());
  auto f = integer_form(x);
  Integer N = f.B * f.B * f.D;
  Integer s = isqrt(N);
  // floor(B sqrt D) = s when B > 0, -s-1 when B < 0 (N is never a square)
  Integer fl = f.B > 0 ? s : Integer(-s - 1);
  return floor_div(f.A + fl, f.C);
}

inline Integer qn_ceil(const QuadNum& x) { return -qn_floor(-x); }

enum class Rounding { down, up };

inline std::string qn_decimal(const QuadNum& x, unsigned digits, Rounding rounding = Rounding::down) {
  QuadNum scaled = x * QuadNum(pow10(digits));
  Integer n = rounding == Rounding::down ? qn_floor(scaled) : qn_ceil(scaled);
  bool neg = n < 0;
  if (neg) n = -n;
  std::string s = n.get_str();
  if (digits == 0) return neg ? "-" + s : s;
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return neg ? "-" + s : s;
}

// (54+11√30)/14 style; ascii=true writes sqrt(30).
inline std::string format(const QuadNum& x, bool ascii = false) {
  if (x.is_rational()) return x.a().get_str();
  auto f = integer_form(x);
  std::string root = ascii ? "sqrt(" + std::to_string(f.D) + ")" : "√" + std::to_string(f.D);
  std::string body;
  if (f.A != 0) body = f.A.get_str();
  Integer absB = abs(f.B);
  std::string rad = (absB == 1 ? "" : absB.get_str() + (ascii ? "*" : "")) + root;
  if (f.A != 0)
    body += (f.B < 0 ? "-" : "+") + rad;
  else
    body = (f.B < 0 ? "-" : "") + rad;
  if (f.C == 1) return body;
  if (f.A == 0) return body + "/" + f.C.get_str();
  return "(" + body + ")/" + f.C.get_str();
}

inline std::ostream& operator<<(std::ostream& os, const QuadNum& x) { return os << format(x); }

namespace detail {

inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw Error(Errc::ParseError, "empty number");
  auto slash = s.find('/');
  auto check = [](const std::string& t) {
    size_t i = (t.size() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) throw Error(Errc::ParseError, "bad integer '" + t + "'");
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') throw Error(Errc::ParseError, "bad integer '" + t + "'");
    return Integer(t[0] == '+' ? t.substr(1) : t, 10);
  };
  if (slash == std::string::npos) return Rational(check(s));
  return make_rational(check(s.substr(0, slash)), check(s.substr(slash + 1)));
}

}  // namespace detail

// Accepts "a", "a/b", "a/b+c/d*sqrt(D)", "c/d*sqrt(D)", "sqrt(D)", with optional
// sign before the radical term. Whitespace is ignored.
inline QuadNum parse_quadnum(std::string s) {
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '\t') t += c;
  if (t.empty()) throw Error(Errc::ParseError, "empty value");
  if (t.front() == '(') {
    auto close = t.rfind(')');
    if (close == std::string::npos || close < 2) throw Error(Errc::ParseError, "unbalanced parentheses in '" + s + "'");
    std::string tail = t.substr(close + 1);
    Rational div = 1;
    if (!tail.empty()) {
      if (tail[0] != '/') throw Error(Errc::ParseError, "expected '/' after ')' in '" + s + "'");
      div = detail::parse_rational(tail.substr(1));
      if (div == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + s + "'");
    }
    return parse_quadnum(t.substr(1, close - 1)) / QuadNum(div);
  }
  auto sq = t.find("sqrt(");
  if (sq == std::string::npos) return QuadNum(detail::parse_rational(t));
  auto close = t.find(')', sq);
  if (close == std::string::npos || close + 1 != t.size()) throw Error(Errc::ParseError, "bad sqrt term in '" + s + "'");
  std::string dstr = t.substr(sq + 5, close - sq - 5);
  Rational Dq = detail::parse_rational(dstr);
  if (Dq.get_den() != 1 || Dq <= 0) throw Error(Errc::ParseError, "radicand must be a positive integer");
  std::string head = t.substr(0, sq);
  // head is "<rational part><sign><coef>*" or "<sign><coef>*" or "<sign>"
  Rational coef = 1, rat = 0;
  if (!head.empty() && head.back() == '*') head.pop_back();
  size_t split = std::string::npos;
  for (size_t i = head.size(); i-- > 1;)
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/') {
      split = i;
      break;
    }
  std::string coefs = head;
  if (split != std::string::npos) {
    rat = detail::parse_rational(head.substr(0, split));
    coefs = head.substr(split);
  }
  if (coefs.empty() || coefs == "+") coef = 1;
  else if (coefs == "-") coef = -1;
  else coef = detail::parse_rational(coefs);
  return QuadNum(rat) + QuadNum(coef) * QuadNum::sqrt_of(Dq);
}

}  // namespace staircase
