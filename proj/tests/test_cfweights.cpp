#include "catch_amalgamated.hpp"
#include "staircase/cfweights.hpp"
#include "staircase/staircase.hpp"

using namespace staircase;
using namespace staircase::cf;

namespace {

std::vector<Integer> repeat(std::initializer_list<std::pair<long, int>> runs) {
  std::vector<Integer> out;
  for (auto [v, n] : runs) out.insert(out.end(), static_cast<size_t>(n), Integer(v));
  return out;
}

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

// Oracle: the rectangle-cutting description of the weight sequence.
std::vector<Integer> cut_squares(Integer p, Integer q) {
  std::vector<Integer> w;
  while (p > 0 && q > 0) {
    if (p < q) std::swap(p, q);
    w.push_back(q);
    p -= q;
  }
  return w;
}

}  // namespace

TEST_CASE("integral weights") {
  CHECK(integral_weights(41, 5) == repeat({{5, 8}, {1, 5}}));
  CHECK(integral_weights(7, 1) == repeat({{1, 7}}));
  CHECK(integral_weights(155, 19) == repeat({{19, 8}, {3, 6}, {1, 3}}));
  CHECK_THROWS_AS(integral_weights(6, 4), Error);
}

TEST_CASE("weight expansion of rationals") {
  auto w = weight_expansion(Rational(41, 5));
  REQUIRE(w.size() == 13);
  for (int i = 0; i < 8; ++i) CHECK(w[i] == 1);
  for (int i = 8; i < 13; ++i) CHECK(w[i] == Rational(1, 5));
  CHECK(weight_expansion(Rational(7)) == std::vector<Rational>(7, Rational(1)));
  CHECK_THROWS_AS(weight_expansion(Rational(1, 2)), Error);
}

TEST_CASE("weight prefix of the accumulation point") {
  QuadNum acc = stairs::acc_point(stairs::main_beta());
  auto w = weight_prefix(acc, 9);
  REQUIRE(w.size() == 9);
  for (int i = 0; i < 8; ++i) CHECK(w[i] == QuadNum(1));
  CHECK(w[8] == acc - 8);
  CHECK(w[8] == QuadNum(Rational(-58, 14), Rational(11, 14), 30));
}

TEST_CASE("cf of rationals") {
  CHECK(cf_of_rational(41, 5).pre == ints({8, 5}));
  CHECK(cf_of_rational(7, 1).pre == ints({7}));
  CHECK(cf_of_rational(155, 19).pre == ints({8, 6, 3}));
  CHECK(cf_of_rational(155, 19).finite());
}

TEST_CASE("cf evaluation") {
  auto e = ints({8, 6, 4, 2, 7});
  CHECK(cf_eval(std::span<const Integer>(e)) == QuadNum(Rational(3403, 417)));
  auto f = ints({8, 5});
  CHECK(cf_eval(std::span<const Integer>(f)) == QuadNum(Rational(41, 5)));
  auto g = ints({12});
  CHECK(cf_eval(std::span<const Integer>(g)) == QuadNum(12));
  // periodic value fixed by its own tail
  QuadNum acc = stairs::acc_point(stairs::main_beta());
  auto p = ints({8, 6, 4, 2});
  CHECK(cf_eval(std::span<const Integer>(p), acc) == acc);
}

TEST_CASE("convergents") {
  ContinuedFraction c{{}, ints({8, 6, 4, 2})};
  auto v = convergents(c, 3);
  REQUIRE(v.size() == 4);
  CHECK(v[0] == std::pair<Integer, Integer>(8, 1));
  CHECK(v[1] == std::pair<Integer, Integer>(49, 6));
  CHECK(v[2] == std::pair<Integer, Integer>(204, 25));
  CHECK(v[3] == std::pair<Integer, Integer>(457, 56));
  CHECK(457 * 25 - 204 * 56 == 1);
  auto s = convergents(ContinuedFraction{ints({7}), {}}, 0);
  REQUIRE(s.size() == 1);
  CHECK(s[0] == std::pair<Integer, Integer>(7, 1));
}

TEST_CASE("cf of quadratic irrationals") {
  auto a = cf_of_quadratic(stairs::acc_point(stairs::main_beta()));
  CHECK(a.pre.empty());
  CHECK(a.period == ints({8, 6, 4, 2}));
  auto b = cf_of_quadratic(QuadNum(3, 2, 2));
  CHECK(b.pre == ints({5}));
  CHECK(b.period == ints({1, 4}));
  auto c = cf_of_quadratic(QuadNum(0, 1, 2));
  CHECK(c.pre == ints({1}));
  CHECK(c.period == ints({2}));
}

TEST_CASE("cf entry shift") {
  auto s = cf_shift_entries(ContinuedFraction{ints({8, 6, 3}), {}}, 2);
  CHECK(s.pre == ints({10, 8, 5}));
  CHECK(cf_shift_entries(ContinuedFraction{ints({8, 5}), {}}, 0).pre == ints({8, 5}));
  try {
    cf_shift_entries(ContinuedFraction{{}, ints({8, 6, 4, 2})}, -2);
    FAIL("expected EntryUnderflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EntryUnderflow);
  }
}

TEST_CASE("property: weight sums for p, q <= 500") {
  for (long p = 1; p <= 500; p += 3)
    for (long q = 1; q <= p; q += 7) {
      if (gcd(Integer(p), Integer(q)) != 1) continue;
      auto W = integral_weights(p, q);
      Integer sq = 0, sum = 0;
      for (auto& w : W) {
        sq += w * w;
        sum += w;
      }
      CHECK(sq == Integer(p) * q);
      CHECK(sum == Integer(p) + q - 1);
      CHECK(W == cut_squares(p, q));
      auto w = weight_expansion(make_rational(p, q));
      Rational s2 = 0;
      for (auto& x : w) s2 += x * x;
      CHECK(s2 == make_rational(p, q));
    }
}

TEST_CASE("property: cf round-trip on rationals") {
  for (long p = 1; p <= 300; p += 7)
    for (long q = 1; q <= 200; q += 11) {
      auto c = cf_of_rational(make_rational(p, q));
      CHECK(cf_eval(c) == QuadNum(make_rational(p, q)));
      for (size_t i = 1; i < c.pre.size(); ++i) CHECK(c.pre[i] >= 1);
      if (c.pre.size() > 1) CHECK(c.pre.back() >= 2);
    }
}

TEST_CASE("property: quadratic cf reproduces the value") {
  for (long D : {2, 3, 5, 7, 13, 30}) {
    for (long a = 1; a <= 6; ++a) {
      QuadNum x = QuadNum(Rational(a), Rational(1), D);
      auto c = cf_of_quadratic(x);
      REQUIRE(!c.period.empty());
      auto conv = convergents(c, 12);
      QuadNum lo = qn_min(QuadNum(make_rational(conv[11].first, conv[11].second)),
                          QuadNum(make_rational(conv[12].first, conv[12].second)));
      QuadNum hi = qn_max(QuadNum(make_rational(conv[11].first, conv[11].second)),
                          QuadNum(make_rational(conv[12].first, conv[12].second)));
      CHECK(lo <= x);
      CHECK(x <= hi);
    }
  }
}
