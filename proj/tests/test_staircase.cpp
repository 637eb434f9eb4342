#include "catch_amalgamated.hpp"
#include "staircase/staircase.hpp"

using namespace staircase;
using namespace staircase::stairs;

namespace {

const QuadNum beta = main_beta();

bool is_root(const QuadNum& b, const QuadNum& z) {
  QuadNum s = QuadNum(2) * (b + 1) * (b + 1) / b - 2;
  return z * z - s * z + 1 == QuadNum(0);
}

}  // namespace

TEST_CASE("accumulation point examples") {
  CHECK(acc_point(beta) == QuadNum(Rational(27, 7), Rational(11, 14), 30));
  CHECK(acc_point(1) == QuadNum(3, 2, 2));
  CHECK(acc_point(2) == QuadNum(Rational(7, 2), Rational(3, 2), 5));
  CHECK_THROWS_AS(acc_point(QuadNum(Rational(1, 2))), Error);
}

TEST_CASE("volume at acc examples") {
  CHECK(QuadNum(1) / vol_at_acc(beta) == (QuadNum(4) * beta - 7) / 5);
  CHECK(QuadNum(1) / vol_at_acc(beta) == QuadNum(-1, Rational(1, 3), 30));
  CHECK(vol_at_acc(1) == QuadNum(1, Rational(1, 2), 2));
  CHECK(is_above_volume(QuadNum(7) / (beta + 3), 7, beta));
  CHECK_FALSE(is_above_volume(QuadNum(Rational(1, 2)), 7, beta));
}

TEST_CASE("accumulation point outside the field falls back to an enclosure") {
  auto d = acc_point_decimal(3, 30);
  auto e = acc_point_decimal(beta, 30);
  CHECK(e.exact);
  CHECK(e.lower.substr(0, 12) == "8.1606772375");
  if (!d.exact) {
    CHECK(d.lower < d.upper);
    CHECK(d.lower.substr(0, 4) == d.upper.substr(0, 4));
  }
  CHECK(acc_point_decimal(QuadNum(Rational(5, 2)), 10).exact);
  // beta = 1 + sqrt 2: the discriminant 32 + 16 sqrt 2 has no square root in Q(sqrt 2)
  QuadNum b(1, 1, 2);
  CHECK_THROWS_AS(acc_point(b), Error);
  auto f = acc_point_decimal(b, 20);
  CHECK_FALSE(f.exact);
  CHECK(f.lower < f.upper);
  mpf_class lo(f.lower, 256), hi(f.upper, 256);
  mpf_class s = 2 + 4 * sqrt(mpf_class(2, 256));
  mpf_class root = (s + sqrt(s * s - 4)) / 2;
  CHECK(lo <= root);
  CHECK(root <= hi);
}

TEST_CASE("blocked examples") {
  CHECK(is_blocked(qp::family_n(2).blocker, 2) == Blocked::blocked);
  CHECK(is_blocked(qp::main_class(), beta) == Blocked::equal);
  CHECK(is_blocked(qp::outer_family(0), beta) == Blocked::below);
  CHECK(std::string(blocked_name(Blocked::equal)) == "equal");
}

TEST_CASE("corner examples") {
  auto c0 = corner_points(0, beta);
  CHECK(c0.outer == Point{7, QuadNum(7) / (3 + beta)});
  CHECK_FALSE(c0.inner_class.has_value());
  auto c1 = corner_points(1, beta);
  REQUIRE(c1.inner_class);
  CHECK(*c1.inner_class ==
        Point{QuadNum(Rational(579, 71)), QuadNum(579) / (QuadNum(239) + QuadNum(86) * beta)});
  auto I1 = inner_corners(0, beta).first;
  CHECK(I1.z == QuadNum(7) * (QuadNum(239) + QuadNum(86) * beta) / (QuadNum(71) * (beta + 3)));
  CHECK(I1.lambda == QuadNum(7) / (beta + 3));
}

TEST_CASE("alternation examples") {
  CHECK(QuadNum(7) < QuadNum(Rational(579, 71)));
  CHECK(QuadNum(Rational(579, 71)) < QuadNum(Rational(155, 19)));
  CHECK(QuadNum(7) / (beta + 3) < QuadNum(579) / (QuadNum(239) + QuadNum(86) * beta));
  auto r = verify_alternation(10, beta);
  CHECK(r.passed());
  CHECK_THROWS_AS(verify_alternation(0, beta), Error);
}

TEST_CASE("cf recursion examples") {
  auto r = verify_cf_recursion(10);
  CHECK(r.passed());
  CHECK(qp::outer_family(2).p == 457 * 7 + 204 * 1);
  CHECK(qp::outer_family(2).q == 56 * 7 + 25 * 1);
  CHECK(cf::cf_of_rational(3403, 417).pre == std::vector<Integer>{8, 6, 4, 2, 7});
}

TEST_CASE("closed forms") {
  auto C = closed_form_constants();
  CHECK(C.d + C.d.conjugate() == QuadNum(3));
  CHECK(C.d * C.r + C.d.conjugate() / C.r == QuadNum(64));
  CHECK(C.r * C.r.conjugate() == QuadNum(1));
  CHECK(verify_closed_forms(8).passed());
}

TEST_CASE("envelope") {
  std::vector<qp::QuasiPerfectClass> cls{qp::outer_family(0), qp::outer_family(1), qp::inner_family(1)};
  auto env = envelope(beta, cls, {QuadNum(7)});
  CHECK(env[0].lambda == QuadNum(7) / (beta + 3));
  CHECK(env[0].tag == qp::outer_family(0).str());
  auto I1 = inner_corners(0, beta).first;
  auto at = envelope(beta, cls, {I1.z});
  CHECK(at[0].lambda == I1.lambda);
  auto empty = envelope(beta, {}, {QuadNum(3)});
  CHECK(empty[0].kind == BoundKind::volume_only);
}

TEST_CASE("property: acc solves its quadratic, roots multiply to 1") {
  for (auto b : {QuadNum(1), QuadNum(2), beta, qp::beta_n(3), qp::beta_n(4)}) {
    QuadNum a = acc_point(b);
    CHECK(is_root(b, a));
    QuadNum s = QuadNum(2) * (b + 1) * (b + 1) / b - 2;
    CHECK(a * (s - a) == QuadNum(1));
    CHECK(QuadNum(1) < a);
  }
}

TEST_CASE("property: acc increasing and vol decreasing in beta") {
  const QuadNum bs[] = {QuadNum(1), QuadNum(Rational(3, 2)), QuadNum(2), QuadNum(Rational(5, 2)), QuadNum(3)};
  auto num = [](const std::string& s) { return mpf_class(s, 256); };
  for (size_t i = 0; i + 1 < 5; ++i) {
    auto a = acc_point_decimal(bs[i], 50), b = acc_point_decimal(bs[i + 1], 50);
    CHECK(num(a.upper) < num(b.lower));
    // vol = (1 + acc) / (2 + 2 beta) from the decimal enclosures
    mpf_class vlo_next = (1 + num(b.lower)) / (2 + 2 * mpf_class(bs[i + 1].to_rational(), 256));
    mpf_class vhi = (1 + num(a.lower)) / (2 + 2 * mpf_class(bs[i].to_rational(), 256));
    mpf_class vhi_next = (1 + num(b.upper)) / (2 + 2 * mpf_class(bs[i + 1].to_rational(), 256));
    CHECK(vhi_next < vhi);
    CHECK(vlo_next <= vhi_next);
  }
}

TEST_CASE("property: I_{k+1} sits at height mu(E_k) at its center") {
  for (unsigned k = 0; k <= 10; ++k) {
    auto Ek = qp::outer_family(k);
    CHECK(inner_corners(k, beta).first.lambda == qp::mu(Ek, beta, QuadNum(Ek.center())));
  }
}
