#include "catch_amalgamated.hpp"
#include "staircase/perfclass.hpp"
#include "staircase/staircase.hpp"

using namespace staircase;
using namespace staircase::qp;

namespace {

const QuadNum beta = stairs::main_beta();
const QuasiPerfectClass E0{3, 1, 7, 1, 4}, E1{64, 23, 155, 19, 82}, E2{1405, 505, 3403, 417, 1800};

}  // namespace

TEST_CASE("qp_check") {
  CHECK(qp_check(main_class()).ok);
  auto v = qp_check({3, 1, 7, 2, 4});
  CHECK_FALSE(v.ok);
  CHECK(v.violations.front().find("8 != 9") != std::string::npos);
  CHECK(qp_check({2, 1, 5, 1, 2}).ok);
  CHECK_FALSE(qp_check(E0 - E0).ok);
}

TEST_CASE("from_pq") {
  CHECK(from_pq(41, 5) == main_class());
  CHECK(from_pq(7, 1) == E0);
  CHECK_FALSE(from_pq(6, 1).has_value());
  CHECK_THROWS_AS(from_pq(6, 4), Error);
}

TEST_CASE("recursion") {
  CHECK(quad_form(E1, E0) == 88);
  auto r = recurse(E0, E1, 22, 1);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == E2);
  // x1 = x0 with nu = 2 is compatible and gives the constant sequence
  CHECK(recurse(E0, E0, 2, 3) == std::vector<QuasiPerfectClass>(3, E0));
  try {
    recurse(E0, E0, 3, 1);
    FAIL("expected SeedIncompatible");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SeedIncompatible);
  }
}

TEST_CASE("families") {
  CHECK(outer_family(0) == E0);
  CHECK(outer_family(1) == E1);
  CHECK(outer_family(2) == E2);
  // the inner family satisfies t^2 = p^2+q^2-6pq+8, which forces t = 306 here
  CHECK(inner_family(1) == QuasiPerfectClass{239, 86, 579, 71, 306});
  CHECK(inner_family(2) == QuasiPerfectClass{115193, 41404, 279005, 34189, 147578});
  CHECK(inner_family(2) == E2 * 82 - main_class());
  CHECK(combine(82, E2, main_class()) == inner_family(2));
  CHECK(combine(22, E1, E0) == E2);
  CHECK_THROWS_AS(inner_family(0), Error);
}

TEST_CASE("mu examples") {
  CHECK(mu(E0, beta, 7) == QuadNum(7) / (beta + 3));
  CHECK(mu(E0, beta, 6) == QuadNum(6) / (beta + 3));
  QuadNum acc = stairs::acc_point(beta);
  CHECK(mu(main_class(), beta, acc) == QuadNum(5) * acc / (QuadNum(17) + QuadNum(6) * beta));
  CHECK(mu(main_class(), beta, acc) == stairs::vol_at_acc(beta));
}

TEST_CASE("compatibility and adjacency") {
  CHECK(adjacency(E0, E1));
  CHECK(adjacency(E1, E0));
  CHECK(8 * 174 - 4 * 82 == 8 * 7 * 19);
  CHECK(t_compat(E0, E1, 22));
  CHECK_FALSE(t_compat(E0, E1, 21));
  CHECK(abs(Integer(155 * 1 - 7 * 19)) == 22);
}

TEST_CASE("ech index") {
  CHECK(ech_index(main_class()) == 125);
  CHECK(ech_index(E0) == 7);
  CHECK(ech_index(inner_family(1)) == 20879);
}

TEST_CASE("family n") {
  CHECK(beta_n(2) == beta);
  auto f2 = family_n(2);
  CHECK(f2.step_class == main_class());
  auto f3 = family_n(3);
  CHECK(f3.step_class == QuasiPerfectClass{31, 8, 71, 7, 46});
  CHECK(ech_index(f3.step_class) == 287);
  CHECK(qp_check(f3.blocker).ok);
  CHECK(f3.seed_centers[1] == Rational(cf::cf_eval(cf::ContinuedFraction{{10, 8, 5}, {}}).to_rational()));
  CHECK_THROWS_AS(beta_n(1), Error);
}

TEST_CASE("brahmagupta shift") {
  CHECK(brahmagupta_shift(7) == QuadNum(Rational(41, 7)));
  CHECK(brahmagupta_shift(QuadNum(3, 2, 2)) == QuadNum(3, 2, 2));
  CHECK(brahmagupta_shift(QuadNum(Rational(41, 5))) == QuadNum(Rational(241, 41)));
}

TEST_CASE("property: families stay quasi-perfect and pairwise compatible") {
  for (unsigned k = 0; k <= 20; ++k) {
    auto Ek = outer_family(k), Ek1 = outer_family(k + 1);
    CHECK(qp_check(Ek).ok);
    CHECK(quad_form(Ek, Ek) == 8);
    CHECK(t_compat(Ek, Ek1, 22));
    CHECK(adjacency(Ek, Ek1));
    CHECK(ech_index(Ek) == (Ek.d + 1) * (Ek.e + 1) - 1);
    if (k >= 1) {
      auto Fk = inner_family(k);
      CHECK(qp_check(Fk).ok);
      CHECK(adjacency(Fk, Ek));
      CHECK(t_compat(Fk, Ek, outer_family(k - 1).t));
    }
    auto r = check_triple(Ek, Ek1, main_class());
    CHECK(r.ok);
    INFO(r.first_failure);
    auto s = check_triple(Ek, inner_family(k + 1), Ek1);
    CHECK(s.ok);
  }
}

TEST_CASE("property: from_pq inverts the class map") {
  for (unsigned k = 0; k <= 10; ++k) {
    auto c = outer_family(k);
    CHECK(from_pq(c.p, c.q) == c);
    if (k >= 1) {
      auto f = inner_family(k);
      CHECK(from_pq(f.p, f.q) == f);
    }
  }
}

TEST_CASE("property: triple check rejects a perturbed class") {
  auto bad = outer_family(1);
  bad.p += 1;
  CHECK_FALSE(check_triple(outer_family(0), bad, main_class()).ok);
}
