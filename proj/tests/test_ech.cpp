#include "catch_amalgamated.hpp"
#include "staircase/ech.hpp"
#include "staircase/staircase.hpp"

#include <algorithm>
#include <random>

using namespace staircase;
using namespace staircase::ech;

namespace {

const QuadNum beta = stairs::main_beta();

// Oracle: all a*m + b*n for m, n <= bound, sorted.
std::vector<QuadNum> naive_ellipsoid(const QuadNum& a, const QuadNum& b, size_t K) {
  std::vector<QuadNum> v;
  long bound = static_cast<long>(K) + 1;
  for (long m = 0; m <= bound; ++m)
    for (long n = 0; n <= bound; ++n) {
      QuadNum x = a * m + b * n;
      if (x <= a * bound || x <= b * bound) v.push_back(x);
    }
  std::sort(v.begin(), v.end());
  v.resize(K + 1);
  return v;
}

// Oracle: count lattice points (i, j) lying on or under the path by direct
// half-plane tests against every edge.
long long direct_count(const std::vector<LatticePoint>& v) {
  long long X = v.back().x, Y = v.front().y, n = 0;
  for (long long i = 0; i <= X; ++i)
    for (long long j = 0; j <= Y; ++j) {
      bool inside = true;
      for (size_t e = 0; e + 1 < v.size() && inside; ++e) {
        long long dx = v[e + 1].x - v[e].x, dy = v[e + 1].y - v[e].y;
        inside = cross(dx, dy, i - v[e].x, j - v[e].y) <= 0;
      }
      n += inside;
    }
  return n;
}

}  // namespace

TEST_CASE("ellipsoid capacity examples") {
  auto t = ellipsoid_caps(1, 1, 5);
  CHECK(t.values == std::vector<QuadNum>{0, 1, 1, 2, 2, 2});
  CHECK(ellipsoid_caps(1, 7, 7).values[7] == QuadNum(7));
  CHECK(ellipsoid_caps(1, QuadNum(Rational(41, 5)), 125).values[125] == QuadNum(41));
  CHECK_THROWS_AS(ellipsoid_caps(0, 1, 3), Error);
}

TEST_CASE("polydisk capacity examples") {
  CHECK(polydisk_cap(0, beta) == QuadNum(0));
  CHECK(polydisk_cap(7, beta) == beta + 3);
  CHECK(polydisk_cap(125, beta) == QuadNum(17) + QuadNum(6) * beta);
  CHECK(polydisk_cap(1, 1) == QuadNum(1));
  CHECK_THROWS_AS(polydisk_cap(3, QuadNum(Rational(1, 2))), Error);
}

TEST_CASE("omega length examples") {
  CHECK(omega_length({{{0, 6}, {17, 6}, {17, 0}}}, beta) == QuadNum(17) + QuadNum(6) * beta);
  CHECK(omega_length({{{0, 0}, {9, 0}}}, beta) == QuadNum(9));
  CHECK(omega_length({{{0, 1}, {1, 1}, {1, 0}}}, beta) == beta + 1);
}

TEST_CASE("lattice count examples") {
  CHECK(lattice_count({{{0, 6}, {17, 6}, {17, 0}}}) == 126);
  // (0,0)..(7,0) on the axis plus (0,1)
  CHECK(lattice_count({{{0, 1}, {7, 0}}}) == 9);
  CHECK(lattice_count({{{0, 1}, {7, 0}}}) == direct_count({{0, 1}, {7, 0}}));
  CHECK(lattice_count({{{0, 0}}}) == 1);
}

TEST_CASE("invalid paths") {
  auto code = [](const ConvexLatticePath& p) {
    try {
      validate_path(p);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::ParseError;
  };
  CHECK(code({{{1, 1}, {2, 0}}}) == Errc::InvalidPath);
  CHECK(code({{{0, 2}, {1, 1}, {2, 0}}}) == Errc::InvalidPath);  // collinear
  CHECK(code({{{0, 1}, {1, 0}, {0, 0}}}) == Errc::InvalidPath);
  CHECK(code({{}}) == Errc::InvalidPath);
}

TEST_CASE("brute force examples") {
  CHECK(polydisk_cap_bruteforce(7, beta) == beta + 3);
  CHECK(polydisk_cap_bruteforce(0, beta) == QuadNum(0));
  CHECK(polydisk_cap_bruteforce(1, 1) == QuadNum(1));
  CHECK_THROWS_AS(polydisk_caps_bruteforce(201, beta), Error);
}

TEST_CASE("ratio_at") {
  CHECK(ratio_at(beta, 7, 7) == QuadNum(7) / (beta + 3));
  CHECK(ratio_at(beta, 125, QuadNum(Rational(41, 5))) == QuadNum(41) / (QuadNum(17) + QuadNum(6) * beta));
  try {
    ratio_at(beta, 0, 2);
    FAIL("expected KZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::KZero);
  }
}

TEST_CASE("property: ellipsoid caps match naive enumeration") {
  for (auto b : {QuadNum(1), QuadNum(Rational(41, 5)), QuadNum(Rational(7, 3)), stairs::acc_point(beta)})
    CHECK(ellipsoid_caps(1, b, 150).values == naive_ellipsoid(1, b, 150));
}

TEST_CASE("property: Pick count equals direct enumeration on every path") {
  long long seen = 0;
  for_each_convex_path(25, [&](const ConvexLatticePath& p, long long L) {
    ++seen;
    CHECK(L == direct_count(p.vertices));
    CHECK(L <= 25);
  });
  CHECK(seen > 100);
}

TEST_CASE("property: capacities nondecreasing, subadditive-free sanity") {
  for (auto b : {QuadNum(1), QuadNum(2), QuadNum(Rational(5, 2)), beta}) {
    auto t = polydisk_caps(b, 300).values;
    for (size_t k = 1; k < t.size(); ++k) CHECK(t[k - 1] <= t[k]);
  }
  auto e = ellipsoid_caps(1, beta, 300).values;
  for (size_t k = 1; k < e.size(); ++k) CHECK(e[k - 1] <= e[k]);
}

TEST_CASE("property: polydisk cap matches brute force for k <= 40 at several beta") {
  for (auto b : {QuadNum(1), QuadNum(2), QuadNum(Rational(5, 2)), beta, QuadNum(Rational(13, 4))}) {
    auto brute = polydisk_caps_bruteforce(40, b);
    for (unsigned k = 0; k <= 40; ++k) CHECK(polydisk_cap(k, b) == brute[k]);
  }
}

TEST_CASE("sweep and CSV") {
  std::vector<QuadNum> zs{QuadNum(7), QuadNum(Rational(41, 5))};
  auto rows = lower_bound_sweep(beta, 200, zs, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].lambda == QuadNum(7) / (beta + 3));
  CHECK(rows[1].lambda == QuadNum(41) / (QuadNum(17) + QuadNum(6) * beta));
  CHECK(rows[1].k == 125);
  CHECK(rows[0].kind == BoundKind::ech_ratio);
  // one thread and many agree
  auto single = lower_bound_sweep(beta, 200, zs, 1);
  CHECK(single[0].lambda == rows[0].lambda);
  CHECK(single[1].k == rows[1].k);
  auto csv = sweep_csv(rows);
  CHECK(csv.rfind("z_a_num,z_a_den,z_b_num,z_b_den,D,lambda_40digits,argmax_k\n", 0) == 0);
  CHECK(csv.find("\n41,5,0,1,0,") != std::string::npos);
  CHECK(csv.find(",125\n") != std::string::npos);
  CHECK_THROWS_AS(lower_bound_sweep(beta, 0, zs), Error);
}
