#pragma once

#include "staircase/exactnum.hpp"
#include "staircase/report.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <sstream>
#include <thread>
#include <vector>

namespace staircase::ech {

struct LatticePoint {
  long long x = 0, y = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

// From (0, y_start) to (x_end, 0), turning clockwise at every interior vertex.
struct ConvexLatticePath {
  std::vector<LatticePoint> vertices;
  long long x_end() const { return vertices.back().x; }
  long long y_start() const { return vertices.front().y; }
};

struct CapacityTable {
  enum class Target { ellipsoid, polydisk };
  Target target = Target::ellipsoid;
  QuadNum a, b;  // ellipsoid (a,b); polydisk uses b = beta
  std::vector<QuadNum> values;
};

// N(a,b): the values a*m + b*n (m,n >= 0) in ascending order with repetition.
// Row n starts at b*n and enters the heap when the start of row n-1 is popped.
inline CapacityTable ellipsoid_caps(const QuadNum& a, const QuadNum& b, size_t K) {
  if (a.sign() <= 0 || b.sign() <= 0) throw Error(Errc::PreconditionViolated, "ellipsoid needs a, b > 0");
  (void)(a - b);  // radicand compatibility
  struct Entry {
    QuadNum v;
    long long m, n;
  };
  auto cmp = [](const Entry& x, const Entry& y) {
    if (auto c = x.v <=> y.v; c != 0) return c > 0;
    return x.n > y.n;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  heap.push({QuadNum(0), 0, 0});
  CapacityTable t{CapacityTable::Target::ellipsoid, a, b, {}};
  t.values.reserve(K + 1);
  while (t.values.size() <= K) {
    Entry e = heap.top();
    heap.pop();
    t.values.push_back(e.v);
    heap.push({e.v + a, e.m + 1, e.n});
    if (e.m == 0) heap.push({e.v + b, 0, e.n + 1});
  }
  return t;
}

// c_k(P(1,beta)) = min { m + n*beta : (m+1)(n+1) >= k+1 }
inline QuadNum polydisk_cap(unsigned long long k, const QuadNum& beta) {
  if (beta < QuadNum(1)) throw Error(Errc::PreconditionViolated, "beta must be >= 1");
  if (k == 0) return QuadNum(0);
  QuadNum best(static_cast<long long>(k));  // m = k, n = 0
  for (unsigned long long m = 0; QuadNum(static_cast<long long>(m)) <= best; ++m) {
    unsigned long long n = (k + 1 + m) / (m + 1) - 1;  // ceil((k+1)/(m+1)) - 1
    QuadNum v = QuadNum(static_cast<long long>(m)) + QuadNum(static_cast<long long>(n)) * beta;
    if (v < best) best = v;
  }
  return best;
}

inline CapacityTable polydisk_caps(const QuadNum& beta, size_t K) {
  CapacityTable t{CapacityTable::Target::polydisk, QuadNum(1), beta, {}};
  t.values.reserve(K + 1);
  for (size_t k = 0; k <= K; ++k) t.values.push_back(polydisk_cap(k, beta));
  return t;
}

inline long long cross(long long ax, long long ay, long long bx, long long by) { return ax * by - ay * bx; }

inline void validate_path(const ConvexLatticePath& path) {
  const auto& v = path.vertices;
  if (v.empty()) throw Error(Errc::InvalidPath, "no vertices");
  if (v.front().x != 0) throw Error(Errc::InvalidPath, "path must start on the y-axis");
  if (v.back().y != 0) throw Error(Errc::InvalidPath, "path must end on the x-axis");
  for (auto& p : v)
    if (p.x < 0 || p.y < 0) throw Error(Errc::InvalidPath, "vertex outside the first quadrant");
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    long long dx = v[i + 1].x - v[i].x, dy = v[i + 1].y - v[i].y;
    if (dx < 0 || dy > 0 || (dx == 0 && dy == 0)) throw Error(Errc::InvalidPath, "edge must go right/down");
    if (i + 2 < v.size()) {
      long long ex = v[i + 2].x - v[i + 1].x, ey = v[i + 2].y - v[i + 1].y;
      if (cross(dx, dy, ex, ey) >= 0) throw Error(Errc::InvalidPath, "path is not strictly convex");
    }
  }
  if (v.size() > 2) {
    if (v[1].x == 0) throw Error(Errc::InvalidPath, "first edge runs along the y-axis");
    if (v[v.size() - 2].y == 0) throw Error(Errc::InvalidPath, "last edge runs along the x-axis");
  }
}

// Sum over edges nu of max_{w in Omega} det[nu, w], Omega = [0,beta] x [0,1].
inline QuadNum omega_length(const ConvexLatticePath& path, const QuadNum& beta) {
  validate_path(path);
  const QuadNum corners[4][2] = {{0, 0}, {beta, 0}, {beta, 1}, {0, 1}};
  QuadNum total;
  const auto& v = path.vertices;
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    QuadNum nx(v[i + 1].x - v[i].x), ny(v[i + 1].y - v[i].y);
    QuadNum best = nx * corners[0][1] - ny * corners[0][0];
    for (int c = 1; c < 4; ++c) best = qn_max(best, nx * corners[c][1] - ny * corners[c][0]);
    total += best;
  }
  return total;
}

inline long long igcd(long long a, long long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Pick on the polygon (0,0), path..., closed along both axes.
inline long long pick_count(const std::vector<LatticePoint>& path) {
  long long X = path.back().x, Y = path.front().y;
  if (X == 0 || Y == 0) return X + Y + 1;
  std::vector<LatticePoint> poly;
  poly.push_back({0, 0});
  poly.insert(poly.end(), path.begin(), path.end());
  long long twice_area = 0, boundary = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    twice_area += p.x * q.y - q.x * p.y;
    boundary += igcd(q.x - p.x, q.y - p.y);
  }
  twice_area = twice_area < 0 ? -twice_area : twice_area;
  long long interior = (twice_area - boundary + 2) / 2;
  return interior + boundary;
}

inline long long lattice_count(const ConvexLatticePath& path) {
  validate_path(path);
  return pick_count(path.vertices);
}

// Calls f(path, lattice_count) for every convex lattice path enclosing at most
// max_points lattice points.
inline void for_each_convex_path(long long max_points,
                                 const std::function<void(const ConvexLatticePath&, long long)>& f) {
  ConvexLatticePath path;
  // degenerate paths along the axes
  for (long long Y = 0; Y + 1 <= max_points; ++Y) {
    path.vertices = Y == 0 ? std::vector<LatticePoint>{{0, 0}} : std::vector<LatticePoint>{{0, Y}, {0, 0}};
    f(path, Y + 1);
  }
  for (long long X = 1; X + 1 <= max_points; ++X) {
    path.vertices = {{0, 0}, {X, 0}};
    f(path, X + 1);
  }
  for (long long X = 1; X + 1 <= max_points; ++X) {
    for (long long Y = 1; Y + 1 <= max_points; ++Y) {
      long long tri = ((X + 1) * (Y + 1) + igcd(X, Y) + 1) / 2;
      if (tri > max_points) break;
      std::vector<LatticePoint> cur{{0, Y}};
      std::function<void(long long, long long)> dfs = [&](long long px, long long py) {
        const LatticePoint at = cur.back();
        long long rx = X - at.x, ry = -at.y;
        if (rx == 0 && ry == 0) {
          path.vertices = cur;
          f(path, pick_count(cur));
          return;
        }
        bool first = cur.size() == 1;
        if (!first && cross(px, py, rx, ry) >= 0) return;
        for (long long a = first ? 1 : 0; a <= rx; ++a) {
          for (long long b = 0; b >= ry; --b) {
            if (a == 0 && b == 0) continue;
            if (!first && cross(px, py, a, b) >= 0) continue;
            long long nx = at.x + a, ny = at.y + b;
            if (ny == 0 && nx != X) continue;
            cur.push_back({nx, ny});
            std::vector<LatticePoint> hull = cur;
            if (!(nx == X && ny == 0)) hull.push_back({X, 0});
            if (pick_count(hull) <= max_points) dfs(a, b);
            cur.pop_back();
          }
        }
      };
      dfs(0, 0);
    }
  }
}

// Minimum Omega-length over paths with L = k+1, for every k <= K.
inline std::vector<QuadNum> polydisk_caps_bruteforce(unsigned K, const QuadNum& beta) {
  if (K > 200) throw Error(Errc::TooLarge, "brute force limited to k <= 200");
  std::vector<std::optional<QuadNum>> best(K + 1);
  for_each_convex_path(K + 1, [&](const ConvexLatticePath& p, long long L) {
    if (L < 1 || L > static_cast<long long>(K) + 1) return;
    QuadNum len = omega_length(p, beta);
    auto& b = best[L - 1];
    if (!b || len < *b) b = len;
  });
  std::vector<QuadNum> out;
  for (auto& b : best) {
    if (!b) throw Error(Errc::PreconditionViolated, "no path with the requested lattice count");
    out.push_back(*b);
  }
  return out;
}

inline QuadNum polydisk_cap_bruteforce(unsigned k, const QuadNum& beta) {
  return polydisk_caps_bruteforce(k, beta).back();
}

inline QuadNum ratio_at(const QuadNum& beta, unsigned long long k, const QuadNum& z) {
  if (k == 0) throw Error(Errc::KZero, "c_0 = 0");
  if (z < QuadNum(1)) throw Error(Errc::PreconditionViolated, "z must be >= 1");
  (void)(beta - z);
  auto e = ellipsoid_caps(QuadNum(1), z, k);
  return e.values.back() / polydisk_cap(k, beta);
}

inline BoundSample sweep_one(const std::vector<QuadNum>& pcaps, const QuadNum& z, size_t K) {
  auto e = ellipsoid_caps(QuadNum(1), z, K);
  BoundSample s{z, QuadNum(0), BoundKind::ech_ratio, {}, -1};
  for (size_t k = 1; k <= K; ++k) {
    QuadNum r = e.values[k] / pcaps[k];
    if (s.k < 0 || s.lambda < r) {
      s.lambda = r;
      s.k = static_cast<long long>(k);
    }
  }
  s.tag = "k=" + std::to_string(s.k);
  return s;
}

// max_{1<=k<=K} c_k(E(1,z)) / c_k(P(1,beta)) per sample; samples run on
// `threads` workers (0 = hardware concurrency).
inline std::vector<BoundSample> lower_bound_sweep(const QuadNum& beta, size_t K, const std::vector<QuadNum>& samples,
                                                  unsigned threads = 0) {
  if (K == 0) throw Error(Errc::KZero, "sweep needs K >= 1");
  for (auto& z : samples) {
    (void)(beta - z);
    if (z < QuadNum(1)) throw Error(Errc::PreconditionViolated, "z must be >= 1");
  }
  const auto pcaps = polydisk_caps(beta, K).values;
  std::vector<BoundSample> out(samples.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<size_t>(1, samples.size()));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (size_t i = t; i < samples.size(); i += threads) out[i] = sweep_one(pcaps, samples[i], K);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline std::string sweep_csv(const std::vector<BoundSample>& rows, unsigned digits = 40) {
  std::ostringstream os;
  os << "z_a_num,z_a_den,z_b_num,z_b_den,D,lambda_40digits,argmax_k\n";
  for (auto& r : rows) {
    os << r.z.a().get_num() << ',' << r.z.a().get_den() << ',' << r.z.b().get_num() << ',' << r.z.b().get_den()
       << ',' << r.z.radicand() << ',' << qn_decimal(r.lambda, digits, Rounding::down) << ',' << r.k << '\n';
  }
  return os.str();
}

}  // namespace staircase::ech
