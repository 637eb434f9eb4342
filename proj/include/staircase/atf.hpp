#pragma once

#include "staircase/exactnum.hpp"
#include "staircase/perfclass.hpp"
#include "staircase/report.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace staircase::atf {

struct IVec {
  Integer x, y;
  friend bool operator==(const IVec&, const IVec&) = default;
  IVec operator-() const { return {-x, -y}; }
};

struct QPoint {
  QuadNum x, y;
  friend bool operator==(const QPoint&, const QPoint&) = default;
};

inline Integer cross(const IVec& a, const IVec& b) { return a.x * b.y - a.y * b.x; }

struct Mat2 {
  Integer a, b, c, d;  // [[a,b],[c,d]]
  friend bool operator==(const Mat2&, const Mat2&) = default;
  IVec operator()(const IVec& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  QPoint operator()(const QPoint& v) const {
    return {QuadNum(a) * v.x + QuadNum(b) * v.y, QuadNum(c) * v.x + QuadNum(d) * v.y};
  }
  Integer det() const { return a * d - b * c; }
};

struct AtfNode {
  QPoint vertex;
  std::optional<IVec> ray;
  IVec edge;       // primitive direction towards the next node (clockwise)
  QuadNum length;  // affine length of that edge
  friend bool operator==(const AtfNode&, const AtfNode&) = default;
};

struct AtfPolygon {
  QuadNum beta;
  std::vector<AtfNode> nodes;
  std::vector<char> history;

  friend bool operator==(const AtfPolygon&, const AtfPolygon&) = default;

  // run-length form: v,v,y,x -> "v2yx"
  std::string word() const {
    std::string w;
    for (size_t i = 0; i < history.size();) {
      size_t j = i;
      while (j < history.size() && history[j] == history[i]) ++j;
      w += history[i];
      if (j - i > 1) w += std::to_string(j - i);
      i = j;
    }
    return w;
  }
};

inline QPoint step(const QPoint& p, const QuadNum& len, const IVec& e) {
  return {p.x + len * QuadNum(e.x), p.y + len * QuadNum(e.y)};
}

inline QuadNum area(const AtfPolygon& poly) {
  QuadNum twice;
  const auto& n = poly.nodes;
  for (size_t i = 0; i < n.size(); ++i) {
    const auto& p = n[i].vertex;
    const auto& q = n[(i + 1) % n.size()].vertex;
    twice += p.x * q.y - q.x * p.y;
  }
  if (twice.sign() < 0) twice = -twice;
  return twice / 2;
}

inline bool primitive(const IVec& v) { return gcd(v.x, v.y) == 1; }

// Closure, primitivity, strict convexity, area = beta, origin first and ray-free.
inline void check_invariants(const AtfPolygon& poly) {
  const auto& n = poly.nodes;
  if (n.size() < 3) throw Error(Errc::ConvexityLost, "fewer than three nodes");
  if (!(n[0].vertex == QPoint{0, 0})) throw Error(Errc::PreconditionViolated, "node 0 is not at the origin");
  if (n[0].ray) throw Error(Errc::PreconditionViolated, "origin carries a nodal ray");
  for (size_t i = 0; i < n.size(); ++i) {
    const auto& a = n[i];
    const auto& b = n[(i + 1) % n.size()];
    if (!primitive(a.edge)) throw Error(Errc::PreconditionViolated, "edge direction not primitive");
    if (a.ray && !primitive(*a.ray)) throw Error(Errc::PreconditionViolated, "nodal ray not primitive");
    if (a.length.sign() <= 0) throw Error(Errc::ConvexityLost, "non-positive affine length");
    if (!(step(a.vertex, a.length, a.edge) == b.vertex))
      throw Error(Errc::PreconditionViolated, "closure fails at node " + std::to_string(i));
    if (cross(a.edge, b.edge) >= 0) throw Error(Errc::ConvexityLost, "turn at node " + std::to_string(i + 1));
  }
  if (area(poly) != poly.beta) throw Error(Errc::PreconditionViolated, "area differs from beta");
}

inline AtfPolygon init_polydisk(const QuadNum& beta) {
  if (beta < QuadNum(1)) throw Error(Errc::PreconditionViolated, "beta must be >= 1");
  AtfPolygon p;
  p.beta = beta;
  p.nodes = {
      {{0, 0}, std::nullopt, {0, 1}, QuadNum(1)},
      {{0, 1}, IVec{1, -1}, {1, 0}, beta},
      {{beta, 1}, IVec{-1, -1}, {0, -1}, QuadNum(1)},
      {{beta, 0}, IVec{-1, 1}, {-1, 0}, beta},
  };
  return p;
}

// Positional labels on a quadrilateral: O = 0, Y = 1, V = 2, X = 3.
inline size_t label_index(const AtfPolygon& poly, char label) {
  const auto& n = poly.nodes;
  bool quad = n.size() == 4 && n[1].vertex.x.is_zero() && n[3].vertex.y.is_zero();
  if (!quad) throw Error(Errc::PreconditionViolated, "labels are only defined on the axis quadrilateral");
  switch (label) {
    case 'y': case 'Y': return 1;
    case 'v': case 'V': return 2;
    case 'x': case 'X': return 3;
    default: throw Error(Errc::ParseError, std::string("unknown vertex label '") + label + "'");
  }
}

inline std::string side_name(const AtfPolygon& poly, size_t edge) {
  static const char* names[4] = {"OY", "YV", "XV", "OX"};
  if (poly.nodes.size() == 4) return names[edge % 4];
  return "e" + std::to_string(edge);
}

struct Hit {
  size_t edge = 0;
  QPoint point;
  QuadNum tau;  // ray parameter
  QuadNum s;    // distance along the edge from its start node
};

inline Hit intersect_at(const AtfPolygon& poly, size_t h) {
  const auto& n = poly.nodes;
  const size_t N = n.size();
  if (h >= N) throw Error(Errc::PreconditionViolated, "node index out of range");
  if (!n[h].ray) throw Error(Errc::PreconditionViolated, "node has no nodal ray");
  const IVec& r = *n[h].ray;
  const QPoint& o = n[h].vertex;
  std::optional<Hit> best;
  bool best_ambiguous = false;
  for (size_t j = 0; j < N; ++j) {
    if (j == h || (j + 1) % N == h) continue;
    const IVec& e = n[j].edge;
    // o + tau r = v_j + s e
    Integer det = -r.x * e.y + e.x * r.y;
    if (det == 0) continue;
    QuadNum rx = n[j].vertex.x - o.x, ry = n[j].vertex.y - o.y;
    QuadNum tau = (rx * QuadNum(-e.y) + QuadNum(e.x) * ry) / QuadNum(det);
    QuadNum s = (QuadNum(r.x) * ry - rx * QuadNum(r.y)) / QuadNum(det);
    if (tau.sign() <= 0 || s.sign() < 0 || s > n[j].length) continue;
    bool at_vertex = s.is_zero() || s == n[j].length;
    if (!best || tau < best->tau) {
      best = Hit{j, step(o, tau, r), tau, s};
      best_ambiguous = at_vertex;
    } else if (tau == best->tau) {
      best_ambiguous = true;
    }
  }
  if (!best) throw Error(Errc::NoIntersection, "nodal ray meets no edge");
  if (best_ambiguous) throw Error(Errc::AmbiguousHit, "nodal ray passes through a vertex");
  return *best;
}

inline Hit intersect(const AtfPolygon& poly, char label) { return intersect_at(poly, label_index(poly, label)); }

struct Mutation {
  AtfPolygon polygon;
  Mat2 matrix;
  Hit hit;
  std::string side;
  bool moved_forward = false;  // the piece after the anchor (clockwise) moved
};

// Unique M with M n = n and M u_move = -u_fixed.
inline Mat2 aligning_map(const IVec& n, const IVec& u_move, const IVec& u_fixed) {
  Integer det = n.x * u_move.y - u_move.x * n.y;
  if (det == 0) throw Error(Errc::NonUnimodular, "ray parallel to the moving edge");
  // B = [n, -u_fixed], A^{-1} = [[u_m.y, -u_m.x], [-n.y, n.x]] / det
  Integer b00 = n.x, b01 = -u_fixed.x, b10 = n.y, b11 = -u_fixed.y;
  Integer m00 = b00 * u_move.y - b01 * n.y, m01 = -b00 * u_move.x + b01 * n.x;
  Integer m10 = b10 * u_move.y - b11 * n.y, m11 = -b10 * u_move.x + b11 * n.x;
  for (Integer* m : {&m00, &m01, &m10, &m11}) {
    if (*m % det != 0) throw Error(Errc::NonUnimodular, "aligning map is not integral");
    *m /= det;
  }
  Mat2 M{m00, m01, m10, m11};
  if (M.det() != 1) throw Error(Errc::NonUnimodular, "aligning map has determinant " + M.det().get_str());
  return M;
}

inline Mutation mutate_at(const AtfPolygon& poly, size_t h, char letter) {
  const auto& n = poly.nodes;
  const size_t N = n.size();
  Hit hit = intersect_at(poly, h);
  const size_t j = hit.edge;
  const IVec ray = *n[h].ray;
  const QPoint anchor = n[h].vertex;
  auto next = [N](size_t i) { return (i + 1) % N; };
  auto prev = [N](size_t i) { return (i + N - 1) % N; };

  // forward piece: nodes h+1 .. j
  bool origin_forward = false;
  for (size_t i = next(h);; i = next(i)) {
    if (i == 0) origin_forward = true;
    if (i == j) break;
  }
  const bool move_forward = !origin_forward;
  const size_t hp = prev(h);
  Mat2 M = move_forward ? aligning_map(ray, n[h].edge, -n[hp].edge) : aligning_map(ray, -n[hp].edge, n[h].edge);
  auto affine = [&](const QPoint& p) {
    QPoint d = M(QPoint{p.x - anchor.x, p.y - anchor.y});
    return QPoint{anchor.x + d.x, anchor.y + d.y};
  };
  auto moved = [&](AtfNode node) {
    node.vertex = affine(node.vertex);
    if (node.ray) node.ray = M(*node.ray);
    node.edge = M(node.edge);
    return node;
  };

  std::vector<AtfNode> out;
  if (move_forward) {
    // fixed: j+1 .. h-1, with h-1 absorbing the anchor's edge
    for (size_t i = next(j); i != h; i = next(i)) {
      AtfNode node = n[i];
      if (i == hp) node.length = node.length + n[h].length;
      out.push_back(node);
    }
    for (size_t i = next(h);; i = next(i)) {
      AtfNode node = moved(n[i]);
      if (i == j) node.length = hit.s;
      out.push_back(node);
      if (i == j) break;
    }
    out.push_back({hit.point, -ray, n[j].edge, n[j].length - hit.s});
  } else {
    // fixed: h+1 .. j, with j cut at the hit
    for (size_t i = next(h);; i = next(i)) {
      AtfNode node = n[i];
      if (i == j) node.length = hit.s;
      out.push_back(node);
      if (i == j) break;
    }
    out.push_back({hit.point, -ray, M(n[j].edge), n[j].length - hit.s});
    for (size_t i = next(j); i != h; i = next(i)) {
      AtfNode node = moved(n[i]);
      if (i == hp) node.length = node.length + n[h].length;
      out.push_back(node);
    }
  }
  size_t origin = out.size();
  for (size_t i = 0; i < out.size(); ++i)
    if (out[i].vertex == QPoint{0, 0}) origin = i;
  if (origin == out.size()) throw Error(Errc::PreconditionViolated, "origin lost during mutation");
  std::rotate(out.begin(), out.begin() + static_cast<long>(origin), out.end());

  Mutation m;
  m.polygon.beta = poly.beta;
  m.polygon.nodes = std::move(out);
  m.polygon.history = poly.history;
  m.polygon.history.push_back(letter);
  m.matrix = M;
  m.hit = hit;
  m.side = side_name(poly, j);
  m.moved_forward = move_forward;
  check_invariants(m.polygon);
  return m;
}

inline Mutation mutate_detailed(const AtfPolygon& poly, char label) {
  return mutate_at(poly, label_index(poly, label), static_cast<char>(std::tolower(label)));
}

inline AtfPolygon mutate(const AtfPolygon& poly, char label) { return mutate_detailed(poly, label).polygon; }

// "v2yxy3xy", "v^2yxy^3xy"; exponents may be 0.
inline std::vector<std::pair<char, unsigned>> parse_word(const std::string& word) {
  std::vector<std::pair<char, unsigned>> out;
  size_t i = 0;
  while (i < word.size()) {
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(word[i])));
    if (c == ' ') {
      ++i;
      continue;
    }
    if (c != 'x' && c != 'y' && c != 'v')
      throw Error(Errc::ParseError, "unexpected '" + std::string(1, word[i]) + "' at position " + std::to_string(i));
    ++i;
    if (i < word.size() && word[i] == '^') {
      ++i;
      if (i >= word.size() || !std::isdigit(static_cast<unsigned char>(word[i])))
        throw Error(Errc::ParseError, "missing exponent at position " + std::to_string(i));
    }
    unsigned exp = 1;
    if (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) {
      exp = 0;
      while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) {
        exp = exp * 10 + static_cast<unsigned>(word[i] - '0');
        if (exp > 100000) throw Error(Errc::ParseError, "exponent too large");
        ++i;
      }
    }
    out.emplace_back(c, exp);
  }
  return out;
}

inline AtfPolygon apply_word(AtfPolygon poly, const std::string& word) {
  size_t index = 0;
  for (auto [c, e] : parse_word(word)) {
    for (unsigned r = 0; r < e; ++r, ++index) {
      try {
        poly = mutate(poly, c);
      } catch (const Error& err) {
        throw Error(err.code(), "step " + std::to_string(index) + " (" + c + "): " + err.what());
      }
    }
  }
  return poly;
}

// (z, lambda) = (long axis / short axis, 1 / short axis)
inline BoundSample extract_embedding(const AtfPolygon& poly) {
  const auto& n = poly.nodes;
  if (n.empty() || !(n[0].vertex == QPoint{0, 0}) || n[0].ray)
    throw Error(Errc::PreconditionViolated, "origin must be node 0 and ray-free");
  if (!(n.front().edge == IVec{0, 1}) || !(n.back().edge == IVec{-1, 0}))
    throw Error(Errc::PreconditionViolated, "polygon is not bounded by the axes at the origin");
  QuadNum oy = n.front().length, ox = n.back().length;
  BoundSample s;
  s.kind = BoundKind::embedding;
  s.tag = poly.word();
  if (oy >= ox) {
    s.z = oy / ox;
    s.lambda = QuadNum(1) / ox;
  } else {
    s.z = ox / oy;
    s.lambda = QuadNum(1) / oy;
  }
  return s;
}

struct QuadView {
  QuadNum OY, YV, XV, OX;
  IVec dir_YV, dir_XV;  // Y->V and X->V
  IVec nY, nV, nX;
};

inline QuadView quad_view(const AtfPolygon& poly) {
  label_index(poly, 'v');
  const auto& n = poly.nodes;
  if (!n[1].ray || !n[2].ray || !n[3].ray) throw Error(Errc::PreconditionViolated, "missing nodal ray");
  return {n[0].length, n[1].length, n[2].length, n[3].length, n[1].edge, -n[2].edge, *n[1].ray, *n[2].ray, *n[3].ray};
}

// (p_k, q_k) of the outer family, extended to k = -1 by the same recursion
inline std::pair<Integer, Integer> outer_pq(long k) {
  if (k == -1) return {Integer(-1), Integer(3)};
  auto c = qp::outer_family(static_cast<unsigned>(k));
  return {c.p, c.q};
}

// Rays and side directions of the v^2 y x y^k state.
inline Report verify_rays(const AtfPolygon& poly, unsigned k) {
  Report r{"rays", {}};
  auto v = quad_view(poly);
  auto [pk, qk] = outer_pq(k);
  auto [pm, qm] = outer_pq(static_cast<long>(k) - 1);
  auto pair = [](const IVec& a) { return std::vector<QuadNum>{QuadNum(a.x), QuadNum(a.y)}; };
  r.expect_eq("n_Y = (q_k, -p_k)", k, pair(v.nY), pair({qk, -pk}));
  r.expect_eq("n_V = (-q_{k-1}, p_{k-1})", k, pair(v.nV), pair({-qm, pm}));
  r.expect_eq("n_X = (11, 5)", k, pair(v.nX), pair({11, 5}));
  r.expect_eq("YV = (q_k^2, -p_k q_k + 1)", k, pair(v.dir_YV), pair({qk * qk, -pk * qk + 1}));
  r.expect_eq("XV = (56, 25)", k, pair(v.dir_XV), pair({56, 25}));
  return r;
}

inline std::string to_svg(const AtfPolygon& poly, unsigned digits = 6) {
  const auto& n = poly.nodes;
  auto dec = [&](const QuadNum& x) { return qn_decimal(x, digits, Rounding::down); };
  QuadNum minx = n[0].vertex.x, maxx = minx, miny = n[0].vertex.y, maxy = miny;
  for (auto& node : n) {
    minx = qn_min(minx, node.vertex.x);
    maxx = qn_max(maxx, node.vertex.x);
    miny = qn_min(miny, node.vertex.y);
    maxy = qn_max(maxy, node.vertex.y);
  }
  QuadNum w = maxx - minx, h = maxy - miny;
  QuadNum pad = qn_max(w, h) / 20;
  std::ostringstream os;
  // y is flipped so the diagram reads with the y-axis pointing up
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << dec(minx - pad) << ' ' << dec(-(maxy + pad)) << ' '
     << dec(w + pad * 2) << ' ' << dec(h + pad * 2) << "\">\n";
  QuadNum sw = qn_max(w, h) / 400;
  os << "<polygon fill=\"#eef\" stroke=\"black\" stroke-width=\"" << dec(sw) << "\" points=\"";
  for (size_t i = 0; i < n.size(); ++i) os << (i ? " " : "") << dec(n[i].vertex.x) << ',' << dec(-n[i].vertex.y);
  os << "\"/>\n";
  static const char* labels[4] = {"O", "Y", "V", "X"};
  bool quad = n.size() == 4;
  for (size_t i = 0; i < n.size(); ++i) {
    const auto& node = n[i];
    std::string label = quad ? labels[i] : "P" + std::to_string(i);
    if (node.ray) {
      std::optional<QPoint> end;
      try {
        end = intersect_at(poly, i).point;
      } catch (const Error&) {
      }
      QPoint to = end ? *end : step(node.vertex, pad * 4, *node.ray);
      QPoint mark{(node.vertex.x * 2 + to.x) / 3, (node.vertex.y * 2 + to.y) / 3};
      os << "<line class=\"ray\" stroke=\"#4af\" stroke-dasharray=\"" << dec(sw * 4) << "\" stroke-width=\"" << dec(sw)
         << "\" x1=\"" << dec(node.vertex.x) << "\" y1=\"" << dec(-node.vertex.y) << "\" x2=\"" << dec(to.x)
         << "\" y2=\"" << dec(-to.y) << "\"/>\n";
      os << "<rect class=\"marker\" fill=\"#4af\" x=\"" << dec(mark.x - sw * 3) << "\" y=\"" << dec(-mark.y - sw * 3)
         << "\" width=\"" << dec(sw * 6) << "\" height=\"" << dec(sw * 6) << "\"/>\n";
    }
    os << "<text class=\"vertex\" font-size=\"" << dec(sw * 20) << "\" x=\"" << dec(node.vertex.x) << "\" y=\""
       << dec(-node.vertex.y) << "\">" << label << " (" << dec(node.vertex.x) << ", " << dec(node.vertex.y)
       << ")</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace staircase::atf
