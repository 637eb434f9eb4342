#pragma once

#include "staircase/atf.hpp"
#include "staircase/cfweights.hpp"
#include "staircase/ech.hpp"
#include "staircase/exactnum.hpp"
#include "staircase/perfclass.hpp"
#include "staircase/report.hpp"

#include <json.hpp>

namespace staircase {

using json = nlohmann::json;

namespace jsonio {

inline json rational(const Rational& r) { return json::array({r.get_num().get_str(), r.get_den().get_str()}); }

inline Integer integer_from(const json& j) {
  if (!j.is_string() && !j.is_number_integer()) throw Error(Errc::ParseError, "integer must be a decimal string");
  std::string s = j.is_string() ? j.get<std::string>() : std::to_string(j.get<long long>());
  Rational r = detail::parse_rational(s);
  if (r.get_den() != 1) throw Error(Errc::ParseError, "not an integer: " + s);
  return r.get_num();
}

inline Rational rational_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::ParseError, "rational must be [num, den]");
  return make_rational(integer_from(j[0]), integer_from(j[1]));
}

}  // namespace jsonio

inline json to_json(const QuadNum& x) {
  return {{"a", jsonio::rational(x.a())}, {"b", jsonio::rational(x.b())}, {"D", x.radicand()}};
}

inline QuadNum quadnum_from_json(const json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("D"))
    throw Error(Errc::ParseError, "QuadNum needs a, b, D");
  Rational a = jsonio::rational_from(j["a"]), b = jsonio::rational_from(j["b"]);
  if (!j["D"].is_number_integer()) throw Error(Errc::ParseError, "D must be an integer");
  auto D = j["D"].get<std::int64_t>();
  if (b == 0) return QuadNum(a);
  return QuadNum(a, b, D);
}

inline json to_json(const std::vector<QuadNum>& xs) {
  json a = json::array();
  for (auto& x : xs) a.push_back(to_json(x));
  return a;
}

inline json to_json(const cf::ContinuedFraction& cf) {
  json pre = json::array(), per = json::array();
  for (auto& a : cf.pre) pre.push_back(a.get_str());
  for (auto& a : cf.period) per.push_back(a.get_str());
  return {{"pre", pre}, {"period", per}};
}

inline cf::ContinuedFraction cf_from_json(const json& j) {
  cf::ContinuedFraction cf;
  for (auto& a : j.at("pre")) cf.pre.push_back(jsonio::integer_from(a));
  for (auto& a : j.at("period")) cf.period.push_back(jsonio::integer_from(a));
  return cf;
}

inline json to_json(const qp::QuasiPerfectClass& c) {
  return {{"d", c.d.get_str()}, {"e", c.e.get_str()}, {"p", c.p.get_str()}, {"q", c.q.get_str()}, {"t", c.t.get_str()}};
}

inline qp::QuasiPerfectClass class_from_json(const json& j) {
  return {jsonio::integer_from(j.at("d")), jsonio::integer_from(j.at("e")), jsonio::integer_from(j.at("p")),
          jsonio::integer_from(j.at("q")), jsonio::integer_from(j.at("t"))};
}

inline json to_json(const BoundSample& s, unsigned digits = 0) {
  json j = {{"z", to_json(s.z)}, {"lambda", to_json(s.lambda)}, {"kind", bound_kind_name(s.kind)}, {"tag", s.tag}};
  if (s.k >= 0) j["k"] = s.k;
  if (digits) {
    j["z_decimal"] = qn_decimal(s.z, digits);
    j["lambda_decimal"] = qn_decimal(s.lambda, digits);
  }
  return j;
}

inline json to_json(const Report& r) {
  json a = json::array();
  for (auto& c : r.checks) {
    json item = {{"check", (r.suite.empty() ? "" : r.suite + "/") + c.check},
                 {"k", c.k},
                 {"status", c.pass ? "pass" : "fail"},
                 {"lhs", c.lhs.size() == 1 ? to_json(c.lhs[0]) : to_json(c.lhs)},
                 {"rhs", c.rhs.size() == 1 ? to_json(c.rhs[0]) : to_json(c.rhs)}};
    if (!c.note.empty()) item["note"] = c.note;
    a.push_back(item);
  }
  return a;
}

inline json to_json(const ech::CapacityTable& t) {
  json j = {{"target", t.target == ech::CapacityTable::Target::ellipsoid ? "ellipsoid" : "polydisk"}};
  if (t.target == ech::CapacityTable::Target::ellipsoid) {
    j["a"] = to_json(t.a);
    j["b"] = to_json(t.b);
  } else {
    j["beta"] = to_json(t.b);
  }
  j["values"] = to_json(t.values);
  return j;
}

namespace atf {

inline json ivec_json(const IVec& v) { return json::array({v.x.get_str(), v.y.get_str()}); }

inline IVec ivec_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::ParseError, "vector must have two entries");
  return {jsonio::integer_from(j[0]), jsonio::integer_from(j[1])};
}

inline json to_json(const AtfPolygon& p) {
  json nodes = json::array();
  for (auto& n : p.nodes) {
    nodes.push_back({{"vertex", json::array({staircase::to_json(n.vertex.x), staircase::to_json(n.vertex.y)})},
                     {"ray", n.ray ? ivec_json(*n.ray) : json(nullptr)},
                     {"edge", ivec_json(n.edge)},
                     {"len", staircase::to_json(n.length)}});
  }
  return {{"beta", staircase::to_json(p.beta)}, {"nodes", nodes}, {"word", p.word()}};
}

inline AtfPolygon polygon_from_json(const json& j) {
  AtfPolygon p;
  p.beta = quadnum_from_json(j.at("beta"));
  for (auto& n : j.at("nodes")) {
    AtfNode node;
    node.vertex = {quadnum_from_json(n.at("vertex").at(0)), quadnum_from_json(n.at("vertex").at(1))};
    if (!n.at("ray").is_null()) node.ray = ivec_from(n.at("ray"));
    node.edge = ivec_from(n.at("edge"));
    node.length = quadnum_from_json(n.at("len"));
    p.nodes.push_back(node);
  }
  for (auto [c, e] : parse_word(j.value("word", std::string())))
    for (unsigned i = 0; i < e; ++i) p.history.push_back(c);
  check_invariants(p);
  return p;
}

}  // namespace atf

}  // namespace staircase
