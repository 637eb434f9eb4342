#pragma once

#include "staircase/json_io.hpp"
#include "staircase/verify.hpp"

#include <httplib.h>

#include <atomic>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <unordered_map>

namespace staircase::service {

struct Session {
  std::string id;
  QuadNum beta;
  std::vector<atf::AtfPolygon> history;  // history[0] is the initial rectangle
  std::mutex mu;

  const atf::AtfPolygon& current() const { return history.back(); }
};

// HTTP-free core: every method returns (status, body).
class SessionStore {
 public:
  using Result = std::pair<int, json>;

  explicit SessionStore(unsigned precision = 40) : precision_(precision) {}

  Result create(const json& body) {
    QuadNum beta;
    try {
      beta = parse_beta(body);
    } catch (const Error& e) {
      return bad(e);
    } catch (const json::exception& e) {
      return {400, {{"error", "ParseError"}, {"message", e.what()}}};
    }
    if (beta < QuadNum(1)) return {400, {{"error", "PreconditionViolated"}, {"message", "beta must be >= 1"}}};
    auto s = std::make_shared<Session>();
    s->beta = beta;
    s->history.push_back(atf::init_polydisk(beta));
    {
      std::unique_lock lock(map_mu_);
      do s->id = fresh_id();
      while (sessions_.count(s->id));
      sessions_[s->id] = s;
    }
    return {201, {{"id", s->id}, {"polygon", atf::to_json(s->current())}}};
  }

  Result polygon(const std::string& id) {
    return with(id, [&](Session& s) -> Result { return {200, atf::to_json(s.current())}; });
  }

  Result mutate(const std::string& id, const json& body) {
    std::string v;
    try {
      v = body.at("vertex").get<std::string>();
    } catch (const json::exception& e) {
      return {400, {{"error", "ParseError"}, {"message", e.what()}}};
    }
    if (v.size() != 1 || (v[0] != 'x' && v[0] != 'y' && v[0] != 'v'))
      return {400, {{"error", "ParseError"}, {"message", "vertex must be x, y or v"}}};
    return with(id, [&](Session& s) -> Result {
      try {
        auto m = atf::mutate_detailed(s.current(), v[0]);
        s.history.push_back(m.polygon);
        json out{{"polygon", atf::to_json(m.polygon)},
                 {"side", m.side},
                 {"matrix", {{m.matrix.a.get_str(), m.matrix.b.get_str()}, {m.matrix.c.get_str(), m.matrix.d.get_str()}}}};
        out["embedding"] = embedding_json(m.polygon);
        return {200, out};
      } catch (const Error& e) {
        return conflict(e);
      }
    });
  }

  Result undo(const std::string& id) {
    return with(id, [&](Session& s) -> Result {
      if (s.history.size() == 1) return {409, {{"error", "PreconditionViolated"}, {"message", "nothing to undo"}}};
      s.history.pop_back();
      return {200, atf::to_json(s.current())};
    });
  }

  // Resets to the initial rectangle and applies `word`.
  Result replay(const std::string& id, const json& body) {
    std::string word;
    std::vector<std::pair<char, unsigned>> parsed;
    try {
      word = body.at("word").get<std::string>();
      parsed = atf::parse_word(word);
    } catch (const json::exception& e) {
      return {400, {{"error", "ParseError"}, {"message", e.what()}}};
    } catch (const Error& e) {
      return bad(e);
    }
    return with(id, [&](Session& s) -> Result {
      std::vector<atf::AtfPolygon> h{s.history.front()};
      try {
        for (auto [c, e] : parsed)
          for (unsigned i = 0; i < e; ++i) h.push_back(atf::mutate(h.back(), c));
      } catch (const Error& e) {
        return conflict(e);
      }
      s.history = std::move(h);
      return {200, atf::to_json(s.current())};
    });
  }

  Result embedding(const std::string& id) {
    return with(id, [&](Session& s) -> Result { return {200, embedding_json(s.current())}; });
  }

  // envelope + ECH sweep + volume curve decimals on `samples` points of [zmin, zmax]
  Result bounds(const std::string& id, size_t K, const Rational& zmin, const Rational& zmax, size_t samples) {
    if (K == 0 || K > 20000 || samples == 0 || samples > 2000 || zmin < 1 || zmax < zmin)
      return {400, {{"error", "PreconditionViolated"}, {"message", "need 1<=K<=20000, 1<=samples<=2000, 1<=zmin<=zmax"}}};
    QuadNum beta;
    {
      auto s = find(id);
      if (!s) return not_found(id);
      beta = s->beta;
    }
    std::vector<QuadNum> zs;
    for (size_t i = 0; i < samples; ++i) {
      Rational z = samples == 1 ? zmin : Rational(zmin + (zmax - zmin) * Rational(i) / Rational(samples - 1));
      zs.push_back(QuadNum(z));
    }
    try {
      auto sweep = ech::lower_bound_sweep(beta, K, zs);
      auto classes = beta == stairs::main_beta() ? verify::classes_up_to_index(Integer(static_cast<unsigned long>(K)))
                                                  : std::vector<qp::QuasiPerfectClass>{};
      auto env = stairs::envelope(beta, classes, zs);
      json out{{"K", K}, {"envelope", json::array()}, {"sweep", json::array()}, {"volume", json::array()}};
      for (size_t i = 0; i < zs.size(); ++i) {
        out["envelope"].push_back(to_json(env[i], precision_));
        out["sweep"].push_back(to_json(sweep[i], precision_));
        // sqrt(z / (2 beta)) to `precision_` digits, from below
        QuadNum v = zs[i] / (QuadNum(2) * beta);
        Integer scale = pow10(precision_);
        Integer root = isqrt(qn_floor(v * QuadNum(scale * scale)));
        out["volume"].push_back({{"z", to_json(zs[i])},
                                 {"decimal", qn_decimal(QuadNum(make_rational(root, scale)), precision_, Rounding::down)}});
      }
      return {200, out};
    } catch (const Error& e) {
      return conflict(e);
    }
  }

  size_t size() const {
    std::shared_lock lock(map_mu_);
    return sessions_.size();
  }

  unsigned precision() const { return precision_; }

 private:
  static std::string fresh_id() {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    static const char* hex = "0123456789abcdef";
    std::string s(16, '0');
    auto v = rng();
    for (auto& c : s) {
      c = hex[v & 15];
      v >>= 4;
    }
    return s;
  }

  static QuadNum parse_beta(const json& body) {
    if (body.contains("preset")) {
      auto p = body.at("preset").get<std::string>();
      if (p == "main") return stairs::main_beta();
      if (p.rfind("n=", 0) == 0) {
        try {
          return qp::beta_n(static_cast<unsigned>(std::stoul(p.substr(2))));
        } catch (const std::logic_error&) {
        }
      }
      throw Error(Errc::ParseError, "unknown preset " + p);
    }
    const auto& b = body.at("beta");
    if (b.is_string()) return parse_quadnum(b.get<std::string>());
    return quadnum_from_json(b);
  }

  json embedding_json(const atf::AtfPolygon& p) const {
    try {
      return to_json(atf::extract_embedding(p), precision_);
    } catch (const Error&) {
      return nullptr;
    }
  }

  static Result bad(const Error& e) { return {400, {{"error", e.name()}, {"message", e.what()}}}; }
  static Result conflict(const Error& e) { return {409, {{"error", e.name()}, {"message", e.what()}}}; }
  static Result not_found(const std::string& id) {
    return {404, {{"error", "NotFound"}, {"message", "unknown session " + id}}};
  }

  std::shared_ptr<Session> find(const std::string& id) {
    std::shared_lock lock(map_mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  template <class F>
  Result with(const std::string& id, F&& f) {
    auto s = find(id);
    if (!s) return not_found(id);
    std::lock_guard lock(s->mu);
    return f(*s);
  }

  unsigned precision_;
  mutable std::shared_mutex map_mu_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
};

inline void reply(httplib::Response& res, const SessionStore::Result& r) {
  res.status = r.first;
  res.set_content(r.second.dump(), "application/json");
}

inline std::optional<json> body_json(const httplib::Request& req, httplib::Response& res) {
  try {
    return req.body.empty() ? json::object() : json::parse(req.body);
  } catch (const json::exception& e) {
    reply(res, {400, {{"error", "ParseError"}, {"message", e.what()}}});
    return std::nullopt;
  }
}

inline void install_routes(httplib::Server& srv, SessionStore& store) {
  srv.Post("/sessions", [&](const httplib::Request& req, httplib::Response& res) {
    if (auto b = body_json(req, res)) reply(res, store.create(*b));
  });
  srv.Get("/sessions/:id/polygon", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, store.polygon(req.path_params.at("id")));
  });
  srv.Get("/sessions/:id/polygon.svg", [&](const httplib::Request& req, httplib::Response& res) {
    auto r = store.polygon(req.path_params.at("id"));
    if (r.first != 200) return reply(res, r);
    res.set_content(atf::to_svg(atf::polygon_from_json(r.second)), "image/svg+xml");
  });
  srv.Post("/sessions/:id/mutate", [&](const httplib::Request& req, httplib::Response& res) {
    if (auto b = body_json(req, res)) reply(res, store.mutate(req.path_params.at("id"), *b));
  });
  srv.Post("/sessions/:id/undo", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, store.undo(req.path_params.at("id")));
  });
  srv.Post("/sessions/:id/replay", [&](const httplib::Request& req, httplib::Response& res) {
    if (auto b = body_json(req, res)) reply(res, store.replay(req.path_params.at("id"), *b));
  });
  srv.Get("/sessions/:id/embedding", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, store.embedding(req.path_params.at("id")));
  });
  srv.Get("/sessions/:id/bounds", [&](const httplib::Request& req, httplib::Response& res) {
    try {
      auto get = [&](const char* key, const char* def) {
        return req.has_param(key) ? req.get_param_value(key) : std::string(def);
      };
      size_t K = std::stoul(get("K", "2000"));
      Rational zmin = detail::parse_rational(get("zmin", "1"));
      Rational zmax = detail::parse_rational(get("zmax", "9"));
      size_t samples = std::stoul(get("samples", "200"));
      reply(res, store.bounds(req.path_params.at("id"), K, zmin, zmax, samples));
    } catch (const std::exception& e) {
      reply(res, {400, {{"error", "ParseError"}, {"message", e.what()}}});
    }
  });
}

}  // namespace staircase::service
