#include "staircase/json_io.hpp"
#include "staircase/service.hpp"
#include "staircase/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

using namespace staircase;

namespace {

unsigned precision_from_env() {
  if (const char* p = std::getenv("STAIRCASE_PRECISION")) {
    try {
      unsigned long v = std::stoul(p);
      if (v >= 1 && v <= 10000) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw Error(Errc::ParseError, std::string("bad STAIRCASE_PRECISION: ") + p);
  }
  return 40;
}

QuadNum resolve_beta(const std::string& beta, const std::string& preset) {
  if (!beta.empty() && !preset.empty()) throw Error(Errc::ParseError, "--beta and --preset are exclusive");
  if (!beta.empty()) return parse_quadnum(beta);
  if (preset.empty() || preset == "main") return stairs::main_beta();
  if (preset.rfind("n=", 0) == 0) {
    try {
      return qp::beta_n(static_cast<unsigned>(std::stoul(preset.substr(2))));
    } catch (const std::logic_error&) {
    }
  }
  throw Error(Errc::ParseError, "unknown preset " + preset);
}

qp::QuasiPerfectClass parse_class(const std::string& s) {
  std::vector<Integer> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Rational r = detail::parse_rational(item);
    if (r.get_den() != 1) throw Error(Errc::ParseError, "class entries must be integers: " + item);
    v.push_back(r.get_num());
  }
  if (v.size() != 5) throw Error(Errc::ParseError, "class needs d,e,p,q,t");
  return {v[0], v[1], v[2], v[3], v[4]};
}

void print_table(const Report& r, std::ostream& os) {
  for (auto& c : r.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(52) << c.check << " k=" << std::setw(4) << c.k;
    auto list = [](const std::vector<QuadNum>& xs) {
      std::string s;
      for (auto& x : xs) s += (s.empty() ? "" : ", ") + format(x, true);
      return s;
    };
    if (!c.pass && (!c.lhs.empty() || !c.rhs.empty())) os << " lhs=[" << list(c.lhs) << "] rhs=[" << list(c.rhs) << "]";
    if (!c.note.empty()) os << "  " << c.note;
    os << '\n';
  }
  os << r.suite << ": " << (r.checks.size() - r.failures()) << "/" << r.checks.size() << " passed\n";
}

std::vector<QuadNum> sample_grid(const Rational& zmin, const Rational& zmax, size_t n) {
  std::vector<QuadNum> zs;
  for (size_t i = 0; i < n; ++i)
    zs.push_back(QuadNum(n == 1 ? zmin : Rational(zmin + (zmax - zmin) * Rational(i) / Rational(n - 1))));
  return zs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact ellipsoid-into-polydisk embedding lab"};
  app.require_subcommand(1);
  std::string beta_s, preset;
  bool as_json = false;
  auto beta_opts = [&](CLI::App* c) {
    c->add_option("--beta", beta_s, "beta as a/b+c/d*sqrt(D)");
    c->add_option("--preset", preset, "main | n=<k>");
  };

  auto* acc = app.add_subcommand("acc", "accumulation point and volume constant");
  beta_opts(acc);
  acc->add_flag("--json", as_json);

  auto* classes = app.add_subcommand("classes", "quasi-perfect classes");
  long outer = -1, inner = -1;
  unsigned upto = 0;
  classes->add_option("--outer", outer, "E_k");
  classes->add_option("--inner", inner, "Ehat_k");
  classes->add_option("--upto", upto, "list E_k and Ehat_k for k <= n");
  std::string check_s;
  classes->add_option("--check", check_s, "run qp_check on d,e,p,q,t");
  classes->add_flag("--json", as_json);

  auto* mu = app.add_subcommand("mu", "class obstruction at z");
  std::string class_s, z_s;
  beta_opts(mu);
  mu->add_option("--class", class_s, "d,e,p,q,t")->required();
  mu->add_option("--z", z_s, "z as a QuadNum")->required();
  mu->add_flag("--json", as_json);

  auto* caps = app.add_subcommand("ech-caps", "ECH capacities");
  size_t K = 20;
  std::string target = "polydisk", a_s = "1", b_s;
  beta_opts(caps);
  caps->add_option("--K", K, "largest index");
  caps->add_option("--target", target)->check(CLI::IsMember({"polydisk", "ellipsoid"}));
  caps->add_option("--a", a_s, "ellipsoid a");
  caps->add_option("--b", b_s, "ellipsoid b");
  caps->add_flag("--json", as_json);

  auto* sweep = app.add_subcommand("sweep", "ECH lower-bound sweep to CSV");
  size_t sweepK = 2000, samples = 200;
  std::string zmin_s = "1", zmax_s = "9", out_s;
  unsigned threads = 0;
  bool check = false;
  beta_opts(sweep);
  sweep->add_option("--K", sweepK);
  sweep->add_option("--zmin", zmin_s);
  sweep->add_option("--zmax", zmax_s);
  sweep->add_option("--samples", samples);
  sweep->add_option("--threads", threads);
  sweep->add_option("--out", out_s, "CSV file (default stdout)");
  sweep->add_flag("--check", check, "run the consistency checks on the default grid");

  auto* mutate = app.add_subcommand("mutate", "apply a mutation word to the polydisk diagram");
  std::string word, svg_s;
  unsigned svg_digits = 6;
  beta_opts(mutate);
  mutate->add_option("--word", word)->required();
  mutate->add_option("--svg", svg_s, "write SVG here");
  mutate->add_option("--svg-digits", svg_digits);
  bool embed = false;
  mutate->add_flag("--embedding", embed, "print the extracted embedding point instead of the polygon");

  auto* blocked = app.add_subcommand("blocked", "is the class blocking at beta");
  beta_opts(blocked);
  blocked->add_option("--class", class_s, "d,e,p,q,t (default E)");
  unsigned fam_n = 0;
  blocked->add_option("--n", fam_n, "use E(n) and beta = n");

  auto* family = app.add_subcommand("family", "blocking class and seeds for beta_n");
  family->add_option("--n", fam_n)->required();
  unsigned seeds = 3;
  family->add_option("--seeds", seeds);
  family->add_flag("--json", as_json);

  auto* ver = app.add_subcommand("verify", "identity suites");
  std::string suite = "all";
  unsigned kmax = 8;
  ver->add_option("--suite", suite)
      ->check(CLI::IsMember({"all", "classes", "acc", "cf", "ech", "atf", "alternation", "closed-forms", "blocked",
                             "sweep", "conjecture"}));
  ver->add_option("--kmax", kmax);
  ver->add_flag("--json", as_json);

  auto* serve = app.add_subcommand("serve", "HTTP/JSON session service");
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host);
  serve->add_option("--port", port);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const unsigned digits = precision_from_env();
    auto& out = std::cout;

    if (*acc) {
      QuadNum beta = resolve_beta(beta_s, preset);
      auto d = stairs::acc_point_decimal(beta, digits);
      if (d.exact) {
        auto a = stairs::accumulation(beta);
        if (as_json)
          out << json{{"beta", to_json(beta)}, {"acc", to_json(a.acc)}, {"vol", to_json(a.vol_at_acc)},
                      {"acc_decimal", d.lower}, {"vol_decimal", qn_decimal(a.vol_at_acc, digits)}}
                     .dump(2)
              << '\n';
        else
          out << format(a.acc) << '\n' << "acc ~ " << d.lower << '\n' << "vol = " << format(a.vol_at_acc) << '\n';
      } else {
        if (as_json)
          out << json{{"beta", to_json(beta)}, {"exact", false}, {"acc_lower", d.lower}, {"acc_upper", d.upper}}.dump(2)
              << '\n';
        else
          out << "acc in [" << d.lower << ", " << d.upper << "] (not in Q(sqrt D))\n";
      }
      return 0;
    }

    if (*classes) {
      std::vector<std::pair<std::string, qp::QuasiPerfectClass>> list;
      if (!check_s.empty()) {
        auto c = parse_class(check_s);
        auto v = qp::qp_check(c);
        if (as_json)
          out << json{{"class", to_json(c)}, {"ok", v.ok}, {"violations", v.violations}}.dump(2) << '\n';
        else {
          out << c.str() << (v.ok ? " ok" : " FAILS") << '\n';
          for (auto& s : v.violations) out << "  " << s << '\n';
        }
        return v.ok ? 0 : 1;
      }
      if (outer >= 0) list.emplace_back("E_" + std::to_string(outer), qp::outer_family(static_cast<unsigned>(outer)));
      if (inner >= 0) list.emplace_back("Ehat_" + std::to_string(inner), qp::inner_family(static_cast<unsigned>(inner)));
      if (upto > 0 || list.empty()) {
        list.emplace_back("E", qp::main_class());
        for (unsigned k = 0; k <= upto; ++k) {
          list.emplace_back("E_" + std::to_string(k), qp::outer_family(k));
          if (k >= 1) list.emplace_back("Ehat_" + std::to_string(k), qp::inner_family(k));
        }
      }
      if (as_json) {
        json j = json::array();
        for (auto& [n, c] : list) j.push_back({{"name", n}, {"class", to_json(c)}, {"ech_index", qp::ech_index(c).get_str()}});
        out << j.dump(2) << '\n';
      } else {
        for (auto& [n, c] : list) out << (list.size() > 1 ? n + " " : "") << c.str() << '\n';
      }
      return 0;
    }

    if (*mu) {
      QuadNum beta = resolve_beta(beta_s, preset);
      auto c = parse_class(class_s);
      if (auto v = qp::qp_check(c); !v) throw Error(Errc::PreconditionViolated, "not quasi-perfect: " + v.violations.front());
      QuadNum z = parse_quadnum(z_s);
      QuadNum m = qp::mu(c, beta, z);
      if (as_json)
        out << json{{"mu", to_json(m)}, {"decimal", qn_decimal(m, digits)}}.dump(2) << '\n';
      else
        out << format(m) << '\n' << qn_decimal(m, digits) << '\n';
      return 0;
    }

    if (*caps) {
      ech::CapacityTable t;
      if (target == "polydisk") {
        t = ech::polydisk_caps(resolve_beta(beta_s, preset), K);
      } else {
        if (b_s.empty()) throw Error(Errc::ParseError, "--b is required for ellipsoids");
        t = ech::ellipsoid_caps(parse_quadnum(a_s), parse_quadnum(b_s), K);
      }
      if (as_json)
        out << to_json(t).dump(2) << '\n';
      else
        for (size_t k = 0; k < t.values.size(); ++k) out << k << ' ' << format(t.values[k]) << '\n';
      return 0;
    }

    if (*sweep) {
      QuadNum beta = resolve_beta(beta_s, preset);
      if (check) {
        auto sc = verify::sweep(sweepK, verify::default_samples(), threads);
        print_table(sc.report, out);
        return sc.report.passed() ? 0 : 1;
      }
      auto zmin = detail::parse_rational(zmin_s), zmax = detail::parse_rational(zmax_s);
      if (samples == 0 || zmax < zmin) throw Error(Errc::ParseError, "need samples >= 1 and zmin <= zmax");
      auto rows = ech::lower_bound_sweep(beta, sweepK, sample_grid(zmin, zmax, samples), threads);
      auto csv = ech::sweep_csv(rows, digits);
      if (out_s.empty())
        out << csv;
      else
        std::ofstream(out_s) << csv;
      return 0;
    }

    if (*mutate) {
      QuadNum beta = resolve_beta(beta_s, preset);
      auto poly = atf::apply_word(atf::init_polydisk(beta), word);
      if (!svg_s.empty()) std::ofstream(svg_s) << atf::to_svg(poly, svg_digits);
      if (embed)
        out << to_json(atf::extract_embedding(poly), digits).dump(2) << '\n';
      else
        out << atf::to_json(poly).dump(2) << '\n';
      return 0;
    }

    if (*blocked) {
      QuadNum beta;
      qp::QuasiPerfectClass c = qp::main_class();
      if (fam_n > 0) {
        c = qp::family_n(fam_n).blocker;
        beta = QuadNum(static_cast<long>(fam_n));
      } else {
        beta = resolve_beta(beta_s, preset);
        if (!class_s.empty()) c = parse_class(class_s);
      }
      out << stairs::blocked_name(stairs::is_blocked(c, beta)) << '\n';
      return 0;
    }

    if (*family) {
      auto f = qp::family_n(fam_n, seeds);
      if (as_json) {
        json seeds_j = json::array();
        for (size_t i = 0; i < f.seed_centers.size(); ++i)
          seeds_j.push_back({{"center", jsonio::rational(f.seed_centers[i])},
                             {"class", f.seed_classes[i] ? to_json(*f.seed_classes[i]) : json(nullptr)}});
        out << json{{"n", f.n}, {"beta", to_json(f.beta)}, {"blocker", to_json(f.blocker)},
                    {"step_class", to_json(f.step_class)}, {"seeds", seeds_j}}
                   .dump(2)
            << '\n';
      } else {
        out << "beta_" << f.n << " = " << format(f.beta) << " ~ " << qn_decimal(f.beta, 10) << '\n'
            << "blocker " << f.blocker.str() << '\n'
            << "step " << f.step_class.str() << '\n';
        for (size_t i = 0; i < f.seed_centers.size(); ++i)
          out << "seed " << f.seed_centers[i] << ' ' << (f.seed_classes[i] ? f.seed_classes[i]->str() : "-") << '\n';
      }
      return 0;
    }

    if (*ver) {
      if (suite == "conjecture") {
        json j = json::array();
        for (auto& s : verify::conjecture_points(kmax)) {
          if (s.lambda.is_zero())
            j.push_back({{"tag", s.tag}, {"status", "error"}});
          else {
            auto e = to_json(s, digits);
            e["status"] = "unverified";
            j.push_back(e);
          }
        }
        out << j.dump(2) << '\n';
        return 0;
      }
      Report all{suite, {}};
      auto want = [&](const char* s) { return suite == "all" || suite == s; };
      if (want("classes")) all.merge(verify::classes(kmax));
      if (want("acc")) all.merge(verify::acc());
      if (want("cf")) all.merge(verify::cf(kmax));
      if (want("ech")) all.merge(verify::ech(std::min(kmax * 5, 60u), verify::default_ech_betas()));
      if (want("atf")) all.merge(verify::atf(kmax));
      if (want("alternation")) all.merge(stairs::verify_alternation(std::max(kmax, 1u), stairs::main_beta()));
      if (want("closed-forms")) all.merge(stairs::verify_closed_forms(kmax));
      if (want("blocked")) all.merge(verify::blocked());
      if (suite == "sweep") all.merge(verify::sweep(2000, verify::default_samples()).report);
      if (as_json)
        out << to_json(all).dump(2) << '\n';
      else
        print_table(all, out);
      return all.passed() ? 0 : 1;
    }

    if (*serve) {
      service::SessionStore store(digits);
      httplib::Server srv;
      service::install_routes(srv, store);
      std::cerr << "listening on " << host << ':' << port << '\n';
      return srv.listen(host, port) ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
    return e.code() == Errc::ParseError ? 2 : 1;
  }
  return 2;
}
