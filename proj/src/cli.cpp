#include "waldo/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "waldo/characters.hpp"
#include "waldo/curves.hpp"
#include "waldo/fixtures.hpp"
#include "waldo/intarith.hpp"
#include "waldo/series.hpp"
#include "waldo/thetaforms.hpp"
#include "waldo/waldlocal.hpp"

namespace waldo::cli {

namespace {

using Fields = std::vector<std::pair<std::string, std::string>>;

// TSV with a header line, or one JSON object per line.
class Emitter {
 public:
  Emitter(std::ostream& out, bool json) : out_(out), json_(json) {}

  void row(const Fields& f) {
    if (json_) {
      nlohmann::ordered_json j;
      for (const auto& [k, v] : f) j[k] = typed(v);
      out_ << j.dump() << '\n';
      return;
    }
    if (!header_done_) {
      for (std::size_t i = 0; i < f.size(); ++i) out_ << (i ? "\t" : "") << f[i].first;
      out_ << '\n';
      header_done_ = true;
    }
    for (std::size_t i = 0; i < f.size(); ++i) out_ << (i ? "\t" : "") << f[i].second;
    out_ << '\n';
  }

 private:
  static nlohmann::ordered_json typed(const std::string& v) {
    if (v.empty()) return nullptr;
    try {
      std::size_t used = 0;
      long long x = std::stoll(v, &used);
      if (used == v.size()) return x;
    } catch (const std::exception&) {
    }
    return v;
  }

  std::ostream& out_;
  bool json_;
  bool header_done_ = false;
};

// "A,B,C"
curves::ShortModel parse_model(const std::string& text) {
  std::string s = text;
  for (auto& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream is(s);
  std::vector<Integer> v;
  for (std::string tok; is >> tok;) v.push_back(parse_integer(tok));
  if (v.size() != 3) throw Error("cli", ErrorKind::parse, "model needs three integers A,B,C: '" + text + "'");
  return curves::make_model(v[0], v[1], v[2]);
}

std::vector<Integer> parse_int_list(const std::string& text) {
  std::string s = text;
  for (auto& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream is(s);
  std::vector<Integer> out;
  for (std::string tok; is >> tok;) out.push_back(parse_integer(tok));
  return out;
}

intarith::Place parse_place(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "oo") return intarith::Place::infinity();
  return intarith::Place::prime(parse_integer(s));
}

std::string sign(int v) { return v > 0 ? "+1" : "-1"; }

std::string opt_str(const std::optional<Integer>& v) { return v ? v->get_str() : ""; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"waldo: Waldspurger local data, theta series and Sha tables"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");

  std::string format = "tsv";
  unsigned threads = 0;
  std::string data_dir;
  app.add_option("--format", format, "output encoding")->check(CLI::IsMember({"tsv", "json-lines"}));
  app.add_option("--threads", threads, "worker count; WALDO_THREADS caps it");
  app.add_option("--data-dir", data_dir, "fixture directory");

  // symbols
  auto* symbols = app.add_subcommand("symbols", "Kronecker and Hilbert symbols")->require_subcommand(1);
  std::string s_a, s_b, s_n, s_place;
  auto* kro = symbols->add_subcommand("kronecker", "(a/n)");
  kro->add_option("a", s_a)->required();
  kro->add_option("n", s_n)->required();
  auto* hil = symbols->add_subcommand("hilbert", "(a,b)_v");
  hil->add_option("a", s_a)->required();
  hil->add_option("b", s_b)->required();
  hil->add_option("place", s_place, "prime or inf")->required();

  // local
  auto* local = app.add_subcommand("local", "local data")->require_subcommand(1);
  std::string l_mod, l_twist = "1", l_p, l_a, l_level, l_lambda = "0", l_present, l_absent;
  int l_k = 3;
  bool l_lambda2 = false;
  auto* evchi = local->add_subcommand("eval-chi", "local component chi_p(a)");
  evchi->add_option("--modulus", l_mod)->required();
  evchi->add_option("--twist", l_twist);
  evchi->add_option("--p", l_p)->required();
  evchi->add_option("--a", l_a)->required();
  auto* wald = local->add_subcommand("waldspurger", "n~_p and U_p");
  wald->add_option("--p", l_p)->required();
  wald->add_option("--level", l_level, "level M of the newform")->required();
  wald->add_option("--lambda", l_lambda, "Hecke eigenvalue lambda_p");
  wald->add_option("--twist", l_twist, "square-free d with chi = (d/.)");
  wald->add_option("--k", l_k);
  wald->add_option("--present", l_present, "class representatives known in Omega_p");
  wald->add_option("--absent", l_absent, "class representatives known outside Omega_p");
  auto* h2 = local->add_subcommand("h2", "hypothesis (H2)");
  h2->add_option("--level", l_level)->required();
  h2->add_flag("--lambda2-nonzero", l_lambda2);

  // theta
  auto* theta = app.add_subcommand("theta", "representation numbers")->require_subcommand(1);
  std::string t_form, t_forms;
  std::size_t t_limit = 0;
  auto* tcount = theta->add_subcommand("count", "r_Q(n) for n <= limit");
  tcount->add_option("--form", t_form)->required();
  tcount->add_option("--limit", t_limit)->required();
  auto* tcomb = theta->add_subcommand("combine", "coefficients of a theta combination");
  tcomb->add_option("--forms", t_forms, "forms file")->required();
  tcomb->add_option("--limit", t_limit)->required();

  // series
  auto* ser = app.add_subcommand("series", "q-expansion checks")->require_subcommand(1);
  std::string q_file, q_a, q_mod, q_level;
  int q_k = 3;
  auto* prog = ser->add_subcommand("check-progression", "prove a_n = 0 off n = a mod M");
  prog->add_option("--qexp", q_file)->required();
  prog->add_option("--a", q_a)->required();
  prog->add_option("--modulus", q_mod)->required();
  prog->add_option("--level", q_level)->required();
  prog->add_option("--k", q_k);
  auto* supp = ser->add_subcommand("support", "residues carrying nonzero coefficients");
  supp->add_option("--qexp", q_file)->required();
  supp->add_option("--modulus", q_mod)->required();

  // curve
  auto* curve = app.add_subcommand("curve", "models and twists")->require_subcommand(1);
  std::string c_model, c_n, c_p;
  auto* ctw = curve->add_subcommand("twist", "Y^2 = X^3 + AnX^2 + Bn^2X + Cn^3");
  ctw->add_option("--model", c_model, "A,B,C")->required();
  ctw->add_option("--n", c_n)->required();
  auto* ctor = curve->add_subcommand("torsion2", "#E(F_p)[2]");
  ctor->add_option("--model", c_model, "A,B,C")->required();
  ctor->add_option("--p", c_p)->required();

  // sha
  auto* sha = app.add_subcommand("sha", "Tate-Shafarevich orders")->require_subcommand(1);
  std::string sh_curve, sh_out;
  std::size_t sh_max = 0;
  auto* shtab = sha->add_subcommand("table", "per-twist table");
  shtab->add_option("--curve", sh_curve)->required()->check(CLI::IsMember({"c496", "x3m1", "c50"}));
  shtab->add_option("--max", sh_max)->required();
  shtab->add_option("--out", sh_out, "write the table here instead of stdout");

  // bench
  auto* bench = app.add_subcommand("bench", "timings")->require_subcommand(1);
  std::size_t b_limit = 1000;
  std::string b_forms;
  auto* btheta = bench->add_subcommand("theta", "time combine on the level 576 combination");
  btheta->add_option("--limit", b_limit)->required();
  btheta->add_option("--forms", b_forms, "forms file (default: shipped level 576 combination)");

  // fixtures
  auto* fix = app.add_subcommand("fixtures", "shipped data")->require_subcommand(1);
  auto* fverify = fix->add_subcommand("verify", "round trips and theta identities");

  std::vector<std::string> argv_store{"waldo"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  unsigned cap = thetaforms::default_threads();
  bool env_set = std::getenv("WALDO_THREADS") != nullptr;
  if (threads == 0) threads = cap;
  else if (env_set) threads = std::min(threads, cap);
  if (!data_dir.empty()) setenv("WALDO_DATA_DIR", data_dir.c_str(), 1);

  Emitter em(out, format == "json-lines");
  try {
    if (kro->parsed()) {
      Integer a = parse_integer(s_a), n = parse_integer(s_n);
      em.row({{"a", s_a}, {"n", s_n}, {"value", std::to_string(intarith::kronecker(a, n))}});
    } else if (hil->parsed()) {
      auto v = intarith::hilbert(parse_rational(s_a), parse_rational(s_b), parse_place(s_place));
      em.row({{"a", s_a}, {"b", s_b}, {"place", s_place}, {"value", std::to_string(v)}});
    } else if (evchi->parsed()) {
      characters::QuadDirichletChar chi(parse_integer(l_mod), parse_integer(l_twist));
      auto r = characters::local_eval(chi, parse_integer(l_p), parse_integer(l_a));
      em.row({{"chi", chi.to_string()},
              {"p", l_p},
              {"a", l_a},
              {"value", std::to_string(r.value)},
              {"branch", r.branch == characters::Branch::crt ? "crt" : "unramified_prime"},
              {"b", opt_str(r.b)}});
    } else if (wald->parsed()) {
      Integer p = parse_integer(l_p), M = parse_integer(l_level);
      characters::QuadDirichletChar chi(4 * M * characters::quadratic_conductor(parse_integer(l_twist)),
                                        parse_integer(l_twist));
      std::optional<waldlocal::OmegaSet> omega;
      if (!l_present.empty() || !l_absent.empty()) {
        waldlocal::OmegaSet set(p);
        for (const auto& r : parse_int_list(l_present)) set.set(series::square_class(r, p), waldlocal::Membership::present);
        for (const auto& r : parse_int_list(l_absent)) set.set(series::square_class(r, p), waldlocal::Membership::absent);
        omega = set;
      }
      auto d = waldlocal::make_local_data(p, M, parse_integer(l_lambda), chi, l_k, omega);
      unsigned nt = waldlocal::n_tilde(d);
      auto u = waldlocal::u_set(d, nt);
      std::string members, unknown;
      for (const auto& f : u.members) members += (members.empty() ? "" : ";") + f.name();
      for (const auto& c : u.unknown) unknown += (unknown.empty() ? "" : ";") + waldlocal::class_label(c, p);
      em.row({{"p", l_p},
              {"m_p", std::to_string(d.m_p)},
              {"n_tilde", std::to_string(nt)},
              {"u_set", members},
              {"unknown", unknown}});
    } else if (h2->parsed()) {
      bool ok = waldlocal::h2_applicable(parse_integer(l_level), l_lambda2);
      em.row({{"level", l_level}, {"h2", ok ? "true" : "false"}});
    } else if (tcount->parsed()) {
      auto counts = thetaforms::repcount(thetaforms::parse_form(t_form), t_limit, threads);
      for (std::size_t n = 0; n < counts.size(); ++n) em.row({{"n", std::to_string(n)}, {"count", std::to_string(counts[n])}});
    } else if (tcomb->parsed()) {
      auto f = series::combine(series::load_forms(t_forms), t_limit, threads);
      for (std::size_t n = 0; n <= f.length(); ++n)
        if (!f[n].is_zero()) em.row({{"n", std::to_string(n)}, {"coeff", f[n].to_string()}});
    } else if (prog->parsed()) {
      auto f = series::load_qexp(q_file);
      auto r = series::prove_ap_vanishing(f, parse_integer(q_a), parse_integer(q_mod), parse_integer(q_level), q_k);
      std::string status = r.status == series::Vanishing::proven                     ? "proven"
                           : r.status == series::Vanishing::insufficient_coefficients ? "insufficient_coefficients"
                                                                                     : "counterexample";
      em.row({{"status", status},
              {"R", r.bound.R.get_str()},
              {"needed", r.needed.get_str()},
              {"length", std::to_string(f.length())},
              {"witness", opt_str(r.witness)}});
      if (r.status != series::Vanishing::proven) {
        err << "[series] " << status << '\n';
        return 1;
      }
    } else if (supp->parsed()) {
      for (const auto& r : series::ap_support(series::load_qexp(q_file), parse_integer(q_mod)))
        em.row({{"residue", r.get_str()}});
    } else if (ctw->parsed()) {
      auto m = curves::twist(parse_model(c_model), parse_integer(c_n));
      em.row({{"A", m.A.get_str()},
              {"B", m.B.get_str()},
              {"C", m.C.get_str()},
              {"disc", m.disc.get_str()},
              {"period_ratio_valid", curves::period_ratio_valid(m) ? "true" : "false"}});
    } else if (ctor->parsed()) {
      em.row({{"p", c_p}, {"count", std::to_string(curves::two_torsion_count(parse_model(c_model), parse_integer(c_p)))}});
    } else if (shtab->parsed()) {
      auto rows = fixtures::sha_table(curves::parse_curve_tag(sh_curve), sh_max, threads);
      std::ofstream file;
      if (!sh_out.empty()) {
        file.open(sh_out);
        if (!file) throw Error("cli", ErrorKind::parse, "cannot write " + sh_out);
      }
      Emitter target(sh_out.empty() ? out : file, format == "json-lines");
      bool all_final = true;
      for (const auto& r : rows) {
        std::string flags;
        auto add = [&](const std::string& f) { flags += (flags.empty() ? "" : ",") + f; };
        if (r.root_number) add("W=" + sign(*r.root_number));
        if (r.coefficient_zero) add("coefficient_zero");
        if (r.sha) {
          bool fin = r.sha->get_den() == 1 && *r.sha > 0 && mpz_perfect_square_p(r.sha->get_num_mpz_t());
          if (!fin) {
            add("not_square");
            all_final = false;
          }
        }
        if (!r.statement.empty()) add(r.statement);
        target.row({{"n", r.n.get_str()},
                    {"coeff", r.coeff.to_string()},
                    {"tamagawa", opt_str(r.tamagawa)},
                    {"sha", r.sha ? r.sha->get_str() : ""},
                    {"flags", flags}});
      }
      if (!all_final) {
        err << "[curves] some Sha orders are not positive perfect squares\n";
        return 1;
      }
    } else if (btheta->parsed()) {
      auto combo = b_forms.empty() ? fixtures::forms("quad576") : series::load_forms(b_forms);
      using clock = std::chrono::steady_clock;
      for (const auto& term : combo.terms) {
        auto t0 = clock::now();
        auto c = thetaforms::repcount(term.form, b_limit, threads);
        double s = std::chrono::duration<double>(clock::now() - t0).count();
        em.row({{"form", term.form.to_string()}, {"seconds", std::to_string(s)}, {"count_at_limit", std::to_string(c.back())}});
      }
      auto t0 = clock::now();
      auto f = series::combine(combo, b_limit, threads);
      double total = std::chrono::duration<double>(clock::now() - t0).count();
      std::string match = "n/a";
      if (b_forms.empty()) {
        auto ref = fixtures::e_series_576_from_basis();
        std::size_t len = std::min(ref.length(), f.length());
        match = f.truncated(len) == ref.truncated(len) ? "true" : "false";
      }
      em.row({{"form", "combine"}, {"seconds", std::to_string(total)}, {"count_at_limit", "fixture_prefix=" + match}});
      if (match == "false") {
        err << "[bench] combination disagrees with the fixture prefix\n";
        return 1;
      }
    } else if (fverify->parsed()) {
      bool ok = true;
      for (const auto& c : fixtures::verify_all(threads)) {
        em.row({{"check", c.name}, {"ok", c.ok ? "pass" : "FAIL"}, {"detail", c.detail}});
        ok = ok && c.ok;
      }
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "[" << e.module() << "] " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace waldo::cli
