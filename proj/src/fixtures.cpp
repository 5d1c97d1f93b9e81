#include "waldo/fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "waldo/intarith.hpp"

#ifndef WALDO_DATA_DIR
#define WALDO_DATA_DIR "data"
#endif

namespace waldo::fixtures {

namespace {

constexpr const char* kModule = "fixtures";

[[noreturn]] void fail(ErrorKind kind, const std::string& what) { throw Error(kModule, kind, what); }

std::string path(const std::string& sub, const std::string& file) { return data_dir() + "/" + sub + "/" + file; }

std::vector<std::string> data_lines(const std::string& p) {
  std::ifstream in(p);
  if (!in) fail(ErrorKind::parse, "cannot open " + p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  }
  return out;
}

series::ThetaCombo subset(const series::ThetaCombo& c, std::initializer_list<std::size_t> idx) {
  series::ThetaCombo out;
  for (auto i : idx) out.terms.push_back(c.terms.at(i));
  return out;
}

std::string first_difference(const series::Series& x, const series::Series& y) {
  std::size_t len = std::min(x.length(), y.length());
  if (x.length() != y.length()) return "lengths " + std::to_string(x.length()) + " vs " + std::to_string(y.length());
  for (std::size_t n = 0; n <= len; ++n)
    if (!(x[n] == y[n])) return "n=" + std::to_string(n) + ": " + x[n].to_string() + " vs " + y[n].to_string();
  return "";
}

Check series_check(const std::string& name, const series::Series& got, const series::Series& want) {
  std::string diff = first_difference(got, want);
  return {name, diff.empty(), diff.empty() ? "through q^" + std::to_string(want.length()) : diff};
}

TableRow row_from(const curves::ShaReport& r) {
  TableRow row;
  row.n = r.n;
  row.coeff = r.coeff;
  row.tamagawa = r.tamagawa;
  row.sha = r.sha;
  row.root_number = r.root_number;
  row.coefficient_zero = r.coefficient_zero;
  return row;
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("WALDO_DATA_DIR"); env && *env) return env;
  return WALDO_DATA_DIR;
}

series::Series qexp(const std::string& name) { return series::load_qexp(path("qexp", name + ".qexp")); }

series::ThetaCombo forms(const std::string& name) { return series::load_forms(path("forms", name + ".forms")); }

std::map<Integer, Integer> golden_sha(const std::string& name) {
  std::map<Integer, Integer> out;
  std::string p = path("golden", name + ".tsv");
  for (const auto& line : data_lines(p)) {
    std::istringstream is(line);
    std::string n, s;
    if (!(is >> n >> s)) fail(ErrorKind::parse, p + ": expected 'n<TAB>sha': " + line);
    if (!out.emplace(parse_integer(n), parse_integer(s)).second) fail(ErrorKind::parse, p + ": duplicate n " + n);
  }
  return out;
}

std::vector<Integer> rank2_list() {
  std::vector<Integer> out;
  for (const auto& line : data_lines(path("golden", "rank2_c496.txt"))) out.push_back(parse_integer(line));
  return out;
}

series::Series d_series_496() {
  auto f = qexp("c496_f1") + qexp("c496_f2") + NF4::sqrt2() * qexp("c496_f3");
  f.meta().level = 1984;
  f.meta().weight_num = 3;
  return f;
}

series::Series e_series_576_from_basis() {
  NF4 inv_sqrt6(0, 0, 0, Rational(1, 6));
  auto f = inv_sqrt6 * qexp("q576_f1") + qexp("q576_f2") + NF4::sqrt2() * qexp("q576_f3") + NF4::sqrt3() * qexp("q576_f4");
  f.meta().level = 576;
  f.meta().weight_num = 3;
  return f;
}

std::vector<TableRow> sha_table(curves::CurveTag curve, std::size_t max, unsigned threads) {
  using curves::CurveTag;
  series::Series coeffs;
  switch (curve) {
    case CurveTag::c496:
      coeffs = d_series_496();
      if (max > coeffs.length())
        fail(ErrorKind::fixture_range, "d_n is known only through n = " + std::to_string(coeffs.length()));
      break;
    case CurveTag::x3m1:
      coeffs = series::combine(forms("quad576"), max, threads);
      break;
    case CurveTag::c50:
      coeffs = series::combine(forms("c50_prop"), max, threads);
      break;
  }

  auto in_domain = [&](std::size_t n) {
    Integer z(static_cast<unsigned long>(n));
    if (!intarith::is_squarefree(z)) return false;
    switch (curve) {
      case CurveTag::c496: return n % 8 == 1 || n % 8 == 3 || n % 8 == 7;
      case CurveTag::x3m1: return n % 3 != 0;
      case CurveTag::c50: return n % 5 != 0;
    }
    return false;
  };
  auto make_row = [&](std::size_t n) {
    Integer z(static_cast<unsigned long>(n));
    switch (curve) {
      case CurveTag::c496: return row_from(curves::sha_order_496(z, coeffs[n]));
      case CurveTag::x3m1: return row_from(curves::sha_order_x3m1(z, coeffs[n]));
      case CurveTag::c50: break;
    }
    auto st = curves::lratio_50(z, coeffs[n]);
    TableRow row;
    row.n = z;
    row.coeff = coeffs[n];
    row.coefficient_zero = coeffs[n].is_zero();
    row.statement = st.text;
    return row;
  };

  if (threads == 0) threads = 1;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(max, 1)));
  std::vector<std::vector<TableRow>> parts(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned w) {
    try {
      std::size_t lo = 1 + max * w / threads, hi = max * (w + 1) / threads;
      for (std::size_t n = lo; n <= hi; ++n)
        if (in_domain(n)) parts[w].push_back(make_row(n));
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<TableRow> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::vector<Check> verify_all(unsigned threads) {
  std::vector<Check> out;
  auto guarded = [&](const std::string& name, const std::function<Check()>& fn) {
    try {
      out.push_back(fn());
    } catch (const Error& e) {
      out.push_back({name, false, "[" + e.module() + "] " + e.what()});
    }
  };

  for (const char* q : {"c496_f1", "c496_f2", "c496_f3", "q576_f1", "q576_f2", "q576_f3", "q576_f4", "c72_g1",
                        "c72_g2", "c324_h", "c50_f1", "c50_f2"}) {
    std::string name = std::string("roundtrip qexp ") + q;
    guarded(name, [&] {
      auto f = qexp(q);
      std::stringstream ss;
      series::write_qexp(ss, f);
      auto g = series::read_qexp(ss);
      bool ok = g == f && g.meta().level == f.meta().level && g.meta().notes == f.meta().notes;
      return Check{name, ok, "length " + std::to_string(f.length())};
    });
  }
  for (const char* c : {"c50_prop", "c50_real_twist", "quad576", "quad576_piece1", "quad576_piece2", "quad576_piece3",
                        "quad576_piece4", "c27"}) {
    std::string name = std::string("roundtrip forms ") + c;
    guarded(name, [&] {
      auto combo = forms(c);
      std::stringstream ss;
      series::write_forms(ss, combo);
      auto back = series::read_forms(ss);
      bool ok = back.terms.size() == combo.terms.size();
      for (std::size_t i = 0; ok && i < combo.terms.size(); ++i)
        ok = back.terms[i].coeff == combo.terms[i].coeff && back.terms[i].form.to_string() == combo.terms[i].form.to_string();
      return Check{name, ok, std::to_string(combo.terms.size()) + " terms"};
    });
  }

  guarded("theta c50 f1", [&] {
    return series_check("theta c50 f1", series::combine(subset(forms("c50_prop"), {0, 1}), 14, threads), qexp("c50_f1"));
  });
  guarded("theta c50 f2", [&] {
    return series_check("theta c50 f2", series::combine(subset(forms("c50_prop"), {2, 3}), 14, threads), qexp("c50_f2"));
  });
  guarded("theta quad576", [&] {
    return series_check("theta quad576", series::combine(forms("quad576"), 99, threads), e_series_576_from_basis());
  });
  for (int i = 1; i <= 4; ++i) {
    std::string name = "theta quad576 piece " + std::to_string(i);
    guarded(name, [&] {
      return series_check(name, series::combine(forms("quad576_piece" + std::to_string(i)), 99, threads),
                          qexp("q576_f" + std::to_string(i)));
    });
  }
  guarded("c27 vanishing at 2 mod 3", [&] {
    auto r = curves::c27_vanishes_two_mod_three(series::combine(forms("c27"), 200, threads));
    return Check{"c27 vanishing at 2 mod 3", r.holds, r.holds ? "square-free n <= 200" : "first violation n=" + r.violations[0].get_str()};
  });
  guarded("c324 h support", [&] {
    auto r = curves::c27_h_support(qexp("c324_h"));
    return Check{"c324 h support", r.holds, r.holds ? "n = 3m, (m/3) = 1" : "first violation n=" + r.violations[0].get_str()};
  });
  guarded("golden c496 n <= 144", [&] {
    auto rows = sha_table(curves::CurveTag::c496, 144, threads);
    auto golden = golden_sha("sha_c496");
    std::map<Integer, const TableRow*> by_n;
    for (const auto& r : rows) by_n[r.n] = &r;
    std::string detail;
    for (const auto& [n, s] : golden) {
      if (n > 144) continue;
      auto it = by_n.find(n);
      if (it == by_n.end() || !it->second->sha || *it->second->sha != Rational(s)) {
        detail = "mismatch at n=" + n.get_str();
        break;
      }
    }
    for (const auto& n : rank2_list())
      if (detail.empty() && n <= 144 && (!by_n.count(n) || !by_n[n]->coefficient_zero)) detail = "rank list n=" + n.get_str();
    return Check{"golden c496 n <= 144", detail.empty(), detail.empty() ? "table and rank list agree" : detail};
  });
  return out;
}

}  // namespace waldo::fixtures
