#include "waldo/series.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "waldo/intarith.hpp"

namespace waldo::series {

namespace {

constexpr const char* kModule = "series";

[[noreturn]] void fail(ErrorKind kind, const std::string& what) { throw Error(kModule, kind, what); }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer mod_nonneg(const Integer& n, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Series::Series(std::vector<NF4> coeffs, SeriesMeta meta) : coeffs_(std::move(coeffs)), meta_(std::move(meta)) {
  if (coeffs_.empty()) coeffs_.resize(1);
}

const NF4& Series::operator[](std::size_t n) const {
  if (n >= coeffs_.size())
    fail(ErrorKind::fixture_range,
         "coefficient " + std::to_string(n) + " requested but series is known only through q^" + std::to_string(length()));
  return coeffs_[n];
}

Series Series::truncated(std::size_t len) const {
  if (len > length()) fail(ErrorKind::fixture_range, "cannot extend a series past its truncation point");
  Series out(std::vector<NF4>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(len + 1)), meta_);
  return out;
}

Series& Series::operator+=(const Series& other) {
  std::size_t len = std::min(length(), other.length());
  coeffs_.resize(len + 1);
  for (std::size_t i = 0; i <= len; ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Series operator*(const NF4& c, const Series& f) {
  Series out = f;
  for (auto& x : out.coeffs_) x = c * x;
  return out;
}

Series combine(const ThetaCombo& combo, std::size_t limit, unsigned threads) {
  // group coefficients by form so each lattice count runs once
  std::map<std::array<std::int64_t, 6>, NF4> merged;
  std::vector<std::array<std::int64_t, 6>> order;
  for (const auto& term : combo.terms) {
    const auto& q = term.form;
    std::array<std::int64_t, 6> key{q.a, q.b, q.c, q.r, q.s, q.t};
    auto [it, inserted] = merged.try_emplace(key, NF4{});
    if (inserted) order.push_back(key);
    it->second += term.coeff;
  }

  // integer accumulation per coordinate over a common denominator
  std::array<Integer, 4> den{1, 1, 1, 1};
  for (const auto& [key, c] : merged)
    for (int j = 0; j < 4; ++j) den[j] = lcm(den[j], c[j].get_den());

  std::array<std::vector<__int128>, 4> acc;
  for (auto& v : acc) v.assign(limit + 1, 0);
  for (const auto& key : order) {
    const NF4& c = merged.at(key);
    if (c.is_zero()) continue;
    TernaryForm q{key[0], key[1], key[2], key[3], key[4], key[5]};
    auto counts = thetaforms::repcount(q, limit, threads);
    for (int j = 0; j < 4; ++j) {
      if (c[j] == 0) continue;
      Integer scaled = c[j].get_num() * (den[j] / c[j].get_den());
      if (!scaled.fits_slong_p()) fail(ErrorKind::internal, "combination coefficient too large");
      const __int128 w = scaled.get_si();
      for (std::size_t n = 0; n <= limit; ++n) acc[j][n] += w * static_cast<__int128>(counts[n]);
    }
  }

  std::vector<NF4> coeffs(limit + 1);
  for (std::size_t n = 0; n <= limit; ++n) {
    std::array<Rational, 4> a;
    for (int j = 0; j < 4; ++j) {
      __int128 v = acc[j][n];
      if (v == 0) {
        a[j] = 0;
        continue;
      }
      bool neg = v < 0;
      unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
      Integer hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
      Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
      Integer num = (hi << 64) + lo;
      if (neg) num = -num;
      a[j] = Rational(num, den[j]);
      a[j].canonicalize();
    }
    coeffs[n] = NF4(a[0], a[1], a[2], a[3]);
  }
  return Series(std::move(coeffs));
}

Series theta_series(const TernaryForm& q, std::size_t limit) {
  return combine(ThetaCombo{{ThetaTerm{NF4(1), q}}}, limit);
}

std::set<Integer> ap_support(const Series& f, const Integer& M) {
  if (M < 1) fail(ErrorKind::domain, "modulus must be positive");
  std::set<Integer> out;
  for (std::size_t n = 1; n <= f.length(); ++n)
    if (!f[n].is_zero()) out.insert(mod_nonneg(Integer(static_cast<unsigned long>(n)), M));
  return out;
}

Integer index_gamma0(const Integer& N) {
  if (N < 1) fail(ErrorKind::domain, "level must be positive");
  Integer r = N;
  for (const auto& pp : intarith::factorize(N).factors()) r = r / pp.prime * (pp.prime + 1);
  return r;
}

Integer index_gamma1(const Integer& N) {
  if (N < 1) fail(ErrorKind::domain, "level must be positive");
  if (N == 1) return 1;
  if (N == 2) return 3;
  Integer r = N * N;
  for (const auto& pp : intarith::factorize(N).factors()) r = r / (pp.prime * pp.prime) * (pp.prime * pp.prime - 1);
  return r;
}

SturmBound sturm_bound(int k, const Integer& N, const Integer& M) {
  if (N < 1 || M < 1) fail(ErrorKind::domain, "level and modulus must be positive");
  if (!mpz_divisible_ui_p(N.get_mpz_t(), 4)) fail(ErrorKind::domain, "level " + N.get_str() + " is not divisible by 4");
  if (k < 1 || k % 2 == 0) fail(ErrorKind::domain, "weight numerator must be odd and positive");
  SturmBound sb;
  sb.level_used = N * M * M;
  Integer M2 = M * M;
  if (mpz_divisible_p(N.get_mpz_t(), M2.get_mpz_t())) {
    Integer r = mod_nonneg(N / M, 4);
    if (r == 0) {
      sb.level_used = N;
      sb.refined = true;
    } else if (r == 2) {
      sb.level_used = 2 * N;
      sb.refined = true;
    }
  }
  bool quadratic = M > 1 && mpz_divisible_p(Integer(24).get_mpz_t(), M.get_mpz_t());
  sb.group = quadratic ? Group::gamma0 : Group::gamma1;
  Integer index = quadratic ? index_gamma0(sb.level_used) : index_gamma1(sb.level_used);
  sb.R = Rational(k * index, 24);
  sb.R.canonicalize();
  mpz_cdiv_q(sb.ceiling.get_mpz_t(), sb.R.get_num_mpz_t(), sb.R.get_den_mpz_t());
  return sb;
}

VanishingResult prove_ap_vanishing(const Series& f, const Integer& a, const Integer& M, const Integer& N, int k) {
  if (M < 1) fail(ErrorKind::domain, "modulus must be positive");
  if (gcd(a, M) != 1)
    fail(ErrorKind::hypothesis_violation, "gcd(" + a.get_str() + ", " + M.get_str() + ") != 1");
  VanishingResult res;
  res.bound = sturm_bound(k, N, M);
  res.needed = res.bound.ceiling + 1;
  Integer ar = mod_nonneg(a, M);
  std::size_t scan = f.length();
  if (Integer(static_cast<unsigned long>(scan)) > res.needed) scan = res.needed.get_ui();
  for (std::size_t n = 1; n <= scan; ++n) {
    if (mod_nonneg(Integer(static_cast<unsigned long>(n)), M) == ar) continue;
    if (!f[n].is_zero()) {
      res.status = Vanishing::counterexample;
      res.witness = Integer(static_cast<unsigned long>(n));
      return res;
    }
  }
  if (Integer(static_cast<unsigned long>(f.length())) < res.needed) {
    res.status = Vanishing::insufficient_coefficients;
    return res;
  }
  res.status = Vanishing::proven;
  return res;
}

Integer least_nonresidue(const Integer& p) {
  if (p == 2) fail(ErrorKind::domain, "least_nonresidue needs an odd prime");
  for (Integer u = 2;; ++u)
    if (intarith::kronecker(u, p) == -1) return u;
}

SquareClass square_class(const Integer& n, const Integer& p) {
  auto [e, u] = intarith::valuation(n, p);
  SquareClass sc;
  sc.parity = e % 2;
  if (p == 2) {
    sc.unit = mod_nonneg(u, 8);
  } else {
    sc.unit = intarith::kronecker(u, p) == 1 ? Integer(1) : least_nonresidue(p);
  }
  return sc;
}

RatioCheck ratio_check(const Series& f, const Integer& n1, const Integer& n2, int k, const Integer& level,
                       const std::optional<characters::QuadDirichletChar>& chi) {
  if (n1 < 1 || n2 < 1 || !intarith::is_squarefree(n1) || !intarith::is_squarefree(n2))
    fail(ErrorKind::domain, "ratio_check needs square-free positive n1, n2");
  if (level < 1) fail(ErrorKind::domain, "level must be positive");
  RatioCheck rc;
  for (const auto& pp : intarith::factorize(level).factors())
    if (square_class(n1, pp.prime) != square_class(n2, pp.prime)) rc.failing_primes.push_back(pp.prime);
  rc.applicable = rc.failing_primes.empty();
  if (!rc.applicable) return rc;

  auto character = chi.value_or(characters::QuadDirichletChar::trivial(level));
  Integer g = gcd(n1, n2);
  Integer r1 = n1 / g, r2 = n2 / g;

  RatioStatement st;
  st.n1 = n1;
  st.n2 = n2;
  st.a_n1_squared = f[n1.get_ui()] * f[n1.get_ui()];
  st.a_n2_squared = f[n2.get_ui()] * f[n2.get_ui()];
  st.chi_ratio = character.value(r2) * character.value(r1);
  st.power_exponent = Rational(k - 2, 2);
  st.power_exponent.canonicalize();
  std::ostringstream os;
  os << "(" << st.a_n1_squared.to_string() << ") * L(phi chi0^-1 chi_" << n2.get_str() << ", 1) * (" << st.chi_ratio
     << ") * " << n2.get_str() << "^(" << st.power_exponent.get_str() << ") = (" << st.a_n2_squared.to_string()
     << ") * L(phi chi0^-1 chi_" << n1.get_str() << ", 1) * " << n1.get_str() << "^(" << st.power_exponent.get_str()
     << ")";
  st.text = os.str();
  rc.statement = std::move(st);
  return rc;
}

Series twist(const Series& f, const characters::QuadDirichletChar& psi) {
  std::vector<NF4> c(f.coefficients());
  for (std::size_t n = 0; n < c.size(); ++n) {
    int v = psi.value(Integer(static_cast<unsigned long>(n)));
    if (v == 0) c[n] = NF4{};
    else if (v < 0) c[n] = -c[n];
  }
  return Series(std::move(c), f.meta());
}

std::vector<characters::QuadDirichletChar> quadratic_characters(const Integer& M) {
  if (M < 1 || !mpz_divisible_p(Integer(24).get_mpz_t(), M.get_mpz_t()))
    fail(ErrorKind::domain, "all characters mod " + M.get_str() + " are quadratic only when M | 24");
  std::vector<characters::QuadDirichletChar> out;
  for (int d : {1, -1, 2, -2, 3, -3, 6, -6}) {
    Integer cond = characters::quadratic_conductor(d);
    if (mpz_divisible_p(M.get_mpz_t(), cond.get_mpz_t())) out.emplace_back(M, d);
  }
  return out;
}

Rational progression_indicator(const Integer& M, const Integer& a, const Integer& n) {
  auto chars = quadratic_characters(M);
  long total = 0;
  for (const auto& psi : chars) total += psi.value(a) * psi.value(n);
  Rational r(total, static_cast<long>(chars.size()));
  r.canonicalize();
  return r;
}

Series read_qexp(std::istream& in, const std::string& source) {
  SeriesMeta meta;
  std::optional<std::size_t> length;
  std::map<std::size_t, NF4> entries;
  std::string line;
  std::size_t lineno = 0;
  auto bad = [&](const std::string& why) {
    fail(ErrorKind::parse, source + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      std::string body = trim(t.substr(1));
      if (body.rfind("level=", 0) == 0 || body.find("length=") != std::string::npos) {
        std::istringstream is(body);
        for (std::string kv; is >> kv;) {
          auto eq = kv.find('=');
          if (eq == std::string::npos) bad("malformed header field '" + kv + "'");
          std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
          if (key == "level") meta.level = parse_integer(val);
          else if (key == "weight_num") meta.weight_num = static_cast<int>(parse_integer(val).get_si());
          else if (key == "twist") meta.twist = parse_integer(val);
          else if (key == "length") length = parse_integer(val).get_ui();
          else bad("unknown header field '" + key + "'");
        }
      } else {
        meta.notes.push_back(body);
      }
      continue;
    }
    if (!length) bad("coefficient line before header");
    auto sep = t.find_first_of(" \t");
    if (sep == std::string::npos) bad("expected 'n<TAB>coefficient'");
    Integer n = parse_integer(t.substr(0, sep));
    if (n < 0 || n > Integer(static_cast<unsigned long>(*length)))
      bad("index " + n.get_str() + " outside [0, " + std::to_string(*length) + "]");
    if (!entries.emplace(n.get_ui(), numfield::parse_nf4(t.substr(sep + 1))).second)
      bad("duplicate index " + n.get_str());
  }
  if (!length) fail(ErrorKind::parse, source + ": missing '# level=... length=...' header");
  std::vector<NF4> c(*length + 1);
  for (auto& [n, v] : entries) c[n] = v;
  return Series(std::move(c), std::move(meta));
}

Series load_qexp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open " + path);
  return read_qexp(in, path);
}

void write_qexp(std::ostream& out, const Series& f) {
  for (const auto& note : f.meta().notes) out << "# " << note << '\n';
  out << "# level=" << (f.meta().level ? f.meta().level->get_str() : "0");
  if (f.meta().weight_num) out << " weight_num=" << *f.meta().weight_num;
  if (f.meta().twist) out << " twist=" << f.meta().twist->get_str();
  out << " length=" << f.length() << '\n';
  for (std::size_t n = 0; n <= f.length(); ++n)
    if (!f[n].is_zero()) out << n << '\t' << f[n].to_string() << '\n';
}

ThetaCombo read_forms(std::istream& in, const std::string& source) {
  ThetaCombo combo;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    auto bar = t.find('|');
    if (bar == std::string::npos)
      fail(ErrorKind::parse, source + ":" + std::to_string(lineno) + ": expected 'COEFF | a b c r s t'");
    ThetaTerm term{numfield::parse_nf4(t.substr(0, bar)), thetaforms::parse_form(t.substr(bar + 1))};
    if (!thetaforms::is_positive_definite(term.form))
      fail(ErrorKind::domain, source + ":" + std::to_string(lineno) + ": form " + term.form.to_string() +
                                  " is not positive definite");
    combo.terms.push_back(std::move(term));
  }
  return combo;
}

ThetaCombo load_forms(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open " + path);
  return read_forms(in, path);
}

void write_forms(std::ostream& out, const ThetaCombo& combo) {
  for (const auto& term : combo.terms) {
    const auto& q = term.form;
    out << term.coeff.to_string() << " | " << q.a << ' ' << q.b << ' ' << q.c << ' ' << q.r << ' ' << q.s << ' ' << q.t
        << '\n';
  }
}

}  // namespace waldo::series
