#include "waldo/curves.hpp"

#include "waldo/intarith.hpp"

namespace waldo::curves {

namespace {

constexpr const char* kModule = "curves";

[[noreturn]] void fail(ErrorKind kind, const std::string& what) { throw Error(kModule, kind, what); }

Integer mod(const Integer& a, const Integer& p) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

Integer inv_mod(const Integer& a, const Integer& p) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0) fail(ErrorKind::internal, "non-invertible leading coefficient");
  return r;
}

// Polynomials over F_p, low degree first, no trailing zeros.
using Poly = std::vector<Integer>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod g for nonzero g
Poly poly_mod(Poly f, const Poly& g, const Integer& p) {
  trim(f);
  Integer lead_inv = inv_mod(g.back(), p);
  while (f.size() >= g.size()) {
    Integer q = mod(f.back() * lead_inv, p);
    std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = mod(f[shift + i] - q * g[i], p);
    trim(f);
  }
  return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, const Integer& p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& c : r) c = mod(c, p);
  return poly_mod(std::move(r), g, p);
}

Poly poly_gcd(Poly a, Poly b, const Integer& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

int legendre(const Integer& a, const Integer& p) { return intarith::kronecker(a, p); }

void require_squarefree_positive(const Integer& n) {
  if (n < 1 || !intarith::is_squarefree(n)) fail(ErrorKind::domain, "n = " + n.get_str() + " must be positive and square-free");
}

unsigned mod_ui(const Integer& n, unsigned long m) { return static_cast<unsigned>(mpz_fdiv_ui(n.get_mpz_t(), m)); }

}  // namespace

Integer cubic_discriminant(const Integer& A, const Integer& B, const Integer& C) {
  Integer d = A * A * B * B - 4 * B * B * B - 4 * A * A * A * C - 27 * C * C + 18 * A * B * C;
  return 16 * d;
}

ShortModel make_model(const Integer& A, const Integer& B, const Integer& C) {
  ShortModel m{A, B, C, cubic_discriminant(A, B, C), false, {}};
  if (m.disc == 0) fail(ErrorKind::domain, "singular model: the cubic has a repeated root");
  return m;
}

ShortModel short_model(const Integer& a1, const Integer& a2, const Integer& a3, const Integer& a4, const Integer& a6) {
  Integer b2 = a1 * a1 + 4 * a2;
  Integer b4 = 2 * a4 + a1 * a3;
  Integer b6 = a3 * a3 + 4 * a6;
  if (mpz_divisible_ui_p(b2.get_mpz_t(), 4) && mpz_divisible_ui_p(b4.get_mpz_t(), 2) &&
      mpz_divisible_ui_p(b6.get_mpz_t(), 4))
    return make_model(b2 / 4, b4 / 2, b6 / 4);
  ShortModel m = make_model(b2, 8 * b4, 16 * b6);
  m.scaled = true;
  m.note = "scaled by (X, Y) -> (X/4, Y/8); b2=" + b2.get_str() + " b4=" + b4.get_str() + " b6=" + b6.get_str();
  return m;
}

ShortModel twist(const ShortModel& m, const Integer& n) {
  if (n == 0 || !intarith::is_squarefree(n)) fail(ErrorKind::domain, "twist parameter " + n.get_str() + " must be nonzero and square-free");
  ShortModel t = make_model(m.A * n, m.B * n * n, m.C * n * n * n);
  t.scaled = m.scaled;
  t.note = m.note;
  return t;
}

bool period_ratio_valid(const ShortModel& m) {
  Integer d = abs(m.disc);
  for (const auto& pp : intarith::factorize(d).factors())
    if (pp.exponent >= 6) return false;
  return true;
}

unsigned cubic_roots_mod(const ShortModel& m, const Integer& p) {
  if (p == 2 || !intarith::is_prime(p)) fail(ErrorKind::domain, p.get_str() + " is not an odd prime");
  if (mpz_divisible_p(m.disc.get_mpz_t(), p.get_mpz_t()))
    fail(ErrorKind::bad_reduction, "p = " + p.get_str() + " divides the discriminant " + m.disc.get_str());
  Poly f{mod(m.C, p), mod(m.B, p), mod(m.A, p), 1};
  // x^p mod f by square-and-multiply
  Poly result{1}, base{0, 1};
  base = poly_mod(base, f, p);
  for (std::size_t bit = mpz_sizeinbase(p.get_mpz_t(), 2); bit-- > 0;) {
    result = poly_mulmod(result, result, f, p);
    if (mpz_tstbit(p.get_mpz_t(), bit)) result = poly_mulmod(result, base, f, p);
  }
  result.resize(std::max<std::size_t>(result.size(), 2), 0);
  result[1] = mod(result[1] - 1, p);
  Poly g = poly_gcd(f, result, p);
  return static_cast<unsigned>(g.size() - 1);
}

unsigned two_torsion_count(const ShortModel& m, const Integer& p) { return 1 + cubic_roots_mod(m, p); }

std::string_view to_string(CurveTag t) {
  switch (t) {
    case CurveTag::c496: return "c496";
    case CurveTag::x3m1: return "x3m1";
    case CurveTag::c50: return "c50";
  }
  return "c496";
}

CurveTag parse_curve_tag(std::string_view s) {
  if (s == "c496") return CurveTag::c496;
  if (s == "x3m1") return CurveTag::x3m1;
  if (s == "c50") return CurveTag::c50;
  fail(ErrorKind::parse, "unknown curve '" + std::string(s) + "' (expected c496, x3m1 or c50)");
}

ShortModel reference_curve(CurveTag t) {
  switch (t) {
    case CurveTag::c496: return twist(make_model(0, 1, 1), -1);
    case CurveTag::x3m1: return twist(make_model(0, 0, -1), -1);
    case CurveTag::c50: return twist(short_model(1, 1, 1, -3, 1), -1);
  }
  fail(ErrorKind::internal, "unreachable");
}

bool tamagawa_domain(CurveTag t, const Integer& n) {
  if (n < 1 || !intarith::is_squarefree(n) || mod_ui(n, 2) == 0) return false;
  if (t == CurveTag::c496) return true;
  if (t == CurveTag::x3m1) return mod_ui(n, 3) != 0;
  return false;
}

Tamagawa tamagawa_product(CurveTag t, const Integer& n) {
  if (t == CurveTag::c50) fail(ErrorKind::incomplete_data, "no closed-form Tamagawa rule for the conductor 50 family");
  if (!tamagawa_domain(t, n)) fail(ErrorKind::domain, "n = " + n.get_str() + " outside the Tamagawa rule's domain for " + std::string(to_string(t)));
  Tamagawa out;
  auto push = [&](const Integer& p, unsigned c) {
    out.factors.push_back({p, c});
    out.product *= c;
  };
  const ShortModel ref = reference_curve(t);
  unsigned r8 = mod_ui(n, 8);
  if (t == CurveTag::c496) {
    push(2, r8 == 3 || r8 == 7 ? 1 : 2);
    for (const auto& pp : intarith::factorize(n).factors()) {
      if (pp.prime == 31) push(31, legendre(n / 31, 31) == 1 ? 4 : 2);
      else push(pp.prime, two_torsion_count(ref, pp.prime));
    }
  } else {
    push(2, r8 == 1 ? 3 : 1);
    push(3, 2);
    for (const auto& pp : intarith::factorize(n).factors()) push(pp.prime, two_torsion_count(ref, pp.prime));
  }
  return out;
}

int root_number_496(const Integer& n) {
  require_squarefree_positive(n);
  bool even = mod_ui(n, 2) == 0;
  unsigned r8 = mod_ui(n, 8);
  if (mpz_divisible_ui_p(n.get_mpz_t(), 31)) return (even || r8 == 5) ? -1 : 1;
  int leg = legendre(n, 31);
  if (even || r8 == 5) return leg;
  return -leg;
}

bool ShaReport::finalized() const {
  if (!sha || *sha <= 0 || sha->get_den() != 1) return false;
  return mpz_perfect_square_p(sha->get_num_mpz_t()) != 0;
}

namespace {

Rational rational_square(const NF4& c, const Integer& n) {
  auto sq = numfield::nf_square_rational(c);
  if (!sq) fail(ErrorKind::internal, "coefficient at n = " + n.get_str() + " has irrational square: " + c.to_string());
  return *sq;
}

}  // namespace

ShaReport sha_order_496(const Integer& n, const NF4& d_n) {
  require_squarefree_positive(n);
  unsigned r8 = mod_ui(n, 8);
  if (r8 != 1 && r8 != 3 && r8 != 7) fail(ErrorKind::domain, "n = " + n.get_str() + " is not 1, 3 or 7 mod 8");
  ShaReport rep;
  rep.n = n;
  rep.coeff = d_n;
  rep.root_number = root_number_496(n);
  rep.tamagawa = tamagawa_product(CurveTag::c496, n).product;
  if (d_n.is_zero()) {
    rep.coefficient_zero = true;
    return rep;
  }
  Rational d2 = rational_square(d_n, n);
  unsigned long two_power = 1ul << (intarith::nu(n, 31) + 1);
  rep.sha = Rational(two_power) * d2 / Rational(*rep.tamagawa);
  rep.sha->canonicalize();
  return rep;
}

ShaReport sha_order_x3m1(const Integer& n, const NF4& e_n) {
  require_squarefree_positive(n);
  if (mod_ui(n, 3) == 0) fail(ErrorKind::domain, "n = " + n.get_str() + " is divisible by 3");
  ShaReport rep;
  rep.n = n;
  rep.coeff = e_n;
  if (e_n.is_zero()) {
    rep.coefficient_zero = true;
    if (tamagawa_domain(CurveTag::x3m1, n)) rep.tamagawa = tamagawa_product(CurveTag::x3m1, n).product;
    return rep;
  }
  // nonzero coefficients only occur at odd n
  rep.tamagawa = tamagawa_product(CurveTag::x3m1, n).product;
  Rational e2 = rational_square(e_n, n);
  long scale = n == 1 ? 36 : 4;  // |E_{-1}(Q)_tors| = 6 enters squared at n = 1
  rep.sha = Rational(scale) * e2 / Rational(*rep.tamagawa);
  rep.sha->canonicalize();
  return rep;
}

LStatement lratio_50(const Integer& n, const NF4& c_n) {
  require_squarefree_positive(n);
  if (mpz_divisible_ui_p(n.get_mpz_t(), 5)) fail(ErrorKind::domain, "n = " + n.get_str() + " is divisible by 5");
  LStatement s;
  s.n = n;
  s.coeff_squared = rational_square(c_n, n);
  s.constant = "L(E_{-1},1)";
  s.text = "L(E_{-" + n.get_str() + "},1) = L(E_{-1},1)/sqrt(" + n.get_str() + ") * " + s.coeff_squared.get_str();
  return s;
}

SupportCheck c27_vanishes_two_mod_three(const series::Series& f) {
  SupportCheck out;
  for (std::size_t n = 1; n <= f.length(); ++n) {
    Integer z(static_cast<unsigned long>(n));
    if (n % 3 == 2 && intarith::is_squarefree(z) && !f[n].is_zero()) out.violations.push_back(z);
  }
  out.holds = out.violations.empty();
  return out;
}

SupportCheck c27_h_support(const series::Series& h) {
  SupportCheck out;
  for (std::size_t n = 1; n <= h.length(); ++n) {
    if (h[n].is_zero()) continue;
    bool ok = n % 3 == 0 && legendre(Integer(static_cast<unsigned long>(n / 3)), 3) == 1;
    if (!ok) out.violations.push_back(Integer(static_cast<unsigned long>(n)));
  }
  out.holds = out.violations.empty();
  return out;
}

}  // namespace waldo::curves
