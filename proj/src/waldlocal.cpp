#include "waldo/waldlocal.hpp"

#include <sstream>

#include "waldo/intarith.hpp"

namespace waldo::waldlocal {

namespace {

constexpr const char* kModule = "waldlocal";

[[noreturn]] void fail(ErrorKind kind, const std::string& what) { throw Error(kModule, kind, what); }

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

RadicalValue rat(long v) { return RadicalValue(Rational(v)); }

// c p^(-1/2) as a radical
RadicalValue inv_sqrt(const Integer& p, const Rational& c) { return RadicalValue(c / p, p); }

// The sign s with s = p^(1/2) chi_0(p^-1) delta; the C5/C6 conditions
// compare Hilbert symbols against it. Requires a concrete delta = +-p^(-1/2).
int delta_sign(const LocalFunction& fn, const LocalData& data) {
  if (!fn.delta.value)
    fail(ErrorKind::incomplete_data, fn.name() + " needs a concrete delta to decide its case split");
  RadicalValue s = RadicalValue(Rational(data.chi0.value_at_p_inverse), fn.p) * *fn.delta.value;
  if (s.radicand() != 1 || (s.coeff() != 1 && s.coeff() != -1))
    fail(ErrorKind::incomplete_data,
         fn.name() + ": p^(1/2) chi_0(p^-1) delta = " + s.to_string() + " is not +-1, case split undefined");
  return s.coeff() > 0 ? 1 : -1;
}

DeltaPoly odd_table(const LocalFunction& fn, const LocalData& d, const Integer& n) {
  const Integer& p = fn.p;
  unsigned nu = intarith::nu(n, p);
  int hp = intarith::hilbert(Rational(p), Rational(n), intarith::Place::prime(p));
  int chi = d.chi0.value_at_p_inverse;  // chi_0,p(p) = chi_0,p(p^-1) for quadratic chi
  switch (fn.kind) {
    case Kind::c0:
      return DeltaPoly::constant(rat(1));
    case Kind::c1:
      return nu == 0 ? DeltaPoly::constant(rat(1)) : DeltaPoly::term(1, rat(1));
    case Kind::c2:
      if (nu == 1) return DeltaPoly::constant(rat(1));
      return DeltaPoly::constant(rat(1)) + DeltaPoly::term(-1, inv_sqrt(p, Rational(-hp * chi)));
    case Kind::c3:
      if (nu == 0) return DeltaPoly::constant(rat(1));
      return DeltaPoly::term(1, rat(1)) + DeltaPoly::constant(inv_sqrt(p, Rational(-hp * chi)));
    case Kind::c4:
      if (nu == 0) return DeltaPoly::constant(rat(0));
      return DeltaPoly::term(1, RadicalValue(Rational(1) / (p - 1)));
    case Kind::c5: {
      if (nu == 1) return DeltaPoly::constant(rat(1));
      int s = delta_sign(fn, d);
      return DeltaPoly::constant(hp == -s ? RadicalValue(1, 2) : rat(0));
    }
    case Kind::c6: {
      if (nu == 0) return DeltaPoly::constant(rat(1));
      int s = delta_sign(fn, d);
      return hp == -s ? DeltaPoly::term(1, RadicalValue(1, 2)) : DeltaPoly::constant(rat(0));
    }
    default:
      fail(ErrorKind::internal, "not a c-table kind");
  }
}

DeltaPoly two_table(const LocalFunction& fn, const LocalData& d, const Integer& n) {
  unsigned nu = intarith::nu(n, 2);
  const auto two = intarith::Place::prime(2);
  // positive square-free n: (n,-1)_2 and (2,n)_2 depend only on the odd part
  Integer odd = intarith::valuation(n, 2).unit;
  int hm = intarith::hilbert(Rational(odd), Rational(-1), two);
  int h2 = intarith::hilbert(Rational(2), Rational(odd), two);
  int cm = d.chi0.value_at_minus_one;
  int chi2 = d.chi0.value_at_p_inverse;
  bool matches = hm == cm;
  // delta - (2,n)_2 chi_0,2(2) 2^(-1/2)
  auto shifted = [&](long lead) {
    return DeltaPoly::term(1, rat(lead)) + DeltaPoly::constant(inv_sqrt(2, Rational(-h2 * chi2)));
  };
  switch (fn.kind) {
    case Kind::c0:
      return nu == 0 ? DeltaPoly::constant(rat(1)) : DeltaPoly::term(1, rat(1));
    case Kind::c1:
      if (nu == 0 && matches) return shifted(1);
      return DeltaPoly::constant(rat(1));
    case Kind::c2:
      if (nu == 0 && matches) return DeltaPoly::term(1, rat(1));
      return DeltaPoly::constant(rat(0));
    case Kind::c3:
      if (nu == 0) return DeltaPoly::term(-1, rat(1));
      return matches ? shifted(1) : DeltaPoly::constant(rat(1));
    case Kind::c4:
      if (nu == 0) return DeltaPoly::constant(rat(0));
      return matches ? shifted(2) : DeltaPoly::constant(rat(1));
    case Kind::c5: {
      if (nu == 1 || !matches) return DeltaPoly::constant(rat(1));
      int s = delta_sign(fn, d);
      return h2 == s ? DeltaPoly::constant(rat(0)) : DeltaPoly::term(1, RadicalValue(1, 2));
    }
    case Kind::c6: {
      if (nu == 0) return DeltaPoly::term(-1, rat(1));
      if (!matches) return DeltaPoly::constant(rat(1));
      int s = delta_sign(fn, d);
      return h2 == s ? DeltaPoly::constant(rat(0)) : DeltaPoly::term(1, RadicalValue(1, 2));
    }
    default:
      fail(ErrorKind::internal, "not a c-table kind");
  }
}

bool gamma_ev(const Integer& p, unsigned e, const Integer& upsilon, const Integer& u) {
  if (intarith::nu(u, p) != e) return false;
  return series::square_class(u, p) == series::square_class(upsilon, p);
}

LocalFunction c_fn(Kind kind, const Integer& p, Delta delta) {
  LocalFunction f;
  f.kind = kind;
  f.p = p;
  f.delta = std::move(delta);
  return f;
}

LocalFunction gamma_fn(Kind kind, const Integer& p, unsigned e, const Integer& upsilon = 1) {
  LocalFunction f;
  f.kind = kind;
  f.p = p;
  f.e = e;
  f.upsilon = upsilon;
  return f;
}

// smallest positive integer lying in the class c
Integer class_representative(const SquareClass& c, const Integer& p) {
  return c.parity ? Integer(p * c.unit) : c.unit;
}

// Case split on Omega_p when m_p >= 1 and lambda_p = 0. Returns true if some
// valuation-0 class is present, false if all present classes have
// valuation 1; throws when the available membership data cannot decide.
bool omega_has_unit_class(const LocalData& d) {
  if (!d.omega_set) fail(ErrorKind::incomplete_data, "Omega_" + d.p.get_str() + " is required when m_p >= 1 and lambda_p = 0");
  bool unit_present = false, unit_unknown = false, any_present = false;
  for (const auto& c : all_square_classes(d.p)) {
    auto m = d.omega_set->at(c);
    if (m == Membership::present) any_present = true;
    if (c.parity == 0 && m == Membership::present) unit_present = true;
    if (c.parity == 0 && m == Membership::unknown) unit_unknown = true;
  }
  if (unit_present) return true;
  if (unit_unknown || !any_present)
    fail(ErrorKind::incomplete_data,
         "cannot decide whether Omega_" + d.p.get_str() + " meets the unit classes: " + d.omega_set->to_string());
  return false;
}

}  // namespace

std::string_view to_string(RepType t) {
  switch (t) {
    case RepType::principal: return "principal";
    case RepType::special: return "special";
    case RepType::supercuspidal: return "supercuspidal";
    case RepType::undetermined: return "undetermined";
  }
  return "undetermined";
}

RepType rep_type(const Integer& p, unsigned nu_p_level, unsigned nu_2_level, bool a_p_nonzero) {
  if (!intarith::is_prime(p)) fail(ErrorKind::domain, p.get_str() + " is not prime");
  if (p == 2) {
    if (nu_2_level == 0) return RepType::principal;
    if (nu_2_level == 1) return a_p_nonzero ? RepType::special : RepType::undetermined;
    if (nu_2_level == 2 || nu_2_level % 2 == 1) return RepType::supercuspidal;
    return RepType::undetermined;
  }
  if (nu_p_level == 0) return RepType::principal;
  if (nu_p_level == 1 && a_p_nonzero) return RepType::special;
  return RepType::undetermined;
}

bool h2_applicable(const Integer& M, bool lambda_2_nonzero) {
  if (M < 1) fail(ErrorKind::domain, "level must be positive");
  unsigned v = intarith::nu(M, 2);
  return v == 0 || (v == 1 && lambda_2_nonzero) || v >= 4;
}

void RadicalSum::add(const RadicalValue& v) {
  if (v.is_zero()) return;
  auto& c = terms_[v.radicand()];
  c += v.coeff();
  if (c == 0) terms_.erase(v.radicand());
}

std::optional<RadicalValue> RadicalSum::single() const {
  if (terms_.empty()) return RadicalValue{};
  if (terms_.size() > 1) return std::nullopt;
  return RadicalValue(terms_.begin()->second, terms_.begin()->first);
}

std::string RadicalSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [r, c] : terms_) {
    std::string t = RadicalValue(c, r).to_string();
    if (out.empty()) out = t;
    else if (t[0] == '-') out += " - " + t.substr(1);
    else out += " + " + t;
  }
  return out;
}

DeltaPoly DeltaPoly::constant(const RadicalValue& v) { return term(0, v); }

DeltaPoly DeltaPoly::term(int exponent, const RadicalValue& v) {
  if (exponent < -1 || exponent > 1) fail(ErrorKind::internal, "delta exponent out of range");
  DeltaPoly d;
  if (!v.is_zero()) d.terms_[exponent] = v;
  return d;
}

DeltaPoly& DeltaPoly::operator+=(const DeltaPoly& other) {
  for (const auto& [e, v] : other.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = v;
      continue;
    }
    if (it->second.radicand() != v.radicand())
      fail(ErrorKind::internal, "mixed radicands in one delta coefficient");
    RadicalValue sum(it->second.coeff() + v.coeff(), v.radicand());
    if (sum.is_zero()) terms_.erase(it);
    else it->second = sum;
  }
  return *this;
}

bool DeltaPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.count(0)); }

RadicalValue DeltaPoly::constant_value() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? RadicalValue{} : it->second;
}

RadicalSum DeltaPoly::specialize(const RadicalValue& delta) const {
  RadicalSum out;
  for (const auto& [e, v] : terms_) {
    if (e == 0) out.add(v);
    else if (e == 1) out.add(v * delta);
    else out.add(v * delta.inverse());
  }
  return out;
}

std::string DeltaPoly::to_string(std::string_view var) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [e, v] = *it;
    std::string t = v.to_string();
    if (e != 0) {
      std::string power = std::string(var) + (e == -1 ? "^-1" : "");
      if (v == RadicalValue(1)) t = power;
      else if (v == RadicalValue(-1)) t = "-" + power;
      else t += "*" + power;
    }
    if (out.empty()) out = t;
    else if (t[0] == '-') out += " - " + t.substr(1);
    else out += " + " + t;
  }
  return out;
}

std::vector<SquareClass> all_square_classes(const Integer& p) {
  std::vector<SquareClass> out;
  for (unsigned parity : {0u, 1u}) {
    if (p == 2) {
      for (int u : {1, 3, 5, 7}) out.push_back({parity, u});
    } else {
      out.push_back({parity, 1});
      out.push_back({parity, series::least_nonresidue(p)});
    }
  }
  return out;
}

std::string class_label(const SquareClass& c, const Integer& p) { return class_representative(c, p).get_str(); }

OmegaSet::OmegaSet(const Integer& p) : p_(p) {
  if (!intarith::is_prime(p)) fail(ErrorKind::domain, p.get_str() + " is not prime");
  for (const auto& c : all_square_classes(p)) members_[c] = Membership::unknown;
}

Membership OmegaSet::at(const SquareClass& c) const {
  auto it = members_.find(c);
  if (it == members_.end()) fail(ErrorKind::domain, "not a square class representative for p = " + p_.get_str());
  return it->second;
}

void OmegaSet::set(const SquareClass& c, Membership m) {
  if (!members_.count(c)) fail(ErrorKind::domain, "not a square class representative for p = " + p_.get_str());
  members_[c] = m;
}

std::vector<SquareClass> OmegaSet::with(Membership m) const {
  std::vector<SquareClass> out;
  for (const auto& [c, v] : members_)
    if (v == m) out.push_back(c);
  return out;
}

std::string OmegaSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [c, v] : members_) {
    if (v == Membership::absent) continue;
    if (!first) os << ", ";
    first = false;
    os << class_label(c, p_) << (v == Membership::unknown ? "?" : "");
  }
  os << '}';
  return os.str();
}

void LocalData::validate() const {
  if (!intarith::is_prime(p)) fail(ErrorKind::domain, p.get_str() + " is not prime");
  if (k < 3 || k % 2 == 0) fail(ErrorKind::domain, "k must be odd and >= 3");
  if (m_p >= 2 && !lambda_zero) fail(ErrorKind::domain, "m_p >= 2 forces lambda_p = 0");
  bool needs_omega = m_p == 1 && !lambda_zero;
  if (needs_omega != omega.has_value())
    fail(ErrorKind::domain, "omega_p must be given exactly when m_p = 1 and lambda_p != 0");
  if (omega && *omega != 1 && *omega != -1) fail(ErrorKind::domain, "omega_p must be +-1");
  if (omega_set && omega_set->p() != p) fail(ErrorKind::domain, "Omega set belongs to another prime");
}

int omega_from_lambda(const Integer& lambda_p, const Integer& p, int k) {
  Integer scale = ipow(p, static_cast<unsigned long>((k - 3) / 2));
  if (lambda_p == -scale) return 1;
  if (lambda_p == scale) return -1;
  fail(ErrorKind::domain, "lambda_p = " + lambda_p.get_str() + " is not -omega p^((k-3)/2)");
}

LocalData make_local_data(const Integer& p, const Integer& M, const Integer& lambda_p,
                          const characters::QuadDirichletChar& chi, int k, std::optional<OmegaSet> omega_set) {
  LocalData d;
  d.p = p;
  d.m_p = intarith::nu(M, p);
  d.lambda_zero = lambda_p == 0;
  d.k = k;
  if (d.m_p == 1 && !d.lambda_zero) d.omega = omega_from_lambda(lambda_p, p, k);
  auto chi0 = characters::chi_zero(chi, k);
  d.chi0 = characters::local_unit_facts(chi0, p);
  if (p == 2) d.chi0_trivial_on_one_plus_four = characters::trivial_on_one_plus_four(chi0);
  if (d.m_p == 0) d.alpha_distinct = lambda_p * lambda_p != 4 * ipow(p, static_cast<unsigned long>(k - 2));
  d.omega_set = std::move(omega_set);
  d.validate();
  return d;
}

RadicalValue lambda_prime(const Integer& p, int omega) { return inv_sqrt(p, Rational(-omega)); }

std::string LocalFunction::name() const {
  std::string ps = p.get_str();
  switch (kind) {
    case Kind::gamma_ev: return "gamma_{" + std::to_string(e) + "," + upsilon.get_str() + "}";
    case Kind::gamma_prime: return "gamma'_{" + std::to_string(e) + "," + upsilon.get_str() + "}";
    case Kind::gamma_double_prime: return "gamma''_" + std::to_string(e);
    case Kind::gamma_zero: return "gamma^0_" + std::to_string(e);
    default: break;
  }
  int i = static_cast<int>(kind) - static_cast<int>(Kind::c0);
  return "c^(" + std::to_string(i) + ")_{" + ps + "," + delta.symbol + "}";
}

unsigned n_tilde(const LocalData& d) {
  d.validate();
  if (d.p != 2) {
    if (d.m_p >= 1 && d.lambda_zero) return omega_has_unit_class(d) ? d.m_p : d.m_p + 1;
    if (d.m_p == 1) return 1;
    return d.chi0.ramified ? 1 : 0;
  }
  if (d.m_p >= 1 && d.lambda_zero) return omega_has_unit_class(d) ? d.m_p + 2 : d.m_p + 3;
  return d.chi0_trivial_on_one_plus_four ? 2 : 3;
}

Integer n_tilde_total(const std::map<Integer, LocalData>& data_by_prime) {
  if (!data_by_prime.count(2)) fail(ErrorKind::incomplete_data, "local data at p = 2 is required");
  Integer total = 1;
  for (const auto& [p, d] : data_by_prime) {
    if (d.p != p) fail(ErrorKind::domain, "local data keyed under the wrong prime");
    total *= ipow(p, n_tilde(d));
  }
  return total;
}

USet u_set(const LocalData& d, unsigned e) {
  unsigned nt = n_tilde(d);
  if (e != nt)
    fail(ErrorKind::unsupported_level,
         "U_" + d.p.get_str() + "(" + std::to_string(e) + ") is only defined here for e = n~_p = " + std::to_string(nt));
  USet out;
  const Integer& p = d.p;
  Delta alpha{"alpha", std::nullopt}, alpha2{"alpha'", std::nullopt};

  if (d.m_p >= 1 && d.lambda_zero) {
    unsigned parity = omega_has_unit_class(d) ? 0 : 1;
    for (const auto& c : all_square_classes(p)) {
      if (c.parity != parity) continue;
      auto m = d.omega_set->at(c);
      if (m == Membership::present) out.members.push_back(gamma_fn(Kind::gamma_ev, p, parity, class_representative(c, p)));
      else if (m == Membership::unknown) out.unknown.push_back(c);
    }
    return out;
  }

  if (d.m_p == 1) {
    Delta lp{"lambda'", lambda_prime(p, *d.omega)};
    if (p != 2) {
      out.members.push_back(c_fn(d.chi0.ramified ? Kind::c6 : Kind::c5, p, lp));
    } else if (d.chi0_trivial_on_one_plus_four) {
      out.members.push_back(c_fn(Kind::c5, p, lp));
    } else {
      out.members.push_back(c_fn(Kind::c6, p, lp));
      out.members.push_back(gamma_fn(Kind::gamma_double_prime, p, 0));
    }
    return out;
  }

  // m_p = 0
  auto pair = [&](Kind first, Kind second_same) {
    out.members.push_back(c_fn(first, p, alpha));
    if (d.alpha_distinct) out.members.push_back(c_fn(first, p, alpha2));
    else out.members.push_back(c_fn(second_same, p, alpha));
  };
  if (p != 2) {
    if (!d.chi0.ramified) out.members.push_back(c_fn(Kind::c0, p, Delta{"lambda'", std::nullopt}));
    else pair(Kind::c3, Kind::c4);
    return out;
  }
  if (d.chi0_trivial_on_one_plus_four) {
    pair(Kind::c1, Kind::c2);
  } else {
    pair(Kind::c3, Kind::c4);
    out.members.push_back(gamma_fn(Kind::gamma_double_prime, p, 0));
  }
  return out;
}

DeltaPoly eval_local(const LocalFunction& fn, const LocalData& data, const Integer& n) {
  if (n < 1 || !intarith::is_squarefree(n)) fail(ErrorKind::domain, "local functions are evaluated at square-free n >= 1");
  if (fn.p != data.p) fail(ErrorKind::domain, "local function and local data are at different primes");
  const Integer& p = fn.p;
  switch (fn.kind) {
    case Kind::gamma_ev:
      return DeltaPoly::constant(rat(gamma_ev(p, fn.e, fn.upsilon, n) ? 1 : 0));
    case Kind::gamma_prime: {
      if (p != 2) fail(ErrorKind::domain, "gamma' is defined only at p = 2");
      Rational v = Rational(int(gamma_ev(p, fn.e, fn.upsilon, n)) + int(gamma_ev(p, fn.e, 5 * fn.upsilon, n)), 2);
      v.canonicalize();
      return DeltaPoly::constant(RadicalValue(v));
    }
    case Kind::gamma_double_prime:
      if (p != 2) fail(ErrorKind::domain, "gamma'' is defined only at p = 2");
      return DeltaPoly::constant(rat(intarith::nu(n, 2) == fn.e ? 1 : 0));
    case Kind::gamma_zero: {
      if (p != 2) fail(ErrorKind::domain, "gamma^0 is defined only at p = 2");
      unsigned nu = intarith::nu(n, 2);
      Integer odd = intarith::valuation(n, 2).unit;
      int hm = intarith::hilbert(Rational(odd), Rational(-1), intarith::Place::prime(2));
      bool hit = (nu == fn.e && hm == -data.chi0.value_at_minus_one) || nu == fn.e + 1;
      return DeltaPoly::constant(rat(hit ? 1 : 0));
    }
    default:
      break;
  }
  DeltaPoly raw = p == 2 ? two_table(fn, data, n) : odd_table(fn, data, n);
  if (fn.delta.value) {
    auto v = raw.specialize(*fn.delta.value).single();
    if (v) return DeltaPoly::constant(*v);
  }
  return raw;
}

OmegaSet infer_omega(const std::vector<series::Series>& series_list, const Integer& p,
                     const std::vector<SquareClass>& proven_absent) {
  OmegaSet out(p);
  for (const auto& f : series_list)
    for (std::size_t n = 1; n <= f.length(); ++n)
      if (!f[n].is_zero()) out.set(series::square_class(Integer(static_cast<unsigned long>(n)), p), Membership::present);
  for (const auto& c : proven_absent) {
    if (out.at(c) == Membership::present)
      fail(ErrorKind::hypothesis_violation, "class " + class_label(c, p) + " is witnessed but listed as absent");
    out.set(c, Membership::absent);
  }
  return out;
}

}  // namespace waldo::waldlocal
