#include "waldo/characters.hpp"

#include <vector>

namespace waldo::characters {

namespace {

constexpr const char* kModule = "characters";

[[noreturn]] void fail(ErrorKind kind, const std::string& what) { throw Error(kModule, kind, what); }

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace

Integer quadratic_conductor(const Integer& t) {
  if (t == 0) fail(ErrorKind::domain, "quadratic character of 0");
  Integer r = t % 4;
  if (r < 0) r += 4;
  return r == 1 ? Integer(abs(t)) : Integer(4 * abs(t));
}

QuadDirichletChar::QuadDirichletChar(Integer modulus, Integer twist)
    : modulus_(std::move(modulus)), twist_(std::move(twist)) {
  if (modulus_ < 1) fail(ErrorKind::domain, "modulus must be positive, got " + modulus_.get_str());
  if (!intarith::is_squarefree(twist_)) fail(ErrorKind::domain, "twist " + twist_.get_str() + " is not square-free");
  conductor_ = quadratic_conductor(twist_);
  if (!mpz_divisible_p(modulus_.get_mpz_t(), conductor_.get_mpz_t()))
    fail(ErrorKind::domain,
         "conductor " + conductor_.get_str() + " of (" + twist_.get_str() + "/.) does not divide " + modulus_.get_str());
}

int QuadDirichletChar::value(const Integer& n) const {
  Integer g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), modulus_.get_mpz_t());
  if (g != 1) return 0;
  return intarith::kronecker(twist_, n);
}

std::string QuadDirichletChar::to_string() const {
  if (is_trivial()) return "trivial mod " + modulus_.get_str();
  return "(" + twist_.get_str() + "/.) mod " + modulus_.get_str();
}

QuadDirichletChar chi_t(const Integer& t) {
  if (!intarith::is_squarefree(t)) fail(ErrorKind::domain, "t = " + t.get_str() + " is not square-free");
  return {quadratic_conductor(t), t};
}

QuadDirichletChar chi_zero(const QuadDirichletChar& chi, int k) {
  if (k < 3 || k % 2 == 0) fail(ErrorKind::domain, "weight numerator k must be odd and >= 3, got " + std::to_string(k));
  Integer d = chi.twist();
  if ((k - 1) / 2 % 2 == 1) d = intarith::signed_squarefree_part(-d);
  Integer m;
  Integer four = 4;
  mpz_lcm(m.get_mpz_t(), chi.modulus().get_mpz_t(), four.get_mpz_t());
  return {m, d};
}

LocalEval local_eval(const QuadDirichletChar& chi, const Integer& p, const Integer& a) {
  if (a == 0) fail(ErrorKind::domain, "local_eval at a = 0");
  if (!intarith::is_prime(p)) fail(ErrorKind::domain, p.get_str() + " is not prime");
  LocalEval out;
  const Integer& N = chi.modulus();
  if (!mpz_divisible_p(N.get_mpz_t(), p.get_mpz_t())) {
    unsigned r = intarith::nu(a, p);
    int c = chi.value(p);
    out.value = (r % 2 == 0) ? 1 : c;
    return out;
  }

  out.branch = Branch::crt;
  std::vector<intarith::Congruence> system;
  unsigned e = intarith::nu(a, p) + intarith::nu(N, p);
  system.push_back({a, ipow(p, e)});
  for (const auto& pp : intarith::factorize(N).factors()) {
    if (pp.prime == p) continue;
    system.push_back({1, ipow(pp.prime, pp.exponent)});
  }
  Integer b = intarith::crt(system);
  out.b = b;
  out.b_factored = intarith::factorize(b);

  int v = 1;
  for (const auto& pp : out.b_factored.factors()) {
    if (pp.prime == p) continue;
    // chi(l) is +-1 here since b is a unit away from p; inverse equals itself
    if (pp.exponent % 2) v *= chi.value(pp.prime);
  }
  out.value = v;
  return out;
}

LocalUnitFacts local_unit_facts(const QuadDirichletChar& chi, const Integer& p) {
  LocalUnitFacts f;
  f.ramified = mpz_divisible_p(chi.conductor().get_mpz_t(), p.get_mpz_t()) != 0;
  f.value_at_minus_one = local_eval(chi, p, -1).value;
  f.value_at_p_inverse = local_eval(chi, p, p).value;
  return f;
}

bool trivial_on_one_plus_four(const QuadDirichletChar& chi) { return local_eval(chi, 2, 5).value == 1; }

int infinite_component(const QuadDirichletChar& chi, const Integer& alpha) {
  if (alpha > 0) return 1;
  return chi.twist() < 0 ? -1 : 1;
}

}  // namespace waldo::characters
