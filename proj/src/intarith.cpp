#include "waldo/intarith.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <sstream>

namespace waldo::intarith {

namespace {

constexpr const char* kModule = "intarith";
constexpr std::uint32_t kTrialLimit = 1'000'000;

[[noreturn]] void fail(ErrorKind kind, const std::string& what) { throw Error(kModule, kind, what); }

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// bit 1 of the two's complement value, i.e. n mod 4 in {2, 3}
unsigned mod8(const Integer& n) { return static_cast<unsigned>(mpz_fdiv_ui(n.get_mpz_t(), 8)); }

// (2/n) for odd n, as a function of n mod 8
int two_over(const Integer& n) {
  switch (mod8(n)) {
    case 1:
    case 7: return 1;
    case 3:
    case 5: return -1;
    default: return 0;
  }
}

bool miller_rabin_round(const Integer& n, const Integer& d, unsigned s, const Integer& base) {
  Integer a = base % n;
  if (a == 0) return true;
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Integer n1 = n - 1;
  if (x == 1 || x == n1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

Integer pollard_brent(const Integer& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer c = seed, y = 2 + seed, x, g = 1, q = 1, ys;
  unsigned long r = 1;
  const unsigned long m = 128;
  auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        Integer diff = abs(x - y);
        q = (q * diff) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
    if (r > (1ul << 26)) return n;
  }
  if (g == n) {
    do {
      ys = f(ys);
      Integer diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void split(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long seed = 1; seed < 64; ++seed) {
    Integer d = pollard_brent(n, seed);
    if (d != 1 && d != n) {
      split(d, out);
      split(n / d, out);
      return;
    }
  }
  fail(ErrorKind::factorization_failure, "could not split " + n.get_str());
}

}  // namespace

Factorization Factorization::from_factors(std::vector<PrimePower> factors) {
  Factorization f;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& pp = factors[i];
    if (pp.exponent == 0) fail(ErrorKind::domain, "zero exponent in factorization");
    if (i > 0 && !(factors[i - 1].prime < pp.prime)) fail(ErrorKind::domain, "primes not strictly increasing");
    if (!is_prime(pp.prime)) fail(ErrorKind::domain, pp.prime.get_str() + " is not prime");
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    f.value_ *= power;
  }
  f.factors_ = std::move(factors);
  return f;
}

unsigned Factorization::exponent_of(const Integer& p) const {
  for (const auto& pp : factors_)
    if (pp.prime == p) return pp.exponent;
  return 0;
}

std::string Factorization::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " * ";
    os << factors_[i].prime.get_str();
    if (factors_[i].exponent > 1) os << '^' << factors_[i].exponent;
  }
  return os.str();
}

Valuation valuation(const Integer& n, const Integer& p) {
  if (n == 0) fail(ErrorKind::undefined_valuation, "valuation of 0 is undefined");
  if (p < 2) fail(ErrorKind::domain, "valuation base must be prime, got " + p.get_str());
  Valuation v;
  v.unit = n;
  while (mpz_divisible_p(v.unit.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(v.unit.get_mpz_t(), v.unit.get_mpz_t(), p.get_mpz_t());
    ++v.exponent;
  }
  return v;
}

Integer squarefree_part(const Integer& n) {
  if (n < 1) fail(ErrorKind::domain, "squarefree_part needs n >= 1, got " + n.get_str());
  Integer m = 1;
  for (const auto& pp : factorize(n).factors())
    if (pp.exponent % 2) m *= pp.prime;
  return m;
}

Integer signed_squarefree_part(const Integer& n) {
  if (n == 0) fail(ErrorKind::domain, "square-free part of 0");
  Integer m = squarefree_part(abs(n));
  return n < 0 ? Integer(-m) : m;
}

bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  for (const auto& pp : factorize(abs(n)).factors())
    if (pp.exponent > 1) return false;
  return true;
}

int kronecker(const Integer& a_in, const Integer& n_in) {
  Integer a = a_in, b = n_in;
  if (b == 0) return abs(a) == 1 ? 1 : 0;
  if (mpz_even_p(a.get_mpz_t()) && mpz_even_p(b.get_mpz_t())) return 0;

  int k = 1;
  mp_bitcnt_t v = mpz_scan1(b.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(b.get_mpz_t(), b.get_mpz_t(), v);
  if (v % 2) k = two_over(a);
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }
  // b is odd and positive from here on
  while (true) {
    if (a == 0) return b > 1 ? 0 : k;
    v = mpz_scan1(a.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), v);
    if (v % 2) k *= two_over(b);
    if (mod8(a) % 4 == 3 && mod8(b) % 4 == 3) k = -k;
    Integer r = abs(a);
    mpz_fdiv_r(a.get_mpz_t(), b.get_mpz_t(), r.get_mpz_t());
    b = r;
  }
}

Place Place::prime(Integer p) {
  if (!is_prime(p)) fail(ErrorKind::domain, p.get_str() + " is not a prime place");
  Place v;
  v.infinite_ = false;
  v.p_ = std::move(p);
  return v;
}

int hilbert(const Rational& a_in, const Rational& b_in, const Place& v) {
  if (a_in == 0 || b_in == 0) fail(ErrorKind::domain, "Hilbert symbol of zero");
  // a * den^2 has the same square class as a, so num * den will do
  Integer a = a_in.get_num() * a_in.get_den();
  Integer b = b_in.get_num() * b_in.get_den();
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;

  const Integer& p = v.p();
  auto [s, ua] = valuation(a, p);
  auto [t, ub] = valuation(b, p);
  if (p == 2) {
    // (2^s a, 2^t b)_2 = (2/|a|)^t (2/|b|)^s (-1)^((a-1)(b-1)/4)
    int result = 1;
    if (t % 2) result *= two_over(abs(ua));
    if (s % 2) result *= two_over(abs(ub));
    if (mod8(ua) % 4 == 3 && mod8(ub) % 4 == 3) result = -result;
    return result;
  }
  // (p^s a, p^t b)_p = (-1/p)^(st) (a/p)^t (b/p)^s
  int result = 1;
  if ((s * t) % 2) result *= kronecker(-1, p);
  if (t % 2) result *= kronecker(ua, p);
  if (s % 2) result *= kronecker(ub, p);
  return result;
}

Integer crt(std::span<const Congruence> system) {
  Integer x = 0, m = 1;
  for (const auto& c : system) {
    if (c.modulus <= 0) fail(ErrorKind::domain, "CRT modulus must be positive, got " + c.modulus.get_str());
    Integer r = c.residue % c.modulus;
    if (r < 0) r += c.modulus;
    // x + m*k = r (mod modulus)  <=>  m*k = r - x (mod modulus)
    Integer g, s, unused;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), unused.get_mpz_t(), m.get_mpz_t(), c.modulus.get_mpz_t());
    Integer diff = r - x;
    if (!mpz_divisible_p(diff.get_mpz_t(), g.get_mpz_t()))
      fail(ErrorKind::no_solution, "inconsistent congruences modulo " + m.get_str() + " and " + c.modulus.get_str());
    Integer mod_g = c.modulus / g;
    Integer k = (diff / g * s) % mod_g;
    x += m * k;
    m *= mod_g;
    x %= m;
    if (x < 0) x += m;
  }
  return x == 0 ? m : x;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  static constexpr std::array<unsigned, 13> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned p : bases) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  Integer d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  for (unsigned p : bases)
    if (!miller_rabin_round(n, d, s, p)) return false;
  // Beyond 3.3e24 the fixed bases are no longer a proof; add GMP's own rounds.
  static const Integer kDeterministicBound("3317044064679887385961981");
  if (n >= kDeterministicBound) return mpz_probab_prime_p(n.get_mpz_t(), 25) != 0;
  return true;
}

Factorization factorize(const Integer& n_in) {
  if (n_in < 1) fail(ErrorKind::domain, "factorize needs n >= 1, got " + n_in.get_str());
  std::map<Integer, unsigned> found;
  Integer n = n_in;
  for (std::uint32_t p : small_primes()) {
    if (Integer(p) * p > n) break;
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    found[Integer(p)] = e;
  }
  if (n > 1) split(n, found);

  std::vector<PrimePower> factors;
  factors.reserve(found.size());
  for (auto& [p, e] : found) factors.push_back({p, e});
  return Factorization::from_factors(std::move(factors));
}

}  // namespace waldo::intarith
