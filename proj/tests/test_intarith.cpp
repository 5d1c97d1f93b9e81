#include <doctest.h>

#include "oracles.hpp"
#include "waldo/intarith.hpp"

using namespace waldo;
using namespace waldo::intarith;

namespace {

int mpz_oracle(const Integer& a, const Integer& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

Rational random_rational() {
  long num = 0;
  while (num == 0) num = oracle::uniform(-400, 400);
  return Rational(num, oracle::uniform(1, 60));
}

std::vector<Place> places_for(const Rational& a, const Rational& b) {
  std::vector<Place> out{Place::infinity()};
  Integer all = 2 * a.get_num() * a.get_den() * b.get_num() * b.get_den();
  for (const auto& pp : factorize(abs(all)).factors()) out.push_back(Place::prime(pp.prime));
  return out;
}

}  // namespace

TEST_SUITE("intarith") {
  TEST_CASE("valuation and square-free parts") {
    CHECK(valuation(Integer(496), 2).exponent == 4);
    CHECK(valuation(Integer(496), 2).unit == 31);
    CHECK(valuation(Integer(-54), 3).unit == -2);
    CHECK_THROWS_AS(valuation(Integer(0), 2), Error);
    CHECK(squarefree_part(Integer(72)) == 2);
    CHECK(squarefree_part(Integer(1)) == 1);
    CHECK(signed_squarefree_part(Integer(-12)) == -3);
    CHECK(is_squarefree(Integer(30)));
    CHECK_FALSE(is_squarefree(Integer(18)));
  }

  TEST_CASE("kronecker matches GMP on random pairs") {
    for (int i = 0; i < 2000; ++i) {
      Integer a = oracle::uniform(-100000, 100000), n = oracle::uniform(-100000, 100000);
      CHECK_MESSAGE(kronecker(a, n) == mpz_oracle(a, n), a.get_str() << " " << n.get_str());
    }
    Integer big("123456789012345678901234567891");
    CHECK(kronecker(big, Integer(1000003)) == mpz_oracle(big, Integer(1000003)));
    CHECK(kronecker(Integer(-1), Integer(31)) == -1);
    CHECK(kronecker(Integer(2), Integer(-7)) == 1);
    CHECK(kronecker(Integer(5), Integer(0)) == 0);
    CHECK(kronecker(Integer(-1), Integer(0)) == 1);
  }

  TEST_CASE("kronecker agrees with brute-force Legendre") {
    for (long p = 3; p < 200; ++p) {
      if (!oracle::is_prime_small(p)) continue;
      for (long a = -p; a <= 2 * p; ++a) CHECK(kronecker(Integer(a), Integer(p)) == oracle::legendre_brute(a, p));
    }
  }

  TEST_CASE("hilbert symbol closed values") {
    CHECK(hilbert(-1, -1, Place::prime(2)) == -1);
    CHECK(hilbert(-1, -1, Place::infinity()) == -1);
    CHECK(hilbert(-1, -1, Place::prime(3)) == 1);
    CHECK(hilbert(2, 3, Place::prime(3)) == -1);   // (2/3)
    CHECK(hilbert(5, 2, Place::prime(2)) == -1);
    CHECK(hilbert(31, 15, Place::prime(31)) == kronecker(15, 31));
    CHECK(hilbert(Rational(1, 4), 7, Place::prime(7)) == 1);
  }

  TEST_CASE("hilbert product formula, symmetry, bimultiplicativity") {
    for (int i = 0; i < 1000; ++i) {
      Rational a = random_rational(), b = random_rational(), c = random_rational();
      int prod = 1;
      for (const auto& v : places_for(a, b)) prod *= hilbert(a, b, v);
      CHECK(prod == 1);
      Place v = oracle::uniform(0, 1) ? Place::prime(2) : Place::prime(Integer(std::vector<long>{3, 5, 7, 31}[oracle::uniform(0, 3)]));
      CHECK(hilbert(a, b, v) == hilbert(b, a, v));
      CHECK(hilbert(a * c, b, v) == hilbert(a, b, v) * hilbert(c, b, v));
      CHECK(hilbert(a, -a, v) == 1);
    }
  }

  TEST_CASE("crt") {
    std::vector<Congruence> sys{{2, 3}, {3, 5}, {2, 7}};
    CHECK(crt(sys) == 23);
    std::vector<Congruence> shared{{1, 4}, {3, 6}};
    CHECK(crt(shared) == 9);
    std::vector<Congruence> bad{{1, 4}, {2, 6}};
    CHECK_THROWS_AS(crt(bad), Error);
    // brute force over small moduli
    for (int i = 0; i < 300; ++i) {
      long m1 = oracle::uniform(1, 20), m2 = oracle::uniform(1, 20);
      long r1 = oracle::uniform(0, m1 - 1), r2 = oracle::uniform(0, m2 - 1);
      long l = std::lcm(m1, m2), found = -1;
      for (long x = 1; x <= l; ++x)
        if (x % m1 == r1 && x % m2 == r2) {
          found = x;
          break;
        }
      std::vector<Congruence> s{{r1, m1}, {r2, m2}};
      if (found < 0) CHECK_THROWS_AS(crt(s), Error);
      else CHECK(crt(s) == found);
    }
  }

  TEST_CASE("primality and factorization") {
    for (long n = -5; n < 20000; ++n) CHECK(is_prime(Integer(n)) == oracle::is_prime_small(n));
    Integer carmichael(561);
    CHECK_FALSE(is_prime(carmichael));
    Integer p1("1000000007"), p2("998244353"), p3("2305843009213693951");
    auto f = factorize(p1 * p2 * p3);
    REQUIRE(f.factors().size() == 3);
    CHECK(f.value() == p1 * p2 * p3);
    CHECK(factorize(Integer(1984)).to_string() == "2^6 * 31");
    CHECK(factorize(Integer(1)).is_one());
    for (int i = 0; i < 300; ++i) {
      Integer n = oracle::uniform(2, 1000000000L) * Integer(oracle::uniform(2, 1000000000L));
      auto g = factorize(n);
      Integer prod = 1;
      for (const auto& pp : g.factors()) {
        CHECK(mpz_probab_prime_p(pp.prime.get_mpz_t(), 30) > 0);
        for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
      }
      CHECK(prod == n);
    }
  }
}
