#include <doctest.h>

#include <numeric>
#include <set>
#include <sstream>

#include "waldo/fixtures.hpp"
#include "waldo/intarith.hpp"
#include "waldo/series.hpp"

using namespace waldo;
using namespace waldo::series;

namespace {

// |P^1(Z/N)| by enumerating (c : d) with gcd(c, d, N) = 1 modulo units.
long gamma0_index_oracle(long N) {
  std::set<std::pair<long, long>> seen;
  long classes = 0;
  for (long c = 0; c < N; ++c)
    for (long d = 0; d < N; ++d) {
      if (std::gcd(std::gcd(c, d), N) != 1 || seen.count({c, d})) continue;
      ++classes;
      for (long u = 1; u <= N; ++u)
        if (std::gcd(u, N) == 1) seen.insert({c * u % N, d * u % N});
    }
  return N == 1 ? 1 : classes;
}

// Bottom rows (c, d) of order N; no quotient by -1.
long gamma1_index_oracle(long N) {
  long count = 0;
  for (long c = 0; c < N; ++c)
    for (long d = 0; d < N; ++d)
      if (std::gcd(std::gcd(c, d), N) == 1) ++count;
  return N == 1 ? 1 : count;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("truncation is explicit") {
    Series f = fixtures::qexp("c50_f1");
    CHECK(f.length() == 14);
    CHECK(f[14] == NF4(-2));
    CHECK_THROWS_AS(f[15], Error);
    CHECK(f.truncated(6).length() == 6);
  }

  TEST_CASE("combine merges repeated forms") {
    ThetaCombo c{{{NF4(1), {1, 1, 1, 0, 0, 0}}, {NF4(Rational(1, 2)), {1, 1, 1, 0, 0, 0}}}};
    auto f = combine(c, 4);
    CHECK(f[1] == NF4(9));
    CHECK(f[3] == NF4(12));
    CHECK(f == combine(c, 4, 4));
  }

  TEST_CASE("group indices agree with coset enumeration") {
    for (long N = 1; N <= 12; ++N) {
      CHECK(index_gamma0(N) == gamma0_index_oracle(N));
      CHECK(index_gamma1(N) == gamma1_index_oracle(N));
    }
    CHECK(index_gamma0(1984) == 3072);
  }

  TEST_CASE("Sturm anchors") {
    auto s = sturm_bound(3, 1984, 8);
    CHECK(s.R == 384);
    CHECK(s.group == Group::gamma0);
    auto t = sturm_bound(3, 576, 24);
    CHECK(t.R == 144);
    auto u = sturm_bound(3, 4, 1);
    CHECK(u.R == Rational(3, 2));
    CHECK(u.ceiling == 2);
    CHECK(u.group == Group::gamma1);
    CHECK_THROWS_AS(sturm_bound(3, 6, 1), Error);
  }

  TEST_CASE("progression vanishing") {
    auto piece = combine(fixtures::forms("quad576_piece2"), 145);
    auto r = prove_ap_vanishing(piece, 5, 24, 576, 3);
    CHECK(r.status == Vanishing::proven);
    CHECK(r.needed == 145);
    auto short_piece = piece.truncated(100);
    CHECK(prove_ap_vanishing(short_piece, 5, 24, 576, 3).status == Vanishing::insufficient_coefficients);
    auto wrong = prove_ap_vanishing(piece, 1, 24, 576, 3);
    CHECK(wrong.status == Vanishing::counterexample);
    CHECK(*wrong.witness == 5);
    CHECK_THROWS_AS(prove_ap_vanishing(piece, 3, 24, 576, 3), Error);
    CHECK(ap_support(piece, 24) == std::set<Integer>{5});
  }

  TEST_CASE("square classes") {
    CHECK(least_nonresidue(31) == 3);
    CHECK(least_nonresidue(5) == 2);
    CHECK(square_class(15, 31).unit == 3);
    CHECK(square_class(62, 31).parity == 1);
    CHECK(square_class(62, 31).unit == 1);
    CHECK(square_class(3, 2).unit == 3);
    CHECK(square_class(40, 2).parity == 1);
    CHECK(square_class(40, 2).unit == 5);
    CHECK(square_class(17, 2) == square_class(1, 2));
  }

  TEST_CASE("characters mod M | 24") {
    for (long M : {1, 2, 3, 4, 6, 8, 12, 24}) {
      auto chars = quadratic_characters(M);
      long phi = 0;
      for (long a = 1; a <= M; ++a) phi += std::gcd(a, M) == 1;
      CHECK(long(chars.size()) == phi);
      for (long a = 1; a <= M; ++a) {
        if (std::gcd(a, M) != 1) continue;
        for (long n = 1; n <= 3 * M; ++n) {
          Rational want = std::gcd(n, M) == 1 && (n - a) % M == 0 ? 1 : 0;
          CHECK(progression_indicator(M, a, n) == want);
        }
      }
    }
    CHECK_THROWS_AS(quadratic_characters(5), Error);
  }

  TEST_CASE("twist") {
    auto f = fixtures::qexp("c50_f2");
    auto g = twist(f, characters::QuadDirichletChar(4, -1));
    CHECK(g[3] == NF4(1));
    CHECK(g[13] == NF4(2));
    CHECK(g[2] == NF4(0));
  }

  TEST_CASE("ratio check") {
    auto f = fixtures::d_series_496();
    auto rc = ratio_check(f, 15, 17, 3, 1984);
    CHECK_FALSE(rc.applicable);  // 7 and 1 mod 8
    CHECK(rc.failing_primes == std::vector<Integer>{2});
    CHECK(ratio_check(f, 15, 31, 3, 1984).failing_primes == std::vector<Integer>{31});
    auto same = ratio_check(f, 15, 79, 3, 1984);
    REQUIRE(same.applicable);
    CHECK(same.statement->a_n1_squared == NF4(1));
    CHECK(same.statement->power_exponent == Rational(1, 2));
  }

  TEST_CASE("ratio check examples") {
    auto g = fixtures::qexp("c72_g1") + fixtures::qexp("c72_g2");
    CHECK_FALSE(ratio_check(g, 74, 2, 3, 72).applicable);
    CHECK(ratio_check(g, 5, 5, 3, 72).applicable);
    CHECK(ratio_check(g, 2, 2, 3, 72).statement->chi_ratio == 1);
    CHECK_THROWS_AS(ratio_check(g, 8, 2, 3, 72), Error);
  }

  TEST_CASE("combine is linear") {
    auto a = fixtures::forms("quad576_piece3"), b = fixtures::forms("c50_prop");
    NF4 alpha(Rational(1, 3), 2, 0, -1), beta(Rational(0), 0, Rational(5, 7), 1);
    ThetaCombo both;
    for (const auto& t : a.terms) both.terms.push_back({alpha * t.coeff, t.form});
    for (const auto& t : b.terms) both.terms.push_back({beta * t.coeff, t.form});
    CHECK(combine(both, 300) == alpha * combine(a, 300) + beta * combine(b, 300));
  }

  TEST_CASE("indices are multiplicative") {
    for (long m = 1; m <= 30; ++m)
      for (long n = 1; n <= 30; ++n) {
        if (std::gcd(m, n) != 1 || m * n < 3 || m < 3 || n < 3) continue;
        CHECK(index_gamma0(m * n) == index_gamma0(m) * index_gamma0(n));
        CHECK(index_gamma1(m * n) == index_gamma1(m) * index_gamma1(n));
      }
  }

  TEST_CASE("proven vanishing holds well past the bound") {
    for (int i = 1; i <= 4; ++i) {
      auto f = combine(fixtures::forms("quad576_piece" + std::to_string(i)), 4 * 144);
      std::set<Integer> residues = ap_support(f, 24);
      CHECK(residues.size() == 1);
      CHECK(prove_ap_vanishing(f, *residues.begin(), 24, 576, 3).status == Vanishing::proven);
    }
  }

  TEST_CASE("file formats") {
    std::istringstream bad("1\t2\n");
    CHECK_THROWS_AS(read_qexp(bad), Error);
    std::istringstream over("# level=4 length=3\n5\t1\n");
    CHECK_THROWS_AS(read_qexp(over), Error);
    std::istringstream forms("1/2 | 1 1 1 0 0 0  # comment\n-s2 | [2,2,2,1,1,1]\n");
    auto c = read_forms(forms);
    REQUIRE(c.terms.size() == 2);
    CHECK(c.terms[1].coeff == -NF4::sqrt2());
    std::istringstream indefinite("1 | 1 1 -1 0 0 0\n");
    CHECK_THROWS_AS(read_forms(indefinite), Error);
  }
}
