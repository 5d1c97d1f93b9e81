#include <doctest.h>

#include "oracles.hpp"
#include "waldo/thetaforms.hpp"

using namespace waldo;
using namespace waldo::thetaforms;

TEST_SUITE("thetaforms") {
  TEST_CASE("parsing and definiteness") {
    TernaryForm q = parse_form("[14, 9, 6, 4, 6, 2]");
    CHECK(q == TernaryForm{14, 9, 6, 4, 6, 2});
    CHECK(parse_form("1 1 1 0 0 0") == TernaryForm{1, 1, 1, 0, 0, 0});
    CHECK(q.to_string() == "[14,9,6,4,6,2]");
    CHECK_THROWS_AS(parse_form("1,2,3"), Error);
    CHECK_THROWS_AS(parse_form("1,2,3,4,5,x"), Error);
    CHECK(is_positive_definite(q));
    CHECK_FALSE(is_positive_definite({1, 1, -1, 0, 0, 0}));
    CHECK_FALSE(is_positive_definite({1, 1, 1, 0, 0, 2}));  // x^2 + y^2 + 2xy is degenerate
    CHECK_THROWS_AS(repcount({1, -1, 1, 0, 0, 0}, 5), Error);
  }

  TEST_CASE("sum of three squares") {
    auto c = repcount({1, 1, 1, 0, 0, 0}, 10);
    std::vector<std::uint64_t> want{1, 6, 12, 8, 6, 24, 24, 0, 12, 30, 24};
    CHECK(c == want);
    CHECK(repcount({1, 1, 1, 0, 0, 0}, 0) == std::vector<std::uint64_t>{1});
  }

  TEST_CASE("repcount equals brute force on random forms") {
    for (int i = 0; i < 25; ++i) {
      TernaryForm q = oracle::random_form();
      CHECK_MESSAGE(repcount(q, 200) == oracle::repcount_brute(q, 200), q.to_string());
    }
  }

  TEST_CASE("thread count does not change counts") {
    TernaryForm q{4, 5, 29, -2, 0, 0};
    auto one = repcount(q, 5000, 1);
    CHECK(repcount(q, 5000, 3) == one);
    CHECK(repcount(q, 5000, 8) == one);
  }
}
