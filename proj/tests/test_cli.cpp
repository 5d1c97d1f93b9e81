#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "waldo/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = waldo::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("theta count") {
    auto r = run({"theta", "count", "--form", "1,1,1,0,0,0", "--limit", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "n\tcount\n0\t1\n1\t6\n2\t12\n3\t8\n");
    auto j = run({"--format", "json-lines", "theta", "count", "--form", "1,1,1,0,0,0", "--limit", "1"});
    CHECK(j.out == "{\"n\":0,\"count\":1}\n{\"n\":1,\"count\":6}\n");
  }

  TEST_CASE("usage and module errors") {
    CHECK(run({"theta", "count", "--bogus"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"--format", "xml", "symbols", "kronecker", "1", "3"}).code == 2);
    auto bad = run({"curve", "twist", "--model", "0,1,1", "--n", "12"});
    CHECK(bad.code == 1);
    CHECK(bad.err.rfind("[curves] domain:", 0) == 0);
    auto parse = run({"symbols", "kronecker", "1x", "3"});
    CHECK(parse.code == 1);
    CHECK(parse.err.find("parse") != std::string::npos);
  }

  TEST_CASE("symbols and local") {
    CHECK(run({"symbols", "kronecker", "-1", "31"}).out == "a\tn\tvalue\n-1\t31\t-1\n");
    CHECK(run({"symbols", "hilbert", "-1", "-1", "inf"}).out.find("\t-1\n") != std::string::npos);
    auto e = run({"local", "eval-chi", "--modulus", "496", "--twist", "-1", "--p", "31", "--a", "31"});
    CHECK(e.out.find("\t-1\tcrt\t1953\n") != std::string::npos);
    auto w = run({"local", "waldspurger", "--p", "31", "--level", "496", "--lambda", "-1"});
    CHECK(w.code == 0);
    CHECK(w.out.find("31\t1\t1\tc^(5)") != std::string::npos);
    auto w2 = run({"local", "waldspurger", "--p", "2", "--level", "496", "--present", "1,3,7"});
    CHECK(w2.out.find("2\t4\t6\t") != std::string::npos);
    auto undecided = run({"local", "waldspurger", "--p", "2", "--level", "496"});
    CHECK(undecided.code == 1);
    CHECK(undecided.err.find("incomplete_data") != std::string::npos);
    CHECK(run({"local", "h2", "--level", "72"}).out == "level\th2\n72\tfalse\n");
  }

  TEST_CASE("series check-progression") {
    std::string path = "cli_test_short.qexp";
    {
      std::ofstream f(path);
      f << "# level=576 weight_num=3 length=40\n5\t1\n29\t1\n";
    }
    auto r = run({"series", "check-progression", "--qexp", path, "--a", "5", "--modulus", "24", "--level", "576"});
    CHECK(r.code == 1);
    CHECK(r.err.find("insufficient_coefficients") != std::string::npos);
    auto s = run({"series", "support", "--qexp", path, "--modulus", "24"});
    CHECK(s.out == "residue\n5\n");
    std::remove(path.c_str());
  }

  TEST_CASE("curves") {
    CHECK(run({"curve", "twist", "--model", "0,1,1", "--n", "-1"}).out.find("0\t1\t-1\t-496\ttrue") != std::string::npos);
    CHECK(run({"curve", "torsion2", "--model", "0,0,1", "--p", "7"}).out == "p\tcount\n7\t4\n");
  }

  TEST_CASE("sha table is deterministic across thread counts") {
    auto one = run({"--threads", "1", "sha", "table", "--curve", "x3m1", "--max", "3000"});
    auto four = run({"--threads", "4", "sha", "table", "--curve", "x3m1", "--max", "3000"});
    CHECK(one.code == 0);
    CHECK(one.out == four.out);
    auto c496 = run({"sha", "table", "--curve", "c496", "--max", "144"});
    CHECK(c496.out.find("55\t2\t2\t4\tW=+1\n") != std::string::npos);
    CHECK(run({"sha", "table", "--curve", "c496", "--max", "200"}).code == 1);
    auto c50 = run({"sha", "table", "--curve", "c50", "--max", "14"});
    CHECK(c50.out.find("L(E_{-2},1) = L(E_{-1},1)/sqrt(2) * 1") != std::string::npos);
  }

  TEST_CASE("config file") {
    std::string path = "cli_test.ini";
    {
      std::ofstream f(path);
      f << "format=json-lines\n";
    }
    auto r = run({"--config", path, "symbols", "kronecker", "2", "7"});
    CHECK(r.out == "{\"a\":2,\"n\":7,\"value\":1}\n");
    std::remove(path.c_str());
  }

  TEST_CASE("bench and fixtures") {
    auto b = run({"bench", "theta", "--limit", "0"});
    CHECK(b.code == 0);
    CHECK(b.out.find("fixture_prefix=true") != std::string::npos);
    auto v = run({"fixtures", "verify"});
    CHECK(v.code == 0);
    CHECK(v.out.find("FAIL") == std::string::npos);
  }
}
