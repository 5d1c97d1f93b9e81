#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "waldo/curves.hpp"
#include "waldo/series.hpp"

// Shipped data: q-expansions, theta combinations, golden tables, and the
// pipelines that assemble them.
namespace waldo::fixtures {

using numfield::NF4;

// WALDO_DATA_DIR from the environment, else the build-time default.
std::string data_dir();

series::Series qexp(const std::string& name);           // data/qexp/<name>.qexp
series::ThetaCombo forms(const std::string& name);      // data/forms/<name>.forms

// n -> |Sha|
std::map<Integer, Integer> golden_sha(const std::string& name);  // data/golden/<name>.tsv
std::vector<Integer> rank2_list();

// f1 + f2 + sqrt2 f3 at level 1984, through q^144.
series::Series d_series_496();
// f1/sqrt6 + f2 + sqrt2 f3 + sqrt3 f4 at level 576, through q^99.
series::Series e_series_576_from_basis();

struct TableRow {
  Integer n;
  NF4 coeff;
  std::optional<Integer> tamagawa;
  std::optional<Rational> sha;
  std::optional<int> root_number;
  bool coefficient_zero = false;
  std::string statement;  // c50 ratio text
};

// Square-free n <= max in the curve's domain. c496 is capped by the fixture
// length; x3m1 and c50 compute their theta combinations to max.
std::vector<TableRow> sha_table(curves::CurveTag curve, std::size_t max, unsigned threads = 1);

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

// Round trips, theta identities against the shipped bases, support claims.
std::vector<Check> verify_all(unsigned threads = 1);

}  // namespace waldo::fixtures
