#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "waldo/characters.hpp"
#include "waldo/numfield.hpp"
#include "waldo/thetaforms.hpp"
#include "waldo/types.hpp"

namespace waldo::series {

using numfield::NF4;
using thetaforms::TernaryForm;

struct SeriesMeta {
  std::optional<Integer> level;
  std::optional<int> weight_num;
  std::optional<Integer> twist;  // square-free d of the character, 1 = trivial
  std::vector<std::string> notes;
};

// A q-expansion known exactly through q^length. Reads past the truncation
// point throw ErrorKind::fixture_range instead of assuming zeros.
class Series {
 public:
  Series() : coeffs_(1) {}
  explicit Series(std::vector<NF4> coeffs, SeriesMeta meta = {});

  static Series zero(std::size_t length) { return Series(std::vector<NF4>(length + 1)); }

  std::size_t length() const { return coeffs_.size() - 1; }
  const NF4& operator[](std::size_t n) const;
  const std::vector<NF4>& coefficients() const { return coeffs_; }
  const SeriesMeta& meta() const { return meta_; }
  SeriesMeta& meta() { return meta_; }

  Series truncated(std::size_t length) const;

  Series& operator+=(const Series& other);  // over the common length
  friend Series operator+(Series x, const Series& y) { return x += y; }
  friend Series operator*(const NF4& c, const Series& f);

  friend bool operator==(const Series& x, const Series& y) { return x.coeffs_ == y.coeffs_; }

 private:
  std::vector<NF4> coeffs_;
  SeriesMeta meta_;
};

struct ThetaTerm {
  NF4 coeff;
  TernaryForm form;
};

struct ThetaCombo {
  std::vector<ThetaTerm> terms;
};

// Sum of coeff * theta_Q through q^limit. Repeated forms are counted once.
Series combine(const ThetaCombo& combo, std::size_t limit, unsigned threads = 1);
Series theta_series(const TernaryForm& q, std::size_t limit);

// Residues r mod M carrying a nonzero coefficient at some n >= 1.
std::set<Integer> ap_support(const Series& f, const Integer& M);

Integer index_gamma0(const Integer& N);
// N^2 prod(1 - 1/p^2) for N >= 3; 1 and 3 for N = 1, 2. +-I is not quotiented.
Integer index_gamma1(const Integer& N);

enum class Group { gamma0, gamma1 };

struct SturmBound {
  Rational R;
  Integer ceiling;     // ceil(R)
  Integer level_used;  // N M^2, N or 2N
  Group group = Group::gamma1;
  bool refined = false;  // the M^2 | N case applied
};

// Requires 4 | N. The Gamma_0 index replaces Gamma_1 when 1 < M and M | 24,
// i.e. when every character mod M is quadratic.
SturmBound sturm_bound(int k, const Integer& N, const Integer& M);

enum class Vanishing { proven, insufficient_coefficients, counterexample };

struct VanishingResult {
  Vanishing status = Vanishing::proven;
  std::optional<Integer> witness;  // least violating n
  SturmBound bound;
  Integer needed;  // coefficients needed through this index
};

// Requires gcd(a, M) = 1, otherwise ErrorKind::hypothesis_violation.
VanishingResult prove_ap_vanishing(const Series& f, const Integer& a, const Integer& M, const Integer& N, int k);

// Relation between a_{n1} and a_{n2} when n1/n2 is a square in every Q_p, p | N.
// L-values are left symbolic: the record binds only computable factors.
struct RatioStatement {
  Integer n1, n2;
  NF4 a_n1_squared, a_n2_squared;
  int chi_ratio = 1;       // chi(n2/n1)
  Rational power_exponent;  // k/2 - 1
  std::string text;
};

struct RatioCheck {
  bool applicable = false;
  std::vector<Integer> failing_primes;
  std::optional<RatioStatement> statement;
};

RatioCheck ratio_check(const Series& f, const Integer& n1, const Integer& n2, int k, const Integer& level,
                       const std::optional<characters::QuadDirichletChar>& chi = std::nullopt);

// Square class of a nonzero integer in Q_p^*/Q_p^*2 as (valuation parity,
// unit representative): odd p uses {1, least non-residue}, p = 2 uses 1,3,5,7.
struct SquareClass {
  unsigned parity = 0;
  Integer unit = 1;
  friend bool operator==(const SquareClass& x, const SquareClass& y) { return x.parity == y.parity && x.unit == y.unit; }
  friend bool operator<(const SquareClass& x, const SquareClass& y) {
    return x.parity != y.parity ? x.parity < y.parity : x.unit < y.unit;
  }
};

SquareClass square_class(const Integer& n, const Integer& p);
Integer least_nonresidue(const Integer& p);

// f_psi: coefficientwise product with psi(n).
Series twist(const Series& f, const characters::QuadDirichletChar& psi);

// All Dirichlet characters mod M as Kronecker twists; M must divide 24.
std::vector<characters::QuadDirichletChar> quadratic_characters(const Integer& M);

// sum_psi psi(a)^-1 psi(n) / phi(M) over characters mod M, M | 24.
Rational progression_indicator(const Integer& M, const Integer& a, const Integer& n);

// qexp files: "# level=N weight_num=k length=L" header, then "n<TAB>NF4" lines.
Series read_qexp(std::istream& in, const std::string& source = "<stream>");
Series load_qexp(const std::string& path);
void write_qexp(std::ostream& out, const Series& f);

// Forms files: "COEFF | a b c r s t" per line, '#' comments.
ThetaCombo read_forms(std::istream& in, const std::string& source = "<stream>");
ThetaCombo load_forms(const std::string& path);
void write_forms(std::ostream& out, const ThetaCombo& combo);

}  // namespace waldo::series
