#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "waldo/characters.hpp"
#include "waldo/numfield.hpp"
#include "waldo/series.hpp"
#include "waldo/types.hpp"

// Per-prime data entering Waldspurger's theorem: representation types, the
// c^(i) and gamma local functions, n~_p, U_p(e) and N~.
namespace waldo::waldlocal {

using series::SquareClass;

enum class RepType { principal, special, supercuspidal, undetermined };
std::string_view to_string(RepType t);

// Decision rules for the local component of a trivial-character newform.
RepType rep_type(const Integer& p, unsigned nu_p_level, unsigned nu_2_level, bool a_p_nonzero);

// (H2) holds when M is odd, when nu_2(M) = 1 and lambda_2 != 0, or when 16 | M.
bool h2_applicable(const Integer& M, bool lambda_2_nonzero);

// Finite sum of rational multiples of square roots, keyed by radicand.
class RadicalSum {
 public:
  RadicalSum() = default;
  RadicalSum(const RadicalValue& v) { add(v); }

  void add(const RadicalValue& v);
  bool is_zero() const { return terms_.empty(); }
  std::optional<RadicalValue> single() const;
  const std::map<Integer, Rational>& terms() const { return terms_; }
  std::string to_string() const;

  friend bool operator==(const RadicalSum&, const RadicalSum&) = default;

 private:
  std::map<Integer, Rational> terms_;
};

// Laurent polynomial in delta with exponents -1..1 and radical coefficients.
class DeltaPoly {
 public:
  DeltaPoly() = default;
  static DeltaPoly constant(const RadicalValue& v);
  static DeltaPoly term(int exponent, const RadicalValue& v);

  DeltaPoly& operator+=(const DeltaPoly& other);
  friend DeltaPoly operator+(DeltaPoly x, const DeltaPoly& y) { return x += y; }

  bool is_constant() const;
  RadicalValue constant_value() const;  // coefficient of delta^0
  const std::map<int, RadicalValue>& terms() const { return terms_; }
  RadicalSum specialize(const RadicalValue& delta) const;
  std::string to_string(std::string_view var = "delta") const;

  friend bool operator==(const DeltaPoly&, const DeltaPoly&) = default;

 private:
  std::map<int, RadicalValue> terms_;
};

enum class Membership { present, absent, unknown };

// Tri-state membership over all positive-representative square classes.
class OmegaSet {
 public:
  OmegaSet() = default;
  explicit OmegaSet(const Integer& p);  // every class unknown

  const Integer& p() const { return p_; }
  Membership at(const SquareClass& c) const;
  void set(const SquareClass& c, Membership m);
  std::vector<SquareClass> with(Membership m) const;
  std::string to_string() const;

 private:
  Integer p_ = 2;
  std::map<SquareClass, Membership> members_;
};

std::vector<SquareClass> all_square_classes(const Integer& p);
std::string class_label(const SquareClass& c, const Integer& p);  // "1", "u=3", "p*u", "10"

struct LocalData {
  Integer p = 2;
  unsigned m_p = 0;
  bool lambda_zero = true;
  std::optional<int> omega;  // Atkin-Lehner sign, present iff m_p = 1 and lambda_p != 0
  int k = 3;
  characters::LocalUnitFacts chi0;  // facts for chi_0 at p
  bool chi0_trivial_on_one_plus_four = true;  // meaningful for p = 2
  std::optional<OmegaSet> omega_set;
  bool alpha_distinct = true;

  // Throws ErrorKind::domain when the invariants between fields fail.
  void validate() const;
};

// Fills the chi_0 facts from chi and k; omega is derived from lambda_p when
// m_p = 1 via lambda_p = -omega p^((k-3)/2).
LocalData make_local_data(const Integer& p, const Integer& M, const Integer& lambda_p,
                          const characters::QuadDirichletChar& chi, int k,
                          std::optional<OmegaSet> omega_set = std::nullopt);

int omega_from_lambda(const Integer& lambda_p, const Integer& p, int k);

enum class Kind { c0, c1, c2, c3, c4, c5, c6, gamma_ev, gamma_prime, gamma_double_prime, gamma_zero };

struct Delta {
  std::string symbol;                 // "alpha", "alpha'", "lambda'"
  std::optional<RadicalValue> value;  // set when the paper's simplification makes it concrete
};

struct LocalFunction {
  Kind kind = Kind::c0;
  Integer p = 2;
  Delta delta;        // c^(i) only
  unsigned e = 0;     // gamma kinds
  Integer upsilon = 1;  // gamma_{e,upsilon} and gamma'_{e,upsilon}

  std::string name() const;
};

// lambda'_p = -omega p^(-1/2) for m_p = 1.
RadicalValue lambda_prime(const Integer& p, int omega);

unsigned n_tilde(const LocalData& data);
Integer n_tilde_total(const std::map<Integer, LocalData>& data_by_prime);

struct USet {
  std::vector<LocalFunction> members;
  std::vector<SquareClass> unknown;  // classes whose gamma would join if they lie in Omega_p
};

// Only e = n~_p is defined; other e throw ErrorKind::unsupported_level.
USet u_set(const LocalData& data, unsigned e);

// Value at a square-free positive n. Concrete-delta kinds come back as a
// constant DeltaPoly; symbolic ones keep their delta exponents.
DeltaPoly eval_local(const LocalFunction& fn, const LocalData& data, const Integer& n);

// Witnessed classes from nonzero coefficients; proven_absent excluded; the
// rest unknown.
OmegaSet infer_omega(const std::vector<series::Series>& series_list, const Integer& p,
                     const std::vector<SquareClass>& proven_absent = {});

}  // namespace waldo::waldlocal
