#pragma once

#include <optional>
#include <string>
#include <vector>

#include "waldo/numfield.hpp"
#include "waldo/series.hpp"
#include "waldo/types.hpp"

// Elliptic-curve side: models Y^2 = X^3 + AX^2 + BX + C, quadratic twists,
// closed-form Tamagawa products and the BSD Sha evaluators.
namespace waldo::curves {

using numfield::NF4;

struct ShortModel {
  Integer A, B, C;
  Integer disc;  // 16 * discriminant of the cubic
  bool scaled = false;
  std::string note;

  friend bool operator==(const ShortModel& x, const ShortModel& y) {
    return x.A == y.A && x.B == y.B && x.C == y.C;
  }
};

Integer cubic_discriminant(const Integer& A, const Integer& B, const Integer& C);

// Throws ErrorKind::domain on a singular cubic.
ShortModel make_model(const Integer& A, const Integer& B, const Integer& C);

ShortModel short_model(const Integer& a1, const Integer& a2, const Integer& a3, const Integer& a4, const Integer& a6);

ShortModel twist(const ShortModel& m, const Integer& n);

// |disc| sixth-power free, so Omega(E_n) = Omega(E_1)/sqrt(n).
bool period_ratio_valid(const ShortModel& m);

// Roots of the cubic mod an odd prime p of good reduction.
unsigned cubic_roots_mod(const ShortModel& m, const Integer& p);
unsigned two_torsion_count(const ShortModel& m, const Integer& p);

enum class CurveTag { c496, x3m1, c50 };
std::string_view to_string(CurveTag t);
CurveTag parse_curve_tag(std::string_view s);

// E_{-1} for the tabulated families: X^3 + X - 1 and X^3 + 1.
ShortModel reference_curve(CurveTag t);

struct TamagawaFactor {
  Integer p;
  unsigned c = 1;
};

struct Tamagawa {
  std::vector<TamagawaFactor> factors;  // only primes with c_p > 1 or p | 2n
  Integer product = 1;
};

// Domain: odd square-free n for c496; odd square-free n = 1, 2 mod 3 for x3m1.
bool tamagawa_domain(CurveTag t, const Integer& n);
Tamagawa tamagawa_product(CurveTag t, const Integer& n);

int root_number_496(const Integer& n);

struct ShaReport {
  Integer n;
  NF4 coeff;
  std::optional<Integer> tamagawa;
  std::optional<Rational> sha;  // absent when the coefficient vanishes
  std::optional<int> root_number;
  bool coefficient_zero = false;

  // sha present and a positive integer perfect square
  bool finalized() const;
};

// Domain n square-free, n = 1, 3, 7 mod 8.
ShaReport sha_order_496(const Integer& n, const NF4& d_n);
// Domain n square-free, n = 1, 2 mod 3.
ShaReport sha_order_x3m1(const Integer& n, const NF4& e_n);

struct LStatement {
  Integer n;
  Rational coeff_squared;
  std::string constant;  // the symbolic L-value the ratio is taken against
  std::string text;
};

// L(E_{-n},1) = L(E_{-1},1)/sqrt(n) * c_n^2 for 5 not dividing n.
LStatement lratio_50(const Integer& n, const NF4& c_n);

struct SupportCheck {
  bool holds = true;
  std::vector<Integer> violations;
};

// The theta combination for Y^2 + Y = X^3 - 7 vanishes at square-free n = 2 mod 3.
SupportCheck c27_vanishes_two_mod_three(const series::Series& f);
// h is supported on n = 3m with (m/3) = 1.
SupportCheck c27_h_support(const series::Series& h);

}  // namespace waldo::curves
