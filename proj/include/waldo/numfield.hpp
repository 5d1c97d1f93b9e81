#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "waldo/types.hpp"

namespace waldo {

// coeff * sqrt(radicand) with a square-free positive radicand; zero is (0, 1).
class RadicalValue {
 public:
  RadicalValue() = default;
  RadicalValue(Rational coeff, Integer radicand = 1);

  const Rational& coeff() const { return coeff_; }
  const Integer& radicand() const { return radicand_; }
  bool is_zero() const { return coeff_ == 0; }

  RadicalValue operator-() const { return {-coeff_, radicand_}; }
  friend RadicalValue operator*(const RadicalValue& x, const RadicalValue& y);
  RadicalValue inverse() const;

  std::string to_string() const;

  friend bool operator==(const RadicalValue&, const RadicalValue&) = default;

 private:
  Rational coeff_ = 0;
  Integer radicand_ = 1;
};

namespace numfield {

// a0 + a1*sqrt2 + a2*sqrt3 + a3*sqrt6.
class NF4 {
 public:
  NF4() = default;
  NF4(Rational a0) : a_{std::move(a0), 0, 0, 0} {}
  NF4(int a0) : NF4(Rational(a0)) {}
  NF4(Rational a0, Rational a1, Rational a2, Rational a3)
      : a_{std::move(a0), std::move(a1), std::move(a2), std::move(a3)} {}

  static NF4 sqrt2() { return {0, 1, 0, 0}; }
  static NF4 sqrt3() { return {0, 0, 1, 0}; }
  static NF4 sqrt6() { return {0, 0, 0, 1}; }

  const Rational& operator[](std::size_t i) const { return a_[i]; }
  const std::array<Rational, 4>& coords() const { return a_; }

  bool is_zero() const;
  bool is_rational() const;

  NF4& operator+=(const NF4& y);
  NF4& operator-=(const NF4& y);
  NF4& operator*=(const NF4& y);
  friend NF4 operator+(NF4 x, const NF4& y) { return x += y; }
  friend NF4 operator-(NF4 x, const NF4& y) { return x -= y; }
  friend NF4 operator*(NF4 x, const NF4& y) { return x *= y; }
  NF4 operator-() const { return {-a_[0], -a_[1], -a_[2], -a_[3]}; }

  friend bool operator==(const NF4&, const NF4&) = default;

  // "1/2 - 3*s2 + s6"; "0" for zero.
  std::string to_string() const;

 private:
  std::array<Rational, 4> a_{0, 0, 0, 0};
};

NF4 nf_mul(const NF4& x, const NF4& y);

// x^2 when it is rational, nullopt otherwise.
std::optional<Rational> nf_square_rational(const NF4& x);

struct UnsupportedRadicand {
  Integer radicand;
};

std::variant<NF4, UnsupportedRadicand> embed_radical(const RadicalValue& v);

// Accepts sums of terms like "3", "-1/12*s6", "s2", "2 s3", "1/4*s2".
// Throws ErrorKind::parse on anything else.
NF4 parse_nf4(std::string_view text);

}  // namespace numfield
}  // namespace waldo
