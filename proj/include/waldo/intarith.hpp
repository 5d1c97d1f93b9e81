#pragma once

#include <span>
#include <string>
#include <vector>

#include "waldo/types.hpp"

// Exact integer kernel: valuations, square-free parts, factorization, CRT,
// and the Kronecker and Hilbert symbols. All functions are pure.
namespace waldo::intarith {

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A complete prime factorization of a positive integer. Factors are kept in
// strictly increasing prime order; the empty factorization is that of 1.
class Factorization {
 public:
  Factorization() = default;

  // Validates ordering, exponents, and primality of every factor.
  static Factorization from_factors(std::vector<PrimePower> factors);

  const Integer& value() const { return value_; }
  std::span<const PrimePower> factors() const& { return factors_; }
  // by value on temporaries, so `for (auto& pp : factorize(n).factors())` is safe
  std::vector<PrimePower> factors() && { return std::move(factors_); }
  bool is_one() const { return factors_.empty(); }
  unsigned exponent_of(const Integer& p) const;

  // "3^2 * 7 * 31"; "1" for the empty factorization.
  std::string to_string() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  Integer value_ = 1;
  std::vector<PrimePower> factors_;
};

struct Valuation {
  unsigned exponent = 0;
  Integer unit;  // n = p^exponent * unit, p does not divide unit
};

// Throws ErrorKind::undefined_valuation for n == 0.
Valuation valuation(const Integer& n, const Integer& p);
inline unsigned nu(const Integer& n, const Integer& p) { return valuation(n, p).exponent; }

// The unique square-free m > 0 with n / m a perfect square. Requires n >= 1.
Integer squarefree_part(const Integer& n);
bool is_squarefree(const Integer& n);

// Square-free part keeping the sign: -12 -> -3.
Integer signed_squarefree_part(const Integer& n);

// Kronecker symbol (a/n), defined for all integers a, n.
int kronecker(const Integer& a, const Integer& n);

// A place of Q: a rational prime or the real place.
class Place {
 public:
  static Place infinity() { return Place(); }
  static Place prime(Integer p);

  bool is_infinite() const { return infinite_; }
  const Integer& p() const { return p_; }
  std::string to_string() const { return infinite_ ? "inf" : p_.get_str(); }

 private:
  Place() = default;
  bool infinite_ = true;
  Integer p_ = 0;
};

// Hilbert symbol (a, b)_v for nonzero rationals. Uses the closed forms for
// p = 2 and odd p; at the real place it is -1 iff both arguments are negative.
int hilbert(const Rational& a, const Rational& b, const Place& v);

struct Congruence {
  Integer residue;
  Integer modulus;
};

// Smallest positive x satisfying every congruence. Moduli need not be
// coprime; inconsistent systems throw ErrorKind::no_solution.
Integer crt(std::span<const Congruence> system);

// Miller-Rabin with the first thirteen prime bases: deterministic below
// 3.3e24, a strong probable-prime test above that.
bool is_prime(const Integer& n);

// Trial division to 1e6, then Brent's variant of Pollard rho.
Factorization factorize(const Integer& n);

}  // namespace waldo::intarith
