#pragma once

#include <optional>
#include <string>

#include "waldo/intarith.hpp"
#include "waldo/types.hpp"

// Quadratic Dirichlet characters and the local components of the attached
// idele class character.
namespace waldo::characters {

// chi(n) = (d/n) when gcd(n, N) = 1 and 0 otherwise, with d square-free.
// d = 1 gives the trivial character mod N.
class QuadDirichletChar {
 public:
  // Throws ErrorKind::domain unless d is square-free and the conductor of
  // (d/.) divides N.
  QuadDirichletChar(Integer modulus, Integer twist);

  static QuadDirichletChar trivial(Integer modulus) { return {std::move(modulus), 1}; }

  const Integer& modulus() const { return modulus_; }
  const Integer& twist() const { return twist_; }
  const Integer& conductor() const { return conductor_; }
  bool is_trivial() const { return twist_ == 1; }

  int value(const Integer& n) const;
  int operator()(const Integer& n) const { return value(n); }

  std::string to_string() const;

  friend bool operator==(const QuadDirichletChar&, const QuadDirichletChar&) = default;

 private:
  Integer modulus_;
  Integer twist_;
  Integer conductor_;
};

// |t| for t = 1 mod 4, |4t| otherwise.
Integer quadratic_conductor(const Integer& t);

// (t/.) taken modulo its own conductor.
QuadDirichletChar chi_t(const Integer& t);

// chi_0(n) = chi(n) (-1/n)^((k-1)/2), modulo lcm(4, N).
QuadDirichletChar chi_zero(const QuadDirichletChar& chi, int k);

enum class Branch { unramified_prime, crt };

struct LocalEval {
  int value = 1;
  Branch branch = Branch::unramified_prime;
  std::optional<Integer> b;             // only for the CRT branch
  intarith::Factorization b_factored;   // full factorization of b
};

// chi_p(a) for a nonzero integer a. When p does not divide N this is
// chi(p)^nu_p(a). Otherwise b is the least positive integer with
// b = a mod p^nu_p(aN) and b = 1 mod q^nu_q(N) for the other q | N, and the
// value is the product of chi(l)^(-beta) over primes l != p dividing b.
// A negative a is read through |a| N Z_p, so only the residue of a matters.
LocalEval local_eval(const QuadDirichletChar& chi, const Integer& p, const Integer& a);

struct LocalUnitFacts {
  bool ramified = false;
  int value_at_minus_one = 1;
  int value_at_p_inverse = 1;
};

LocalUnitFacts local_unit_facts(const QuadDirichletChar& chi, const Integer& p);

// chi_2 restricted to 1 + 4Z_2; 5 generates that group topologically.
bool trivial_on_one_plus_four(const QuadDirichletChar& chi);

// chi_inf(alpha): -1 iff alpha < 0 and chi is odd.
int infinite_component(const QuadDirichletChar& chi, const Integer& alpha);

}  // namespace waldo::characters
