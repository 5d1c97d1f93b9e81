#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace waldo {

using Integer = mpz_class;
using Rational = mpq_class;

enum class ErrorKind {
  domain,
  undefined_valuation,
  no_solution,
  factorization_failure,
  incomplete_data,
  unsupported_level,
  hypothesis_violation,
  bad_reduction,
  fixture_range,
  parse,
  internal,
};

std::string_view to_string(ErrorKind kind);

// Every module reports failures through this one type; the CLI maps it to
// exit status 1 and prints "[module] message".
class Error : public std::runtime_error {
 public:
  Error(std::string module, ErrorKind kind, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)), kind_(kind) {}

  const std::string& module() const noexcept { return module_; }
  ErrorKind kind() const noexcept { return kind_; }

 private:
  std::string module_;
  ErrorKind kind_;
};

inline std::string str(const Integer& n) { return n.get_str(); }
inline std::string str(const Rational& q) { return q.get_str(); }

// Integer parsing that rejects trailing junk ("12x") instead of silently
// truncating like std::stol.
Integer parse_integer(std::string_view text);
Rational parse_rational(std::string_view text);

}  // namespace waldo
