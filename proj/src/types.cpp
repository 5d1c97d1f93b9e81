#include "waldo/types.hpp"

#include <cctype>

namespace waldo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::undefined_valuation: return "undefined_valuation";
    case ErrorKind::no_solution: return "no_solution";
    case ErrorKind::factorization_failure: return "factorization_failure";
    case ErrorKind::incomplete_data: return "incomplete_data";
    case ErrorKind::unsupported_level: return "unsupported_level";
    case ErrorKind::hypothesis_violation: return "hypothesis_violation";
    case ErrorKind::bad_reduction: return "bad_reduction";
    case ErrorKind::fixture_range: return "fixture_range";
    case ErrorKind::parse: return "parse";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  auto s = trim(text);
  if (!is_integer_literal(s))
    throw Error("types", ErrorKind::parse, "not an integer: '" + std::string(text) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) throw Error("types", ErrorKind::parse, "zero denominator: '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace waldo
