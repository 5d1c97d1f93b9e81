#include "waldo/numfield.hpp"

#include <cctype>
#include <sstream>

#include "waldo/intarith.hpp"

namespace waldo {

RadicalValue::RadicalValue(Rational coeff, Integer radicand) : coeff_(std::move(coeff)) {
  if (radicand < 1) throw Error("numfield", ErrorKind::domain, "radicand must be positive, got " + radicand.get_str());
  coeff_.canonicalize();
  if (coeff_ == 0) return;
  // pull the square part of the radicand into the coefficient
  Integer m = 1, s = 1;
  for (const auto& pp : intarith::factorize(radicand).factors()) {
    for (unsigned i = 0; i < pp.exponent / 2; ++i) s *= pp.prime;
    if (pp.exponent % 2) m *= pp.prime;
  }
  coeff_ *= s;
  radicand_ = m;
}

RadicalValue operator*(const RadicalValue& x, const RadicalValue& y) {
  return {x.coeff_ * y.coeff_, x.radicand_ * y.radicand_};
}

RadicalValue RadicalValue::inverse() const {
  if (is_zero()) throw Error("numfield", ErrorKind::domain, "inverse of zero radical");
  // 1/(c sqrt r) = sqrt r / (c r)
  return {1 / (coeff_ * radicand_), radicand_};
}

std::string RadicalValue::to_string() const {
  if (radicand_ == 1) return coeff_.get_str();
  std::string s = coeff_ == 1 ? "" : coeff_ == -1 ? "-" : coeff_.get_str() + "*";
  return s + "sqrt(" + radicand_.get_str() + ")";
}

namespace numfield {

bool NF4::is_zero() const { return a_[0] == 0 && is_rational(); }

bool NF4::is_rational() const { return a_[1] == 0 && a_[2] == 0 && a_[3] == 0; }

NF4& NF4::operator+=(const NF4& y) {
  for (int i = 0; i < 4; ++i) a_[i] += y.a_[i];
  return *this;
}

NF4& NF4::operator-=(const NF4& y) {
  for (int i = 0; i < 4; ++i) a_[i] -= y.a_[i];
  return *this;
}

NF4& NF4::operator*=(const NF4& y) {
  const auto& x = a_;
  const auto& z = y.a_;
  // basis products: s2*s2=2, s3*s3=3, s6*s6=6, s2*s3=s6, s2*s6=2 s3, s3*s6=3 s2
  Rational c0 = x[0] * z[0] + 2 * x[1] * z[1] + 3 * x[2] * z[2] + 6 * x[3] * z[3];
  Rational c1 = x[0] * z[1] + x[1] * z[0] + 3 * (x[2] * z[3] + x[3] * z[2]);
  Rational c2 = x[0] * z[2] + x[2] * z[0] + 2 * (x[1] * z[3] + x[3] * z[1]);
  Rational c3 = x[0] * z[3] + x[3] * z[0] + x[1] * z[2] + x[2] * z[1];
  a_ = {c0, c1, c2, c3};
  return *this;
}

std::string NF4::to_string() const {
  static constexpr const char* kBasis[4] = {"", "s2", "s3", "s6"};
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    const Rational& c = a_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << kBasis[i];
    }
  }
  return first ? "0" : os.str();
}

NF4 nf_mul(const NF4& x, const NF4& y) { return x * y; }

std::optional<Rational> nf_square_rational(const NF4& x) {
  NF4 sq = x * x;
  if (!sq.is_rational()) return std::nullopt;
  return sq[0];
}

std::variant<NF4, UnsupportedRadicand> embed_radical(const RadicalValue& v) {
  if (v.is_zero()) return NF4{};
  const Integer& r = v.radicand();
  if (r == 1) return NF4(v.coeff());
  if (r == 2) return NF4(0, v.coeff(), 0, 0);
  if (r == 3) return NF4(0, 0, v.coeff(), 0);
  if (r == 6) return NF4(0, 0, 0, v.coeff());
  return UnsupportedRadicand{r};
}

namespace {

[[noreturn]] void parse_fail(std::string_view text, const std::string& why) {
  throw Error("numfield", ErrorKind::parse, "bad NF4 literal '" + std::string(text) + "': " + why);
}

// One signed term without its leading sign, e.g. "1/12*s6", "s2", "3".
NF4 parse_term(std::string_view term, std::string_view whole) {
  std::string t;
  for (char ch : term)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) parse_fail(whole, "empty term");

  int basis = 0;
  auto spos = t.find('s');
  std::string coeff_text = t;
  if (spos != std::string::npos) {
    std::string unit = t.substr(spos);
    if (unit == "s2") basis = 1;
    else if (unit == "s3") basis = 2;
    else if (unit == "s6") basis = 3;
    else parse_fail(whole, "unknown radical '" + unit + "'");
    coeff_text = t.substr(0, spos);
    if (!coeff_text.empty() && coeff_text.back() == '*') coeff_text.pop_back();
    if (coeff_text.empty()) coeff_text = "1";
  }
  Rational c;
  try {
    c = parse_rational(coeff_text);
  } catch (const Error&) {
    parse_fail(whole, "bad coefficient '" + coeff_text + "'");
  }
  std::array<Rational, 4> a{0, 0, 0, 0};
  a[basis] = c;
  return {a[0], a[1], a[2], a[3]};
}

}  // namespace

NF4 parse_nf4(std::string_view text) {
  NF4 sum;
  std::size_t i = 0, n = text.size();
  bool any = false;
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == n) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (any) {
      parse_fail(text, "missing operator between terms");
    }
    std::size_t j = i;
    while (j < n && text[j] != '+' && text[j] != '-') ++j;
    NF4 term = parse_term(text.substr(i, j - i), text);
    if (sign < 0) term = -term;
    sum += term;
    any = true;
    i = j;
  }
  if (!any) parse_fail(text, "empty");
  return sum;
}

}  // namespace numfield
}  // namespace waldo
