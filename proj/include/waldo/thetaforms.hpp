#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "waldo/types.hpp"

namespace waldo::thetaforms {

// Q = a x^2 + b y^2 + c z^2 + r yz + s xz + t xy, stored as [a,b,c,r,s,t].
struct TernaryForm {
  std::int64_t a = 0, b = 0, c = 0, r = 0, s = 0, t = 0;

  std::int64_t operator()(std::int64_t x, std::int64_t y, std::int64_t z) const {
    return a * x * x + b * y * y + c * z * z + r * y * z + s * x * z + t * x * y;
  }

  // Gram matrix [[2a,t,s],[t,2b,r],[s,r,2c]], so Q(v) = v^T G v / 2.
  std::array<std::array<std::int64_t, 3>, 3> gram() const;

  std::string to_string() const;  // "[a,b,c,r,s,t]"

  friend bool operator==(const TernaryForm&, const TernaryForm&) = default;
};

// Accepts "a,b,c,r,s,t" or whitespace-separated coefficients, with optional
// surrounding brackets.
TernaryForm parse_form(std::string_view text);

bool is_positive_definite(const TernaryForm& q);

// counts[n] = #{v in Z^3 : Q(v) = n} for 0 <= n <= limit. Throws
// ErrorKind::domain for forms that are not positive definite.
// threads = 0 picks the WALDO_THREADS default; the result does not depend on it.
std::vector<std::uint64_t> repcount(const TernaryForm& q, std::uint64_t limit, unsigned threads = 1);

// Worker count from WALDO_THREADS, falling back to 1.
unsigned default_threads();

}  // namespace waldo::thetaforms
