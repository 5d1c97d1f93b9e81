#include "waldo/thetaforms.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace waldo::thetaforms {

namespace {

using i128 = __int128;

constexpr const char* kModule = "thetaforms";

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

// floor(sqrt(v)) for v >= 0
i128 isqrt(i128 v) {
  if (v <= 0) return 0;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Bounds from 16 c B' Q = 4B'(2cz + ry + sx)^2 + (2B'y + T'x)^2 + (4A'B' - T'^2) x^2
// with A' = 4ac - s^2, B' = 4bc - r^2, T' = 4ct - 2rs.
struct Bounds {
  i128 A1, B1, T1, D2, K;
};

void count_range(const TernaryForm& q, std::int64_t limit, const Bounds& bd, std::int64_t x0, std::int64_t x1,
                 std::vector<std::uint64_t>& counts) {
  const i128 c = q.c;
  const i128 N = limit;
  for (std::int64_t x = x0; x <= x1; ++x) {
    i128 ry = bd.K - bd.D2 * x * x;
    if (ry < 0) continue;
    i128 sy = isqrt(ry);
    i128 ylo = ceil_div(-sy - bd.T1 * x, 2 * bd.B1);
    i128 yhi = floor_div(sy - bd.T1 * x, 2 * bd.B1);
    for (i128 y = ylo; y <= yhi; ++y) {
      i128 q2 = bd.A1 * x * x + bd.B1 * y * y + bd.T1 * x * y;  // 4c * Q(x, y, real z-minimizer)
      i128 rz = 4 * c * N - q2;
      if (rz < 0) continue;
      i128 sz = isqrt(rz);
      i128 lin = q.r * y + q.s * x;
      i128 zlo = ceil_div(-sz - lin, 2 * c);
      i128 zhi = floor_div(sz - lin, 2 * c);
      if (zlo > zhi) continue;
      std::int64_t yy = static_cast<std::int64_t>(y);
      std::int64_t z = static_cast<std::int64_t>(zlo);
      std::int64_t v = q(x, yy, z);
      std::int64_t step = q.c * (2 * z + 1) + static_cast<std::int64_t>(lin);
      for (; z <= static_cast<std::int64_t>(zhi); ++z) {
        if (v >= 0 && v <= limit) ++counts[static_cast<std::size_t>(v)];
        v += step;
        step += 2 * q.c;
      }
    }
  }
}

}  // namespace

std::array<std::array<std::int64_t, 3>, 3> TernaryForm::gram() const {
  return {{{2 * a, t, s}, {t, 2 * b, r}, {s, r, 2 * c}}};
}

std::string TernaryForm::to_string() const {
  std::ostringstream os;
  os << '[' << a << ',' << b << ',' << c << ',' << r << ',' << s << ',' << t << ']';
  return os.str();
}

TernaryForm parse_form(std::string_view text) {
  std::string cleaned;
  for (char ch : text) cleaned.push_back(ch == ',' || ch == '[' || ch == ']' ? ' ' : ch);
  std::istringstream is(cleaned);
  std::vector<std::string> parts;
  for (std::string tok; is >> tok;) parts.push_back(tok);
  if (parts.size() != 6)
    throw Error(kModule, ErrorKind::parse, "form needs six coefficients: '" + std::string(text) + "'");
  std::array<std::int64_t, 6> v{};
  for (std::size_t i = 0; i < 6; ++i) {
    Integer z = parse_integer(parts[i]);
    if (!z.fits_slong_p()) throw Error(kModule, ErrorKind::parse, "coefficient out of range: " + parts[i]);
    v[i] = z.get_si();
  }
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

bool is_positive_definite(const TernaryForm& q) {
  auto g = q.gram();
  i128 m1 = g[0][0];
  i128 m2 = i128(g[0][0]) * g[1][1] - i128(g[0][1]) * g[1][0];
  i128 m3 = i128(g[0][0]) * (i128(g[1][1]) * g[2][2] - i128(g[1][2]) * g[2][1]) -
            i128(g[0][1]) * (i128(g[1][0]) * g[2][2] - i128(g[1][2]) * g[2][0]) +
            i128(g[0][2]) * (i128(g[1][0]) * g[2][1] - i128(g[1][1]) * g[2][0]);
  return m1 > 0 && m2 > 0 && m3 > 0;
}

unsigned default_threads() {
  if (const char* env = std::getenv("WALDO_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

std::vector<std::uint64_t> repcount(const TernaryForm& q, std::uint64_t limit, unsigned threads) {
  if (!is_positive_definite(q)) throw Error(kModule, ErrorKind::domain, "form " + q.to_string() + " is not positive definite");
  if (limit > (std::uint64_t(1) << 40)) throw Error(kModule, ErrorKind::domain, "limit too large");
  std::vector<std::uint64_t> counts(limit + 1, 0);
  const auto N = static_cast<std::int64_t>(limit);

  Bounds bd{};
  bd.A1 = i128(4) * q.a * q.c - i128(q.s) * q.s;
  bd.B1 = i128(4) * q.b * q.c - i128(q.r) * q.r;
  bd.T1 = i128(4) * q.c * q.t - i128(2) * q.r * q.s;
  bd.D2 = 4 * bd.A1 * bd.B1 - bd.T1 * bd.T1;
  bd.K = 16 * i128(q.c) * bd.B1 * N;
  const auto X = static_cast<std::int64_t>(isqrt(bd.K / bd.D2));

  if (threads == 0) threads = default_threads();
  std::int64_t span = 2 * X + 1;
  if (threads <= 1 || span < 64) {
    count_range(q, N, bd, -X, X, counts);
    return counts;
  }

  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, span));
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(limit + 1, 0));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    std::int64_t lo = -X + span * w / threads;
    std::int64_t hi = -X + span * (w + 1) / threads - 1;
    pool.emplace_back([&, lo, hi, w] { count_range(q, N, bd, lo, hi, partial[w]); });
  }
  for (auto& th : pool) th.join();
  for (const auto& part : partial)
    for (std::size_t i = 0; i <= limit; ++i) counts[i] += part[i];
  return counts;
}

}  // namespace waldo::thetaforms
