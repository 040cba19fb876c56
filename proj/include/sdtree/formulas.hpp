#pragma once

// Exact scalar formulas for divide-and-conquer S/D counts, complete full
// binary trees, the Takagi function on dyadic rationals and ladder-base MinD
// Colless indices.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "sdtree/bits.hpp"
#include "sdtree/error.hpp"

namespace sdtree {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

// Keeps c_max(n) below 2^63.
inline constexpr std::uint64_t kMaxFormulaN = std::uint64_t{1} << 32;

enum class SigmaMethod { recursive, levelwise, bitwise };
enum class DeltaMethod { recursive, levelwise, explicit_sum, recurrence, midpoint, digit_weight };
enum class TakagiMethod { via_delta, series, weighted };
enum class CascMethod { recurrence, closed };

namespace detail {

inline void check_n(std::uint64_t n) {
  if (n == 0) throw DomainError("n must be at least 1");
  if (n > kMaxFormulaN) throw SizeError("n exceeds 2^32");
}

// (σ(n), σ(n+1))
inline std::pair<std::uint64_t, std::uint64_t> sigma_pair(std::uint64_t n) {
  if (n == 1) return {0, 1};
  const auto [a, b] = sigma_pair(n / 2);  // σ(m), σ(m+1)
  if (n % 2 == 0) return {2 * a + 1, a + b};
  return {a + b, 2 * b + 1};
}

// (δ(n), δ(n+1))
inline std::pair<std::uint64_t, std::uint64_t> delta_pair(std::uint64_t n) {
  if (n == 1) return {0, 0};
  const auto [a, b] = delta_pair(n / 2);
  if (n % 2 == 0) return {2 * a, a + b + 1};
  return {a + b + 1, 2 * b};
}

inline std::uint64_t delta_levelwise(std::uint64_t n) {
  const int k = floor_log2(n);
  std::uint64_t total = 0;
  for (int i = 0; i < k; ++i) {
    const std::uint64_t low = low_bits(n, i);
    total += bit(n, i) ? (std::uint64_t{1} << i) - low : low;
  }
  return total;
}

inline std::uint64_t delta_explicit(std::uint64_t n) {
  const int k = floor_log2(n);
  std::int64_t total = 0;
  for (int i = 0; i < k; ++i) {
    const int ni = bit(n, i);
    const auto low = static_cast<std::int64_t>(low_bits(n, i));
    total += ni * (std::int64_t{1} << i) + (ni ? -low : low);
  }
  return static_cast<std::uint64_t>(total);
}

inline std::uint64_t delta_digit_weight(std::uint64_t n) {
  const int k = floor_log2(n);
  std::int64_t total = 0;
  for (int i = 0; i < k; ++i) {
    if (!bit(n, i)) continue;
    total += (std::int64_t{1} << i) * ((k - i) - 2 * weight(n >> i) + 4);
  }
  return static_cast<std::uint64_t>(total);
}

inline std::uint64_t delta_recurrence(std::uint64_t n) {
  std::uint64_t d = 0;
  for (std::uint64_t m = 1; m < n; ++m) d = d + floor_log2(m) + 2 - 2 * weight(m);
  return d;
}

}  // namespace detail

inline std::uint64_t sigma(std::uint64_t n, SigmaMethod method = SigmaMethod::recursive) {
  detail::check_n(n);
  const int k = floor_log2(n);
  switch (method) {
    case SigmaMethod::recursive:
      return detail::sigma_pair(n).first;
    case SigmaMethod::levelwise: {
      std::uint64_t total = 0;
      for (int i = 0; i <= k; ++i) {
        const std::uint64_t low = low_bits(n, i);
        total += bit(n, i) ? low : (std::uint64_t{1} << i) - low;
      }
      return total;
    }
    case SigmaMethod::bitwise: {
      std::int64_t total = 0;
      for (int i = 0; i <= k; ++i) {
        const int e = static_cast<int>(((n >> i) + 1) % 2);
        const auto low = static_cast<std::int64_t>(low_bits(n, i));
        total += e * (std::int64_t{1} << i) + (e ? -low : low);
      }
      return static_cast<std::uint64_t>(total);
    }
  }
  throw DomainError("unknown sigma method");
}

inline std::uint64_t delta(std::uint64_t n, DeltaMethod method = DeltaMethod::recursive) {
  detail::check_n(n);
  switch (method) {
    case DeltaMethod::recursive: return detail::delta_pair(n).first;
    case DeltaMethod::levelwise: return detail::delta_levelwise(n);
    case DeltaMethod::explicit_sum: return detail::delta_explicit(n);
    case DeltaMethod::digit_weight: return detail::delta_digit_weight(n);
    case DeltaMethod::recurrence: return detail::delta_recurrence(n);
    case DeltaMethod::midpoint: {
      if (is_pow2(n)) throw DomainError("midpoint form of delta is undefined at powers of two");
      // Neighbours from the level-wise sum so the identity is not checked against itself.
      const std::uint64_t sum = detail::delta_levelwise(n - 1) + detail::delta_levelwise(n + 1);
      return sum / 2 + 1 - lowest_exponent(n);
    }
  }
  throw DomainError("unknown delta method");
}

// δ(1..n_max) by stepping the recurrence once; index 0 is unused.
inline std::vector<std::uint64_t> delta_sequence(std::uint64_t n_max) {
  if (n_max > kMaxFormulaN) throw SizeError("n exceeds 2^32");
  std::vector<std::uint64_t> out(n_max + 1, 0);
  for (std::uint64_t m = 1; m < n_max; ++m) out[m + 1] = out[m] + floor_log2(m) + 2 - 2 * weight(m);
  return out;
}

// D-nodes of the complete full binary tree: ⌊log₂ d⌋ with n = 2^ℓ d, d odd.
inline std::uint64_t delta_cfb(std::uint64_t n) {
  detail::check_n(n);
  return static_cast<std::uint64_t>(floor_log2(n >> lowest_exponent(n)));
}

// Same count, as the number of equal binary digits of n and n−1.
inline std::uint64_t delta_cfb_digits(std::uint64_t n) {
  detail::check_n(n);
  const int k = floor_log2(n);
  std::uint64_t same = 0;
  for (int i = 0; i <= k; ++i) same += bit(n, i) == bit(n - 1, i);
  return same;
}

struct DyadicRational {
  std::uint64_t numerator = 0;
  int k = 0;  // value = numerator / 2^k

  DyadicRational reduced() const {
    DyadicRational d = *this;
    while (d.k > 0 && d.numerator % 2 == 0) {
      d.numerator /= 2;
      --d.k;
    }
    if (d.numerator == 0) d.k = 0;
    return d;
  }
  std::string str() const {
    const auto d = reduced();
    return std::to_string(d.numerator) + "/" + std::to_string(std::uint64_t{1} << d.k);
  }
  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    const auto x = a.reduced(), y = b.reduced();
    return x.numerator == y.numerator && x.k == y.k;
  }
};

namespace detail {

// ℓ_1 .. ℓ_k of r in a window of k bits.
inline std::vector<std::uint64_t> takagi_ells(std::uint64_t r, int k) {
  std::vector<std::uint64_t> ell(static_cast<std::size_t>(k) + 1, 0);
  std::uint64_t ones = 0;  // Σ_{j=1}^{i} r_{k−j}
  for (int i = 1; i < k; ++i) {
    ones += bit(r, k - i);
    ell[i + 1] = bit(r, k - (i + 1)) ? i - ones : ones;
  }
  return ell;
}

}  // namespace detail

// τ(r / 2^k) for 0 ≤ r ≤ 2^k; τ(1) = τ(0) = 0.
inline DyadicRational takagi_dyadic(std::uint64_t r, int k, TakagiMethod method = TakagiMethod::via_delta) {
  if (k < 0 || k > 30) throw DomainError("takagi window k must be in [0, 30]");
  const std::uint64_t full = std::uint64_t{1} << k;
  if (r > full) throw DomainError("takagi argument r/2^k exceeds 1");
  if (r == full) return {0, 0};
  switch (method) {
    case TakagiMethod::via_delta:
      return DyadicRational{delta(full + r), k}.reduced();
    case TakagiMethod::series: {
      // Σ ℓ_i / 2^i term by term, then the geometric tail ω(r)·Σ_{i>k} 2^−i.
      const auto ell = detail::takagi_ells(r, k);
      DyadicRational acc{0, k};
      for (int i = 1; i <= k; ++i) acc.numerator += ell[i] << (k - i);
      acc.numerator += static_cast<std::uint64_t>(weight(r));
      return acc.reduced();
    }
    case TakagiMethod::weighted: {
      const auto ell = detail::takagi_ells(r, k);
      std::uint64_t scaled = static_cast<std::uint64_t>(weight(r));
      for (int i = 1; i <= k; ++i) scaled += (std::uint64_t{1} << (k - i)) * ell[i];
      return DyadicRational{scaled, k}.reduced();
    }
  }
  throw DomainError("unknown takagi method");
}

// Colless index of the ladder-base MinD tree, perfect subtrees descending.
inline std::uint64_t c_desc(std::uint64_t n) {
  detail::check_n(n);
  if (n == 1) return 0;
  const std::uint64_t m = n / 2;
  if (n % 2 == 0) return 2 * c_desc(m);
  if (m == 0) return 0;
  const std::uint64_t two_rho2 = std::uint64_t{1} << (lowest_exponent(m) + 1);
  return 2 * c_desc(m) - static_cast<std::uint64_t>(weight(m)) + two_rho2;
}

// Same, perfect subtrees ascending.
inline std::uint64_t c_asc(std::uint64_t n, CascMethod method = CascMethod::recurrence) {
  detail::check_n(n);
  if (method == CascMethod::closed) {
    const int k = floor_log2(n);
    std::uint64_t total = 0;
    for (int i = 0; i < k; ++i) {
      if (!bit(n, i)) continue;
      total += (std::uint64_t{1} << i) * ((n >> i) - 2);
    }
    return total;
  }
  std::uint64_t c = 0;
  // Walk the binary expansion from the top: c(2m) = 2c(m), c(2m+1) = 2c(m) + 2m − 1.
  std::uint64_t m = 1;
  for (int i = floor_log2(n) - 1; i >= 0; --i) {
    if (bit(n, i)) {
      c = 2 * c + 2 * m - 1;
      m = 2 * m + 1;
    } else {
      c = 2 * c;
      m = 2 * m;
    }
  }
  return c;
}

inline std::uint64_t c_max(std::uint64_t n) {
  detail::check_n(n);
  return (n - 1) * (n - 2) / 2;
}

inline Rational normalized_colless(std::uint64_t c, std::uint64_t n) {
  detail::check_n(n);
  if (n <= 3) throw DomainError("normalized Colless index is undefined for n <= 3");
  const std::uint64_t lo = delta(n), hi = c_max(n);
  if (c < lo || c > hi) throw DomainError("Colless value " + std::to_string(c) + " outside [delta(n), c_max(n)]");
  return Rational(static_cast<std::int64_t>(c - lo), static_cast<std::int64_t>(hi - lo));
}

struct CollessBounds {
  std::uint64_t n = 0;
  std::uint64_t delta = 0;
  std::uint64_t c_desc = 0;
  std::uint64_t c_asc = 0;
  std::uint64_t c_max = 0;
  Rational normalized_asc;
  Rational normalized_upper;  // 2⌊log₂n⌋ / n
  bool ordered = false;            // δ ≤ c_desc ≤ c_asc ≤ c_max
  bool below_upper = false;        // N(c_asc) < 2k/n
  bool upper_below_log = false;    // 2k/n ≤ 2 log₂n / n
  bool log_below_dyadic = false;   // 2 log₂n / n ≤ k / 2^(k−1)

  bool holds() const { return ordered && below_upper && upper_below_log && log_below_dyadic; }
};

inline CollessBounds mind_bounds(std::uint64_t n) {
  detail::check_n(n);
  if (n < 4) throw DomainError("MinD Colless bounds need n >= 4");
  CollessBounds b;
  b.n = n;
  b.delta = delta(n);
  b.c_desc = c_desc(n);
  b.c_asc = c_asc(n);
  b.c_max = c_max(n);
  const int k = floor_log2(n);
  b.normalized_asc = normalized_colless(b.c_asc, n);
  b.normalized_upper = Rational(2 * k, static_cast<std::int64_t>(n));
  b.ordered = b.delta <= b.c_desc && b.c_desc <= b.c_asc && b.c_asc <= b.c_max;
  b.below_upper = b.normalized_asc < b.normalized_upper;
  // k ≤ log₂ n  ⇔  2^k ≤ n
  b.upper_below_log = (std::uint64_t{1} << k) <= n;
  // log₂n / n ≤ k / 2^k  ⇔  2^k log₂ n ≤ k n. Equality at n = 2^k; otherwise
  // the gap is at least 0.55 (n − 2^k) for k ≥ 2, far above rounding error.
  if (is_pow2(n)) {
    b.log_below_dyadic = true;
  } else {
    const long double lhs = std::ldexp(1.0L, k) * std::log2(static_cast<long double>(n));
    b.log_below_dyadic = lhs <= static_cast<long double>(k) * static_cast<long double>(n);
  }
  return b;
}

}  // namespace sdtree
