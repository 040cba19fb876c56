#pragma once

// Exact counts of parenthetic forms and of inequivalent products.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sdtree/bits.hpp"
#include "sdtree/error.hpp"
#include "sdtree/formulas.hpp"

namespace sdtree {

using BigCount = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kMaxThetaN = 512;
inline constexpr std::uint64_t kMaxProductN = 5000;

namespace detail {

inline void check_count_n(std::uint64_t n, std::uint64_t cap) {
  if (n == 0) throw DomainError("n must be at least 1");
  if (n > cap) throw SizeError("n = " + std::to_string(n) + " exceeds the supported maximum " + std::to_string(cap));
}

}  // namespace detail

// α(1..n_max); index 0 unused. Equal-size halves are counted as ordered pairs
// α(n/2)², which is the convention that reproduces the published table.
inline std::vector<BigCount> alpha_table(std::uint64_t n_max) {
  detail::check_count_n(n_max, kMaxThetaN);
  std::vector<BigCount> a(n_max + 1, 0);
  a[1] = 1;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    for (std::uint64_t i = 1; i <= n / 2; ++i) a[n] += a[i] * a[n - i];
  }
  return a;
}

inline BigCount alpha(std::uint64_t n) { return alpha_table(n)[n]; }

struct ThetaTable {
  std::uint64_t n_max = 0;
  // entries[n][s] = θ(n, s) for 0 ≤ n ≤ n_max, 0 ≤ s ≤ n_max
  std::vector<std::vector<BigCount>> entries;
  std::vector<BigCount> alpha;  // row sums

  const BigCount& at(std::uint64_t n, std::uint64_t s) const {
    static const BigCount zero = 0;
    if (n > n_max || s > n_max) return zero;
    return entries[n][s];
  }
};

inline ThetaTable theta_table(std::uint64_t n_max) {
  if (n_max > kMaxThetaN) throw SizeError("theta table limited to n <= " + std::to_string(kMaxThetaN));
  ThetaTable t;
  t.n_max = n_max;
  const std::size_t w = n_max + 1;
  t.entries.assign(w, std::vector<BigCount>(w, 0));
  t.alpha.assign(w, 0);
  auto& th = t.entries;
  th[0][0] = 1;
  if (n_max >= 1) th[1][0] = 1;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    for (std::uint64_t s = 0; s < n; ++s) {
      BigCount total = 0;
      for (std::uint64_t j = 1; j <= (n - 1) / 2; ++j) {
        for (std::uint64_t i = 0; i <= s && i < j; ++i) {
          if (s - i >= n - j && n - j > 0) continue;
          total += th[j][i] * th[n - j][s - i];
        }
      }
      if (n % 2 == 0 && s >= 1) {
        const std::uint64_t h = n / 2;
        for (std::uint64_t i = 0; i <= s - 1; ++i) {
          if (i >= h || s - 1 - i >= h) continue;
          total += th[h][i] * th[h][s - 1 - i];
        }
      }
      th[n][s] = total;
    }
  }
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    for (std::uint64_t s = 0; s < n; ++s) t.alpha[n] += th[n][s];
  }
  return t;
}

inline BigCount theta(std::uint64_t n, std::uint64_t s) {
  if (n == 0) return s == 0 ? 1 : 0;
  if (s >= n) return 0;
  return theta_table(n).at(n, s);
}

enum class TableView { s, d };

// Rows n = 2..n_max. The s view has columns s = 1..n_max−1, the d view
// d = 0..n_max−2; unused cells are empty; the last column is α(n).
inline std::string theta_csv(const ThetaTable& t, TableView view) {
  std::ostringstream os;
  const std::uint64_t cols = t.n_max >= 2 ? t.n_max - 1 : 0;
  os << "n";
  for (std::uint64_t c = 0; c < cols; ++c) {
    os << ',' << (view == TableView::s ? "s=" : "d=") << (view == TableView::s ? c + 1 : c);
  }
  os << ",alpha\n";
  for (std::uint64_t n = 2; n <= t.n_max; ++n) {
    os << n;
    for (std::uint64_t c = 0; c < cols; ++c) {
      os << ',';
      if (c >= n - 1) continue;
      // d = n − 1 − s
      const std::uint64_t s = view == TableView::s ? c + 1 : n - 1 - c;
      os << t.at(n, s);
    }
    os << ',' << t.alpha[n] << '\n';
  }
  return os.str();
}

inline BigCount factorial(std::uint64_t n) {
  BigCount f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigCount binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigCount c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

// (2n−3)!!, with the empty product for n ≤ 2.
inline BigCount total_products(std::uint64_t n) {
  detail::check_count_n(n, kMaxProductN);
  BigCount p = 1;
  for (std::uint64_t f = 3; f + 3 <= 2 * n; f += 2) p *= f;
  return p;
}

// Exponent of 2 in n! (Legendre).
inline std::uint64_t pow2_in_factorial(std::uint64_t n) {
  std::uint64_t e = 0;
  for (std::uint64_t p = n / 2; p > 0; p /= 2) e += p;
  return e;
}

// Products (labelled instances) of one parenthetic form with s S-nodes.
inline BigCount products_for_form(std::uint64_t n, std::uint64_t s) {
  detail::check_count_n(n, kMaxProductN);
  if (s > pow2_in_factorial(n)) {
    throw DomainError("2^" + std::to_string(s) + " does not divide " + std::to_string(n) + "!");
  }
  return factorial(n) >> static_cast<unsigned>(s);
}

enum class DacProductMethod { closed, david };

inline BigCount dac_products(std::uint64_t n, DacProductMethod method = DacProductMethod::closed) {
  detail::check_count_n(n, kMaxProductN);
  if (method == DacProductMethod::closed) return factorial(n) >> static_cast<unsigned>(sigma(n));
  std::map<std::uint64_t, BigCount> memo{{1, 1}};
  // Sizes reachable by halving are at most two per level, so plain recursion is fine.
  auto rho = [&](auto&& self, std::uint64_t m) -> BigCount {
    if (auto it = memo.find(m); it != memo.end()) return it->second;
    const std::uint64_t h = m / 2;
    BigCount r;
    if (m % 2 == 0) {
      const BigCount half = self(self, h);
      r = binomial(m, h) * half * half / 2;
    } else {
      r = binomial(m, h) * self(self, h) * self(self, h + 1);
    }
    memo.emplace(m, r);
    return r;
  };
  return rho(rho, n);
}

struct SBounds {
  std::uint64_t s_min = 0;
  std::uint64_t s_max = 0;
  std::uint64_t pow2_in_factorial = 0;
};

inline SBounds s_bounds(std::uint64_t n) {
  if (n == 0) throw DomainError("n must be at least 1");
  SBounds b;
  b.s_min = n >= 2 ? 1 : 0;
  b.s_max = n - static_cast<std::uint64_t>(weight(n));
  b.pow2_in_factorial = pow2_in_factorial(n);
  return b;
}

}  // namespace sdtree
