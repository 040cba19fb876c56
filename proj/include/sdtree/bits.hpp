#pragma once

#include <bit>
#include <cstdint>

#include "sdtree/error.hpp"

namespace sdtree {

// ω(n): number of one bits.
constexpr int weight(std::uint64_t n) noexcept { return std::popcount(n); }

// ⌊log₂ n⌋ for n ≥ 1.
constexpr int floor_log2(std::uint64_t n) {
  if (n == 0) throw DomainError("floor_log2 of 0");
  return std::bit_width(n) - 1;
}

constexpr int bit(std::uint64_t n, int i) noexcept { return static_cast<int>((n >> i) & 1u); }

constexpr bool is_pow2(std::uint64_t n) noexcept { return std::has_single_bit(n); }

// Exponent of the lowest set bit (ρ₁).
constexpr int lowest_exponent(std::uint64_t n) {
  if (n == 0) throw DomainError("lowest_exponent of 0");
  return std::countr_zero(n);
}

// n mod 2^i
constexpr std::uint64_t low_bits(std::uint64_t n, int i) noexcept {
  return i >= 64 ? n : n & ((std::uint64_t{1} << i) - 1);
}

}  // namespace sdtree
