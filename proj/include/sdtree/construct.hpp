#pragma once

// Standard tree families. All constructors return unlabeled shapes; use
// `with_letter_labels` to attach a, b, c, ... in left-to-right order.

#include <cstdint>
#include <string>
#include <vector>

#include "sdtree/bits.hpp"
#include "sdtree/tree.hpp"

namespace sdtree {

inline constexpr std::uint64_t kMaxLeaves = std::uint64_t{1} << 30;

namespace detail {

inline void check_leaves(std::uint64_t n) {
  if (n == 0) throw DomainError("a tree needs at least one leaf");
  if (n > kMaxLeaves) throw SizeError("leaf count " + std::to_string(n) + " exceeds 2^30");
}

// Recursion depth is logarithmic for the balanced families below.
template <class Split>
NodeId build_split(TreeBuilder& b, std::uint64_t n, const Split& split) {
  if (n == 1) return b.add_leaf();
  const std::uint64_t left = split(n);
  const NodeId l = build_split(b, left, split);
  const NodeId r = build_split(b, n - left, split);
  return b.add_internal(l, r);
}

}  // namespace detail

// ((…((a,b),c)…),z): every internal node has a leaf as right child.
inline Tree make_ladder(std::uint64_t n) {
  detail::check_leaves(n);
  TreeBuilder b;
  b.reserve(2 * n - 1);
  NodeId acc = b.add_leaf();
  for (std::uint64_t i = 1; i < n; ++i) acc = b.add_internal(acc, b.add_leaf());
  return std::move(b).build();
}

// Children get ⌈k/2⌉ and ⌊k/2⌋ leaves, larger on the left.
inline Tree make_divide_and_conquer(std::uint64_t n) {
  detail::check_leaves(n);
  TreeBuilder b;
  b.reserve(2 * n - 1);
  detail::build_split(b, n, [](std::uint64_t k) { return (k + 1) / 2; });
  return std::move(b).build();
}

// Levels full except the last, which fills from the left.
inline Tree make_complete_full_binary(std::uint64_t n) {
  detail::check_leaves(n);
  TreeBuilder b;
  b.reserve(2 * n - 1);
  detail::build_split(b, n, [](std::uint64_t m) {
    const int k = floor_log2(m);
    const std::uint64_t p = std::uint64_t{1} << k;
    const std::uint64_t r = m - p;
    if (r == 0) return p / 2;
    const std::uint64_t half = p / 2;
    return r < half ? half + r : p;
  });
  return std::move(b).build();
}

inline Tree make_perfect(int k) {
  if (k < 0) throw DomainError("perfect tree height must be nonnegative");
  if (k > 30) throw SizeError("perfect tree height exceeds 30");
  return make_divide_and_conquer(std::uint64_t{1} << k);
}

// a..z, aa..az, ba.. (bijective base 26)
inline std::string letter_label(std::uint64_t index) {
  std::string s;
  ++index;
  while (index > 0) {
    --index;
    s.insert(s.begin(), static_cast<char>('a' + index % 26));
    index /= 26;
  }
  return s;
}

inline Tree with_letter_labels(const Tree& t) {
  std::vector<std::string> labels;
  labels.reserve(t.leaf_count());
  for (std::uint64_t i = 0; i < t.leaf_count(); ++i) labels.push_back(letter_label(i));
  return t.relabeled(labels);
}

}  // namespace sdtree
