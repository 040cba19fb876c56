#pragma once

// Canonical form under child transposition.
//
// The encoding is the pre-order sequence of leaf counts of internal nodes,
// visiting the larger child first. Leaves are implicit: a node of size 2 is a
// cherry, and for size m ≥ 3 the next entry is the size of its larger child.
// Equal-sized siblings are ordered so the lexicographically smaller encoding
// comes first, which makes the whole thing a total order on shapes.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "sdtree/sd_label.hpp"
#include "sdtree/tree.hpp"

namespace sdtree {

struct CanonicalForm {
  std::vector<std::uint32_t> sizes;

  std::uint64_t leaves() const noexcept { return sizes.empty() ? 1 : sizes.front(); }
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

namespace detail {

// For each internal node, the child that goes first in canonical orientation.
// Ranks order same-sized subtrees consistently with their encodings.
struct Orientation {
  std::vector<std::uint64_t> size;
  std::vector<NodeId> first;
};

inline Orientation orient(const Tree& t) {
  Orientation o;
  o.size = leaf_counts(t);
  const auto nodes = t.nodes();
  const std::size_t count = nodes.size();
  o.first.assign(count, kNoNode);
  std::vector<std::uint32_t> rank(count, 0);

  std::vector<NodeId> internal;
  internal.reserve(count / 2);
  for (NodeId i = 0; i < count; ++i) {
    if (!nodes[i].is_leaf()) internal.push_back(i);
  }
  std::stable_sort(internal.begin(), internal.end(),
                   [&](NodeId a, NodeId b) { return o.size[a] < o.size[b]; });

  using Key = std::tuple<std::uint64_t, std::uint32_t, std::uint32_t>;
  std::vector<std::pair<Key, NodeId>> group;
  for (std::size_t lo = 0; lo < internal.size();) {
    std::size_t hi = lo;
    while (hi < internal.size() && o.size[internal[hi]] == o.size[internal[lo]]) ++hi;
    group.clear();
    for (std::size_t j = lo; j < hi; ++j) {
      const NodeId id = internal[j];
      NodeId a = nodes[id].left, b = nodes[id].right;
      if (o.size[a] < o.size[b] || (o.size[a] == o.size[b] && rank[b] < rank[a])) std::swap(a, b);
      o.first[id] = a;
      group.push_back({Key{o.size[a], rank[a], rank[b]}, id});
    }
    std::sort(group.begin(), group.end());
    std::uint32_t r = 0;
    for (std::size_t j = 0; j < group.size(); ++j) {
      if (j > 0 && group[j].first != group[j - 1].first) ++r;
      rank[group[j].second] = r;
    }
    lo = hi;
  }
  return o;
}

}  // namespace detail

inline CanonicalForm canonicalize(const Tree& t) {
  const auto o = detail::orient(t);
  CanonicalForm f;
  f.sizes.reserve(t.internal_count());
  std::vector<NodeId> stack{t.root()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const Node& n = t.node(id);
    if (n.is_leaf()) continue;
    f.sizes.push_back(static_cast<std::uint32_t>(o.size[id]));
    const NodeId a = o.first[id];
    const NodeId b = a == n.left ? n.right : n.left;
    stack.push_back(b);
    stack.push_back(a);
  }
  return f;
}

inline bool isomorphic(const Tree& a, const Tree& b) {
  return a.leaf_count() == b.leaf_count() && canonicalize(a) == canonicalize(b);
}

// Same tree (labels kept) with every node's children in canonical order.
inline Tree orient_canonically(const Tree& t) {
  const auto o = detail::orient(t);
  TreeBuilder b;
  b.reserve(t.node_count());
  std::vector<NodeId> built(t.node_count(), kNoNode);
  std::vector<std::pair<NodeId, bool>> stack{{t.root(), false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    const Node& n = t.node(id);
    if (n.is_leaf()) {
      built[id] = b.add_leaf(std::string(t.label(id)));
      continue;
    }
    const NodeId first = o.first[id];
    const NodeId second = first == n.left ? n.right : n.left;
    if (expanded) {
      built[id] = b.add_internal(built[first], built[second]);
      continue;
    }
    stack.push_back({id, true});
    stack.push_back({second, false});
    stack.push_back({first, false});
  }
  return std::move(b).build();
}

// Rebuilds the unlabeled shape an encoding describes.
inline Tree from_canonical(const CanonicalForm& f) {
  if (f.sizes.empty()) return Tree{};
  TreeBuilder b;
  b.reserve(2 * f.leaves() - 1);
  std::size_t pos = 0;
  // Frames: subtree size, and the built first child once available.
  struct Frame {
    std::uint64_t size;
    std::uint64_t first_size;
    NodeId first;
  };
  std::vector<Frame> stack;
  NodeId result = kNoNode;
  auto open = [&](std::uint64_t m) {
    if (m == 1) {
      result = b.add_leaf();
      return;
    }
    if (pos >= f.sizes.size() || f.sizes[pos] != m) throw StructuralError("corrupt canonical encoding");
    ++pos;
    std::uint64_t a = 1;
    if (m > 2) {
      if (pos >= f.sizes.size()) throw StructuralError("corrupt canonical encoding");
      a = f.sizes[pos];
      if (a >= m || 2 * a < m) throw StructuralError("corrupt canonical encoding");
    }
    stack.push_back({m, a, kNoNode});
    result = kNoNode;
  };
  open(f.leaves());
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (result == kNoNode) {
      open(top.first == kNoNode ? top.first_size : top.size - top.first_size);
      continue;
    }
    if (top.first == kNoNode) {
      top.first = result;
      result = kNoNode;
      continue;
    }
    const NodeId id = b.add_internal(top.first, result);
    stack.pop_back();
    result = id;
  }
  if (pos != f.sizes.size()) throw StructuralError("corrupt canonical encoding");
  return std::move(b).build();
}

}  // namespace sdtree
