#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sdtree/tree.hpp"

namespace sdtree {

enum class NodeKind : std::uint8_t { leaf, s, d };

inline const char* kind_name(NodeKind k) noexcept {
  switch (k) {
    case NodeKind::s: return "S";
    case NodeKind::d: return "D";
    default: return "leaf";
  }
}

struct SDLabeling {
  std::vector<NodeKind> kind;             // per node
  std::vector<std::uint64_t> leaf_count;  // per node
  std::size_t s_count = 0;
  std::size_t d_count = 0;
};

inline std::vector<std::uint64_t> leaf_counts(const Tree& t) {
  const auto nodes = t.nodes();
  std::vector<std::uint64_t> out(nodes.size(), 1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].is_leaf()) out[i] = out[nodes[i].left] + out[nodes[i].right];
  }
  return out;
}

inline SDLabeling sd_label(const Tree& t) {
  SDLabeling lab;
  lab.leaf_count = leaf_counts(t);
  const auto nodes = t.nodes();
  lab.kind.resize(nodes.size(), NodeKind::leaf);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) continue;
    if (lab.leaf_count[nodes[i].left] == lab.leaf_count[nodes[i].right]) {
      lab.kind[i] = NodeKind::s;
      ++lab.s_count;
    } else {
      lab.kind[i] = NodeKind::d;
      ++lab.d_count;
    }
  }
  return lab;
}

// Σ |ℓ_L − ℓ_R| over internal nodes.
inline std::uint64_t colless_index(const Tree& t) {
  const auto counts = leaf_counts(t);
  const auto nodes = t.nodes();
  std::uint64_t c = 0;
  for (const Node& n : nodes) {
    if (n.is_leaf()) continue;
    const auto l = counts[n.left], r = counts[n.right];
    c += l > r ? l - r : r - l;
  }
  return c;
}

}  // namespace sdtree
