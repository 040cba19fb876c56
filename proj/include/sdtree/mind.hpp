#pragma once

// MinD trees: perfect subtrees of sizes 2^ρ_i hung from a base tree on ω(n)
// leaves. They have ω(n) − 1 D-nodes, the fewest possible on n leaves.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sdtree/bits.hpp"
#include "sdtree/canonical.hpp"
#include "sdtree/construct.hpp"
#include "sdtree/sd_label.hpp"
#include "sdtree/tree.hpp"

namespace sdtree {

inline constexpr int kMaxMindWeight = 10;

struct BinaryDecomposition {
  std::uint64_t n = 0;
  std::vector<int> exponents;  // strictly decreasing

  int omega() const noexcept { return static_cast<int>(exponents.size()); }
};

inline BinaryDecomposition binary_decomposition(std::uint64_t n) {
  if (n == 0) throw DomainError("n must be at least 1");
  BinaryDecomposition d;
  d.n = n;
  for (int i = floor_log2(n); i >= 0; --i) {
    if (bit(n, i)) d.exponents.push_back(i);
  }
  return d;
}

struct MinDSpec {
  BinaryDecomposition decomposition;
  Tree base;                   // ω(n) leaves, labels ignored
  std::vector<int> assignment;  // exponent for each base leaf, left to right
};

inline Tree build_mind(const MinDSpec& spec) {
  const auto& exps = spec.decomposition.exponents;
  if (spec.base.leaf_count() != exps.size()) {
    throw SpecError("base tree has " + std::to_string(spec.base.leaf_count()) + " leaves but omega(" +
                    std::to_string(spec.decomposition.n) + ") = " + std::to_string(exps.size()));
  }
  if (spec.assignment.size() != exps.size()) throw SpecError("assignment length differs from omega(n)");
  std::vector<int> sorted = spec.assignment;
  std::sort(sorted.rbegin(), sorted.rend());
  if (sorted != exps) throw SpecError("assignment is not a permutation of the binary exponents of n");
  std::uint64_t total = 0;
  for (int e : exps) total += std::uint64_t{1} << e;
  if (total != spec.decomposition.n) throw SpecError("exponents do not sum to n");
  if (total > kMaxLeaves) throw SizeError("n exceeds 2^30");

  TreeBuilder b;
  b.reserve(2 * total - 1);
  std::vector<NodeId> built(spec.base.node_count());
  std::size_t next = 0;
  const auto nodes = spec.base.nodes();
  for (NodeId i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) {
      built[i] = b.add_subtree(make_perfect(spec.assignment[next++]));
    } else {
      built[i] = b.add_internal(built[nodes[i].left], built[nodes[i].right]);
    }
  }
  return std::move(b).build();
}

// Ladder base, 2^ρ_ω (largest) on the top rung.
inline Tree mind_descending(std::uint64_t n) {
  auto d = binary_decomposition(n);
  std::vector<int> order(d.exponents.rbegin(), d.exponents.rend());
  return build_mind({d, make_ladder(d.exponents.size()), std::move(order)});
}

// Ladder base, 2^ρ_1 (smallest) on the top rung.
inline Tree mind_ascending(std::uint64_t n) {
  auto d = binary_decomposition(n);
  std::vector<int> order = d.exponents;
  return build_mind({d, make_ladder(d.exponents.size()), std::move(order)});
}

inline bool is_mind(const Tree& t) {
  return sd_label(t).d_count + 1 == static_cast<std::size_t>(weight(t.leaf_count()));
}

// Calls `visit` once per MinD isomorphism class on n leaves.
//
// The base trees are generated with leaves labelled by the (distinct)
// exponents, inserting each new leaf above every existing node in turn; this
// produces each leaf-labelled tree exactly once, (2ω−3)!! in all. Distinct
// exponents make the grafted trees pairwise non-isomorphic.
inline void for_each_mind(std::uint64_t n, const std::function<void(const Tree&)>& visit) {
  const auto d = binary_decomposition(n);
  const int w = d.omega();
  if (w > kMaxMindWeight) {
    throw SizeError("omega(" + std::to_string(n) + ") = " + std::to_string(w) + " exceeds the enumeration cap " +
                    std::to_string(kMaxMindWeight));
  }
  if (n > kMaxLeaves) throw SizeError("n exceeds 2^30");
  if (w == 1) {
    visit(make_perfect(d.exponents[0]));
    return;
  }

  // Mutable labelled base: node i < w is the leaf for exponents[i].
  struct Slot {
    int left = -1, right = -1, parent = -1;
  };
  std::vector<Slot> slot(2 * w - 1);
  int root = w;
  slot[w] = {0, 1, -1};
  slot[0].parent = slot[1].parent = w;
  int used = w + 1;

  std::vector<Tree> perfect;
  for (int e : d.exponents) perfect.push_back(make_perfect(e));

  auto emit = [&] {
    TreeBuilder b;
    b.reserve(2 * n - 1);
    std::vector<std::pair<int, bool>> stack{{root, false}};
    std::vector<NodeId> built(slot.size(), kNoNode);
    while (!stack.empty()) {
      auto [id, expanded] = stack.back();
      stack.pop_back();
      if (id < w) {
        built[id] = b.add_subtree(perfect[id]);
      } else if (expanded) {
        built[id] = b.add_internal(built[slot[id].left], built[slot[id].right]);
      } else {
        stack.push_back({id, true});
        stack.push_back({slot[id].right, false});
        stack.push_back({slot[id].left, false});
      }
    }
    visit(std::move(b).build());
  };

  // Insert leaf `leaf` above every existing node.
  auto insert = [&](auto&& self, int leaf) -> void {
    if (leaf == w) {
      emit();
      return;
    }
    std::vector<int> existing;
    for (int i = 0; i < leaf; ++i) existing.push_back(i);
    for (int i = w; i < used; ++i) existing.push_back(i);
    for (int x : existing) {
      const int y = used++;
      const int p = slot[x].parent;
      slot[y] = {x, leaf, p};
      slot[leaf].parent = y;
      slot[x].parent = y;
      if (p < 0) {
        root = y;
      } else if (slot[p].left == x) {
        slot[p].left = y;
      } else {
        slot[p].right = y;
      }
      self(self, leaf + 1);
      if (p < 0) {
        root = x;
      } else if (slot[p].left == y) {
        slot[p].left = x;
      } else {
        slot[p].right = x;
      }
      slot[x].parent = p;
      slot[leaf].parent = -1;
      --used;
    }
  };
  insert(insert, 2);
}

// All MinD classes, ordered by canonical encoding.
inline std::vector<Tree> enumerate_mind(std::uint64_t n) {
  std::vector<std::pair<CanonicalForm, Tree>> found;
  for_each_mind(n, [&](const Tree& t) { found.emplace_back(canonicalize(t), t); });
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Tree> out;
  out.reserve(found.size());
  for (auto& [form, t] : found) out.push_back(std::move(t));
  return out;
}

}  // namespace sdtree
