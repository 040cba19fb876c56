#pragma once

// Immutable rooted full binary trees.
//
// Nodes live in one contiguous vector. Every internal node refers to children
// with strictly smaller indices and the root is always the last node, so a
// forward loop over `nodes()` is a post-order traversal. All algorithms in the
// library rely on that ordering and never recurse on tree depth.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdtree/error.hpp"

namespace sdtree {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct Node {
  NodeId left = kNoNode;
  NodeId right = kNoNode;

  bool is_leaf() const noexcept { return left == kNoNode; }
  friend bool operator==(const Node&, const Node&) = default;
};

class TreeBuilder;

class Tree {
 public:
  // A single unlabeled leaf.
  Tree() : nodes_(1) {}

  static Tree leaf(std::string label = {}) {
    Tree t;
    if (!label.empty()) t.labels_.push_back(std::move(label));
    return t;
  }

  // T_L ⊙ T_R
  static Tree join(const Tree& left, const Tree& right);

  // Validates an arbitrary node table (any index order) and renumbers it into
  // post-order. `labels` is empty or has one entry per node.
  static Tree from_parts(std::vector<Node> nodes, std::vector<std::string> labels, NodeId root);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t leaf_count() const noexcept { return (nodes_.size() + 1) / 2; }
  std::size_t internal_count() const noexcept { return nodes_.size() / 2; }
  NodeId root() const noexcept { return static_cast<NodeId>(nodes_.size() - 1); }

  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::span<const Node> nodes() const noexcept { return nodes_; }

  bool has_labels() const noexcept { return !labels_.empty(); }
  std::string_view label(NodeId id) const {
    if (labels_.empty()) return {};
    return labels_.at(id);
  }

  // Leaves in left-to-right depth-first order.
  std::vector<NodeId> leaves_in_order() const;

  // Copy of this tree with leaf labels replaced, in left-to-right order.
  Tree relabeled(std::span<const std::string> leaf_labels) const;
  // Copy with all labels dropped.
  Tree unlabeled() const {
    Tree t = *this;
    t.labels_.clear();
    return t;
  }

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  friend class TreeBuilder;
  std::vector<Node> nodes_;
  std::vector<std::string> labels_;  // empty, or one per node ("" = unlabeled)
};

// Bottom-up construction. Children must already exist and may be used once.
class TreeBuilder {
 public:
  TreeBuilder() = default;

  void reserve(std::size_t nodes) {
    nodes_.reserve(nodes);
    used_.reserve(nodes);
  }

  NodeId add_leaf(std::string label = {}) {
    if (!label.empty() && labels_.size() < nodes_.size()) labels_.resize(nodes_.size());
    if (!label.empty() || !labels_.empty()) labels_.push_back(std::move(label));
    return push(Node{});
  }

  NodeId add_internal(NodeId left, NodeId right) {
    claim(left);
    claim(right);
    if (left == right) throw StructuralError("a node cannot be both children of its parent");
    if (!labels_.empty()) labels_.emplace_back();
    return push(Node{left, right});
  }

  // Copies `t` in, returning the id of its root.
  NodeId add_subtree(const Tree& t) {
    const auto offset = static_cast<NodeId>(nodes_.size());
    if (t.has_labels() && labels_.size() < nodes_.size()) labels_.resize(nodes_.size());
    for (std::size_t i = 0; i < t.nodes_.size(); ++i) {
      Node n = t.nodes_[i];
      if (!n.is_leaf()) {
        n.left += offset;
        n.right += offset;
      }
      nodes_.push_back(n);
      used_.push_back(i + 1 != t.nodes_.size());
    }
    if (!labels_.empty()) {
      if (t.has_labels()) {
        labels_.insert(labels_.end(), t.labels_.begin(), t.labels_.end());
      } else {
        labels_.resize(nodes_.size());
      }
    }
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  std::size_t size() const noexcept { return nodes_.size(); }

  // The last node added becomes the root; every other node must be a child.
  Tree build() && {
    if (nodes_.empty()) throw StructuralError("empty tree");
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
      if (!used_[i]) throw StructuralError("node " + std::to_string(i) + " is not connected to the root");
    }
    if (used_.back()) throw StructuralError("root is used as a child");
    Tree t;
    t.nodes_ = std::move(nodes_);
    if (!labels_.empty()) {
      labels_.resize(t.nodes_.size());
      t.labels_ = std::move(labels_);
    }
    return t;
  }

 private:
  NodeId push(Node n) {
    if (nodes_.size() >= kNoNode - 1) throw SizeError("tree too large");
    nodes_.push_back(n);
    used_.push_back(false);
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  void claim(NodeId id) {
    if (id >= nodes_.size()) throw StructuralError("child index " + std::to_string(id) + " does not exist");
    if (used_[id]) throw StructuralError("node " + std::to_string(id) + " already has a parent");
    used_[id] = true;
  }

  std::vector<Node> nodes_;
  std::vector<bool> used_;
  std::vector<std::string> labels_;
};

inline Tree Tree::join(const Tree& left, const Tree& right) {
  TreeBuilder b;
  b.reserve(left.node_count() + right.node_count() + 1);
  const NodeId l = b.add_subtree(left);
  const NodeId r = b.add_subtree(right);
  b.add_internal(l, r);
  return std::move(b).build();
}

inline Tree Tree::from_parts(std::vector<Node> nodes, std::vector<std::string> labels, NodeId root) {
  const std::size_t count = nodes.size();
  if (count == 0) throw StructuralError("empty tree");
  if (root >= count) throw StructuralError("root index out of range");
  if (!labels.empty() && labels.size() != count) throw StructuralError("label table size mismatch");

  std::vector<std::uint8_t> parents(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const Node& n = nodes[i];
    if ((n.left == kNoNode) != (n.right == kNoNode)) {
      throw StructuralError("node " + std::to_string(i) + " has exactly one child");
    }
    if (n.is_leaf()) continue;
    for (NodeId c : {n.left, n.right}) {
      if (c >= count) throw StructuralError("node " + std::to_string(i) + " has a dangling child");
      if (parents[c]++) throw StructuralError("node " + std::to_string(c) + " has two parents");
    }
  }
  if (parents[root]) throw StructuralError("root has a parent");

  // Iterative post-order from the root; reaching every node proves connectivity.
  std::vector<NodeId> order;
  order.reserve(count);
  std::vector<std::pair<NodeId, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    const Node& n = nodes[id];
    if (n.is_leaf() || expanded) {
      order.push_back(id);
      continue;
    }
    stack.push_back({id, true});
    stack.push_back({n.right, false});
    stack.push_back({n.left, false});
  }
  if (order.size() != count) throw StructuralError("tree has unreachable nodes");

  std::vector<NodeId> renumber(count);
  for (std::size_t i = 0; i < count; ++i) renumber[order[i]] = static_cast<NodeId>(i);

  Tree t;
  t.nodes_.resize(count);
  bool any_label = false;
  for (const auto& l : labels) any_label = any_label || !l.empty();
  if (any_label) t.labels_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    Node n = nodes[order[i]];
    if (!n.is_leaf()) {
      n.left = renumber[n.left];
      n.right = renumber[n.right];
    }
    t.nodes_[i] = n;
    if (any_label) {
      if (!n.is_leaf() && !labels[order[i]].empty()) {
        throw StructuralError("internal node " + std::to_string(order[i]) + " carries a label");
      }
      t.labels_[i] = std::move(labels[order[i]]);
    }
  }
  return t;
}

inline std::vector<NodeId> Tree::leaves_in_order() const {
  // Post-order storage already visits left subtrees before right ones.
  std::vector<NodeId> out;
  out.reserve(leaf_count());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

inline Tree Tree::relabeled(std::span<const std::string> leaf_labels) const {
  if (leaf_labels.size() != leaf_count()) throw StructuralError("label count does not match leaf count");
  Tree t = *this;
  t.labels_.assign(nodes_.size(), std::string{});
  std::size_t next = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) t.labels_[i] = leaf_labels[next++];
  }
  return t;
}

}  // namespace sdtree
