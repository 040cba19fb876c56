#pragma once

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sdtree/canonical.hpp"
#include "sdtree/sd_label.hpp"
#include "sdtree/tree.hpp"

namespace sdtree {

enum class Format { newick, dot, json };

inline bool is_label_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

inline bool is_valid_label(std::string_view s) noexcept {
  for (char c : s) {
    if (!is_label_char(c)) return false;
  }
  return true;
}

inline std::string to_newick(const Tree& t) {
  std::string out;
  out.reserve(t.node_count() * 2 + 2);
  // Each entry is a node to print or, when `close` is set, the tail of one.
  struct Item {
    NodeId id;
    char text;  // 0 = visit node, otherwise emit this character
  };
  std::vector<Item> stack{{t.root(), 0}};
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    if (it.text) {
      out.push_back(it.text);
      continue;
    }
    const Node& n = t.node(it.id);
    if (n.is_leaf()) {
      const auto label = t.label(it.id);
      if (!is_valid_label(label)) throw StructuralError("label '" + std::string(label) + "' is not valid Newick");
      out.append(label);
      continue;
    }
    out.push_back('(');
    stack.push_back({kNoNode, ')'});
    stack.push_back({n.right, 0});
    stack.push_back({kNoNode, ','});
    stack.push_back({n.left, 0});
  }
  out.push_back(';');
  return out;
}

// Shape only, children in canonical order: "((,),);"
inline std::string canonical_newick(const Tree& t) { return to_newick(orient_canonically(t).unlabeled()); }
inline std::string canonical_newick(const CanonicalForm& f) { return to_newick(from_canonical(f)); }

inline Tree parse_newick(std::string_view text) {
  TreeBuilder b;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos);
    if (text[pos] != c) throw ParseError(std::string("expected '") + c + "', found '" + text[pos] + "'", pos);
    ++pos;
  };

  // Open parentheses waiting for children; kNoNode marks a missing left child.
  std::vector<NodeId> open;
  NodeId last = kNoNode;
  for (;;) {
    skip_ws();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      open.push_back(kNoNode);
      continue;
    }
    // A leaf: possibly empty label.
    const std::size_t start = pos;
    while (pos < text.size() && is_label_char(text[pos])) ++pos;
    if (pos < text.size() && start == pos && text[pos] != ',' && text[pos] != ')' && text[pos] != ';' &&
        !std::isspace(static_cast<unsigned char>(text[pos]))) {
      throw ParseError(std::string("unexpected character '") + text[pos] + "'", pos);
    }
    last = b.add_leaf(std::string(text.substr(start, pos - start)));

    // Close as many subtrees as the input allows.
    for (;;) {
      if (open.empty()) break;
      skip_ws();
      if (pos >= text.size()) throw ParseError("unbalanced parentheses", pos);
      if (open.back() == kNoNode) {
        expect(',');
        open.back() = last;
        last = kNoNode;
        break;
      }
      expect(')');
      last = b.add_internal(open.back(), last);
      open.pop_back();
    }
    if (open.empty() && last != kNoNode) break;
  }
  expect(';');
  skip_ws();
  if (pos != text.size()) throw ParseError("trailing characters after ';'", pos);
  return std::move(b).build();
}

inline std::string to_dot(const Tree& t) {
  const auto lab = sd_label(t);
  std::ostringstream os;
  os << "digraph tree {\n";
  const auto nodes = t.nodes();
  for (NodeId i = 0; i < nodes.size(); ++i) {
    os << "  n" << i << " [";
    if (nodes[i].is_leaf()) {
      os << "shape=box, label=\"" << t.label(i) << "\"";
    } else {
      os << "label=\"" << kind_name(lab.kind[i]) << " " << lab.leaf_count[i] << "\", kind=\""
         << kind_name(lab.kind[i]) << "\", leaf_count=" << lab.leaf_count[i];
    }
    os << "];\n";
  }
  for (NodeId i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) continue;
    os << "  n" << i << " -> n" << nodes[i].left << ";\n";
    os << "  n" << i << " -> n" << nodes[i].right << ";\n";
  }
  os << "}\n";
  return os.str();
}

inline nlohmann::json to_json_value(const Tree& t) {
  nlohmann::json nodes = nlohmann::json::array();
  for (NodeId i = 0; i < t.node_count(); ++i) {
    const Node& n = t.node(i);
    nlohmann::json j;
    j["id"] = i;
    j["kind"] = n.is_leaf() ? "leaf" : "internal";
    j["left"] = n.is_leaf() ? nlohmann::json(nullptr) : nlohmann::json(n.left);
    j["right"] = n.is_leaf() ? nlohmann::json(nullptr) : nlohmann::json(n.right);
    const auto label = t.label(i);
    j["label"] = label.empty() ? nlohmann::json(nullptr) : nlohmann::json(std::string(label));
    nodes.push_back(std::move(j));
  }
  return {{"leaves", t.leaf_count()}, {"root", t.root()}, {"nodes", std::move(nodes)}};
}

inline std::string to_json(const Tree& t) { return to_json_value(t).dump(); }

inline Tree parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  try {
    const auto& arr = doc.at("nodes");
    std::vector<Node> nodes(arr.size());
    std::vector<std::string> labels(arr.size());
    std::vector<bool> seen(arr.size(), false);
    for (const auto& j : arr) {
      const auto id = j.at("id").get<std::uint64_t>();
      if (id >= arr.size() || seen[id]) throw StructuralError("node ids must be distinct and in [0, count)");
      seen[id] = true;
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "internal") {
        nodes[id] = Node{j.at("left").get<NodeId>(), j.at("right").get<NodeId>()};
        if (nodes[id].left == kNoNode || nodes[id].right == kNoNode) throw StructuralError("child id out of range");
      } else if (kind != "leaf") {
        throw StructuralError("unknown node kind '" + kind + "'");
      }
      if (j.contains("label") && !j["label"].is_null()) labels[id] = j["label"].get<std::string>();
    }
    Tree t = Tree::from_parts(std::move(nodes), std::move(labels), doc.at("root").get<NodeId>());
    if (doc.contains("leaves") && doc["leaves"].get<std::uint64_t>() != t.leaf_count()) {
      throw StructuralError("'leaves' does not match the node table");
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("malformed tree JSON: ") + e.what());
  }
}

inline std::string serialize(const Tree& t, Format f) {
  switch (f) {
    case Format::newick: return to_newick(t);
    case Format::dot: return to_dot(t);
    case Format::json: return to_json(t);
  }
  return {};
}

}  // namespace sdtree
