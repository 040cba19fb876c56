#pragma once

// Exhaustive shape enumeration and brute-force checks of the counting
// formulas, MinD characterization and Colless extremes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sdtree/bits.hpp"
#include "sdtree/canonical.hpp"
#include "sdtree/construct.hpp"
#include "sdtree/counting.hpp"
#include "sdtree/formulas.hpp"
#include "sdtree/mind.hpp"
#include "sdtree/sd_label.hpp"
#include "sdtree/serialize.hpp"
#include "sdtree/tree.hpp"

namespace sdtree {

inline constexpr std::uint64_t kMaxEnumerationN = 18;

// sd_form keeps equal-sized children as ordered pairs, matching the counts
// α(n) and θ(n, s); isomorphism identifies them and yields the
// Wedderburn-Etherington numbers.
enum class Equivalence { sd_form, isomorphism };

struct ShapeRecord {
  std::uint32_t left = 0;   // index in the level of the larger (or first) child
  std::uint32_t right = 0;  // index in the level of the other child
  std::uint32_t left_size = 0;
  std::uint32_t s_count = 0;
  std::uint32_t d_count = 0;
  std::uint64_t colless = 0;
};

// All shapes of sizes 1..n_max as compact records, built level by level.
class ShapeLevels {
 public:
  ShapeLevels(std::uint64_t n_max, Equivalence eq) : eq_(eq) {
    if (n_max == 0) throw DomainError("n must be at least 1");
    if (n_max > kMaxEnumerationN) {
      throw SizeError("shape enumeration is limited to n <= " + std::to_string(kMaxEnumerationN));
    }
    levels_.resize(n_max + 1);
    levels_[1].push_back(ShapeRecord{});
    for (std::uint32_t n = 2; n <= n_max; ++n) build_level(n);
  }

  std::uint64_t n_max() const noexcept { return levels_.size() - 1; }
  Equivalence equivalence() const noexcept { return eq_; }
  const std::vector<ShapeRecord>& level(std::uint64_t n) const { return levels_.at(n); }

  Tree materialize(std::uint64_t n, std::uint32_t index) const {
    TreeBuilder b;
    b.reserve(2 * n - 1);
    add(b, static_cast<std::uint32_t>(n), index);
    Tree t = std::move(b).build();
    return eq_ == Equivalence::isomorphism ? orient_canonically(t) : t;
  }

 private:
  // Depth is at most n ≤ 18.
  NodeId add(TreeBuilder& b, std::uint32_t n, std::uint32_t index) const {
    if (n == 1) return b.add_leaf();
    const ShapeRecord& r = levels_[n][index];
    const NodeId l = add(b, r.left_size, r.left);
    const NodeId rr = add(b, n - r.left_size, r.right);
    return b.add_internal(l, rr);
  }

  void build_level(std::uint32_t n) {
    auto& out = levels_[n];
    auto join = [&](std::uint32_t big, std::uint32_t a, std::uint32_t small, std::uint32_t c) {
      const ShapeRecord& x = levels_[big][a];
      const ShapeRecord& y = levels_[small][c];
      ShapeRecord r;
      r.left = a;
      r.right = c;
      r.left_size = big;
      const bool s_node = big == small;
      r.s_count = x.s_count + y.s_count + (s_node ? 1 : 0);
      r.d_count = x.d_count + y.d_count + (s_node ? 0 : 1);
      r.colless = x.colless + y.colless + (big - small);
      out.push_back(r);
    };
    for (std::uint32_t j = 1; 2 * j < n; ++j) {
      const std::uint32_t big = n - j;
      const auto na = static_cast<std::uint32_t>(levels_[big].size());
      const auto nb = static_cast<std::uint32_t>(levels_[j].size());
      for (std::uint32_t a = 0; a < na; ++a) {
        for (std::uint32_t c = 0; c < nb; ++c) join(big, a, j, c);
      }
    }
    if (n % 2 == 0) {
      const std::uint32_t h = n / 2;
      const auto m = static_cast<std::uint32_t>(levels_[h].size());
      for (std::uint32_t a = 0; a < m; ++a) {
        for (std::uint32_t c = eq_ == Equivalence::isomorphism ? a : 0; c < m; ++c) join(h, a, h, c);
      }
    }
  }

  Equivalence eq_;
  std::vector<std::vector<ShapeRecord>> levels_;
};

struct ShapeCatalog {
  std::uint64_t n = 0;
  Equivalence equivalence = Equivalence::sd_form;
  std::vector<Tree> shapes;
  std::vector<std::uint32_t> s_count;
  std::vector<std::uint32_t> d_count;
  std::vector<std::uint64_t> colless;

  std::size_t size() const noexcept { return shapes.size(); }
};

inline ShapeCatalog catalog_from(const ShapeLevels& levels, std::uint64_t n) {
  ShapeCatalog c;
  c.n = n;
  c.equivalence = levels.equivalence();
  const auto& level = levels.level(n);
  c.shapes.reserve(level.size());
  for (std::uint32_t i = 0; i < level.size(); ++i) {
    c.shapes.push_back(levels.materialize(n, i));
    c.s_count.push_back(level[i].s_count);
    c.d_count.push_back(level[i].d_count);
    c.colless.push_back(level[i].colless);
  }
  return c;
}

inline ShapeCatalog enumerate_shapes(std::uint64_t n, Equivalence eq = Equivalence::sd_form) {
  return catalog_from(ShapeLevels(n, eq), n);
}

struct VerifyReport {
  std::string check;
  std::uint64_t n = 0;
  bool pass = true;
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const { return {{"check", check}, {"n", n}, {"pass", pass}, {"details", details}}; }

  void fail(nlohmann::json mismatch) {
    pass = false;
    details["mismatches"].push_back(std::move(mismatch));
  }
};

namespace detail {

inline std::string big_str(const BigCount& v) { return v.str(); }

inline std::string shape_text(const ShapeLevels& levels, std::uint64_t n, std::uint32_t i) {
  return canonical_newick(levels.materialize(n, i));
}

}  // namespace detail

// S-count histogram of the enumerated shapes against θ(n, ·) and α(n).
inline VerifyReport verify_theta(const ShapeLevels& levels, std::uint64_t n) {
  VerifyReport rep{"theta", n};
  const auto& level = levels.level(n);
  std::map<std::uint64_t, std::uint64_t> hist;
  for (const auto& r : level) ++hist[r.s_count];
  const auto table = theta_table(n);
  nlohmann::json h = nlohmann::json::object();
  for (const auto& [s, count] : hist) h[std::to_string(s)] = count;
  rep.details["histogram"] = h;
  rep.details["shapes"] = level.size();
  rep.details["alpha"] = detail::big_str(table.alpha[n]);
  if (BigCount(level.size()) != table.alpha[n]) {
    rep.fail({{"what", "shape count"}, {"expected", detail::big_str(table.alpha[n])}, {"actual", level.size()}});
  }
  for (std::uint64_t s = 0; s <= n; ++s) {
    const auto it = hist.find(s);
    const std::uint64_t got = it == hist.end() ? 0 : it->second;
    if (BigCount(got) != table.at(n, s)) {
      rep.fail({{"what", "theta"}, {"s", s}, {"expected", detail::big_str(table.at(n, s))}, {"actual", got}});
    }
  }
  return rep;
}

inline VerifyReport verify_theta(std::uint64_t n) { return verify_theta(ShapeLevels(n, Equivalence::sd_form), n); }

// Minimum D-count is ω(n) − 1 and its minimizers are exactly the MinD trees.
inline VerifyReport verify_mind(const ShapeLevels& levels, std::uint64_t n) {
  VerifyReport rep{"mind", n};
  const auto& level = levels.level(n);
  const std::uint64_t w = static_cast<std::uint64_t>(weight(n));
  std::uint32_t min_d = UINT32_MAX;
  for (const auto& r : level) min_d = std::min(min_d, r.d_count);
  rep.details["omega"] = w;
  rep.details["min_d"] = min_d;
  if (min_d + 1 != w) rep.fail({{"what", "minimum D-count"}, {"expected", w - 1}, {"actual", min_d}});

  std::set<CanonicalForm> minimizers;
  for (std::uint32_t i = 0; i < level.size(); ++i) {
    if (level[i].d_count == min_d) minimizers.insert(canonicalize(levels.materialize(n, i)));
  }
  const auto mind = enumerate_mind(n);
  std::set<CanonicalForm> built;
  const std::uint64_t lo = c_desc(n), hi = c_asc(n);
  for (const Tree& t : mind) {
    built.insert(canonicalize(t));
    if (!is_mind(t)) rep.fail({{"what", "enumerated tree is not MinD"}, {"shape", canonical_newick(t)}});
    const auto c = colless_index(t);
    if (c < lo || c > hi) {
      rep.fail({{"what", "Colless outside [c_desc, c_asc]"}, {"shape", canonical_newick(t)}, {"colless", c},
                {"c_desc", lo}, {"c_asc", hi}});
    }
  }
  const auto expected = total_products(std::max<std::uint64_t>(w, 1));
  rep.details["minimizers"] = minimizers.size();
  rep.details["mind_trees"] = mind.size();
  rep.details["double_factorial"] = detail::big_str(expected);
  if (BigCount(mind.size()) != expected) {
    rep.fail({{"what", "MinD count"}, {"expected", detail::big_str(expected)}, {"actual", mind.size()}});
  }
  if (built.size() != mind.size()) rep.fail({{"what", "enumerated MinD trees are not pairwise distinct"}});
  for (const auto& f : minimizers) {
    if (!built.count(f)) rep.fail({{"what", "minimizer missing from MinD enumeration"}, {"shape", canonical_newick(f)}});
  }
  for (const auto& f : built) {
    if (!minimizers.count(f)) rep.fail({{"what", "MinD tree is not a minimizer"}, {"shape", canonical_newick(f)}});
  }
  return rep;
}

inline VerifyReport verify_mind(std::uint64_t n) { return verify_mind(ShapeLevels(n, Equivalence::sd_form), n); }

// Largest Colless index is (n−1)(n−2)/2 on the ladder, smallest is δ(n) on
// the divide-and-conquer and complete full binary trees.
inline VerifyReport verify_colless_extremes(const ShapeLevels& levels, std::uint64_t n) {
  VerifyReport rep{"colless", n};
  const auto& level = levels.level(n);
  std::uint64_t mx = 0, mn = UINT64_MAX;
  std::uint32_t arg_max = 0;
  for (std::uint32_t i = 0; i < level.size(); ++i) {
    if (level[i].colless > mx || i == 0) {
      mx = level[i].colless;
      arg_max = i;
    }
    mn = std::min(mn, level[i].colless);
  }
  const auto want_max = c_max(n), want_min = delta(n);
  rep.details["max"] = mx;
  rep.details["min"] = mn;
  if (mx != want_max) {
    rep.fail({{"what", "maximum Colless"}, {"expected", want_max}, {"actual", mx},
              {"shape", detail::shape_text(levels, n, arg_max)}});
  }
  if (mn != want_min) rep.fail({{"what", "minimum Colless"}, {"expected", want_min}, {"actual", mn}});
  const auto ladder = colless_index(make_ladder(n));
  const auto dac = colless_index(make_divide_and_conquer(n));
  const auto cfb = colless_index(make_complete_full_binary(n));
  rep.details["ladder"] = ladder;
  rep.details["divide_and_conquer"] = dac;
  rep.details["complete_full_binary"] = cfb;
  if (ladder != mx) rep.fail({{"what", "ladder does not attain the maximum"}, {"expected", mx}, {"actual", ladder}});
  if (dac != mn) rep.fail({{"what", "divide-and-conquer does not attain the minimum"}, {"expected", mn}, {"actual", dac}});
  if (cfb != mn) rep.fail({{"what", "complete full binary does not attain the minimum"}, {"expected", mn}, {"actual", cfb}});
  return rep;
}

inline VerifyReport verify_colless_extremes(std::uint64_t n) {
  return verify_colless_extremes(ShapeLevels(n, Equivalence::sd_form), n);
}

// Grafting a perfect tree on 2^ρ₁ leaves above any base node of a MinD tree
// T' on n − 2^ρ₁ leaves changes the Colless index by
// |T₁| + 2^ρ₁ Σ f(i) − 2^ρ₁, where T₁ is the displaced subtree and f(i) is −1
// or +1 as the i-th sibling along the path outweighs or not what lies below.
inline VerifyReport verify_affix(std::uint64_t n) {
  VerifyReport rep{"affix", n};
  const std::uint64_t w = static_cast<std::uint64_t>(weight(n));
  if (w < 2) {
    rep.details["checked"] = 0;
    return rep;
  }
  const int rho1 = lowest_exponent(n);
  const std::uint64_t p = std::uint64_t{1} << rho1;
  const Tree perfect = make_perfect(rho1);
  std::uint64_t checked = 0;
  for (const Tree& prev : enumerate_mind(n - p)) {
    const auto lab = sd_label(prev);
    const auto c_prev = colless_index(prev);
    std::vector<NodeId> parent(prev.node_count(), kNoNode);
    for (NodeId i = 0; i < prev.node_count(); ++i) {
      const Node& nd = prev.node(i);
      if (!nd.is_leaf()) parent[nd.left] = parent[nd.right] = i;
    }
    for (NodeId x = 0; x < prev.node_count(); ++x) {
      const bool base_node = x == prev.root() || lab.kind[parent[x]] == NodeKind::d;
      if (!base_node) continue;
      // Predicted index.
      std::int64_t sum_f = 0;
      for (NodeId v = x; parent[v] != kNoNode; v = parent[v]) {
        const Node& pn = prev.node(parent[v]);
        const NodeId sib = pn.left == v ? pn.right : pn.left;
        sum_f += lab.leaf_count[sib] > lab.leaf_count[v] ? -1 : 1;
      }
      const std::int64_t predicted = static_cast<std::int64_t>(c_prev) +
                                     static_cast<std::int64_t>(lab.leaf_count[x]) +
                                     static_cast<std::int64_t>(p) * sum_f - static_cast<std::int64_t>(p);
      // Actual tree.
      TreeBuilder b;
      b.reserve(2 * n - 1);
      std::vector<NodeId> built(prev.node_count());
      for (NodeId i = 0; i < prev.node_count(); ++i) {
        const Node& nd = prev.node(i);
        built[i] = nd.is_leaf() ? b.add_leaf() : b.add_internal(built[nd.left], built[nd.right]);
        if (i == x) built[i] = b.add_internal(built[i], b.add_subtree(perfect));
      }
      const Tree t = std::move(b).build();
      ++checked;
      const auto actual = static_cast<std::int64_t>(colless_index(t));
      if (!is_mind(t)) rep.fail({{"what", "grafted tree is not MinD"}, {"shape", canonical_newick(t)}});
      if (actual != predicted) {
        rep.fail({{"what", "incremental Colless"}, {"shape", canonical_newick(t)}, {"expected", predicted},
                  {"actual", actual}});
      }
    }
  }
  rep.details["checked"] = checked;
  return rep;
}

// Every check above for n = 1..n_max, sharing one enumeration.
inline std::vector<VerifyReport> verify_all(std::uint64_t n_max) {
  const ShapeLevels levels(n_max, Equivalence::sd_form);
  std::vector<VerifyReport> out;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    out.push_back(verify_theta(levels, n));
    out.push_back(verify_mind(levels, n));
    out.push_back(verify_colless_extremes(levels, n));
    out.push_back(verify_affix(n));
  }
  return out;
}

}  // namespace sdtree
