#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sdtree/sdtree.hpp"
#include "support/oracles.hpp"

using namespace sdtree;

namespace {

const double kBig = std::ldexp(1.0, 53);

std::vector<double> adversarial() {
  std::vector<double> v{kBig};
  v.insert(v.end(), 8, 1.0);
  return v;
}

// Reference: each + done in binary64 along the ladder.
double ladder_by_hand(const std::vector<double>& v) {
  double acc = v[0];
  for (std::size_t i = 1; i < v.size(); ++i) acc = acc + v[i];
  return acc;
}

}  // namespace

TEST(ExactSum, Basics) {
  EXPECT_EQ(exact_sum({}).str(), "0/1");
  const std::vector<double> tenth(10, 0.1);
  EXPECT_EQ(round_to_double(exact_sum(tenth)), 1.0);
  EXPECT_NE(exact_sum(tenth).str(), "1/1");
  EXPECT_EQ(exact_sum(std::vector<double>{0.5, 0.25}).str(), "3/4");
  EXPECT_EQ(exact_sum(std::vector<double>{-0.5, 0.25}).str(), "-1/4");
  EXPECT_EQ(exact_sum(adversarial()).str(), "9007199254741000/1");
  EXPECT_EQ(exact_sum(std::vector<double>{std::numeric_limits<double>::denorm_min()}).str(),
            "1/" + (BigInt(1) << 1074).str());
}

TEST(ExactSum, CorrectRounding) {
  EXPECT_EQ(round_to_double(exact_sum(adversarial())), kBig + 8);
  // 2^53 + 1 ties to even (2^53); 2^53 + 3 ties to 2^53 + 4.
  EXPECT_EQ(round_to_double(exact_sum(std::vector<double>{kBig, 1.0})), kBig);
  EXPECT_EQ(round_to_double(exact_sum(std::vector<double>{kBig, 3.0})), kBig + 4);
  EXPECT_EQ(round_to_double(exact_sum(std::vector<double>{0.1, 0.2})), 0.1 + 0.2);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng);
    EXPECT_EQ(round_to_double(exact_sum(std::vector<double>{a, b})), a + b);
  }
}

TEST(Ulp, Distance) {
  EXPECT_EQ(ulp_distance(1.0, 1.0), 0u);
  EXPECT_EQ(ulp_distance(1.0, std::nextafter(1.0, 2.0)), 1u);
  EXPECT_EQ(ulp_distance(kBig, kBig + 8), 4u);
  EXPECT_EQ(ulp_distance(-0.0, 0.0), 0u);
  EXPECT_EQ(ulp_distance(-std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::denorm_min()), 2u);
}

TEST(Kahan, RetainsSmallValues) {
  EXPECT_EQ(kahan_sum(adversarial()), kBig + 8);
  EXPECT_EQ(kahan_sum({}), 0.0);
}

TEST(Evaluate, AdversarialPlans) {
  const auto v = adversarial();
  const auto ladder = plan_from_order(make_ladder(9), v);
  EXPECT_EQ(evaluate(ladder), ladder_by_hand(v));
  EXPECT_EQ(evaluate(ladder), kBig);
  const auto lr = error_report(ladder);
  ASSERT_TRUE(lr.abs_error);
  EXPECT_EQ(lr.abs_error->str(), "8/1");
  EXPECT_EQ(lr.ulp_distance, 4u);

  const auto h = heuristic_mind_plan(v);
  const auto hr = error_report(h);
  EXPECT_EQ(hr.evaluated, kBig + 8);
  EXPECT_EQ(hr.ulp_distance, 0u);
  EXPECT_EQ(hr.abs_error->str(), "0/1");
  EXPECT_EQ(hr.kahan_result, kBig + 8);

  // Divide-and-conquer with magnitudes interleaved sits in between.
  std::vector<double> inter{1, 1, 1, 1, kBig, 1, 1, 1, 1};
  const auto dr = error_report(plan_from_order(make_divide_and_conquer(9), inter));
  EXPECT_LE(hr.ulp_distance, dr.ulp_distance);
  EXPECT_LE(dr.ulp_distance, lr.ulp_distance);
}

TEST(Evaluate, GroupingMatters) {
  // (2^53 + 1) + -1 loses the 1; 2^53 + (1 + -1) does not.
  const std::vector<double> v{kBig, 1.0, -1.0};
  EXPECT_EQ(evaluate(plan_from_order(make_ladder(3), v)), kBig - 1);
  const Tree grouped = Tree::join(Tree::leaf(), Tree::join(Tree::leaf(), Tree::leaf()));
  EXPECT_EQ(evaluate(plan_from_order(grouped, v)), kBig);
}

TEST(Heuristic, NineLeafShape) {
  const auto p = heuristic_mind_plan(adversarial());
  const Tree fig = Tree::join(make_perfect(3), Tree::leaf());
  EXPECT_TRUE(isomorphic(p.tree, fig));
  const auto lab = sd_label(p.tree);
  EXPECT_EQ(lab.kind[p.tree.root()], NodeKind::d);
  // The large value sits alone in the singleton block.
  const Node& root = p.tree.node(p.tree.root());
  const NodeId single = lab.leaf_count[root.left] == 1 ? root.left : root.right;
  EXPECT_EQ(p.tree.label(single), "v0");
}

TEST(Heuristic, PowerOfTwoIsSortedPerfect) {
  const std::vector<double> v{5, -1, 3, 0.5, -7, 2, 0.25, 4};
  const auto p = heuristic_mind_plan(v);
  EXPECT_TRUE(isomorphic(p.tree, make_perfect(3)));
  const auto vals = leaf_values(p);
  for (std::size_t i = 1; i < vals.size(); ++i) EXPECT_LE(std::fabs(vals[i - 1]), std::fabs(vals[i]));
}

TEST(Heuristic, TwoLargeValues) {
  std::vector<double> v(7, 1.0);
  v.push_back(kBig);
  v.push_back(kBig);
  const auto p = heuristic_mind_plan(v);
  const auto lab = sd_label(p.tree);
  const Node& root = p.tree.node(p.tree.root());
  const NodeId eight = lab.leaf_count[root.left] == 8 ? root.left : root.right;
  // Leaves under the perfect-8 subtree.
  std::vector<NodeId> stack{eight};
  int larges = 0;
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const Node& nd = p.tree.node(id);
    if (nd.is_leaf()) {
      larges += p.values.at(std::string(p.tree.label(id))) == kBig;
    } else {
      stack.push_back(nd.left);
      stack.push_back(nd.right);
    }
  }
  EXPECT_EQ(larges, 1);
}

TEST(Heuristic, StableTies) {
  const std::vector<double> v{1.0, -1.0, 1.0};
  const auto a = heuristic_mind_plan(v);
  const auto b = heuristic_mind_plan(v);
  EXPECT_EQ(a.tree, b.tree);
  EXPECT_EQ(to_newick(a.tree), "(v2,(v0,v1));");
}

TEST(Properties, SwapInvarianceAndDeterminism) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mag(-30, 30);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t n = 1 + rng() % 40;
    std::vector<double> v(n);
    for (auto& x : v) x = std::ldexp(mag(rng) / 30, static_cast<int>(mag(rng)));
    const Tree shape = oracle::random_tree(n, rng);
    const auto p = plan_from_order(shape, v);
    const double e = evaluate(p);
    EXPECT_EQ(std::bit_cast<std::uint64_t>(e), std::bit_cast<std::uint64_t>(evaluate(p)));
    for (NodeId at = 0; at < p.tree.node_count(); ++at) {
      if (p.tree.node(at).is_leaf()) continue;
      SummationPlan q{oracle::swap_children(p.tree, at), p.values};
      EXPECT_EQ(std::bit_cast<std::uint64_t>(evaluate(q)), std::bit_cast<std::uint64_t>(e));
    }
    const auto r = error_report(p);
    EXPECT_EQ(r.ulp_distance == 0, std::bit_cast<std::uint64_t>(r.evaluated) ==
                                       std::bit_cast<std::uint64_t>(r.correctly_rounded));
  }
}

TEST(Properties, ExactWhenPartialSumsRepresentable) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t n = 1 + rng() % 64;
    std::vector<double> v(n);
    for (auto& x : v) x = static_cast<double>(static_cast<std::int64_t>(rng() % 2001) - 1000) / 8;
    const auto p = plan_from_order(oracle::random_tree(n, rng), v);
    const auto r = error_report(p);
    EXPECT_EQ(r.ulp_distance, 0u);
    EXPECT_EQ(r.abs_error->str(), "0/1");
  }
  EXPECT_EQ(evaluate(plan_from_order(make_ladder(5), std::vector<double>(5, 0.0))), 0.0);
  EXPECT_EQ(error_report(plan_from_order(Tree::leaf(), std::vector<double>{0.1})).ulp_distance, 0u);
}

TEST(Errors, InputsAndOverflow) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(heuristic_mind_plan(std::vector<double>{1.0, std::nan("")}), InputError);
  EXPECT_THROW(heuristic_mind_plan(std::vector<double>{inf}), InputError);
  EXPECT_THROW(heuristic_mind_plan(std::vector<double>{}), InputError);
  EXPECT_THROW(plan_from_order(make_ladder(3), std::vector<double>{1.0}), InputError);
  const double m = std::numeric_limits<double>::max();
  const auto r = error_report(plan_from_order(make_ladder(2), std::vector<double>{m, m}));
  EXPECT_TRUE(r.overflow);
  EXPECT_TRUE(std::isinf(r.evaluated));
  EXPECT_FALSE(r.abs_error);
}

TEST(Values, ParseAndFormat) {
  const auto v = parse_values("0x1.8p3\n# note\n\n-2.5\n1e3\n");
  EXPECT_EQ(v, (std::vector<double>{12.0, -2.5, 1000.0}));
  EXPECT_THROW(parse_values("abc\n"), InputError);
  EXPECT_THROW(parse_values("nan\n"), InputError);
  EXPECT_EQ(hex_double(12.0), "0x1.8p+3");
  EXPECT_EQ(decimal_double(0.1), "0.10000000000000001");
  const auto j = to_json(error_report(heuristic_mind_plan(adversarial())));
  EXPECT_EQ(j["ulp_distance"], 0);
  EXPECT_EQ(j["evaluated"]["hex"], "0x1.0000000000004p+53");
}
