#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "lacuna/direction_io.hpp"
#include "lacuna/directions.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/exact.hpp"
#include "oracles.hpp"

using namespace lacuna;

namespace {

Dyadic pow2(int e) { return Dyadic(1, e); }

TreeNode* node_at(LacunaryTree& tree, std::initializer_list<std::size_t> path) {
  TreeNode* n = &tree.root;
  for (auto i : path) n = &n->children.at(i);
  return n;
}

}  // namespace

TEST(Dyadic, NormalizesAndComparesExactly) {
  EXPECT_EQ(Dyadic(4, 3), Dyadic(1, 1));
  EXPECT_EQ(Dyadic(0, 9), Dyadic());
  EXPECT_EQ(Dyadic(3, -2), Dyadic(12, 0));
  EXPECT_LT(Dyadic(1, 62), Dyadic(1, 61));
  EXPECT_EQ(Dyadic(1, 2) + Dyadic(1, 3), Dyadic(3, 3));
  EXPECT_EQ(Dyadic(1, 2) - Dyadic(1, 2), Dyadic());
  EXPECT_EQ(abs(Dyadic(-5, 4)), Dyadic(5, 4));
}

TEST(Dyadic, FromDoubleIsExact) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 0.25);
  for (int i = 0; i < 200; ++i) {
    double x = u(rng);
    EXPECT_EQ(Dyadic::from_double(x).to_double(), x);
  }
  EXPECT_EQ(Dyadic::from_double(0.375), Dyadic(3, 3));
  EXPECT_THROW(Dyadic::from_double(std::nan("")), ValidationError);
}

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("0.9"), Rational(9, 10));
  EXPECT_EQ(Rational::parse(" 2/3 "), Rational(2, 3));
  EXPECT_EQ(Rational::parse("1.5"), Rational(3, 2));
  EXPECT_EQ(Rational(4, -8), Rational(-1, 2));
  EXPECT_THROW(Rational::parse("abc"), ValidationError);
  EXPECT_THROW(Rational::parse("1/0"), ValidationError);
  EXPECT_THROW(Rational::parse(""), ValidationError);
  EXPECT_TRUE(Rational(1, 8).is_power_of_two_reciprocal());
  EXPECT_FALSE(Rational(2, 3).is_power_of_two_reciprocal());
  EXPECT_LT(Rational(2, 3), Rational(7, 10));
}

TEST(Rational, PowersAndScaledComparisons) {
  EXPECT_TRUE(power_at_most(Rational(1, 2), 4, Rational(1, 16)));
  EXPECT_FALSE(power_at_most(Rational(1, 2), 3, Rational(1, 16)));
  EXPECT_TRUE(power_at_most(Rational(9, 10), 27, Rational(1, 16)));
  EXPECT_FALSE(power_at_most(Rational(9, 10), 26, Rational(1, 16)));
  EXPECT_TRUE(scaled_at_least(3, Dyadic(1, 2), 1, Dyadic(3, 2)));
  EXPECT_FALSE(scaled_at_least(2, Dyadic(1, 2), 1, Dyadic(3, 2)));
  EXPECT_EQ(floor_scaled(Dyadic(1, 2), Rational(1, 3), 4), Dyadic(1, 4));
  EXPECT_EQ(floor_scaled(Dyadic(1, 2), Rational(2, 3), 10), Dyadic(170, 10));
}

TEST(DotSign, AgreesWithHighPrecisionOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coord(-8192, 8191);
  std::uniform_real_distribution<double> angle(0, 0.25);
  for (int i = 0; i < 2000; ++i) {
    int a = coord(rng), b = coord(rng);
    Direction v = Direction::from_revolutions(angle(rng));
    ASSERT_EQ(dot_sign(a, b, v), oracle::dot_sign(a, b, v.theta())) << a << "," << b << " @ " << v.revolutions();
  }
}

TEST(DotSign, ResolvesNearTies) {
  // Direction chosen as the double nearest to the perpendicular of (a, b).
  for (auto [a, b] : {std::pair{-8191, 3}, {-5, 7}, {-1, 8190}, {-4093, 4091}, {-3, 2}}) {
    double theta = std::atan2(b, a) / (2 * std::numbers::pi) - 0.25;
    for (double nudge : {-1e-16, 0.0, 1e-16}) {
      Direction v = Direction::from_revolutions(theta + nudge);
      EXPECT_EQ(dot_sign(a, b, v), oracle::dot_sign(a, b, v.theta())) << a << "," << b;
    }
  }
  EXPECT_EQ(dot_sign(-7, 7, Direction(Dyadic(1, 3))), 0);
  EXPECT_EQ(dot_sign(0, 5, Direction()), 0);
  EXPECT_EQ(dot_sign(5, 0, Direction(Dyadic(1, 2))), 0);
}

TEST(Direction, RejectsAnglesOutsideQuadrant) {
  EXPECT_THROW(Direction(Dyadic(-1, 4)), ValidationError);
  EXPECT_THROW(Direction(Dyadic(3, 3)), ValidationError);
  EXPECT_NO_THROW(Direction(Dyadic(1, 2)));
}

TEST(Canonical, FirstOrderHalfIsDyadicSequence) {
  DirectionSet s = canonical_lacunary(1, Rational(1, 2), {6});
  ASSERT_EQ(s.size(), 6u);
  for (int j = 1; j <= 6; ++j) EXPECT_EQ(s[static_cast<std::size_t>(j - 1)].theta(), pow2(j + 2));
}

TEST(Canonical, SecondOrderHalfMatchesClosedForm) {
  DirectionSet s = canonical_lacunary(2, Rational(1, 2), {3, 3});
  std::set<std::pair<std::int64_t, int>> expect;
  for (int j = 1; j <= 3; ++j)
    for (int k = j + 4; k <= j + 6; ++k) {
      Dyadic d = pow2(j + 2) + pow2(k + 2);
      expect.insert({d.num, d.log2den});
    }
  std::set<std::pair<std::int64_t, int>> got;
  for (const auto& d : s) got.insert({d.theta().num, d.theta().log2den});
  EXPECT_EQ(got, expect);
}

TEST(Canonical, RejectsBadArguments) {
  EXPECT_THROW(canonical_lacunary(1, Rational(3, 2), {4}), ValidationError);
  EXPECT_THROW(canonical_lacunary(1, Rational(1, 2), {0}), ValidationError);
  EXPECT_THROW(canonical_lacunary(-1, Rational(1, 2), {}), ValidationError);
  EXPECT_THROW(canonical_lacunary(2, Rational(1, 2), {2, 2, 2}), ValidationError);
  EXPECT_THROW(canonical_lacunary(1, Rational(1, 2), {80}), ValidationError);
  // 19/20 puts the first child of node 0 at 0.2375 * (1 + 0.95^55) > 1/4.
  EXPECT_THROW(canonical_lacunary(2, Rational(19, 20), {2, 2}), ValidationError);
  EXPECT_NO_THROW(canonical_lacunary(2, Rational(9, 10), {8, 8}));
}

TEST(Canonical, ZeroOrderIsTheRoot) {
  DirectionSet s = canonical_lacunary(0, Rational(1, 2), {});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].theta(), Dyadic());
  EXPECT_EQ(verify_order(s).order, 0);
}

// Property: every generated set certifies at its own order.
TEST(VerifyOrder, CanonicalSetsCertify) {
  for (int order = 0; order <= 3; ++order)
    for (Rational lam : {Rational(1, 4), Rational(1, 2), Rational(2, 3)})
      for (int c : {1, 2, 4}) {
        DirectionSet s = canonical_lacunary(order, lam, std::vector<int>(static_cast<std::size_t>(order), c));
        OrderReport r = verify_order(s);
        ASSERT_TRUE(r.ok()) << "D=" << order << " lambda=" << to_string(lam) << " c=" << c << ": "
                            << r.violation->node << " " << r.violation->detail;
        EXPECT_EQ(*r.order, order);
        EXPECT_EQ(s.size(), static_cast<std::size_t>(std::pow(c, order)));
      }
}

TEST(VerifyOrder, PerturbedLeafIsNamed) {
  DirectionSet s = canonical_lacunary(2, Rational(1, 2), {3, 3});
  LacunaryTree tree = *s.certificate();
  const Dyadic parent = node_at(tree, {1})->dir.theta();
  TreeNode* leaf = node_at(tree, {1, 2});
  Dyadic off = leaf->dir.theta() - parent;
  // Push the last grandchild 1/8 of its offset away from its parent.
  leaf->dir = Direction(parent + off + Dyadic(off.num, off.log2den + 3));
  DirectionSet bad(nodes_at_depth(tree, 2), tree);
  OrderReport r = verify_order(bad);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violation->level, 2);
  EXPECT_EQ(r.violation->node, "1.2");
  EXPECT_NE(r.violation->detail.find("distance ratio exceeds lambda 1/2"), std::string::npos);
}

TEST(VerifyOrder, ChildOutsideArcIsNamed) {
  DirectionSet s = canonical_lacunary(2, Rational(1, 2), {2, 2});
  LacunaryTree tree = *s.certificate();
  // Move child 1.0 above its upper neighbour at depth 1.
  tree.root.children[1].children[0].dir = Direction(tree.root.children[0].dir.theta() + Dyadic(1, 20));
  DirectionSet bad(nodes_at_depth(tree, 2), tree);
  OrderReport r = verify_order(bad);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violation->node, "1.0");
  EXPECT_NE(r.violation->detail.find("outside the arc"), std::string::npos);
}

TEST(VerifyOrder, UncertifiedAndMissingChildren) {
  EXPECT_FALSE(verify_order(equispaced(8)).ok());
  LacunaryTree tree{Rational(1, 2), 2, TreeNode{Direction(), {TreeNode{Direction(Dyadic(1, 3)), {}}}}};
  OrderReport r = verify_order(DirectionSet({}, tree));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violation->node, "0");
}

TEST(VerifyOrder, EquispacedBreaksRatio) {
  std::vector<TreeNode> kids;
  for (int k = 4; k >= 1; --k) kids.push_back({Direction(Dyadic(k, 4)), {}});
  LacunaryTree tree{Rational(1, 2), 1, TreeNode{Direction(), kids}};
  OrderReport r = verify_order(DirectionSet(nodes_at_depth(tree, 1), tree));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violation->node, "1");
  EXPECT_NE(r.violation->detail.find("distance ratio"), std::string::npos);
}

TEST(Successor, Examples) {
  DirectionSet theta = canonical_lacunary(1, Rational(1, 2), {6});
  DirectionSet root({Direction()});
  EXPECT_TRUE(is_successor(theta, root, Rational(2, 3)));
  EXPECT_FALSE(is_successor(theta, root, Rational(1, 2)));
  EXPECT_TRUE(is_successor(DirectionSet({Direction(Dyadic(1, 3))}), root, Rational(1, 4)));
  EXPECT_FALSE(is_successor(theta, DirectionSet(), Rational(2, 3)));
}

TEST(Arcs, PartitionTheQuadrant) {
  DirectionSet parent({Direction(Dyadic(1, 4)), Direction(Dyadic(1, 3))});
  auto arcs = complementary_arcs(parent);
  ASSERT_EQ(arcs.size(), 3u);
  double total = 0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    total += arcs[i].length();
    if (i > 0) EXPECT_LT(arcs[i].hi, arcs[i - 1].hi);
  }
  EXPECT_DOUBLE_EQ(total, 0.25);
  EXPECT_TRUE(arcs[0].contains(Dyadic(1, 2)));
  EXPECT_FALSE(arcs[0].contains(Dyadic(1, 3)));
  EXPECT_TRUE(arcs[2].contains(Dyadic()));
  EXPECT_FALSE(arcs[1].contains(Dyadic(1, 4)));

  auto single = complementary_arcs(DirectionSet({Direction()}));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_FALSE(single[0].contains(Dyadic()));
  EXPECT_TRUE(single[0].contains(Dyadic(1, 2)));
  EXPECT_THROW(complementary_arcs(DirectionSet()), ValidationError);
}

TEST(Split, PartsCertifyAtSmallerConstantAndCover) {
  for (int order : {1, 2}) {
    DirectionSet s = canonical_lacunary(order, Rational(1, 2), std::vector<int>(static_cast<std::size_t>(order), 5));
    auto parts = split_constant(s, Rational(1, 8));
    std::set<std::pair<std::int64_t, int>> seen;
    std::size_t total = 0;
    for (const auto& p : parts) {
      OrderReport r = verify_order(p);
      ASSERT_TRUE(r.ok()) << r.violation->node << " " << r.violation->detail;
      EXPECT_EQ(p.certificate()->lambda, Rational(1, 8));
      for (const auto& d : p) seen.insert({d.theta().num, d.theta().log2den});
      total += p.size();
    }
    EXPECT_EQ(total, s.size());
    EXPECT_EQ(seen.size(), s.size());
    EXPECT_LE(parts.size(), static_cast<std::size_t>(std::pow(3, order)));
  }
  DirectionSet s = canonical_lacunary(1, Rational(1, 2), {4});
  EXPECT_THROW(split_constant(s, Rational(3, 4)), ValidationError);
  EXPECT_THROW(split_constant(equispaced(4), Rational(1, 4)), ValidationError);
}

TEST(Split, HalfToQuarterInterleaves) {
  DirectionSet s = canonical_lacunary(1, Rational(1, 2), {6});
  auto parts = split_constant(s, Rational(1, 4));
  ASSERT_EQ(parts.size(), 2u);
  for (std::size_t r = 0; r < 2; ++r) {
    ASSERT_EQ(parts[r].size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(parts[r][i], s[2 * i + r]);
  }
}

TEST(JTau, SplitsAlongParents) {
  DirectionSet s = canonical_lacunary(2, Rational(1, 2), {3, 4});
  JTauView v = enumerate_jtau(s);
  ASSERT_EQ(v.tau_count(), 3u);
  std::vector<Direction> concat;
  for (std::size_t tau = 1; tau <= v.tau_count(); ++tau) {
    auto m = v.members(tau);
    EXPECT_EQ(m.size(), 4u);
    concat.insert(concat.end(), m.begin(), m.end());
    // Each Theta_tau is first-order lacunary converging to u_tau.
    std::vector<TreeNode> kids;
    for (const auto& d : m) kids.push_back({d, {}});
    LacunaryTree t{Rational(1, 2), 1, TreeNode{v.parents[tau - 1], kids}};
    EXPECT_TRUE(verify_order(DirectionSet(m, t)).ok()) << tau;
    const auto& arc = v.arcs[tau - 1];
    if (tau >= 2) {
      EXPECT_FALSE(arc.front().in_set);
      EXPECT_EQ(arc.front().dir, v.parents[tau - 2]);
    }
  }
  EXPECT_EQ(concat, s.directions());
  EXPECT_EQ(v.label[0], (std::pair{1, 1}));
  EXPECT_EQ(v.label[4], (std::pair{2, 2}));
  EXPECT_EQ(v.label[11], (std::pair{5, 3}));
  EXPECT_EQ(parent_set(s).directions(), v.parents);
}

TEST(DirectionJson, RoundTripKeepsCertificate) {
  DirectionSet s = canonical_lacunary(2, Rational(2, 3), {3, 2});
  std::string text = direction_set_to_json(s);
  DirectionSet back = direction_set_from_json(text);
  EXPECT_EQ(back.directions(), s.directions());
  ASSERT_TRUE(back.certificate());
  EXPECT_EQ(back.certificate()->lambda, Rational(2, 3));
  EXPECT_TRUE(verify_order(back).ok());
  EXPECT_EQ(direction_set_to_json(back), text);

  DirectionSet plain = direction_set_from_json(direction_set_to_json(equispaced(4)));
  EXPECT_FALSE(plain.certificate());
  EXPECT_EQ(plain.size(), 4u);
}

TEST(DirectionJson, RejectsMalformedInput) {
  EXPECT_THROW(direction_set_from_json("{"), ValidationError);
  EXPECT_THROW(direction_set_from_json("{}"), ValidationError);
  EXPECT_THROW(direction_set_from_json(R"({"angles": [[1]]})"), ValidationError);
  EXPECT_THROW(direction_set_from_json(R"({"angles": [[5, 2]]})"), ValidationError);
  EXPECT_THROW(direction_set_from_json(R"({"angles": [[1, 3], [1, 3]]})"), ValidationError);
  // Certificate whose leaves disagree with the angle list.
  std::string broken = R"({"lambda": "1/2", "order": 1, "root": [0, 0], "angles": [[1, 3]],
    "tree": {"angle": [0, 0], "children": [{"angle": [1, 3], "children": []}, {"angle": [1, 4], "children": []}]}})";
  EXPECT_THROW(direction_set_from_json(broken), ValidationError);
}
