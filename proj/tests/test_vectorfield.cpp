#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "lacuna/errors.hpp"
#include "lacuna/vectorfield.hpp"
#include "oracles.hpp"

using namespace lacuna;

namespace {

VectorFieldLac field(std::size_t n, std::vector<std::string> exprs) {
  std::vector<ScalarLipschitzField> lams;
  for (const auto& e : exprs) lams.push_back(ScalarLipschitzField::parse(e));
  return build_vd(n, lams);
}

double periodic_dist(double x, double y, double px, double py) {
  double dx = std::abs(x - px), dy = std::abs(y - py);
  dx = std::min(dx, 1 - dx);
  dy = std::min(dy, 1 - dy);
  return std::hypot(dx, dy);
}

}  // namespace

TEST(Expression, EvaluatesGrammar) {
  Expression e = Expression::parse("clamp(abs(x - 0.5) * 2, 0.1, 0.9) + min(y, 0.25, 1) - max(0, -1) ^ 2");
  EXPECT_NEAR(e(0.7, 0.1), 0.4 + 0.1 - 0.0, 1e-15);
  EXPECT_NEAR(Expression::parse("dist(0.9, 0.5)")(0.1, 0.5), 0.2, 1e-15);
  EXPECT_THROW(Expression::parse("x +"), ValidationError);
  EXPECT_THROW(Expression::parse("foo(x)"), ValidationError);
}

TEST(VectorField, FirstOrderRangeIsTheDyadicLevels) {
  const std::size_t n = 64;
  VectorFieldLac vf = field(n, {"clamp(dist(0.5, 0.5), 2^-10, 2^-6)"});
  std::set<int> ks;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t i = r * n + c;
      double lam = std::clamp(periodic_dist(c / 64.0, r / 64.0, 0.5, 0.5), std::exp2(-10), std::exp2(-6));
      int k = -static_cast<int>(std::floor(std::log2(lam)));
      ASSERT_EQ(vf.exponents(i), std::vector<int>{k});
      EXPECT_EQ(vf.angle(i), Dyadic(1, k));
      ks.insert(k);
    }
  for (int k : ks) {
    EXPECT_GE(k, 6);
    EXPECT_LE(k, 10);
  }
  EXPECT_EQ(vf.range().size(), ks.size());
}

TEST(VectorField, AnglesLieInTheProductSet) {
  const std::size_t n = 64;
  VectorFieldLac vf = field(n, {"0.1 + 0.1 * dist(0.5, 0.5)", "2^-7 * (0.1 + 0.25 * dist(0.2, 0.7))",
                      "2^-13 * (0.05 + 0.1 * dist(0.8, 0.1))"});
  for (std::size_t i = 0; i < n * n; ++i) {
    auto k = vf.exponents(i);
    ASSERT_EQ(k.size(), 3u);
    EXPECT_LT(k[0], k[1]);
    EXPECT_LT(k[1], k[2]);
    EXPECT_EQ(vf.angle(i), Dyadic(1, k[0]) + Dyadic(1, k[1]) + Dyadic(1, k[2]));
    EXPECT_EQ(vf.partial_angle(i, 1), Dyadic(1, k[0]));
    EXPECT_EQ(vf.partial_angle(i, 0), Dyadic());
  }
  for (int d = 1; d <= 3; ++d) {
    OrderReport r = verify_order(vf.range_set(d));
    ASSERT_TRUE(r.ok()) << d << ": " << r.violation->node << " " << r.violation->detail;
    EXPECT_EQ(*r.order, d);
  }
}

TEST(VectorField, LevelSetsPartitionTheGrid) {
  const std::size_t n = 32;
  VectorFieldLac vf = field(n, {"0.1 + 0.1 * dist(0.5, 0.5)", "2^-8 * (0.2 + 0.5 * dist(0.5, 0.0))"});
  std::vector<int> hits(n * n, 0);
  for (const auto& ls : vf.level_sets())
    for (std::size_t i : ls.points) {
      ++hits[i];
      EXPECT_EQ(vf.partial_angle(i, 1), ls.theta);
      EXPECT_EQ(vf.exponents(i).back(), ls.j);
    }
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(VectorField, ChainViolationNamesThePoint) {
  try {
    field(32, {"0.2", "0.2 / 16 + 0.001 * x"});
    FAIL() << "chain violation accepted";
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("chain condition"), std::string::npos) << msg;
    EXPECT_NE(msg.find("grid point (row 0, col 0)"), std::string::npos) << msg;
  }
  EXPECT_THROW(field(32, {"1.5"}), ValidationError);
  EXPECT_THROW(field(32, {"0.7"}), ValidationError);
  EXPECT_NO_THROW(field(32, {"0.3"}));
  EXPECT_THROW(field(32, {"0.3", "0.001"}), ValidationError);
  EXPECT_NO_THROW(field(32, {"0.01 + 0.3 * abs(x - 0.5)"}));
  std::vector<ScalarLipschitzField> steep{ScalarLipschitzField::parse("0.01 + 0.3 * abs(x - 0.5)", 0.1)};
  EXPECT_THROW(build_vd(32, steep), ValidationError);
  EXPECT_THROW(field(48, {"0.2"}), ValidationError);
}

TEST(VectorField, SpecParsing) {
  auto lams = parse_field_spec(R"({"D": 2, "lambdas": ["0.2", {"expr": "0.004", "lipschitz": 2}]})");
  ASSERT_EQ(lams.size(), 2u);
  EXPECT_EQ(lams[1].lipschitz, 2.0);
  EXPECT_THROW(parse_field_spec(R"({"D": 3, "lambdas": ["0.2"]})"), ValidationError);
  EXPECT_THROW(parse_field_spec(R"({"lambdas": [{"lipschitz": 1}]})"), ValidationError);
  EXPECT_THROW(parse_field_spec("[1, 2"), ValidationError);
  EXPECT_THROW(parse_field_spec(R"({"lambdas": ["x +"]})"), ValidationError);
}

TEST(TruncHilbertField, MatchesQuadratureOracle) {
  const std::size_t n = 32;
  // Two values: k = 5 inside radius ~0.31 of the centre, k = 6 elsewhere.
  const std::string expr = "0.025 + 0.02 * dist(0.5, 0.5)";
  VectorFieldLac vf = field(n, {expr});
  ASSERT_EQ(vf.range().size(), 2u);
  oracle::TrigPoly g{{{1, 0, {0.7, 0.1}}, {-2, 1, {0.2, -0.4}}, {0, 3, {-0.5, 0.3}}, {3, -2, {0.1, 0.25}}}};
  ComplexField f = g.sample(n);
  for (double eps : {1.0, 0.3}) {
    ComplexField out = trunc_hilbert_field(f, vf, eps);
    double err = 0, scale = 0;
    for (std::size_t r = 0; r < n; r += 3)
      for (std::size_t c = 0; c < n; c += 3) {
        double x = c / 32.0, y = r / 32.0;
        double lam = 0.025 + 0.02 * periodic_dist(x, y, 0.5, 0.5);
        double theta = std::exp2(std::floor(std::log2(lam)));
        cplx want = oracle::pv_oracle(g, x, y, theta, eps, 4000);
        err = std::max(err, std::abs(out(r, c) - want));
        scale = std::max(scale, std::abs(want));
      }
    EXPECT_LE(err, 1e-3 * scale) << "eps=" << eps;
  }
  EXPECT_THROW(trunc_hilbert_field(f, vf, 0), ValidationError);
  EXPECT_THROW(trunc_hilbert_field(f, vf, 2), ValidationError);
  EXPECT_THROW(trunc_hilbert_field(ComplexField(64), vf, 1), ValidationError);
}

TEST(Gamma0, MembershipAndAlmostRadial) {
  EXPECT_TRUE(in_gamma0(-65, 131));
  EXPECT_FALSE(in_gamma0(-65, 130));
  EXPECT_FALSE(in_gamma0(-64, 500));
  EXPECT_FALSE(in_gamma0(-100, 0));
  // The worst case sits on the ray xi2 = -2 xi1 with theta = 0: sqrt(5)/2.
  const double edge = std::sqrt(5.0) / 2;
  double worst = almostradial_check(20000, 3);
  EXPECT_LE(worst, edge);
  EXPECT_GT(worst, 1.1);
  int a = -4000, b = 8001;
  double ratio = std::hypot(a, b) / (a * Direction().perp_x() + b * Direction().perp_y());
  EXPECT_NEAR(ratio, edge, 1e-4);
}

TEST(Gamma0, RestrictionKeepsOnlyTheCone) {
  ComplexField f = random_bandlimited(256, 4, [](int, int) { return true; });
  SpectralField s = forward(gamma0_restrict(f));
  SpectralField orig = forward(f);
  for (auto p : FrequencyLattice(256)) {
    if (in_gamma0(p.xi1, p.xi2))
      ASSERT_NEAR(std::abs(s[p.index] - orig[p.index]), 0.0, 1e-14);
    else
      ASSERT_LT(std::abs(s[p.index]), 1e-14);
  }
}

TEST(PointwiseReduction, FiniteForNearHorizontalField) {
  VectorFieldLac vf = field(64, {"2^-16 * (1 + 0.5 * dist(0.3, 0.3))"});
  ComplexField f = random_bandlimited(64, 9, [](int, int) { return true; });
  double c = pointwise_reduction_check(f, vf);
  EXPECT_TRUE(std::isfinite(c));
  EXPECT_GT(c, 0.0);
  EXPECT_THROW(pointwise_reduction_check(f, field(64, {"0.2"})), ValidationError);
}
