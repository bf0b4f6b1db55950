#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lacuna/bump.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/experiments.hpp"
#include "lacuna/operators.hpp"
#include "oracles.hpp"

using namespace lacuna;

namespace {

ComplexField noise(std::size_t n, std::uint64_t seed) {
  return random_bandlimited(n, seed, [](int, int) { return true; });
}

ComplexField q2_noise(std::size_t n, std::uint64_t seed) { return random_bandlimited(n, seed, in_open_second_quadrant); }

// Exact average of the piecewise-linear interpolant of |f| along a grid axis
// over [-m h, m h]: trapezoid rule with step h.
double axis_average(const ComplexField& f, std::size_t r, std::size_t c, int m, bool horizontal) {
  const long n = static_cast<long>(f.size());
  auto at = [&](long k) {
    long rr = horizontal ? static_cast<long>(r) : static_cast<long>(r) + k;
    long cc = horizontal ? static_cast<long>(c) + k : static_cast<long>(c);
    rr = ((rr % n) + n) % n;
    cc = ((cc % n) + n) % n;
    return std::abs(f(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc)));
  };
  double sum = 0;
  for (long k = -m; k <= m; ++k) sum += (k == -m || k == m) ? 0.5 * at(k) : at(k);
  return sum / (2.0 * m);
}

RealField pointwise_max(const RealField& a, const RealField& b) {
  RealField out(a.size());
  for (std::size_t i = 0; i < a.count(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

double max_diff(const RealField& a, const RealField& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.count(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST(Hilbert, PlaneWaveAndCosine) {
  Direction v(Dyadic(1, 4));
  ComplexField w = plane_wave(64, -1, 5);
  EXPECT_LE(max_abs_difference(hilbert_dir(w, v), cplx(0, std::numbers::pi) * w), 1e-12);
  ComplexField c = 0.5 * (w + plane_wave(64, 1, -5));
  ComplexField expect(64);
  for (std::size_t r = 0; r < 64; ++r)
    for (std::size_t col = 0; col < 64; ++col)
      expect(r, col) = -std::numbers::pi * std::sin(2 * std::numbers::pi * (-1.0 * col + 5.0 * r) / 64.0);
  EXPECT_LE(max_abs_difference(hilbert_dir(c, v), expect), 1e-12);
}

TEST(Hilbert, SquareIsMinusPiSquaredOffLine) {
  Direction v = Direction::from_revolutions(0.137);
  ComplexField f = noise(64, 2);
  ComplexField ff = hilbert_dir(hilbert_dir(f, v), v);
  SpectralField s = forward(f);
  s[0] = 0;  // the only lattice point on an irrational line
  EXPECT_LE(max_abs_difference(ff, -std::numbers::pi * std::numbers::pi * inverse(s)), 1e-10);
}

TEST(Hilbert, PlancherelBound) {
  ComplexField f = noise(64, 3);
  for (double t : {0.0, 0.05, 0.25})
    EXPECT_LE(lp_norm(hilbert_dir(f, Direction::from_revolutions(t)), 2), std::numbers::pi * lp_norm(f, 2) + 1e-10);
}

TEST(MaxHilbert, SingletonPairAndMonotone) {
  ComplexField f = noise(64, 4);
  DirectionSet set = canonical_lacunary(1, Rational(1, 2), {4});
  Direction a = set[0], b = set[2];
  RealField ha = RealField::modulus(hilbert_dir(f, a)), hb = RealField::modulus(hilbert_dir(f, b));
  EXPECT_EQ(max_hilbert(f, DirectionSet({a}), false).value.values().size(), ha.count());
  EXPECT_LE(max_diff(max_hilbert(f, DirectionSet({a}), false).value, ha), 0.0);
  MaximalResult pair = max_hilbert(f, DirectionSet({a, b}), false);
  EXPECT_EQ(max_diff(pair.value, pointwise_max(ha, hb)), 0.0);
  RealField full = max_hilbert(f, set, false).value;
  for (std::size_t i = 0; i < full.count(); ++i) ASSERT_GE(full[i], pair.value[i]);
  EXPECT_THROW(max_hilbert(f, DirectionSet(), false), ValidationError);
}

TEST(PointwiseSup, TiesGoToSmallerIndex) {
  auto r = pointwise_sup(32, 3, [](std::size_t b) { return RealField(32, b == 0 ? 1.0 : 2.0); });
  EXPECT_EQ(r.value[5], 2.0);
  EXPECT_EQ(r.argmax[5], 1);
}

TEST(MaxHilbertPlus, PlaneWaveInConeHasModulusOne) {
  DirectionSet set = canonical_lacunary(2, Rational(1, 2), {2, 2});
  auto label = cone_labels(64, set);
  int found = -1;
  for (auto p : FrequencyLattice(64))
    if (label[p.index] == 2) {
      found = static_cast<int>(p.index);
      ComplexField w = plane_wave(64, p.xi1, p.xi2);
      RealField m = max_hilbert(w, set, true).value;
      for (double x : m.values()) ASSERT_NEAR(x, 1.0, 1e-12);
      EXPECT_LE(representation_check(w, set), 1e-9);
      EXPECT_LE(recurrence_check(w, set), 1e-9);
      break;
    }
  EXPECT_GE(found, 0);
}

TEST(Representation, RandomSecondQuadrant) {
  for (int order : {1, 2}) {
    DirectionSet set = canonical_lacunary(order, Rational(1, 2), std::vector<int>(static_cast<std::size_t>(order), 4));
    for (std::uint64_t s = 0; s < 3; ++s) {
      ComplexField g = q2_noise(64, 100 + s);
      double peak = lp_norm(g, kInfinity);
      EXPECT_LE(representation_check(g, set), 1e-9 * peak);
      EXPECT_LE(recurrence_check(g, set), 1e-9 * peak);
    }
  }
  EXPECT_EQ(representation_check(ComplexField(64), canonical_lacunary(1, Rational(1, 2), {4})), 0.0);
}

TEST(Representation, RejectsSpectrumOutsideQuadrant) {
  DirectionSet set = canonical_lacunary(1, Rational(1, 2), {4});
  EXPECT_THROW(representation_check(noise(64, 1), set), ValidationError);
  EXPECT_THROW(recurrence_check(noise(64, 1), set), ValidationError);
}

TEST(Average, AxisDirectionsMatchTrapezoidOracle) {
  ComplexField f = noise(64, 6);
  for (int m : {1, 3, 8}) {
    double eps = m / 64.0;
    ComplexField ah = directional_average(f, Direction(), eps);
    ComplexField av = directional_average(f, Direction(Dyadic(1, 2)), eps);
    for (std::size_t r = 0; r < 64; r += 7)
      for (std::size_t c = 0; c < 64; c += 5) {
        EXPECT_NEAR(ah(r, c).real(), axis_average(f, r, c, m, true), 1e-12);
        EXPECT_NEAR(av(r, c).real(), axis_average(f, r, c, m, false), 1e-12);
      }
  }
}

TEST(Average, StripOverlap) {
  // Vertical strip x1 in [0.25, 0.5); averaging radius 1/16 along (1, 0).
  const std::size_t n = 256;
  ComplexField f = indicator(n, 0.25, 0.5, 0.0, 1.0);
  const double eps = 1.0 / 16;
  ComplexField a = directional_average(f, Direction(), eps);
  const double h = 1.0 / n;
  for (std::size_t c = 0; c < n; c += 3) {
    double x = c * h;
    double overlap = std::max(0.0, std::min(x + eps, 0.5) - std::max(x - eps, 0.25));
    EXPECT_NEAR(a(10, c).real(), overlap / (2 * eps), h / eps) << x;
  }
  EXPECT_NEAR(a(0, 96).real(), 1.0, 1e-12);
}

TEST(Average, ConstantAndLowerBound) {
  const std::size_t n = 128;
  ComplexField one(n);
  for (auto& z : one.values()) z = 1.0;
  DirectionSet set = canonical_lacunary(1, Rational(1, 2), {3});
  RealField m = max_average(one, set, ScaleGrid::dyadic(n)).value;
  for (double x : m.values()) ASSERT_NEAR(x, 1.0, 1e-12);
  ComplexField g = gaussian(n, 0.4, 0.6, 0.1);
  RealField mg = max_average(g, set, ScaleGrid::dyadic(n)).value;
  const double h = 1.0 / n;
  for (std::size_t i = 0; i < mg.count(); ++i) ASSERT_GE(mg[i], (1 - 10 * h) * std::abs(g[i]));
}

TEST(Average, MonotoneInSet) {
  ComplexField f = noise(64, 9);
  DirectionSet set = canonical_lacunary(1, Rational(1, 2), {4});
  ScaleGrid grid = ScaleGrid::dyadic(64);
  RealField small = max_average(f, DirectionSet({set[1], set[3]}), grid).value;
  RealField big = max_average(f, set, grid).value;
  for (std::size_t i = 0; i < big.count(); ++i) ASSERT_GE(big[i], small[i]);
}

// Doubling the density of the standard radius grid moves the maximal norms
// by less than 1% on the probe corpus.
TEST(ScaleGrid, DoublingDensityChangesLittle) {
  const std::size_t n = 128;
  DirectionSet set = canonical_lacunary(1, Rational(1, 2), {8});
  ScaleGrid coarse = ScaleGrid::standard(n), fine = ScaleGrid::geometric(n, 4);
  EXPECT_EQ(coarse.size(), 2 * ScaleGrid::dyadic(n).size() - 1);
  EXPECT_EQ(fine.size(), 2 * coarse.size() - 1);
  for (const ComplexField& f : {random_probe(n, 1, false), random_probe(n, 2, true), gaussian(n, 0.3, 0.7, 0.12)}) {
    double a = lp_norm(max_average(f, set, coarse).value, 2), b = lp_norm(max_average(f, set, fine).value, 2);
    EXPECT_LT(std::abs(b - a), 0.01 * b);
    double c = lp_norm(max_trunc_hilbert(f, set, coarse).value, 2),
           d = lp_norm(max_trunc_hilbert(f, set, fine).value, 2);
    EXPECT_LT(std::abs(d - c), 0.01 * d);
  }
}

TEST(TruncatedHilbert, LimitsInEps) {
  ComplexField f = noise(64, 10);
  Direction v = Direction::from_revolutions(0.07);
  // A truncation far below one cell leaves the full transform.
  EXPECT_LE(max_abs_difference(trunc_hilbert_dir(f, v, 1e-9), hilbert_dir(f, v)), 1e-5 * lp_norm(f, kInfinity));
  EXPECT_LE(lp_norm(trunc_hilbert_dir(f, v, 1e6), kInfinity), 1e-4 * lp_norm(f, kInfinity));
  EXPECT_THROW(trunc_hilbert_dir(f, v, 0), ValidationError);
}

TEST(Cotlar, SmoothBumpHasSmallStableConstant) {
  // Irrational slope: the line through each point wraps around the torus.
  Direction v(Dyadic(1, 4));
  double c[2];
  for (int i = 0; i < 2; ++i) {
    std::size_t n = i == 0 ? 128 : 256;
    CotlarResult r = cotlar_check(gaussian(n, 0.5, 0.5, 0.05), v, ScaleGrid::standard(n));
    c[i] = r.constant;
    EXPECT_TRUE(std::isfinite(c[i]));
    EXPECT_GT(c[i], 0.0);
    EXPECT_LE(c[i], 10.0);
    for (std::size_t k = 0; k < r.lhs.count(); ++k) ASSERT_LE(r.lhs[k], r.rhs[k] * (1 + 1e-12) + 1e-14);
  }
  EXPECT_LE(std::max(c[0], c[1]), 1.5 * std::min(c[0], c[1]) + 1e-12);
  EXPECT_EQ(cotlar_check(ComplexField(64), v, ScaleGrid::dyadic(64)).constant, 0.0);
}

TEST(SquareFunctions, SingleScaleAndSingleton) {
  DirectionSet set = canonical_lacunary(1, Rational(1, 2), {4});
  const std::size_t n = 64;
  auto range = radial_scale_range(n);
  // |xi| = 16 exactly: phi(2^-k |xi|) = 1 at k = 4 and 0 elsewhere.
  ComplexField w = plane_wave(n, -16, 0) + plane_wave(n, 0, 16);
  EXPECT_LE(max_diff(square_fn_sfe(w, set, range), max_hilbert(w, set, true).value), 1e-12);

  ComplexField f = noise(n, 11);
  DirectionSet one({set[1]});
  RealField cww = square_fn_cww(f, one, range);
  RealField expect(n);
  for (int k = range.first; k <= range.second; ++k) {
    RealField m = RealField::modulus(half_plane(lp_radial(f, k), set[1]));
    for (std::size_t i = 0; i < expect.count(); ++i) expect[i] += m[i] * m[i];
  }
  for (auto& x : expect.values()) x = std::sqrt(x);
  EXPECT_LE(max_diff(cww, expect), 1e-12);
  RealField zero = square_fn_sfe(ComplexField(n), set, range);
  EXPECT_EQ(zero.max(), 0.0);
}

TEST(FeffermanStein, TrivialFamilies) {
  DirectionSet set = canonical_lacunary(1, Rational(1, 2), {3});
  ScaleGrid grid = ScaleGrid::dyadic(64);
  std::vector<ComplexField> zeros(3, ComplexField(64));
  MixedNorms z = fs_vector_maximal(zeros, set, grid, 2, 2);
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_EQ(z.rhs, 0.0);
  ComplexField one(64);
  for (auto& x : one.values()) x = 1.0;
  MixedNorms u = fs_vector_maximal({one, one, one}, set, grid, 3, 2);
  EXPECT_NEAR(u.lhs, std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(u.rhs, std::sqrt(3.0), 1e-12);
  EXPECT_THROW(fs_vector_maximal({one}, set, grid, 2, 2), ValidationError);
  EXPECT_THROW(fs_vector_maximal({one, one, one}, set, grid, 1, 2), ValidationError);
}
