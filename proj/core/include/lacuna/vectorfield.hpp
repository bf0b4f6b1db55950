#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lacuna/directions.hpp"
#include "lacuna/expr.hpp"
#include "lacuna/field.hpp"

namespace lacuna {

// A (0,1]-valued Lipschitz function given by an expression.
struct ScalarLipschitzField {
  Expression expr;
  double lipschitz = 1.0;

  static ScalarLipschitzField parse(std::string_view text, double lipschitz = 1.0);
  // Samples at grid points; rejects values outside (0, 1] and sampled
  // difference quotients above lipschitz * (1 + 1e-6).
  RealField sample(std::size_t n) const;
};

// v_D(x) = prod_j e^{2 pi i 2^{floor log2 lambda_j(x)}}, i.e. angle
// sum_j 2^{-k_j(x)} revolutions with k_j = -floor(log2 lambda_j).
class VectorFieldLac {
 public:
  std::size_t grid() const { return n_; }
  int order() const { return d_; }

  // Exponent tuple (k_1 < ... < k_D) at a grid point.
  std::vector<int> exponents(std::size_t point) const;
  Dyadic angle(std::size_t point) const;
  // Angle of the partial field v_d (first d factors); d = 0 gives 0.
  Dyadic partial_angle(std::size_t point, int d) const;

  // Distinct exponent tuples, sorted lexicographically, and each point's
  // index into that list.
  const std::vector<std::vector<int>>& range() const { return range_; }
  const std::vector<int>& range_index() const { return label_; }
  static Dyadic angle_of(const std::vector<int>& tuple);

  // Range of v_d with a lacunarity certificate built from the tuples.
  DirectionSet range_set(int d) const;
  DirectionSet range_set() const { return range_set(d_); }

  // E_{theta,j}: points where v_{D-1} = theta and k_D = j. Partition of the grid.
  struct LevelSet {
    Dyadic theta;
    int j = 0;
    std::vector<std::size_t> points;
  };
  std::vector<LevelSet> level_sets() const;

 private:
  friend VectorFieldLac build_vd(std::size_t, const std::vector<ScalarLipschitzField>&);
  std::size_t n_ = 0;
  int d_ = 0;
  std::vector<int> k_;  // n*n*D, point-major
  std::vector<std::vector<int>> range_;
  std::vector<int> label_;
};

// Throws ValidationError naming the first grid point where the chain
// lambda_j <= 2^-5 lambda_{j-1} fails, or where a field is out of range or
// not Lipschitz.
VectorFieldLac build_vd(std::size_t n, const std::vector<ScalarLipschitzField>& lams);

// Vector-field spec: {"D": 2, "lambdas": [{"expr": "...", "lipschitz": 1}, ...]}
// (plain strings are accepted in place of objects).
std::vector<ScalarLipschitzField> parse_field_spec(std::string_view json_text);

// sum over range elements w of 1_{v = w} * (kernel 1_{|t|<=eps}/t along w) f.
ComplexField trunc_hilbert_field(const ComplexField& f, const VectorFieldLac& vf, double eps);

bool in_gamma0(int xi1, int xi2);
ComplexField gamma0_restrict(const ComplexField& f);
// max |xi| / (xi . v_perp) over random xi in Gamma_0 and theta in [0, 2^-5].
double almostradial_check(std::size_t samples, std::uint64_t seed);

// Least C with |H_{v,1} f| <= C (M_(0,1) M_(1,0) f + M_{range} f) on the
// grid, after removing the spectrum on Gamma_0 and -Gamma_0. Requires a
// near-horizontal field (k_1 >= 15 everywhere).
double pointwise_reduction_check(const ComplexField& f, const VectorFieldLac& vf);

}  // namespace lacuna
