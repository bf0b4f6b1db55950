#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lacuna/directions.hpp"
#include "lacuna/field.hpp"
#include "lacuna/multipliers.hpp"

namespace lacuna {

struct MaximalResult {
  RealField value;
  std::vector<int> argmax;  // branch index attaining the sup; ties go to the smaller index
};

// Pointwise sup of branch(i), i = 0..count-1, reduced in index order.
MaximalResult pointwise_sup(std::size_t n, std::size_t count, const std::function<RealField(std::size_t)>& branch);

// Averaging / truncation radii.
class ScaleGrid {
 public:
  // h * 2^m for m = 0.. while <= max_radius (default 1/2).
  static ScaleGrid dyadic(std::size_t n, double max_radius = 0.5);
  // per_octave radii per doubling, same range.
  static ScaleGrid geometric(std::size_t n, int per_octave, double max_radius = 0.5);
  // Two radii per octave. The plain dyadic grid moves max_average norms by
  // about 1% when doubled; this one stays near 0.5%.
  static ScaleGrid standard(std::size_t n) { return geometric(n, 2); }

  const std::vector<double>& radii() const { return radii_; }
  std::size_t size() const { return radii_.size(); }

 private:
  std::vector<double> radii_;
};

MaximalResult max_hilbert(const ComplexField& f, const DirectionSet& set, bool plus);

// Multiplier of g -> (1/2eps) sum over the composite trapezoid rule (step
// <= h/2, bilinear interpolation) of g(x + t v), t in [-eps, eps].
SpectralField average_kernel(std::size_t n, const Direction& v, double eps);

// (1/2eps) integral_{-eps}^{eps} |f(x + t v)| dt.
ComplexField directional_average(const ComplexField& f, const Direction& v, double eps);
// sup over directions and radii; branch index = direction * grid.size() + radius.
MaximalResult max_average(const ComplexField& f, const DirectionSet& set, const ScaleGrid& grid);

// Kernel 1_{|t|>eps}/t along v: i (pi - 2 Si(2 pi eps |s|)) sgn(s), s = xi.v.
Multiplier trunc_multiplier(const Direction& v, double eps);
// Kernel 1_{|t|<=eps}/t along v: 2i Si(2 pi eps |s|) sgn(s).
Multiplier trunc_complement_multiplier(const Direction& v, double eps);

ComplexField trunc_hilbert_dir(const ComplexField& f, const Direction& v, double eps);
MaximalResult max_trunc_hilbert(const ComplexField& f, const DirectionSet& set, const ScaleGrid& grid);

struct CotlarResult {
  RealField lhs;       // H*_v f
  RealField rhs;       // M_v(H_v f) + C M_v f at the fitted C
  double constant = 0; // least C >= 0 making lhs <= rhs on the grid
};
CotlarResult cotlar_check(const ComplexField& f, const Direction& v, const ScaleGrid& grid);

// Both throw ValidationError unless g's spectrum lies in the open second
// quadrant (|coefficient| <= 1e-12 max elsewhere).
double representation_check(const ComplexField& g, const DirectionSet& set);
double recurrence_check(const ComplexField& g, const DirectionSet& set);

// Closed set: set plus every certificate ancestor level, clockwise.
DirectionSet closure_of(const DirectionSet& set);

using ScaleRange = std::pair<int, int>;  // inclusive
// (sum_k (sup_m |P_m S_k f|)^2)^(1/2) for a family of multipliers P_m.
RealField square_fn_cww(const ComplexField& f, const std::vector<Multiplier>& family, ScaleRange k);
// Family = half-plane projections along the set.
RealField square_fn_cww(const ComplexField& f, const DirectionSet& set, ScaleRange k);
// (sum_k |H+_Theta S_k f|^2)^(1/2).
RealField square_fn_sfe(const ComplexField& f, const DirectionSet& set, ScaleRange k);

struct MixedNorms {
  double lhs = 0;
  double rhs = 0;
  double ratio() const { return rhs == 0 ? 0.0 : lhs / rhs; }
};
// ||(sum_j (M_{v_j} h_j)^q)^(1/q)||_p against ||(sum_j |h_j|^q)^(1/q)||_p.
MixedNorms fs_vector_maximal(const std::vector<ComplexField>& h, const DirectionSet& set, const ScaleGrid& grid,
                             double p, double q);

}  // namespace lacuna
