#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lacuna/directions.hpp"
#include "lacuna/field.hpp"

namespace lacuna {

// Fourier multiplier: a bounded function of the integer frequency.
using Multiplier = std::function<cplx(const LatticePoint&)>;

SpectralField multiply(const SpectralField& s, const Multiplier& m);
ComplexField apply_multiplier(const ComplexField& f, const Multiplier& m);

// Frequency-side factories.
Multiplier half_plane_multiplier(const Direction& v, double tau = 0.0);
Multiplier hilbert_multiplier(const Direction& v);

// Second-quadrant sector: xi.opening >= 0, xi.closing < 0, xi1 < 0, xi2 > 0.
struct ConeRegion {
  Direction opening;
  Direction closing;

  bool contains(int xi1, int xi2) const;
};

// Cone j lies between v_j and v_{j+1}; the last one closes at the root.
std::vector<ConeRegion> cones_of(const DirectionSet& set);

// Per lattice point (storage order): 0-based cone index, or -1 outside
// every cone. Uses that sign(xi.v) is monotone along a clockwise set for
// second-quadrant xi.
std::vector<int> cone_labels(std::size_t n, const DirectionSet& set);

ComplexField half_plane(const ComplexField& f, const Direction& v, double tau = 0.0);
ComplexField hilbert_dir(const ComplexField& f, const Direction& v);
ComplexField cone_restrict(const ComplexField& f, const ConeRegion& cone);
// sum_j signs[j] R_j f, one sign in {-1, 0, 1} per cone.
ComplexField signed_cone_sum(const ComplexField& f, const DirectionSet& set, const std::vector<int>& signs);

// S_k: radial multiplier phi(2^-k |xi|).
ComplexField lp_radial(const ComplexField& f, int k);
// Scales k with S_k nonzero somewhere on the lattice.
std::pair<int, int> radial_scale_range(std::size_t n);

enum class LpKind { Phi, Psi, PsiSquared, LowPass, HighPass };
LpKind parse_lp_kind(const std::string& name);

double directional_lp_value(double sigma, int k, LpKind kind);
ComplexField lp_directional(const ComplexField& f, const Direction& theta, int k, LpKind kind);
// Scales k for which the directional profiles are nonzero at some lattice
// point with xi.e_theta != 0.
std::pair<int, int> directional_scale_range(std::size_t n, const Direction& theta);

// (sum over odd-numbered cones, sum over even-numbered cones), 1-based.
std::pair<ComplexField, ComplexField> odd_even_split(const ComplexField& f, const DirectionSet& set);

}  // namespace lacuna
