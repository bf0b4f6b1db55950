#include "lacuna/multipliers.hpp"

#include <cmath>
#include <numbers>

#include "lacuna/bump.hpp"
#include "lacuna/errors.hpp"

namespace lacuna {

namespace {
constexpr cplx kIPi{0.0, std::numbers::pi};
}

SpectralField multiply(const SpectralField& s, const Multiplier& m) {
  SpectralField out(s.size());
  for (auto pt : FrequencyLattice(s.size())) out[pt.index] = s[pt.index] * m(pt);
  return out;
}

ComplexField apply_multiplier(const ComplexField& f, const Multiplier& m) { return inverse(multiply(forward(f), m)); }

Multiplier half_plane_multiplier(const Direction& v, double tau) {
  if (tau == 0.0)
    return [v](const LatticePoint& p) { return cplx(dot_sign(p.xi1, p.xi2, v) >= 0 ? 1.0 : 0.0); };
  return [v, tau](const LatticePoint& p) { return cplx(p.dot(v.cos(), v.sin()) >= tau ? 1.0 : 0.0); };
}

Multiplier hilbert_multiplier(const Direction& v) {
  return [v](const LatticePoint& p) { return kIPi * static_cast<double>(dot_sign(p.xi1, p.xi2, v)); };
}

bool ConeRegion::contains(int xi1, int xi2) const {
  return xi1 < 0 && xi2 > 0 && dot_sign(xi1, xi2, opening) >= 0 && dot_sign(xi1, xi2, closing) < 0;
}

std::vector<ConeRegion> cones_of(const DirectionSet& set) {
  std::vector<ConeRegion> out;
  for (std::size_t j = 0; j < set.size(); ++j)
    out.push_back({set[j], j + 1 < set.size() ? set[j + 1] : set.root()});
  return out;
}

std::vector<int> cone_labels(std::size_t n, const DirectionSet& set) {
  std::vector<int> label(n * n, -1);
  const Direction root = set.root();
  for (auto p : FrequencyLattice(n)) {
    if (!in_open_second_quadrant(p.xi1, p.xi2) || set.empty()) continue;
    // Largest j with xi.v_j >= 0.
    std::size_t lo = 0, hi = set.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (dot_sign(p.xi1, p.xi2, set[mid]) >= 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo == 0) continue;
    std::size_t j = lo - 1;
    if (j + 1 == set.size() && dot_sign(p.xi1, p.xi2, root) >= 0) continue;
    label[p.index] = static_cast<int>(j);
  }
  return label;
}

ComplexField half_plane(const ComplexField& f, const Direction& v, double tau) {
  return apply_multiplier(f, half_plane_multiplier(v, tau));
}

ComplexField hilbert_dir(const ComplexField& f, const Direction& v) { return apply_multiplier(f, hilbert_multiplier(v)); }

ComplexField cone_restrict(const ComplexField& f, const ConeRegion& cone) {
  return apply_multiplier(f, [&](const LatticePoint& p) { return cplx(cone.contains(p.xi1, p.xi2) ? 1.0 : 0.0); });
}

ComplexField signed_cone_sum(const ComplexField& f, const DirectionSet& set, const std::vector<int>& signs) {
  if (signs.size() != set.size())
    throw ValidationError("expected " + std::to_string(set.size()) + " signs, got " + std::to_string(signs.size()));
  for (int s : signs)
    if (s < -1 || s > 1) throw ValidationError("cone signs must be -1, 0 or 1");
  auto label = cone_labels(f.size(), set);
  return apply_multiplier(f, [&](const LatticePoint& p) {
    int j = label[p.index];
    return j < 0 ? cplx(0.0) : cplx(signs[static_cast<std::size_t>(j)]);
  });
}

ComplexField lp_radial(const ComplexField& f, int k) {
  return apply_multiplier(f, [k](const LatticePoint& p) { return cplx(bump::phi(std::ldexp(p.norm(), -k))); });
}

std::pair<int, int> radial_scale_range(std::size_t n) {
  // |xi| ranges over [1, sqrt(2) N/2]; phi(2^-k t) needs 2^-k t in (1/2, 2).
  int top = static_cast<int>(std::ceil(std::log2(std::sqrt(2.0) * static_cast<double>(n))));
  return {0, top};
}

LpKind parse_lp_kind(const std::string& name) {
  if (name == "phi") return LpKind::Phi;
  if (name == "psi") return LpKind::Psi;
  if (name == "psi2") return LpKind::PsiSquared;
  if (name == "low" || name == "A") return LpKind::LowPass;
  if (name == "high" || name == "B") return LpKind::HighPass;
  throw ValidationError("unknown projection kind '" + name + "' (phi, psi, psi2, low, high)");
}

double directional_lp_value(double sigma, int k, LpKind kind) {
  double t = std::ldexp(sigma, -k);
  switch (kind) {
    case LpKind::Phi:
      return bump::phi(t);
    case LpKind::Psi:
      return bump::psi(t);
    case LpKind::PsiSquared: {
      double v = bump::psi(t);
      return v * v;
    }
    case LpKind::LowPass:
      return bump::low_pass(sigma, k);
    case LpKind::HighPass:
      return 1.0 - bump::low_pass(sigma, k);
  }
  return 0;
}

ComplexField lp_directional(const ComplexField& f, const Direction& theta, int k, LpKind kind) {
  return apply_multiplier(f, [&](const LatticePoint& p) {
    double sigma = p.dot(theta.cos(), theta.sin());
    if (dot_sign(p.xi1, p.xi2, theta) == 0) sigma = 0;
    return cplx(directional_lp_value(sigma, k, kind));
  });
}

std::pair<int, int> directional_scale_range(std::size_t n, const Direction& theta) {
  double lo = kInfinity, hi = 0;
  for (auto p : FrequencyLattice(n)) {
    if (dot_sign(p.xi1, p.xi2, theta) == 0) continue;
    double s = std::abs(p.dot(theta.cos(), theta.sin()));
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (hi == 0) return {0, 0};
  return {static_cast<int>(std::floor(std::log2(lo))) - 1, static_cast<int>(std::ceil(std::log2(hi))) + 1};
}

std::pair<ComplexField, ComplexField> odd_even_split(const ComplexField& f, const DirectionSet& set) {
  auto label = cone_labels(f.size(), set);
  SpectralField s = forward(f);
  SpectralField odd(f.size()), even(f.size());
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] < 0) continue;
    ((label[i] % 2 == 0) ? odd : even)[i] = s[i];  // 0-based label: cone 1 is odd
  }
  return {inverse(odd), inverse(even)};
}

}  // namespace lacuna
