// Cone representation and recurrence for the maximal half-plane projection.
//
// The right-hand sides label every second-quadrant frequency by its fine
// cone C_{j,tau} and coarse cone C~_tau using polar angles (exact sign test
// only on near-ties), independently of the half-plane multipliers used for
// the left-hand sides.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lacuna/errors.hpp"
#include "lacuna/operators.hpp"

namespace lacuna {

namespace {

void require_second_quadrant(const SpectralField& s) {
  double peak = 0, outside = 0;
  for (auto p : FrequencyLattice(s.size())) {
    double a = std::abs(s[p.index]);
    peak = std::max(peak, a);
    if (!in_open_second_quadrant(p.xi1, p.xi2)) outside = std::max(outside, a);
  }
  if (outside > 1e-12 * peak)
    throw ValidationError("spectrum not supported in the open second quadrant");
}

// xi.v >= 0 for second-quadrant xi, decided from the polar angle of xi.
bool at_or_below(int xi1, int xi2, const Direction& v) {
  double phi = std::atan2(static_cast<double>(xi2), static_cast<double>(xi1)) / (2 * std::numbers::pi) - 0.25;
  double d = phi - v.revolutions();
  if (std::abs(d) > 1e-12) return d < 0;
  return dot_sign(xi1, xi2, v) >= 0;
}

struct ConeLabels {
  std::vector<int> fine_j;    // 1-based j, 0 if none
  std::vector<int> fine_tau;  // 1-based tau, 0 if none
  std::vector<int> coarse;    // 0 = above u_1, tau >= 1 between u_tau and u_{tau+1}; -1 outside
};

struct Boundary {
  Direction dir;
  int fine_j;     // cone below this boundary is C_{fine_j, fine_tau}; 0 if none
  int fine_tau;
  int coarse;     // coarse cone below this boundary
};

ConeLabels label_cones(std::size_t n, const DirectionSet& set, const JTauView& view) {
  // All boundaries of the closed set in clockwise order.
  std::vector<Boundary> bounds;
  for (std::size_t tau = 1; tau <= view.tau_count(); ++tau) {
    for (const auto& e : view.arcs[tau - 1]) {
      if (!e.in_set) continue;  // the borrowed label u_{tau-1} is pushed as a parent below
      bounds.push_back({e.dir, e.j, static_cast<int>(tau), static_cast<int>(tau) - 1});
    }
    bool has_next_arc = tau < view.tau_count();
    bounds.push_back({view.parents[tau - 1], has_next_arc ? 1 : 0, has_next_arc ? static_cast<int>(tau) + 1 : 0,
                      static_cast<int>(tau)});
  }
  ConeLabels out{std::vector<int>(n * n, 0), std::vector<int>(n * n, 0), std::vector<int>(n * n, -1)};
  if (set.empty()) return out;
  const Direction root = set.root();
  for (auto p : FrequencyLattice(n)) {
    if (!in_open_second_quadrant(p.xi1, p.xi2)) continue;
    if (!at_or_below(p.xi1, p.xi2, set[0])) continue;  // above the top direction
    if (at_or_below(p.xi1, p.xi2, root)) continue;
    // Last boundary the frequency is at or below.
    std::size_t lo = 0, hi = bounds.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (at_or_below(p.xi1, p.xi2, bounds[mid].dir))
        lo = mid + 1;
      else
        hi = mid;
    }
    const Boundary& b = bounds[lo - 1];
    out.fine_j[p.index] = b.fine_j;
    out.fine_tau[p.index] = b.fine_tau;
    out.coarse[p.index] = b.coarse;
  }
  return out;
}

RealField sup_half_planes(const SpectralField& s, const std::vector<Direction>& dirs) {
  RealField best(s.size());
  for (const auto& v : dirs) {
    RealField m = RealField::modulus(inverse(multiply(s, half_plane_multiplier(v))));
    for (std::size_t i = 0; i < best.count(); ++i) best[i] = std::max(best[i], m[i]);
  }
  return best;
}

}  // namespace

DirectionSet closure_of(const DirectionSet& set) {
  if (!set.certificate()) return set;
  const LacunaryTree& tree = *set.certificate();
  std::vector<Direction> all;
  for (int d = 0; d <= tree.order; ++d) {
    auto level = nodes_at_depth(tree, d);
    all.insert(all.end(), level.begin(), level.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return DirectionSet(std::move(all));
}

double representation_check(const ComplexField& g, const DirectionSet& set) {
  SpectralField s = forward(g);
  require_second_quadrant(s);
  JTauView view = enumerate_jtau(set);
  const std::size_t n = g.size();

  RealField lhs = sup_half_planes(s, closure_of(set).directions());

  ConeLabels lab = label_cones(n, set, view);
  RealField rhs(n);
  for (std::size_t T = 1; T <= view.tau_count(); ++T) {
    // J runs over the arc's labels plus the empty tail (J = last + 1).
    const int last = static_cast<int>(view.arcs[T - 1].size());
    for (int J = 1; J <= last + 1; ++J) {
      SpectralField part(n);
      for (std::size_t i = 0; i < part.count(); ++i) {
        bool fine = lab.fine_tau[i] == static_cast<int>(T) && lab.fine_j[i] >= J;
        bool coarse = lab.coarse[i] >= static_cast<int>(T);
        if (fine || coarse) part[i] = s[i];
      }
      RealField m = RealField::modulus(inverse(part));
      for (std::size_t i = 0; i < rhs.count(); ++i) rhs[i] = std::max(rhs[i], m[i]);
    }
  }
  double dev = 0;
  for (std::size_t i = 0; i < lhs.count(); ++i) dev = std::max(dev, std::abs(lhs[i] - rhs[i]));
  return dev;
}

double recurrence_check(const ComplexField& g, const DirectionSet& set) {
  SpectralField s = forward(g);
  require_second_quadrant(s);
  JTauView view = enumerate_jtau(set);
  const std::size_t n = g.size();

  RealField lhs = sup_half_planes(s, closure_of(set).directions());
  RealField parent = sup_half_planes(s, closure_of(parent_set(set)).directions());

  ConeLabels lab = label_cones(n, set, view);
  RealField worst_arc(n);
  for (std::size_t tau = 1; tau <= view.tau_count(); ++tau) {
    auto members = view.members(tau);
    if (members.empty()) continue;
    SpectralField coarse(n);  // R~_{tau-1} g
    for (std::size_t i = 0; i < coarse.count(); ++i)
      if (lab.coarse[i] == static_cast<int>(tau) - 1) coarse[i] = s[i];
    RealField m = sup_half_planes(coarse, members);
    for (std::size_t i = 0; i < worst_arc.count(); ++i) worst_arc[i] = std::max(worst_arc[i], m[i]);
  }
  double violation = 0;
  for (std::size_t i = 0; i < lhs.count(); ++i)
    violation = std::max(violation, lhs[i] - (parent[i] + worst_arc[i]));
  return violation;
}

}  // namespace lacuna
