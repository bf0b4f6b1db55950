#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lacuna/exact.hpp"

namespace lacuna {

// Unit vector e^{2 pi i theta} with theta in revolutions, 0 <= theta <= 1/4.
class Direction {
 public:
  Direction() : Direction(Dyadic{}) {}
  explicit Direction(const Dyadic& theta);
  static Direction from_revolutions(double theta) { return Direction(Dyadic::from_double(theta)); }

  const Dyadic& theta() const { return theta_; }
  double revolutions() const { return theta_d_; }
  double cos() const { return c_; }
  double sin() const { return s_; }
  // theta + 1/4
  double perp_x() const { return -s_; }
  double perp_y() const { return c_; }

  friend bool operator==(const Direction& a, const Direction& b) { return a.theta_ == b.theta_; }
  friend auto operator<=>(const Direction& a, const Direction& b) { return a.theta_ <=> b.theta_; }

 private:
  Dyadic theta_;
  double theta_d_ = 0;
  double c_ = 1;
  double s_ = 0;
};

// Exact sign of xi1*cos(2 pi theta) + xi2*sin(2 pi theta).
int dot_sign(int xi1, int xi2, const Direction& v);

struct TreeNode {
  Direction dir;
  std::vector<TreeNode> children;  // clockwise, i.e. decreasing theta
};

// Recursive certificate: each node's children form a sequence converging
// clockwise to it with consecutive distance ratio <= lambda.
struct LacunaryTree {
  Rational lambda;
  int order = 0;
  TreeNode root;
};

// Nodes at a given depth (depth 0 = root), sorted by decreasing theta.
std::vector<Direction> nodes_at_depth(const LacunaryTree& tree, int depth);

class DirectionSet {
 public:
  DirectionSet() = default;
  // Sorts clockwise; rejects duplicates and angles outside [0, 1/4].
  explicit DirectionSet(std::vector<Direction> dirs, std::optional<LacunaryTree> certificate = std::nullopt);

  std::size_t size() const { return dirs_.size(); }
  bool empty() const { return dirs_.empty(); }
  const Direction& operator[](std::size_t i) const { return dirs_[i]; }
  const std::vector<Direction>& directions() const { return dirs_; }
  auto begin() const { return dirs_.begin(); }
  auto end() const { return dirs_.end(); }

  const std::optional<LacunaryTree>& certificate() const { return cert_; }
  // Root of the certificate, or theta = 0 when uncertified.
  Direction root() const;

 private:
  std::vector<Direction> dirs_;
  std::optional<LacunaryTree> cert_;
};

struct Arc {
  Dyadic lo;
  Dyadic hi;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(const Dyadic& theta) const;
  double length() const { return (hi - lo).to_double(); }
};

DirectionSet canonical_lacunary(int order, const Rational& lambda, std::vector<int> counts);

// Equally spaced (non-lacunary) directions k / (4n), k = 1..n.
DirectionSet equispaced(std::size_t n);

bool is_successor(const DirectionSet& theta, const DirectionSet& parent, const Rational& lambda);

struct OrderViolation {
  int level = 0;
  std::string node;  // path of child indices from the root, e.g. "2.0.3"
  std::string detail;
};

struct OrderReport {
  std::optional<int> order;
  std::optional<OrderViolation> violation;
  bool ok() const { return order.has_value(); }
};

OrderReport verify_order(const DirectionSet& set);

// Arcs of [0, 1/4] minus the parent set, sorted by decreasing position.
std::vector<Arc> complementary_arcs(const DirectionSet& parent);

std::vector<DirectionSet> split_constant(const DirectionSet& set, const Rational& lambda_prime);

// Splits the set along its parent level: arc tau (1-based) runs between
// the parents u_tau and u_{tau-1}, with u_0 the top of the quadrant.
struct JTauEntry {
  Direction dir;
  int j = 0;            // 1-based position within the arc
  bool in_set = false;  // false for the borrowed label v_{1,tau} = u_{tau-1}
};

struct JTauView {
  std::vector<Direction> parents;           // u_1 > u_2 > ... > u_n
  std::vector<std::vector<JTauEntry>> arcs; // arcs[tau-1], decreasing theta
  std::vector<std::pair<int, int>> label;   // set index -> (j, tau)

  std::size_t tau_count() const { return parents.size(); }
  // Directions of Theta_tau (set members only).
  std::vector<Direction> members(std::size_t tau) const;
};

JTauView enumerate_jtau(const DirectionSet& set);

// Certified parent set: the depth D-1 nodes of the certificate.
DirectionSet parent_set(const DirectionSet& set);

}  // namespace lacuna
