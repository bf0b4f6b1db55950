#include "lacuna/directions.hpp"

#include <algorithm>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "lacuna/errors.hpp"

namespace lacuna {

namespace {

const Dyadic kQuarter(1, 2);
const Dyadic kEighth(1, 3);
constexpr int kGeneratorBits = 62;
constexpr double kMinSeparation = 1e-13;

std::string describe(const Dyadic& d) {
  std::ostringstream os;
  os.precision(17);
  os << d.to_double() << " (" << to_string(d) << ")";
  return os.str();
}

void collect(const TreeNode& node, int depth, int target, std::vector<Direction>& out) {
  if (depth == target) {
    out.push_back(node.dir);
    return;
  }
  for (const auto& c : node.children) collect(c, depth + 1, target, out);
}

void sort_clockwise(std::vector<Direction>& v) {
  std::sort(v.begin(), v.end(), [](const Direction& a, const Direction& b) { return a > b; });
}

// Distance from x to the nearest element of a set sorted by decreasing theta.
Dyadic distance_to(const Dyadic& x, const std::vector<Direction>& sorted_desc) {
  auto it = std::lower_bound(sorted_desc.begin(), sorted_desc.end(), x,
                             [](const Direction& d, const Dyadic& t) { return d.theta() > t; });
  std::optional<Dyadic> best;
  auto consider = [&](const Dyadic& t) {
    Dyadic d = abs(x - t);
    if (!best || d < *best) best = d;
  };
  if (it != sorted_desc.end()) consider(it->theta());
  if (it != sorted_desc.begin()) consider(std::prev(it)->theta());
  return *best;
}

}  // namespace

Direction::Direction(const Dyadic& theta) : theta_(theta), theta_d_(theta.to_double()) {
  if (theta < Dyadic{} || theta > kQuarter)
    throw ValidationError("direction angle outside [0, 1/4]: " + describe(theta));
  if (theta.is_zero()) {
    c_ = 1;
    s_ = 0;
  } else if (theta == kQuarter) {
    c_ = 0;
    s_ = 1;
  } else if (theta == kEighth) {
    c_ = s_ = std::sqrt(0.5);
  } else {
    c_ = boost::math::cos_pi(2.0 * theta_d_);
    s_ = boost::math::sin_pi(2.0 * theta_d_);
  }
}

int dot_sign(int xi1, int xi2, const Direction& v) {
  auto sgn = [](auto x) { return (x > 0) - (x < 0); };
  const Dyadic& t = v.theta();
  if (t.is_zero()) return sgn(xi1);
  if (t == kQuarter) return sgn(xi2);
  if (t == kEighth) return sgn(xi1 + xi2);
  double s = xi1 * v.cos() + xi2 * v.sin();
  double bound = 1e-14 * (std::abs(xi1) + std::abs(xi2));
  if (std::abs(s) > bound) return sgn(s);
  // Rational angles other than 0, 1/8, 1/4 in the first quadrant have
  // irrational tangent, so the dot product is never zero here; resolve
  // its sign at high precision.
  using hp = boost::multiprecision::cpp_bin_float_100;
  hp angle = hp(t.num) * boost::multiprecision::ldexp(hp(1), -t.log2den) * 2 *
             boost::math::constants::pi<hp>();
  hp exact = hp(xi1) * cos(angle) + hp(xi2) * sin(angle);
  return exact > 0 ? 1 : (exact < 0 ? -1 : 0);
}

std::vector<Direction> nodes_at_depth(const LacunaryTree& tree, int depth) {
  std::vector<Direction> out;
  collect(tree.root, 0, depth, out);
  sort_clockwise(out);
  return out;
}

DirectionSet::DirectionSet(std::vector<Direction> dirs, std::optional<LacunaryTree> certificate)
    : dirs_(std::move(dirs)), cert_(std::move(certificate)) {
  sort_clockwise(dirs_);
  for (std::size_t i = 1; i < dirs_.size(); ++i)
    if (dirs_[i] == dirs_[i - 1])
      throw ValidationError("duplicate direction " + describe(dirs_[i].theta()));
  if (cert_) {
    if (cert_->order < 0) throw ValidationError("negative certificate order");
    if (!(cert_->lambda > Rational(0, 1)) || !(cert_->lambda < Rational(1, 1)))
      throw ValidationError("certificate lambda must lie in (0, 1)");
    auto leaves = nodes_at_depth(*cert_, cert_->order);
    if (leaves != dirs_) {
      std::size_t i = 0;
      while (i < leaves.size() && i < dirs_.size() && leaves[i] == dirs_[i]) ++i;
      std::string listed = i < dirs_.size() ? describe(dirs_[i].theta()) : "nothing";
      std::string certified = i < leaves.size() ? describe(leaves[i].theta()) : "nothing";
      throw ValidationError("angle #" + std::to_string(i) + " does not match the certificate: list has " +
                            listed + ", certificate has " + certified);
    }
  }
}

Direction DirectionSet::root() const { return cert_ ? cert_->root.dir : Direction(); }

bool Arc::contains(const Dyadic& t) const {
  bool above = lo_closed ? t >= lo : t > lo;
  bool below = hi_closed ? t <= hi : t < hi;
  return above && below;
}

DirectionSet canonical_lacunary(int order, const Rational& lambda, std::vector<int> counts) {
  if (order < 0) throw ValidationError("order must be >= 0");
  if (!(lambda > Rational(0, 1)) || !(lambda < Rational(1, 1)))
    throw ValidationError("lambda must lie in (0, 1), got " + to_string(lambda));
  if (order > 0) {
    if (counts.size() == 1 && order > 1) counts.assign(static_cast<std::size_t>(order), counts[0]);
    if (counts.size() != static_cast<std::size_t>(order))
      throw ValidationError("expected " + std::to_string(order) + " per-level counts");
    for (int c : counts)
      if (c < 1) throw ValidationError("per-level counts must be >= 1");
  }

  // First child offset is lambda^g times the node's own offset, g minimal
  // with lambda^g <= 1/16, so children sit well inside their arc.
  int g = 1;
  while (!power_at_most(lambda, g, Rational(1, 16))) ++g;

  LacunaryTree tree{lambda, order, TreeNode{Direction(), {}}};
  std::function<void(TreeNode&, int, const Dyadic&)> grow = [&](TreeNode& node, int depth,
                                                                 const Dyadic& offset) {
    if (depth == order) return;
    Dyadic d = offset;
    int lead = depth == 0 ? 1 : g;
    for (int i = 0; i < lead; ++i) d = floor_scaled(d, lambda, kGeneratorBits);
    for (int i = 0; i < counts[static_cast<std::size_t>(depth)]; ++i) {
      if (d.is_zero()) throw ValidationError("counts too large: generated angles collide");
      if (node.dir.theta() + d > kQuarter)
        throw ValidationError("lambda " + to_string(lambda) + " is too close to 1 for order " +
                              std::to_string(order) + ": a child angle leaves [0, 1/4]");
      TreeNode child{Direction(node.dir.theta() + d), {}};
      grow(child, depth + 1, d);
      node.children.push_back(std::move(child));
      d = floor_scaled(d, lambda, kGeneratorBits);
    }
  };
  grow(tree.root, 0, kQuarter);

  auto leaves = nodes_at_depth(tree, order);
  for (std::size_t i = 1; i < leaves.size(); ++i)
    if (leaves[i - 1].revolutions() - leaves[i].revolutions() < kMinSeparation)
      throw ValidationError("counts too large: generated angles closer than 1e-13");
  return DirectionSet(std::move(leaves), std::move(tree));
}

DirectionSet equispaced(std::size_t n) {
  if (n == 0) throw ValidationError("equispaced set needs n >= 1");
  std::vector<Direction> dirs;
  for (std::size_t k = 1; k <= n; ++k)
    dirs.push_back(Direction::from_revolutions(static_cast<double>(k) / (4.0 * static_cast<double>(n))));
  return DirectionSet(std::move(dirs));
}

bool is_successor(const DirectionSet& theta, const DirectionSet& parent, const Rational& lambda) {
  // p |x - y| >= (q - p) dist(x, parent); nearest y suffices.
  const auto& t = theta.directions();
  if (t.size() < 2) return true;
  if (parent.empty()) return false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Dyadic dist = distance_to(t[i].theta(), parent.directions());
    for (std::size_t k : {i - 1, i + 1}) {
      if (k >= t.size()) continue;  // wraps for i = 0
      Dyadic gap = abs(t[i].theta() - t[k].theta());
      if (!scaled_at_least(lambda.p, gap, lambda.q - lambda.p, dist)) return false;
    }
  }
  return true;
}

OrderReport verify_order(const DirectionSet& set) {
  OrderReport report;
  if (!set.certificate()) {
    report.violation = OrderViolation{0, "", "no certificate"};
    return report;
  }
  const LacunaryTree& tree = *set.certificate();
  const Rational& lam = tree.lambda;
  auto fail = [&](int level, std::string node, std::string detail) {
    report.violation = OrderViolation{level, std::move(node), std::move(detail)};
    return report;
  };

  // Index paths for naming nodes in failure reports.
  std::map<Dyadic, std::string> path_of;
  std::function<void(const TreeNode&, const std::string&)> name = [&](const TreeNode& n,
                                                                       const std::string& path) {
    path_of.emplace(n.dir.theta(), path);
    for (std::size_t i = 0; i < n.children.size(); ++i)
      name(n.children[i], path == "root" ? std::to_string(i) : path + "." + std::to_string(i));
  };
  name(tree.root, "root");

  std::vector<Direction> closure{tree.root.dir};
  std::vector<const TreeNode*> frontier{&tree.root};
  for (int level = 1; level <= tree.order; ++level) {
    std::vector<Direction> upper;  // depth level-1 nodes, decreasing
    for (auto* n : frontier) upper.push_back(n->dir);
    sort_clockwise(upper);

    std::vector<const TreeNode*> next;
    std::vector<Direction> current;
    for (auto* n : frontier) {
      const auto& kids = n->children;
      if (kids.empty())
        return fail(level, path_of[n->dir.theta()], "node above leaf level has no children");
      auto above = std::find(upper.begin(), upper.end(), n->dir);
      std::optional<Dyadic> ceiling;
      if (above != upper.begin()) ceiling = std::prev(above)->theta();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        const Dyadic& x = kids[i].dir.theta();
        const std::string& here = path_of[x];
        if (!(x > n->dir.theta()) || (ceiling && !(x < *ceiling)))
          return fail(level, here, "angle " + describe(x) + " outside the arc of its parent");
        if (i > 0) {
          Dyadic d_prev = kids[i - 1].dir.theta() - n->dir.theta();
          Dyadic d_here = x - n->dir.theta();
          if (!(d_here < d_prev))
            return fail(level, here, "sequence not strictly converging toward its parent");
          // q * d_i <= p * d_{i-1}
          if (!scaled_at_least(lam.p, d_prev, lam.q, d_here))
            return fail(level, here, "distance ratio exceeds lambda " + to_string(lam));
        }
        current.push_back(kids[i].dir);
        next.push_back(&kids[i]);
      }
    }
    sort_clockwise(current);
    // Successor condition against the closure with factor (1 - lambda):
    // q |x - y| >= (q - p) dist(x, closure).
    sort_clockwise(closure);
    for (std::size_t i = 0; i < current.size(); ++i) {
      Dyadic dist = distance_to(current[i].theta(), closure);
      for (std::size_t k : {i - 1, i + 1}) {
        if (k >= current.size()) continue;
        Dyadic gap = abs(current[i].theta() - current[k].theta());
        if (!scaled_at_least(lam.q, gap, lam.q - lam.p, dist))
          return fail(level, path_of[current[i].theta()],
                      "successor inequality fails against " + path_of[current[k].theta()] +
                          ": gap " + describe(gap) + ", distance to previous levels " + describe(dist));
      }
    }
    closure.insert(closure.end(), current.begin(), current.end());
    frontier = std::move(next);
  }
  for (auto* n : frontier)
    if (!n->children.empty()) return fail(tree.order + 1, path_of[n->dir.theta()], "tree deeper than its order");
  if (nodes_at_depth(tree, tree.order) != set.directions())
    return fail(tree.order, "", "certificate leaves do not match the direction list");
  report.order = tree.order;
  return report;
}

std::vector<Arc> complementary_arcs(const DirectionSet& parent) {
  if (parent.empty()) throw ValidationError("complementary arcs of an empty set");
  std::vector<Dyadic> pts;
  for (const auto& d : parent) pts.push_back(d.theta());
  std::sort(pts.begin(), pts.end());
  std::vector<Arc> arcs;
  if (pts.front() > Dyadic{}) arcs.push_back({Dyadic{}, pts.front(), true, false});
  for (std::size_t i = 1; i < pts.size(); ++i) arcs.push_back({pts[i - 1], pts[i], false, false});
  if (pts.back() < kQuarter) arcs.push_back({pts.back(), kQuarter, false, true});
  std::reverse(arcs.begin(), arcs.end());
  return arcs;
}

std::vector<DirectionSet> split_constant(const DirectionSet& set, const Rational& lambda_prime) {
  if (!set.certificate()) throw ValidationError("split_constant requires a certificate");
  const LacunaryTree& tree = *set.certificate();
  if (lambda_prime > tree.lambda)
    throw ValidationError("target constant " + to_string(lambda_prime) + " exceeds lambda " +
                          to_string(tree.lambda));
  if (!(lambda_prime > Rational(0, 1))) throw ValidationError("target constant must be positive");
  int m = 1;
  while (!power_at_most(tree.lambda, m, lambda_prime)) ++m;

  // Part r keeps, at every depth d, the children whose index is r_d mod m.
  std::size_t parts = 1;
  for (int d = 0; d < tree.order; ++d) parts *= static_cast<std::size_t>(m);
  std::vector<DirectionSet> out;
  for (std::size_t code = 0; code < parts; ++code) {
    std::vector<int> residue(static_cast<std::size_t>(tree.order));
    std::size_t c = code;
    for (auto& r : residue) {
      r = static_cast<int>(c % static_cast<std::size_t>(m));
      c /= static_cast<std::size_t>(m);
    }
    std::function<TreeNode(const TreeNode&, int)> prune = [&](const TreeNode& n, int depth) {
      TreeNode kept{n.dir, {}};
      if (depth == tree.order) return kept;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (static_cast<int>(i % static_cast<std::size_t>(m)) != residue[static_cast<std::size_t>(depth)]) continue;
        TreeNode child = prune(n.children[i], depth + 1);
        if (depth + 1 == tree.order || !child.children.empty()) kept.children.push_back(std::move(child));
      }
      return kept;
    };
    LacunaryTree part{lambda_prime, tree.order, prune(tree.root, 0)};
    auto leaves = nodes_at_depth(part, tree.order);
    if (leaves.empty()) continue;
    out.emplace_back(std::move(leaves), std::move(part));
  }
  return out;
}

std::vector<Direction> JTauView::members(std::size_t tau) const {
  std::vector<Direction> out;
  for (const auto& e : arcs.at(tau - 1))
    if (e.in_set) out.push_back(e.dir);
  return out;
}

JTauView enumerate_jtau(const DirectionSet& set) {
  if (!set.certificate()) throw ValidationError("enumerate_jtau requires a certificate");
  const LacunaryTree& tree = *set.certificate();
  if (tree.order < 1) throw ValidationError("enumerate_jtau requires order >= 1");
  JTauView view;
  view.parents = nodes_at_depth(tree, tree.order - 1);
  view.arcs.resize(view.parents.size());
  view.label.resize(set.size());
  std::size_t i = 0;
  for (std::size_t tau = 1; tau <= view.parents.size(); ++tau) {
    auto& arc = view.arcs[tau - 1];
    if (tau >= 2) arc.push_back({view.parents[tau - 2], 1, false});
    const Dyadic& lo = view.parents[tau - 1].theta();
    while (i < set.size() && set[i].theta() > lo) {
      int j = static_cast<int>(arc.size()) + 1;
      arc.push_back({set[i], j, true});
      view.label[i] = {j, static_cast<int>(tau)};
      ++i;
    }
  }
  if (i != set.size()) throw ValidationError("directions below the lowest parent direction");
  return view;
}

DirectionSet parent_set(const DirectionSet& set) {
  if (!set.certificate()) throw ValidationError("parent_set requires a certificate");
  const LacunaryTree& tree = *set.certificate();
  if (tree.order < 1) throw ValidationError("parent_set requires order >= 1");
  std::function<TreeNode(const TreeNode&, int)> cut = [&](const TreeNode& n, int depth) {
    TreeNode kept{n.dir, {}};
    if (depth + 1 < tree.order)
      for (const auto& c : n.children) kept.children.push_back(cut(c, depth + 1));
    return kept;
  };
  LacunaryTree up{tree.lambda, tree.order - 1, cut(tree.root, 0)};
  auto dirs = nodes_at_depth(up, up.order);
  return DirectionSet(std::move(dirs), std::move(up));
}

}  // namespace lacuna
