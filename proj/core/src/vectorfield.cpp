#include "lacuna/vectorfield.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <map>
#include <random>
#include <sstream>

#include "lacuna/errors.hpp"
#include "lacuna/operators.hpp"
#include "lacuna/parallel.hpp"

namespace lacuna {

namespace {

std::string point_name(std::size_t n, std::size_t i) {
  std::ostringstream os;
  os.precision(10);
  std::size_t r = i / n, c = i % n;
  os << "grid point (row " << r << ", col " << c << ") x = (" << static_cast<double>(c) / static_cast<double>(n)
     << ", " << static_cast<double>(r) / static_cast<double>(n) << ")";
  return os.str();
}

// -floor(log2 v) from the binary exponent; exact at powers of two.
int dyadic_exponent(double v) {
  int e = 0;
  std::frexp(v, &e);  // v = m 2^e, m in [1/2, 1)
  return 1 - e;
}

}  // namespace

ScalarLipschitzField ScalarLipschitzField::parse(std::string_view text, double lipschitz) {
  if (!(lipschitz > 0)) throw ValidationError("Lipschitz bound must be positive");
  return {Expression::parse(text), lipschitz};
}

RealField ScalarLipschitzField::sample(std::size_t n) const {
  RealField out(n);
  const double h = 1.0 / static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      double v = expr(static_cast<double>(c) * h, static_cast<double>(r) * h);
      if (!(v > 0) || !(v <= 1))
        throw ValidationError("lambda '" + expr.source() + "' = " + std::to_string(v) + " outside (0, 1] at " +
                              point_name(n, r * n + c));
      out[r * n + c] = v;
    }
  const double limit = lipschitz * (1 + 1e-6);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      double here = out[r * n + c];
      double right = out[r * n + (c + 1) % n], down = out[((r + 1) % n) * n + c];
      double q = std::max(std::abs(right - here), std::abs(down - here)) / h;
      if (q > limit)
        throw ValidationError("lambda '" + expr.source() + "' difference quotient " + std::to_string(q) +
                              " exceeds Lipschitz bound " + std::to_string(lipschitz) + " at " +
                              point_name(n, r * n + c));
    }
  return out;
}

std::vector<int> VectorFieldLac::exponents(std::size_t point) const {
  auto first = k_.begin() + static_cast<std::ptrdiff_t>(point * static_cast<std::size_t>(d_));
  return {first, first + d_};
}

Dyadic VectorFieldLac::angle_of(const std::vector<int>& tuple) {
  Dyadic a;
  for (int k : tuple) {
    if (k > 62) throw ValidationError("field exponent " + std::to_string(k) + " too small to represent");
    a = a + Dyadic(1, k);
  }
  return a;
}

Dyadic VectorFieldLac::angle(std::size_t point) const { return partial_angle(point, d_); }

Dyadic VectorFieldLac::partial_angle(std::size_t point, int d) const {
  auto e = exponents(point);
  e.resize(static_cast<std::size_t>(d));
  return angle_of(e);
}

DirectionSet VectorFieldLac::range_set(int d) const {
  if (d < 0 || d > d_) throw ValidationError("partial field order out of range");
  // Prefix tree of exponent tuples; larger angle (smaller k) first.
  std::map<std::vector<int>, bool> prefixes;
  for (const auto& t : range_) prefixes[std::vector<int>(t.begin(), t.begin() + d)] = true;
  TreeNode root{Direction(), {}};
  for (const auto& [t, _] : prefixes) {
    TreeNode* node = &root;
    for (int level = 1; level <= d; ++level) {
      std::vector<int> prefix(t.begin(), t.begin() + level);
      Direction dir(angle_of(prefix));
      auto it = std::find_if(node->children.begin(), node->children.end(),
                             [&](const TreeNode& c) { return c.dir == dir; });
      if (it == node->children.end()) {
        node->children.push_back({dir, {}});
        it = std::prev(node->children.end());
      }
      node = &*it;
    }
  }
  std::function<void(TreeNode&)> order = [&](TreeNode& n) {
    std::sort(n.children.begin(), n.children.end(),
              [](const TreeNode& a, const TreeNode& b) { return a.dir > b.dir; });
    for (auto& c : n.children) order(c);
  };
  order(root);
  LacunaryTree tree{Rational(1, 2), d, std::move(root)};
  auto leaves = nodes_at_depth(tree, d);
  return DirectionSet(std::move(leaves), std::move(tree));
}

std::vector<VectorFieldLac::LevelSet> VectorFieldLac::level_sets() const {
  std::map<std::pair<Dyadic, int>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n_ * n_; ++i) {
    int j = d_ > 0 ? k_[i * static_cast<std::size_t>(d_) + static_cast<std::size_t>(d_ - 1)] : 0;
    groups[{partial_angle(i, std::max(d_ - 1, 0)), j}].push_back(i);
  }
  std::vector<LevelSet> out;
  for (auto& [key, pts] : groups) out.push_back({key.first, key.second, std::move(pts)});
  return out;
}

VectorFieldLac build_vd(std::size_t n, const std::vector<ScalarLipschitzField>& lams) {
  if (!is_valid_grid_size(n)) throw ValidationError("grid size must be a power of two >= 32");
  VectorFieldLac vf;
  vf.n_ = n;
  vf.d_ = static_cast<int>(lams.size());
  std::vector<RealField> samples;
  for (const auto& l : lams) samples.push_back(l.sample(n));
  for (std::size_t j = 1; j < samples.size(); ++j)
    for (std::size_t i = 0; i < n * n; ++i)
      if (samples[j][i] > std::ldexp(samples[j - 1][i], -5))
        throw ValidationError("chain condition lambda_" + std::to_string(j + 1) + " <= 2^-5 lambda_" +
                              std::to_string(j) + " fails at " + point_name(n, i) + ": " +
                              std::to_string(samples[j][i]) + " vs " + std::to_string(samples[j - 1][i]));
  vf.k_.resize(n * n * lams.size());
  for (std::size_t i = 0; i < n * n; ++i)
    for (std::size_t j = 0; j < lams.size(); ++j) vf.k_[i * lams.size() + j] = dyadic_exponent(samples[j][i]);
  // The angle sum_j 2^-k_j stays in [0, 1/4] only when k_1 >= 2, and k_1 >= 3
  // once a second term is present.
  if (!samples.empty()) {
    const int min_k1 = lams.size() > 1 ? 3 : 2;
    for (std::size_t i = 0; i < n * n; ++i)
      if (vf.k_[i * lams.size()] < min_k1)
        throw ValidationError("lambda_1 must stay below " + std::string(min_k1 == 2 ? "1/2" : "1/4") +
                              " so the field points into the first quadrant; got " +
                              std::to_string(samples[0][i]) + " at " + point_name(n, i));
  }

  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < n * n; ++i) index.emplace(vf.exponents(i), 0);
  for (auto& [t, idx] : index) {
    idx = static_cast<int>(vf.range_.size());
    vf.range_.push_back(t);
    VectorFieldLac::angle_of(t);  // representability check
  }
  vf.label_.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) vf.label_[i] = index.at(vf.exponents(i));
  return vf;
}

std::vector<ScalarLipschitzField> parse_field_spec(std::string_view json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("vector-field spec is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("lambdas") || !j.at("lambdas").is_array())
      throw ValidationError("vector-field spec needs a \"lambdas\" array");
    std::vector<ScalarLipschitzField> out;
    for (const auto& item : j.at("lambdas")) {
      if (item.is_string())
        out.push_back(ScalarLipschitzField::parse(item.get<std::string>()));
      else
        out.push_back(ScalarLipschitzField::parse(item.at("expr").get<std::string>(), item.value("lipschitz", 1.0)));
    }
    if (j.contains("D") && j.at("D").get<std::size_t>() != out.size())
      throw ValidationError("vector-field spec: D does not match the number of lambdas");
    return out;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed vector-field spec: ") + e.what());
  }
}

ComplexField trunc_hilbert_field(const ComplexField& f, const VectorFieldLac& vf, double eps) {
  if (f.size() != vf.grid()) throw ValidationError("field and vector field grids differ");
  if (!(eps > 0) || eps > 1) throw ValidationError("truncation radius must lie in (0, 1]");
  SpectralField s = forward(f);
  std::vector<std::vector<std::size_t>> members(vf.range().size());
  for (std::size_t i = 0; i < vf.range_index().size(); ++i)
    members[static_cast<std::size_t>(vf.range_index()[i])].push_back(i);
  ComplexField out(f.size());
  // Each grid point is written by exactly one range element.
  parallel_for(vf.range().size(), [&](std::size_t r) {
    Direction w(VectorFieldLac::angle_of(vf.range()[r]));
    ComplexField piece = inverse(multiply(s, trunc_complement_multiplier(w, eps)));
    for (std::size_t i : members[r]) out[i] = piece[i];
  });
  return out;
}

bool in_gamma0(int xi1, int xi2) { return xi2 > -2 * xi1 && xi1 < -64 && xi2 > 0; }

ComplexField gamma0_restrict(const ComplexField& f) {
  return apply_multiplier(f, [](const LatticePoint& p) { return cplx(in_gamma0(p.xi1, p.xi2) ? 1.0 : 0.0); });
}

double almostradial_check(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d1(-4096, -65), d2(1, 16384);
  std::uniform_real_distribution<double> dt(0.0, 1.0 / 32.0);
  double worst = 0;
  std::size_t taken = 0;
  while (taken < samples) {
    int xi1 = d1(rng), xi2 = d2(rng);
    if (!in_gamma0(xi1, xi2)) continue;
    ++taken;
    Direction v = Direction::from_revolutions(dt(rng));
    double along = xi1 * v.perp_x() + xi2 * v.perp_y();
    worst = std::max(worst, std::hypot(static_cast<double>(xi1), static_cast<double>(xi2)) / along);
  }
  return worst;
}

double pointwise_reduction_check(const ComplexField& f, const VectorFieldLac& vf) {
  for (const auto& t : vf.range())
    if (t.empty() || t.front() < 15)
      throw ValidationError("pointwise reduction needs a near-horizontal field (lambda_1 <= 2^-15)");
  ComplexField g = apply_multiplier(f, [](const LatticePoint& p) {
    return cplx(in_gamma0(p.xi1, p.xi2) || in_gamma0(-p.xi1, -p.xi2) ? 0.0 : 1.0);
  });
  const std::size_t n = f.size();
  ScaleGrid grid = ScaleGrid::standard(n);
  RealField lhs = RealField::modulus(trunc_hilbert_field(g, vf, 1.0));
  RealField horiz = max_average(g, DirectionSet({Direction()}), grid).value;
  RealField strong = max_average(horiz.to_complex(), DirectionSet({Direction(Dyadic(1, 2))}), grid).value;
  RealField lac = max_average(g, vf.range_set(), grid).value;
  double peak = 0;
  for (std::size_t i = 0; i < n * n; ++i) peak = std::max(peak, strong[i] + lac[i]);
  double c = 0;
  for (std::size_t i = 0; i < n * n; ++i) {
    double rhs = strong[i] + lac[i];
    if (rhs > 1e-12 * peak) c = std::max(c, lhs[i] / rhs);
  }
  return c;
}

}  // namespace lacuna
