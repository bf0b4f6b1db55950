#include "lacuna/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <random>

#include "lacuna/errors.hpp"
#include "lacuna/multipliers.hpp"
#include "lacuna/parallel.hpp"

namespace lacuna {

namespace {

// Branches evaluated together; fixed so that reductions never depend on the
// thread count.
constexpr std::size_t kBlock = 8;

struct Family {
  std::size_t count = 1;
  std::function<SpectralField(std::size_t)> multiplier;
  bool on_modulus = false;
  bool identity = false;
  std::optional<std::vector<int>> labels;  // fixed branch per point: a linear operator
};

SpectralField sample_multiplier(std::size_t n, const Multiplier& m) {
  SpectralField s(n);
  for (auto p : FrequencyLattice(n)) s[p.index] = m(p);
  return s;
}

const DirectionSet& require_set(const OperatorSpec& op) {
  if (op.set.empty()) throw ValidationError("operator " + op.id + " needs a non-empty direction set");
  return op.set;
}

Family family_of(const OperatorSpec& op, std::size_t n) {
  Family fam;
  const ScaleGrid grid = op.scales ? *op.scales : ScaleGrid::standard(n);
  if (op.id == "identity") {
    fam.identity = true;
  } else if (op.id == "hilbert_dir") {
    Direction v = op.dir;
    fam.multiplier = [n, v](std::size_t) { return sample_multiplier(n, hilbert_multiplier(v)); };
  } else if (op.id == "half_plane") {
    Direction v = op.dir;
    fam.multiplier = [n, v](std::size_t) { return sample_multiplier(n, half_plane_multiplier(v)); };
  } else if (op.id == "signed_cone_sum") {
    const DirectionSet& set = require_set(op);
    if (op.signs.size() != set.size())
      throw ValidationError("signed_cone_sum needs " + std::to_string(set.size()) + " signs, got " +
                            std::to_string(op.signs.size()));
    for (int s : op.signs)
      if (s < -1 || s > 1) throw ValidationError("cone signs must lie in {-1, 0, 1}");
    auto labels = std::make_shared<std::vector<int>>(cone_labels(n, set));
    std::vector<int> signs = op.signs;
    fam.multiplier = [n, labels, signs](std::size_t) {
      SpectralField s(n);
      for (std::size_t i = 0; i < s.count(); ++i)
        if ((*labels)[i] >= 0) s[i] = static_cast<double>(signs[static_cast<std::size_t>((*labels)[i])]);
      return s;
    };
  } else if (op.id == "trunc_hilbert_field") {
    if (!op.field) throw ValidationError("trunc_hilbert_field needs a vector field");
    if (op.field->grid() != n) throw ValidationError("field and vector field grids differ");
    if (!(op.eps > 0) || op.eps > 1) throw ValidationError("truncation radius must lie in (0, 1]");
    auto range = std::make_shared<std::vector<std::vector<int>>>(op.field->range());
    double eps = op.eps;
    fam.count = range->size();
    fam.labels = op.field->range_index();
    fam.multiplier = [n, range, eps](std::size_t r) {
      Direction w(VectorFieldLac::angle_of((*range)[r]));
      return sample_multiplier(n, trunc_complement_multiplier(w, eps));
    };
  } else if (op.id == "max_hilbert" || op.id == "max_hilbert_plus") {
    const DirectionSet set = require_set(op);
    bool plus = op.id == "max_hilbert_plus";
    fam.count = set.size();
    fam.multiplier = [n, set, plus](std::size_t j) {
      return sample_multiplier(n, plus ? half_plane_multiplier(set[j]) : hilbert_multiplier(set[j]));
    };
  } else if (op.id == "max_average") {
    const DirectionSet set = require_set(op);
    fam.count = set.size() * grid.size();
    fam.on_modulus = true;
    fam.multiplier = [n, set, grid](std::size_t b) {
      return average_kernel(n, set[b / grid.size()], grid.radii()[b % grid.size()]);
    };
  } else if (op.id == "max_trunc_hilbert") {
    const DirectionSet set = require_set(op);
    fam.count = set.size() * grid.size();
    fam.multiplier = [n, set, grid](std::size_t b) {
      return sample_multiplier(n, trunc_multiplier(set[b / grid.size()], grid.radii()[b % grid.size()]));
    };
  } else {
    throw ValidationError("unknown operator '" + op.id + "'");
  }
  return fam;
}

ComplexField modulus_of(const ComplexField& f) {
  ComplexField out(f.size());
  for (std::size_t i = 0; i < f.count(); ++i) out[i] = std::abs(f[i]);
  return out;
}

// |z|^(p-2) z
ComplexField duality_map(const ComplexField& f, double p) {
  ComplexField out(f.size());
  for (std::size_t i = 0; i < f.count(); ++i) {
    double a = std::abs(f[i]);
    out[i] = a == 0 ? cplx(0.0) : (p == 2 ? f[i] : std::pow(a, p - 2) * f[i]);
  }
  return out;
}

ComplexField second_quadrant_part(const ComplexField& f) {
  return apply_multiplier(f, [](const LatticePoint& p) { return cplx(in_open_second_quadrant(p.xi1, p.xi2) ? 1 : 0); });
}

bool is_set_operator(const std::string& id) {
  return id == "max_hilbert" || id == "max_hilbert_plus" || id == "max_average" || id == "max_trunc_hilbert";
}

bool is_hilbert_type(const std::string& id) { return id == "max_hilbert" || id == "max_hilbert_plus"; }

}  // namespace

const std::vector<std::string>& registered_operators() {
  static const std::vector<std::string> ids{"identity",         "hilbert_dir", "half_plane",
                                            "signed_cone_sum",  "trunc_hilbert_field", "max_hilbert",
                                            "max_hilbert_plus", "max_average", "max_trunc_hilbert"};
  return ids;
}

bool is_registered(std::string_view id) {
  const auto& ids = registered_operators();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

Linearization linearize(const OperatorSpec& op, const ComplexField& f) {
  const std::size_t n = f.size();
  auto fam = std::make_shared<Family>(family_of(op, n));
  if (fam->identity) return {f, [](const ComplexField& g) { return g; }};

  SpectralField s = forward(fam->on_modulus ? modulus_of(f) : f);
  ComplexField image(n);
  auto sel = std::make_shared<std::vector<int>>(n * n, 0);
  std::vector<double> best(n * n, -1.0);
  if (fam->labels) *sel = *fam->labels;

  std::vector<ComplexField> block(kBlock);
  for (std::size_t start = 0; start < fam->count; start += kBlock) {
    const std::size_t m = std::min(kBlock, fam->count - start);
    parallel_for(m, [&](std::size_t i) {
      SpectralField k = fam->multiplier(start + i);
      for (std::size_t x = 0; x < k.count(); ++x) k[x] *= s[x];
      block[i] = inverse(k);
    });
    for (std::size_t i = 0; i < m; ++i) {
      const int b = static_cast<int>(start + i);
      for (std::size_t x = 0; x < n * n; ++x) {
        if (fam->labels) {
          if ((*sel)[x] == b) image[x] = block[i][x];
        } else if (double a = std::abs(block[i][x]); a > best[x]) {
          best[x] = a;
          image[x] = block[i][x];
          (*sel)[x] = b;
        }
      }
    }
  }

  auto adjoint = [fam, sel, n](const ComplexField& g) {
    std::vector<std::vector<std::size_t>> members(fam->count);
    for (std::size_t x = 0; x < n * n; ++x) members[static_cast<std::size_t>((*sel)[x])].push_back(x);
    SpectralField acc(n);
    std::vector<SpectralField> part(kBlock);
    for (std::size_t start = 0; start < fam->count; start += kBlock) {
      const std::size_t m = std::min(kBlock, fam->count - start);
      parallel_for(m, [&](std::size_t i) {
        const auto& pts = members[start + i];
        if (pts.empty()) {
          part[i] = SpectralField();
          return;
        }
        ComplexField masked(n);
        for (std::size_t x : pts) masked[x] = g[x];
        SpectralField k = fam->multiplier(start + i);
        SpectralField gs = forward(masked);
        for (std::size_t x = 0; x < k.count(); ++x) k[x] = std::conj(k[x]) * gs[x];
        part[i] = std::move(k);
      });
      for (std::size_t i = 0; i < m; ++i)
        if (!part[i].empty())
          for (std::size_t x = 0; x < acc.count(); ++x) acc[x] += part[i][x];
    }
    return inverse(acc);
  };
  return {std::move(image), adjoint};
}

NormEstimate estimate_norm_lower(const OperatorSpec& op, std::size_t n, const EstimateOptions& options) {
  if (!is_registered(op.id)) throw ValidationError("unknown operator '" + op.id + "'");
  if (!is_valid_grid_size(n)) throw ValidationError("grid size must be a power of two >= 32");
  const double p = options.p;
  if (!(p > 1) || std::isinf(p)) throw ValidationError("norm estimates need 1 < p < infinity");
  if (options.ascent_iters < 0) throw ValidationError("ascent iterations must be >= 0");
  const bool modulus_only = op.id == "max_average";
  const double p_dual = p / (p - 1);

  NormEstimate est;
  est.op = op.id;
  est.p = p;
  est.grid = n;
  est.iters = options.ascent_iters;
  est.seed = options.seed;
  est.set_descriptor = op.set.empty() ? "-" : std::to_string(op.set.size()) + " directions";

  auto project = [&](ComplexField f) {
    if (options.second_quadrant) f = second_quadrant_part(f);
    if (modulus_only) f = modulus_of(f);
    return f;
  };
  auto run_probe = [&](ComplexField f) {
    ++est.probes;
    for (int it = 0;; ++it) {
      double norm = lp_norm(f, p);
      if (!(norm > 0)) {
        est.history.push_back(est.value);
        return;
      }
      Linearization lin = linearize(op, f);
      double ratio = lp_norm(lin.image, p) / norm;
      if (ratio > est.value || est.best_probe.empty()) {
        est.value = std::max(est.value, ratio);
        est.best_probe = f;
      }
      est.history.push_back(est.value);
      if (it == options.ascent_iters) return;
      ComplexField next = project(duality_map(lin.adjoint(duality_map(lin.image, p)), p_dual));
      double scale = lp_norm(next, p);
      if (!(scale > 0)) return;
      f = (1.0 / scale) * next;
    }
  };
  for (const auto& probe : options.extra_probes) {
    if (probe.size() != n) throw ValidationError("probe grid differs from the estimate grid");
    run_probe(modulus_only ? modulus_of(probe) : probe);
  }
  for (std::size_t k = 0; k < options.random_probes; ++k) {
    ComplexField f = random_probe(n, derive_seed(options.seed, k), options.second_quadrant);
    run_probe(modulus_only ? modulus_of(f) : f);
  }
  return est;
}

std::vector<GrowthRow> growth_experiment(const GrowthConfig& config) {
  if (!is_valid_grid_size(config.grid)) throw ValidationError("grid size must be a power of two >= 32");
  std::vector<std::size_t> sizes = config.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  const std::size_t n = config.grid;

  struct Series {
    std::string order;
    std::function<DirectionSet(std::size_t)> make;
  };
  std::vector<Series> series;
  for (int d : config.orders)
    series.push_back({std::to_string(d), [&, d](std::size_t k) { return experiment_set(d, config.lambda, k); }});
  if (config.equispaced) series.push_back({"eq", [](std::size_t k) { return equispaced(k); }});

  std::vector<GrowthRow> rows;
  for (const auto& id : config.operators) {
    if (!is_set_operator(id)) throw ValidationError("growth experiments need a set operator, got '" + id + "'");
    for (const auto& s : series) {
      ComplexField carried;
      for (std::size_t k : sizes) {
        auto t0 = std::chrono::steady_clock::now();
        OperatorSpec op;
        op.id = id;
        op.set = s.make(k);
        EstimateOptions opt;
        opt.p = config.p;
        opt.random_probes = config.random_probes;
        opt.ascent_iters = config.ascent_iters;
        opt.seed = config.seed;
        opt.second_quadrant = is_hilbert_type(id);
        if (config.structured) {
          if (id == "max_average") {
            opt.extra_probes.push_back(gaussian(n, 0.5, 0.5, 1.0 / static_cast<double>(n)));
          } else {
            for (auto& f : structured_probes(n, op.set)) opt.extra_probes.push_back(std::move(f));
          }
        }
        if (!carried.empty()) opt.extra_probes.push_back(carried);
        NormEstimate est = estimate_norm_lower(op, n, opt);
        carried = est.best_probe;
        auto t1 = std::chrono::steady_clock::now();
        GrowthRow row;
        row.op = id;
        row.p = config.p;
        row.order = s.order;
        row.lambda = s.order == "eq" ? "-" : to_string(config.lambda);
        row.set_size = op.set.size();
        row.grid = n;
        row.seed = config.seed;
        row.estimate = est.value;
        row.iters = est.iters;
        row.runtime_ms = config.timing ? std::chrono::duration<double, std::milli>(t1 - t0).count() : 0.0;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

const std::vector<std::string>& registered_suites() {
  static const std::vector<std::string> ids{"sfe", "ss_signs", "cww", "fs", "t2"};
  return ids;
}

std::vector<SuiteRow> ratio_suite(const SuiteConfig& config) {
  const auto& suites = registered_suites();
  if (std::find(suites.begin(), suites.end(), config.suite) == suites.end())
    throw ValidationError("unknown suite '" + config.suite + "'");
  if (!is_valid_grid_size(config.grid)) throw ValidationError("grid size must be a power of two >= 32");
  for (double p : config.ps)
    if (!(p > 1) || std::isinf(p)) throw ValidationError("suite exponents need 1 < p < infinity");
  const std::size_t n = config.grid;
  std::vector<SuiteRow> rows;
  auto push = [&](const std::string& instance, std::size_t size, double p, std::uint64_t seed, double lhs,
                  double rhs) {
    rows.push_back({config.suite, instance, size, p, seed, lhs, rhs, rhs == 0 ? 0.0 : lhs / rhs});
  };

  if (config.suite == "t2") {
    for (std::size_t i = 0; i < config.fields.size(); ++i) {
      VectorFieldLac vf = build_vd(n, parse_field_spec(config.fields[i]));
      for (const auto& t : vf.range())
        if (t.empty() || t.front() < 15)
          throw ValidationError("t2 fields must be near-horizontal (lambda_1 <= 2^-15)");
      OperatorSpec op;
      op.id = "trunc_hilbert_field";
      op.eps = 1.0;
      op.field = vf;
      for (double p : config.ps) {
        EstimateOptions opt;
        opt.p = p;
        opt.random_probes = config.corpus;
        opt.ascent_iters = config.ascent_iters;
        opt.seed = config.seed;
        NormEstimate est = estimate_norm_lower(op, n, opt);
        double rhs = lp_norm(est.best_probe, p);
        double lhs = lp_norm(linearize(op, est.best_probe).image, p);
        push("field" + std::to_string(i) + "/D" + std::to_string(vf.order()), vf.range().size(), p, config.seed, lhs,
             rhs);
      }
    }
    return rows;
  }

  std::vector<ComplexField> corpus;
  for (std::size_t c = 0; c < config.corpus; ++c) corpus.push_back(random_probe(n, derive_seed(config.seed, c), true));
  const ScaleRange scales = radial_scale_range(n);
  const ScaleGrid grid = ScaleGrid::standard(n);

  for (int d : config.orders)
    for (std::size_t size : config.sizes) {
      DirectionSet set = experiment_set(d, config.lambda, size);
      const std::string tag = "D" + std::to_string(d);
      for (std::size_t c = 0; c < corpus.size(); ++c) {
        const ComplexField& f = corpus[c];
        const std::uint64_t fseed = derive_seed(config.seed, c);
        const std::string inst = tag + "/f" + std::to_string(c);
        if (config.suite == "sfe" || config.suite == "cww") {
          RealField sq = config.suite == "sfe" ? square_fn_sfe(f, set, scales) : square_fn_cww(f, set, scales);
          for (double p : config.ps) push(inst, set.size(), p, config.seed, lp_norm(sq, p), lp_norm(f, p));
        } else if (config.suite == "ss_signs") {
          for (std::size_t s = 0; s < config.sign_patterns; ++s) {
            const std::uint64_t sseed = derive_seed(fseed, s + 1);
            std::mt19937_64 rng(sseed);
            std::vector<int> signs(set.size());
            for (auto& e : signs) e = static_cast<int>(rng() % 3) - 1;
            ComplexField g = signed_cone_sum(f, set, signs);
            for (double p : config.ps)
              push(inst + "/s" + std::to_string(s), set.size(), p, config.seed, lp_norm(g, p), lp_norm(f, p));
          }
        } else {  // fs
          std::vector<ComplexField> h;
          for (std::size_t j = 0; j < set.size(); ++j) h.push_back(random_probe(n, derive_seed(fseed, j + 1), false));
          for (double p : config.ps) {
            MixedNorms m = fs_vector_maximal(h, set, grid, p, config.q);
            push(inst, set.size(), p, config.seed, m.lhs, m.rhs);
          }
        }
      }
    }
  return rows;
}

std::string run_experiment(const ExperimentConfig& config) {
  if (config.growth) return growth_csv(growth_experiment(*config.growth));
  if (config.suite) return suite_csv(ratio_suite(*config.suite));
  throw ValidationError("experiment config selects no experiment");
}

}  // namespace lacuna
