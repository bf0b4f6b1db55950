#include "lacuna/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lacuna/bump.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/parallel.hpp"
#include "lacuna/special.hpp"

namespace lacuna {

namespace {

RealField real_part_clamped(const ComplexField& f) {
  RealField out(f.size());
  for (std::size_t i = 0; i < f.count(); ++i) out[i] = std::max(0.0, f[i].real());
  return out;
}

SpectralField modulus_spectrum(const ComplexField& f) {
  ComplexField a(f.size());
  for (std::size_t i = 0; i < f.count(); ++i) a[i] = std::abs(f[i]);
  return forward(a);
}

SpectralField pointwise_product(const SpectralField& a, const SpectralField& b) {
  SpectralField out(a.size());
  for (std::size_t i = 0; i < a.count(); ++i) out[i] = a[i] * b[i];
  return out;
}

}  // namespace

MaximalResult pointwise_sup(std::size_t n, std::size_t count, const std::function<RealField(std::size_t)>& branch) {
  if (count == 0) throw ValidationError("sup over an empty family");
  MaximalResult r{RealField(n, -1.0), std::vector<int>(n * n, 0)};
  const std::size_t chunk = std::max<std::size_t>(1, thread_cap());
  std::vector<RealField> vals(chunk);
  for (std::size_t start = 0; start < count; start += chunk) {
    const std::size_t m = std::min(chunk, count - start);
    parallel_for(m, [&](std::size_t i) { vals[i] = branch(start + i); });
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t x = 0; x < n * n; ++x)
        if (vals[i][x] > r.value[x]) {
          r.value[x] = vals[i][x];
          r.argmax[x] = static_cast<int>(start + i);
        }
  }
  return r;
}

ScaleGrid ScaleGrid::dyadic(std::size_t n, double max_radius) { return geometric(n, 1, max_radius); }

ScaleGrid ScaleGrid::geometric(std::size_t n, int per_octave, double max_radius) {
  if (per_octave < 1) throw ValidationError("scale grid needs at least one radius per octave");
  const double h = 1.0 / static_cast<double>(n);
  if (max_radius < h) throw ValidationError("largest radius is below one grid cell");
  ScaleGrid g;
  for (int i = 0;; ++i) {
    double r = h * std::exp2(static_cast<double>(i) / per_octave);
    if (r > max_radius * (1 + 1e-12)) break;
    g.radii_.push_back(r);
  }
  return g;
}

MaximalResult max_hilbert(const ComplexField& f, const DirectionSet& set, bool plus) {
  if (set.empty()) throw ValidationError("maximal operator over an empty direction set");
  SpectralField s = forward(f);
  return pointwise_sup(f.size(), set.size(), [&](std::size_t j) {
    Multiplier m = plus ? half_plane_multiplier(set[j]) : hilbert_multiplier(set[j]);
    return RealField::modulus(inverse(multiply(s, m)));
  });
}

SpectralField average_kernel(std::size_t n, const Direction& v, double eps) {
  if (!(eps > 0)) throw ValidationError("averaging radius must be positive");
  const double nd = static_cast<double>(n);
  const auto steps = static_cast<long>(std::ceil(4.0 * eps * nd - 1e-9));
  const double dt = 2.0 * eps / static_cast<double>(steps);
  ComplexField taps(n);
  auto add = [&](long r, long c, double w) {
    if (w == 0) return;
    const long ni = static_cast<long>(n);
    r = ((r % ni) + ni) % ni;
    c = ((c % ni) + ni) % ni;
    taps(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) += w;
  };
  for (long i = 0; i <= steps; ++i) {
    double t = -eps + static_cast<double>(i) * dt;
    double w = dt / (2.0 * eps) * ((i == 0 || i == steps) ? 0.5 : 1.0);
    double dx = t * v.cos() * nd, dy = t * v.sin() * nd;
    double c0 = std::floor(dx), r0 = std::floor(dy);
    double fx = dx - c0, fy = dy - r0;
    auto ci = static_cast<long>(c0), ri = static_cast<long>(r0);
    add(ri, ci, w * (1 - fx) * (1 - fy));
    add(ri, ci + 1, w * fx * (1 - fy));
    add(ri + 1, ci, w * (1 - fx) * fy);
    add(ri + 1, ci + 1, w * fx * fy);
  }
  // sum_o w_o g(x + o) has multiplier sum_o w_o e(xi.o / N) = N^2 conj(F[w]).
  SpectralField k = forward(taps);
  const double nn = nd * nd;
  for (auto& z : k.values()) z = nn * std::conj(z);
  return k;
}

ComplexField directional_average(const ComplexField& f, const Direction& v, double eps) {
  return real_part_clamped(inverse(pointwise_product(modulus_spectrum(f), average_kernel(f.size(), v, eps))))
      .to_complex();
}

MaximalResult max_average(const ComplexField& f, const DirectionSet& set, const ScaleGrid& grid) {
  if (set.empty()) throw ValidationError("maximal operator over an empty direction set");
  SpectralField a = modulus_spectrum(f);
  const std::size_t radii = grid.size();
  return pointwise_sup(f.size(), set.size() * radii, [&](std::size_t b) {
    const auto& v = set[b / radii];
    double eps = grid.radii()[b % radii];
    return real_part_clamped(inverse(pointwise_product(a, average_kernel(f.size(), v, eps))));
  });
}

Multiplier trunc_multiplier(const Direction& v, double eps) {
  return [v, eps](const LatticePoint& p) {
    int s = dot_sign(p.xi1, p.xi2, v);
    if (s == 0) return cplx(0.0);
    double sigma = std::abs(p.dot(v.cos(), v.sin()));
    return cplx(0.0, (std::numbers::pi - 2.0 * sine_integral(2.0 * std::numbers::pi * eps * sigma)) * s);
  };
}

Multiplier trunc_complement_multiplier(const Direction& v, double eps) {
  return [v, eps](const LatticePoint& p) {
    int s = dot_sign(p.xi1, p.xi2, v);
    if (s == 0) return cplx(0.0);
    double sigma = std::abs(p.dot(v.cos(), v.sin()));
    return cplx(0.0, 2.0 * sine_integral(2.0 * std::numbers::pi * eps * sigma) * s);
  };
}

ComplexField trunc_hilbert_dir(const ComplexField& f, const Direction& v, double eps) {
  if (!(eps > 0)) throw ValidationError("truncation radius must be positive");
  return apply_multiplier(f, trunc_multiplier(v, eps));
}

MaximalResult max_trunc_hilbert(const ComplexField& f, const DirectionSet& set, const ScaleGrid& grid) {
  if (set.empty()) throw ValidationError("maximal operator over an empty direction set");
  SpectralField s = forward(f);
  const std::size_t radii = grid.size();
  return pointwise_sup(f.size(), set.size() * radii, [&](std::size_t b) {
    return RealField::modulus(inverse(multiply(s, trunc_multiplier(set[b / radii], grid.radii()[b % radii]))));
  });
}

CotlarResult cotlar_check(const ComplexField& f, const Direction& v, const ScaleGrid& grid) {
  DirectionSet single({v});
  CotlarResult r;
  r.lhs = max_trunc_hilbert(f, single, grid).value;
  const ComplexField h = hilbert_dir(f, v);
  RealField mh = max_average(h, single, grid).value;
  RealField mf = max_average(f, single, grid).value;
  // The radius grid stops at one cell; the r -> 0 limit of the averages is
  // the point value, so it joins the sup. Without it, points far from the
  // support of f fit C to interpolation error over a vanishing M_v f.
  for (std::size_t i = 0; i < mf.count(); ++i) {
    mh[i] = std::max(mh[i], std::abs(h[i]));
    mf[i] = std::max(mf[i], std::abs(f[i]));
  }
  const double floor = 1e-12 * std::max(mf.max(), 1e-300);
  double c = 0;
  for (std::size_t i = 0; i < mf.count(); ++i) {
    double excess = r.lhs[i] - mh[i];
    if (excess <= 0) continue;
    if (mf[i] > floor) c = std::max(c, excess / mf[i]);
  }
  r.constant = c;
  r.rhs = RealField(f.size());
  for (std::size_t i = 0; i < mf.count(); ++i) r.rhs[i] = mh[i] + c * mf[i];
  return r;
}

RealField square_fn_cww(const ComplexField& f, const std::vector<Multiplier>& family, ScaleRange k) {
  if (family.empty()) throw ValidationError("square function over an empty family");
  SpectralField s = forward(f);
  RealField acc(f.size());
  for (int scale = k.first; scale <= k.second; ++scale) {
    SpectralField sk = multiply(s, [scale](const LatticePoint& p) {
      return cplx(bump::phi(std::ldexp(p.norm(), -scale)));
    });
    MaximalResult m = pointwise_sup(f.size(), family.size(),
                                    [&](std::size_t j) { return RealField::modulus(inverse(multiply(sk, family[j]))); });
    for (std::size_t i = 0; i < acc.count(); ++i) acc[i] += m.value[i] * m.value[i];
  }
  for (auto& a : acc.values()) a = std::sqrt(a);
  return acc;
}

RealField square_fn_cww(const ComplexField& f, const DirectionSet& set, ScaleRange k) {
  std::vector<Multiplier> family;
  for (const auto& v : set) family.push_back(half_plane_multiplier(v));
  return square_fn_cww(f, family, k);
}

RealField square_fn_sfe(const ComplexField& f, const DirectionSet& set, ScaleRange k) {
  if (set.empty()) throw ValidationError("square function over an empty direction set");
  RealField acc(f.size());
  for (int scale = k.first; scale <= k.second; ++scale) {
    ComplexField sk = lp_radial(f, scale);
    RealField h = max_hilbert(sk, set, true).value;
    for (std::size_t i = 0; i < acc.count(); ++i) acc[i] += h[i] * h[i];
  }
  for (auto& a : acc.values()) a = std::sqrt(a);
  return acc;
}

MixedNorms fs_vector_maximal(const std::vector<ComplexField>& h, const DirectionSet& set, const ScaleGrid& grid,
                             double p, double q) {
  if (h.size() != set.size())
    throw ValidationError("family has " + std::to_string(h.size()) + " fields for " + std::to_string(set.size()) +
                          " directions");
  if (!(p > 1) || !(q > 1) || std::isinf(p) || std::isinf(q))
    throw ValidationError("mixed norm exponents must satisfy 1 < p, q < infinity");
  if (h.empty()) return {};
  const std::size_t n = h.front().size();
  std::vector<RealField> maxed(h.size());
  parallel_for(h.size(), [&](std::size_t j) { maxed[j] = max_average(h[j], DirectionSet({set[j]}), grid).value; });
  RealField l(n), r(n);
  for (std::size_t j = 0; j < h.size(); ++j)
    for (std::size_t i = 0; i < n * n; ++i) {
      l[i] += std::pow(maxed[j][i], q);
      r[i] += std::pow(std::abs(h[j][i]), q);
    }
  for (std::size_t i = 0; i < n * n; ++i) {
    l[i] = std::pow(l[i], 1 / q);
    r[i] = std::pow(r[i], 1 / q);
  }
  return {lp_norm(l, p), lp_norm(r, p)};
}

}  // namespace lacuna
