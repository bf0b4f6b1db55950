#include "lacuna/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lacuna/errors.hpp"

namespace lacuna {

bool is_valid_grid_size(std::size_t n) { return n >= 32 && (n & (n - 1)) == 0 && n <= (1u << 14); }

namespace detail {

template <class Tag>
Grid<Tag>::Grid(std::size_t n) : n_(n) {
  if (!is_valid_grid_size(n))
    throw ValidationError("grid size must be a power of two >= 32, got " + std::to_string(n));
  data_.assign(n * n, cplx{});
}

template <class Tag>
Grid<Tag>::Grid(std::size_t n, Buffer data) : n_(n), data_(std::move(data)) {
  if (!is_valid_grid_size(n))
    throw ValidationError("grid size must be a power of two >= 32, got " + std::to_string(n));
  if (data_.size() != n * n) throw ValidationError("field data length does not match N*N");
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ValidationError("field contains non-finite values");
}

template class Grid<SpatialTag>;
template class Grid<SpectralTag>;

}  // namespace detail

cplx coefficient(const SpectralField& s, int xi1, int xi2) {
  const std::size_t n = s.size();
  const int half = static_cast<int>(n / 2);
  if (xi1 < -half || xi1 >= half || xi2 < -half || xi2 >= half)
    throw ValidationError("frequency outside the lattice");
  return s(index_of_frequency(xi2, n), index_of_frequency(xi1, n));
}

RealField::RealField(std::size_t n, double fill) : n_(n), v_(n * n, fill) {}

double RealField::max() const { return v_.empty() ? 0.0 : *std::max_element(v_.begin(), v_.end()); }

ComplexField RealField::to_complex() const {
  ComplexField out(n_);
  for (std::size_t i = 0; i < v_.size(); ++i) out[i] = v_[i];
  return out;
}

RealField RealField::modulus(const ComplexField& f) {
  RealField out(f.size());
  for (std::size_t i = 0; i < f.count(); ++i) out.v_[i] = std::abs(f[i]);
  return out;
}

double LatticePoint::norm() const { return std::hypot(static_cast<double>(xi1), static_cast<double>(xi2)); }

namespace {

template <class Values>
double lp_of(Values values, std::size_t count, double p) {
  if (!(p > 1.0)) throw ValidationError("exponent must satisfy p > 1");
  if (std::isinf(p)) {
    double m = 0;
    for (double a : values) m = std::max(m, a);
    return m;
  }
  // Scale by the max to avoid overflow at large p.
  double m = 0;
  for (double a : values) m = std::max(m, a);
  if (m == 0) return 0;
  double s = 0;
  for (double a : values) s += std::pow(a / m, p);
  return m * std::pow(s / static_cast<double>(count), 1.0 / p);
}

struct AbsView {
  const ComplexField& f;
  struct It {
    const cplx* p;
    double operator*() const { return std::abs(*p); }
    It& operator++() {
      ++p;
      return *this;
    }
    bool operator!=(const It& o) const { return p != o.p; }
  };
  It begin() const { return {f.data()}; }
  It end() const { return {f.data() + f.count()}; }
};

}  // namespace

double lp_norm(const ComplexField& f, double p) { return lp_of(AbsView{f}, f.count(), p); }

double lp_norm(const RealField& f, double p) {
  std::vector<double> a(f.values().begin(), f.values().end());
  for (auto& x : a) x = std::abs(x);
  return lp_of(a, a.size(), p);
}

ComplexField plane_wave(std::size_t n, int xi1, int xi2) {
  ComplexField f(n);
  const int half = static_cast<int>(n / 2);
  if (xi1 < -half || xi1 >= half || xi2 < -half || xi2 >= half)
    throw ValidationError("plane wave frequency outside the lattice");
  // Phase reduced mod n in integers keeps the samples exact to rounding.
  const long long nn = static_cast<long long>(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      long long k = (static_cast<long long>(xi1) * static_cast<long long>(c) +
                     static_cast<long long>(xi2) * static_cast<long long>(r)) % nn;
      if (k < 0) k += nn;
      double phase = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      f(r, c) = {std::cos(phase), std::sin(phase)};
    }
  return f;
}

ComplexField gaussian(std::size_t n, double c1, double c2, double sigma) {
  if (!(sigma > 0)) throw ValidationError("gaussian width must be positive");
  ComplexField f(n);
  const double h = 1.0 / static_cast<double>(n);
  auto wrap = [](double d) { return d - std::round(d); };
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      double d1 = wrap(static_cast<double>(c) * h - c1), d2 = wrap(static_cast<double>(r) * h - c2);
      f(r, c) = std::exp(-(d1 * d1 + d2 * d2) / (2 * sigma * sigma));
    }
  return f;
}

ComplexField indicator(std::size_t n, double x1_lo, double x1_hi, double x2_lo, double x2_hi) {
  ComplexField f(n);
  const double h = 1.0 / static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      double x1 = static_cast<double>(c) * h, x2 = static_cast<double>(r) * h;
      if (x1 >= x1_lo && x1 < x1_hi && x2 >= x2_lo && x2 < x2_hi) f(r, c) = 1.0;
    }
  return f;
}

ComplexField random_bandlimited(std::size_t n, std::uint64_t seed, const FrequencyPredicate& support) {
  SpectralField s(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (auto pt : FrequencyLattice(n)) {
    if (!support(pt.xi1, pt.xi2)) continue;
    double re = normal(rng), im = normal(rng);
    s[pt.index] = {re, im};
  }
  return inverse(s);
}

bool in_open_second_quadrant(int xi1, int xi2) { return xi1 < 0 && xi2 > 0; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
  // splitmix64 finalizer over the combined state
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

ComplexField operator+(const ComplexField& a, const ComplexField& b) {
  ComplexField out(a.size());
  for (std::size_t i = 0; i < a.count(); ++i) out[i] = a[i] + b[i];
  return out;
}

ComplexField operator-(const ComplexField& a, const ComplexField& b) {
  ComplexField out(a.size());
  for (std::size_t i = 0; i < a.count(); ++i) out[i] = a[i] - b[i];
  return out;
}

ComplexField operator*(cplx s, const ComplexField& a) {
  ComplexField out(a.size());
  for (std::size_t i = 0; i < a.count(); ++i) out[i] = s * a[i];
  return out;
}

double max_abs_difference(const ComplexField& a, const ComplexField& b) {
  if (a.size() != b.size()) throw ValidationError("field sizes differ");
  double m = 0;
  for (std::size_t i = 0; i < a.count(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace lacuna
