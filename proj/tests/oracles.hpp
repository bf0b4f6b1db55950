#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance binary. Nothing here calls into the library's numerics.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <tuple>
#include <vector>

#include "lacuna/exact.hpp"
#include "lacuna/field.hpp"

namespace oracle {

inline long double dyadic_value(const lacuna::Dyadic& d) {
  return std::ldexp(static_cast<long double>(d.num), -d.log2den);
}

// Sign of xi.(cos 2 pi theta, sin 2 pi theta). Long double first; 50-digit
// decimal arithmetic when the long double value is too close to call.
inline int dot_sign(int xi1, int xi2, const lacuna::Dyadic& theta) {
  const long double t = dyadic_value(theta);
  const long double a = 2 * std::numbers::pi_v<long double> * t;
  long double s = xi1 * std::cos(a) + xi2 * std::sin(a);
  if (std::fabs(s) > 1e-14L * (std::abs(xi1) + std::abs(xi2) + 1)) return s > 0 ? 1 : -1;
  using dec = boost::multiprecision::cpp_dec_float_50;
  dec td = dec(theta.num);
  for (int i = 0; i < theta.log2den; ++i) td /= 2;
  dec ad = 2 * boost::math::constants::pi<dec>() * td;
  dec sd = dec(xi1) * cos(ad) + dec(xi2) * sin(ad);
  if (abs(sd) < dec("1e-40")) return 0;
  return sd > 0 ? 1 : -1;
}

// int_0^x sin(w t)/t dt by adaptive Gauss-Kronrod over half periods of sin(w t).
inline double sine_integral_scaled(double w, double x) {
  if (x == 0 || w == 0) return 0;
  if (x < 0) return -sine_integral_scaled(w, -x);
  auto f = [w](double t) { return t == 0 ? w : std::sin(w * t) / t; };
  const double half = std::numbers::pi / std::abs(w);
  double acc = 0;
  for (double a = 0; a < x; a += half) {
    double b = std::min(a + half, x);
    acc += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 10, 1e-15);
  }
  return w < 0 ? -acc : acc;
}

inline double sine_integral(double x) { return sine_integral_scaled(1.0, x); }

// Multiplier of f -> int_{|t|>eps} f(x + t v) dt / t at s = xi.v:
// 2i int_eps^inf sin(2 pi s t)/t dt = i (pi - 2 int_0^eps sin(2 pi s t)/t dt) sgn(s).
inline std::complex<double> truncated_multiplier(double eps, double s) {
  if (s == 0) return 0.0;
  double inner = sine_integral_scaled(2 * std::numbers::pi * std::abs(s), eps);
  return {0.0, (std::numbers::pi - 2 * inner) * (s > 0 ? 1 : -1)};
}

// Trigonometric polynomial with a handful of low frequencies, evaluated
// anywhere on the torus from its coefficients.
struct TrigPoly {
  std::vector<std::tuple<int, int, std::complex<double>>> terms;

  std::complex<double> operator()(double x, double y) const {
    std::complex<double> acc = 0;
    for (const auto& [a, b, c] : terms) acc += c * std::polar(1.0, 2 * std::numbers::pi * (a * x + b * y));
    return acc;
  }
  lacuna::ComplexField sample(std::size_t n) const {
    lacuna::ComplexField f(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) f(r, c) = (*this)(static_cast<double>(c) / n, static_cast<double>(r) / n);
    return f;
  }
};

// p.v. int_{|t|<=eps} g(x + t v) dt / t by the midpoint rule on (0, eps],
// pairing each node t_m with -t_m.
inline std::complex<double> pv_oracle(const TrigPoly& g, double x, double y, double theta, double eps, int nodes) {
  const double vx = std::cos(2 * std::numbers::pi * theta), vy = std::sin(2 * std::numbers::pi * theta);
  const double dt = eps / nodes;
  std::complex<double> acc = 0;
  for (int m = 0; m < nodes; ++m) {
    double t = (m + 0.5) * dt;
    acc += (g(x + t * vx, y + t * vy) - g(x - t * vx, y - t * vy)) / t;
  }
  return acc * dt;
}

}  // namespace oracle
