#include "lacuna/special.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace lacuna {

namespace {

double si_series(double x) {
  // sum_k (-1)^k x^(2k+1) / ((2k+1) (2k+1)!)
  double term = x, sum = x;
  const double x2 = x * x;
  for (int k = 1; k < 60; ++k) {
    term *= -x2 / ((2.0 * k) * (2.0 * k + 1));
    double add = term / (2.0 * k + 1);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double si_continued_fraction(double x) {
  // E1(ix) = -Ci(x) + i(Si(x) - pi/2), by modified Lentz on the continued
  // fraction e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...))).
  using c = std::complex<double>;
  const double tiny = 1e-300;
  c b(1.0, x);
  c cc = 1.0 / tiny;
  c d = 1.0 / b;
  c h = d;
  for (int i = 2; i < 200; ++i) {
    double a = -static_cast<double>((i - 1) * (i - 1));
    b += 2.0;
    d = 1.0 / (a * d + b);
    cc = b + a / cc;
    c del = cc * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
  }
  h *= c(std::cos(x), -std::sin(x));
  return std::numbers::pi / 2 + h.imag();
}

}  // namespace

double sine_integral(double x) {
  if (x < 0) return -sine_integral(-x);
  if (x == 0) return 0;
  return x < 6.0 ? si_series(x) : si_continued_fraction(x);
}

}  // namespace lacuna
