#include "lacuna/bump.hpp"

#include <cmath>

namespace lacuna::bump {

namespace {

// |t| = s * 2^e with s in [1, 2); the nonzero dilates are phi0(s), phi0(s/2).
struct Octave {
  double s;
  int e;
};

Octave octave(double t) {
  int e = 0;
  double m = std::frexp(std::abs(t), &e);  // m in [1/2, 1)
  return {2 * m, e - 1};
}

}  // namespace

double base(double t) {
  t = std::abs(t);
  if (t <= 0.5 || t >= 2.0) return 0.0;
  return std::exp(-1.0 / (t - 0.5) - 1.0 / (2.0 - t));
}

double phi(double t) {
  if (t == 0) return 0;
  Octave o = octave(t);
  double den = base(o.s) + base(o.s / 2);
  return base(t) / den;
}

double psi(double t) {
  if (t == 0) return 0;
  Octave o = octave(t);
  double a = base(o.s), b = base(o.s / 2);
  return base(t) / std::sqrt(a * a + b * b);
}

double low_pass(double t, int k) {
  if (t == 0) return 1.0;
  Octave o = octave(t);
  double a = base(o.s), b = base(o.s / 2);
  double sum = 0;
  if (o.e <= k) sum += a / (a + b);      // tau = e
  if (o.e + 1 <= k) sum += b / (a + b);  // tau = e + 1
  return sum;
}

}  // namespace lacuna::bump
