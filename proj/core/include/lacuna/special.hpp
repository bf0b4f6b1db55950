#pragma once

namespace lacuna {

// Si(x) = integral_0^x sin(t)/t dt, odd in x, absolute accuracy ~1e-15.
double sine_integral(double x);

}  // namespace lacuna
