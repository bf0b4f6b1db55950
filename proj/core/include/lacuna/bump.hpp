#pragma once

namespace lacuna {

// Smooth dyadic profiles, evaluated in closed form. The base bump is
// exp(-1/(t - 1/2)) exp(-1/(2 - t)) on (1/2, 2); at most two dyadic dilates
// overlap any t, so the normalizing sums have two terms.
namespace bump {

double base(double t);
// sum_k phi(2^-k t) = 1 for t != 0.
double phi(double t);
// sum_k psi(2^-k t)^2 = 1 for t != 0.
double psi(double t);
// sum over tau <= k of phi(2^-tau t); equals 1 at t = 0.
double low_pass(double t, int k);

}  // namespace bump

}  // namespace lacuna
