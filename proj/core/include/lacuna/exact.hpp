#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace lacuna {

// num / 2^log2den, kept normalized (num odd, or num = 0 with log2den = 0).
struct Dyadic {
  std::int64_t num = 0;
  int log2den = 0;

  Dyadic() = default;
  Dyadic(std::int64_t n, int l);

  // Every finite double is a dyadic rational; the conversion is exact.
  static Dyadic from_double(double x);

  double to_double() const;
  bool is_zero() const { return num == 0; }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.num == b.num && a.log2den == b.log2den;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
};

Dyadic abs(const Dyadic& a);
std::string to_string(const Dyadic& d);

// Exact ratio p / q with q > 0, gcd(p, q) = 1.
struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;

  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  // Accepts "p/q", an integer, or a decimal. Decimals snap to the nearest
  // rational with denominator <= 1e6 within 1e-12, else to the exact double.
  static Rational parse(std::string_view text);
  static Rational from_double(double x);

  double to_double() const { return static_cast<double>(p) / static_cast<double>(q); }
  bool is_power_of_two_reciprocal() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.p == b.p && a.q == b.q; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

std::string to_string(const Rational& r);

// floor(d * r / 2^-bits) * 2^-bits; used to keep generated angles exact.
Dyadic floor_scaled(const Dyadic& d, const Rational& r, int bits);

// r^e <= bound, exactly.
bool power_at_most(const Rational& r, int e, const Rational& bound);

// p * a >= k * b with integers p, k and dyadics a, b, exactly.
bool scaled_at_least(std::int64_t p, const Dyadic& a, std::int64_t k, const Dyadic& b);

}  // namespace lacuna
