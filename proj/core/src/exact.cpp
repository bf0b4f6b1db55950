#include "lacuna/exact.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <charconv>
#include <cmath>
#include <numeric>

#include "lacuna/errors.hpp"

namespace lacuna {

namespace {

using big = boost::multiprecision::cpp_int;

big scaled(const Dyadic& d, int to_log2den) {
  big v = d.num;
  return v << (to_log2den - d.log2den);
}

Dyadic from_big(big num, int log2den) {
  if (num == 0) return {};
  while (log2den > 0 && (num & 1) == 0) {
    num >>= 1;
    --log2den;
  }
  if (boost::multiprecision::abs(num) > big(std::numeric_limits<std::int64_t>::max()))
    throw ValidationError("dyadic value out of range: log2 denominator " + std::to_string(log2den));
  return Dyadic(static_cast<std::int64_t>(num), log2den);
}

}  // namespace

Dyadic::Dyadic(std::int64_t n, int l) : num(n), log2den(l) {
  if (num == 0) {
    log2den = 0;
    return;
  }
  while (log2den > 0 && (num % 2) == 0) {
    num /= 2;
    --log2den;
  }
  while (log2den < 0) {
    if (std::abs(num) > (std::numeric_limits<std::int64_t>::max() >> 1))
      throw ValidationError("dyadic value out of range");
    num *= 2;
    ++log2den;
  }
}

Dyadic Dyadic::from_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("non-finite angle");
  if (x == 0.0) return {};
  int e = 0;
  double m = std::frexp(x, &e);  // x = m * 2^e, 0.5 <= |m| < 1
  auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  return from_big(big(mant), 53 - e);
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num), -log2den); }

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  int l = std::max(a.log2den, b.log2den);
  return from_big(scaled(a, l) + scaled(b, l), l);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  int l = std::max(a.log2den, b.log2den);
  return from_big(scaled(a, l) - scaled(b, l), l);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int l = std::max(a.log2den, b.log2den);
  big x = scaled(a, l), y = scaled(b, l);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Dyadic abs(const Dyadic& a) { return a.num < 0 ? Dyadic(-a.num, a.log2den) : a; }

std::string to_string(const Dyadic& d) {
  return std::to_string(d.num) + "/2^" + std::to_string(d.log2den);
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  p = num / g;
  q = den / g;
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("non-finite ratio");
  // Continued fraction convergents; stop at the first one within tolerance.
  double rem = x;
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(rem);
    if (std::abs(a) > 1e12) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > 1000000) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= 1e-12) return Rational(h1, k1);
    double frac = rem - a;
    if (frac == 0.0) break;
    rem = 1.0 / frac;
  }
  Dyadic d = Dyadic::from_double(x);
  if (d.log2den > 62) throw ValidationError("ratio not representable exactly: " + std::to_string(x));
  return Rational(d.num, std::int64_t{1} << d.log2den);
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    auto a = trim(text.substr(0, slash)), b = trim(text.substr(slash + 1));
    std::int64_t num = 0, den = 0;
    auto r1 = std::from_chars(a.data(), a.data() + a.size(), num);
    auto r2 = std::from_chars(b.data(), b.data() + b.size(), den);
    if (r1.ec != std::errc{} || r1.ptr != a.data() + a.size() || r2.ec != std::errc{} ||
        r2.ptr != b.data() + b.size())
      throw ValidationError("cannot parse ratio '" + std::string(text) + "'");
    return Rational(num, den);
  }
  double x = 0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), x);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size() || text.empty())
    throw ValidationError("cannot parse ratio '" + std::string(text) + "'");
  return from_double(x);
}

bool Rational::is_power_of_two_reciprocal() const { return p == 1 && q > 0 && (q & (q - 1)) == 0; }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  big x = big(a.p) * b.q, y = big(b.p) * a.q;
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const Rational& r) {
  if (r.q == 1) return std::to_string(r.p);
  return std::to_string(r.p) + "/" + std::to_string(r.q);
}

Dyadic floor_scaled(const Dyadic& d, const Rational& r, int bits) {
  // d * p / q at resolution 2^-bits, rounded toward -infinity.
  big num = big(d.num) * r.p;
  int shift = bits - d.log2den;
  if (shift >= 0)
    num <<= shift;
  else
    num = num >> -shift;  // only reached for coarse inputs; arithmetic shift floors
  big quotient = num / r.q;
  if (num % r.q != 0 && num < 0) quotient -= 1;
  return from_big(quotient, bits);
}

bool power_at_most(const Rational& r, int e, const Rational& bound) {
  big num = boost::multiprecision::pow(big(r.p), static_cast<unsigned>(e));
  big den = boost::multiprecision::pow(big(r.q), static_cast<unsigned>(e));
  return num * bound.q <= den * bound.p;
}

bool scaled_at_least(std::int64_t p, const Dyadic& a, std::int64_t k, const Dyadic& b) {
  int l = std::max(a.log2den, b.log2den);
  return big(p) * scaled(a, l) >= big(k) * scaled(b, l);
}

}  // namespace lacuna
