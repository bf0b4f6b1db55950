#include <cmath>
#include <cstdlib>
#include <numbers>

#include "lacuna/errors.hpp"
#include "lacuna/experiments.hpp"
#include "lacuna/multipliers.hpp"

namespace lacuna {

ComplexField random_probe(std::size_t n, std::uint64_t seed, bool second_quadrant) {
  const int band = static_cast<int>(n / 4);
  return random_bandlimited(n, seed, [=](int xi1, int xi2) {
    if (std::abs(xi1) > band || std::abs(xi2) > band) return false;
    return !second_quadrant || in_open_second_quadrant(xi1, xi2);
  });
}

std::vector<std::pair<int, int>> cone_frequencies(std::size_t n, const DirectionSet& set) {
  std::vector<std::pair<int, int>> out;
  const int limit = static_cast<int>(n / 2) - 1;
  for (const auto& cone : cones_of(set)) {
    double phi = 2 * std::numbers::pi * (0.5 * (cone.opening.revolutions() + cone.closing.revolutions()) + 0.25);
    for (int r = static_cast<int>(n / 4); r <= 2 * limit; ++r) {
      int xi1 = static_cast<int>(std::lround(r * std::cos(phi)));
      int xi2 = static_cast<int>(std::lround(r * std::sin(phi)));
      if (std::abs(xi1) > limit || std::abs(xi2) > limit) break;
      if (in_open_second_quadrant(xi1, xi2) && cone.contains(xi1, xi2)) {
        out.emplace_back(xi1, xi2);
        break;
      }
    }
  }
  return out;
}

std::vector<ComplexField> structured_probes(std::size_t n, const DirectionSet& set) {
  auto freqs = cone_frequencies(n, set);
  if (freqs.empty()) return {};
  // Integer centre keeps j + 1/2 - centre away from zero for odd counts too.
  const double centre = static_cast<double>(freqs.size() / 2);
  SpectralField flat(n), weighted(n);
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    auto [xi1, xi2] = freqs[j];
    std::size_t idx = index_of_frequency(xi2, n) * n + index_of_frequency(xi1, n);
    flat[idx] = 1.0;
    weighted[idx] = 1.0 / (static_cast<double>(j) + 0.5 - centre);
  }
  return {inverse(flat), inverse(weighted)};
}

DirectionSet experiment_set(int order, const Rational& lambda, std::size_t size) {
  if (order < 0) throw ValidationError("order must be >= 0");
  if (order == 0) {
    if (size != 1) throw ValidationError("order 0 sets have exactly one direction");
    return canonical_lacunary(0, lambda, {});
  }
  if (size < 1) throw ValidationError("set size must be >= 1");
  if (order == 1) return canonical_lacunary(1, lambda, {static_cast<int>(size)});
  if ((size & (size - 1)) != 0)
    throw ValidationError("sets of order >= 2 need a power-of-two size, got " + std::to_string(size));
  int e = 0;
  while ((std::size_t{1} << e) < size) ++e;
  std::vector<int> counts(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) counts[static_cast<std::size_t>(i)] = 1 << (e / order + (i >= order - e % order ? 1 : 0));
  return canonical_lacunary(order, lambda, counts);
}

}  // namespace lacuna
