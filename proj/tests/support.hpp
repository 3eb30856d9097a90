#pragma once

#include <random>
#include <vector>

#include "gmra/torus.hpp"

namespace gmra::testing {

inline Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

/// Random union of up to `max_parts` intervals with endpoints k/den.
inline TorusSet random_set(std::mt19937_64& rng, std::int64_t den, int max_parts = 4) {
  std::uniform_int_distribution<int> parts(0, max_parts);
  std::uniform_int_distribution<std::int64_t> pick(0, den - 1);
  std::uniform_int_distribution<std::int64_t> len(1, den / 2 + 1);
  std::vector<std::pair<Rational, Rational>> pieces;
  const int k = parts(rng);
  for (int i = 0; i < k; ++i) {
    const std::int64_t a = pick(rng);
    pieces.emplace_back(Rational(a, den), Rational(a + len(rng), den));
  }
  return TorusSet::from_real(pieces);
}

/// Deterministic probe points strictly inside cells of width 1/den.
inline std::vector<Rational> probe_points(std::int64_t den, std::int64_t per_cell = 3) {
  std::vector<Rational> out;
  for (std::int64_t k = 0; k < den; ++k) {
    for (std::int64_t s = 1; s <= per_cell; ++s) out.push_back(Rational(k * (per_cell + 1) + s, den * (per_cell + 1)));
  }
  return out;
}

}  // namespace gmra::testing
