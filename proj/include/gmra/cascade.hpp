#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "gmra/filter.hpp"

namespace gmra {

enum class CascadeVerdict { ConvergentNonzero, DegeneratesToZero, Inconclusive };

std::string_view to_string(CascadeVerdict v);

struct CascadeOptions {
  int iterations = 30;
  std::size_t samples = 1024;
  double tol = kDefaultTolerance;
  double zero_threshold = 1e-6;
  double stability_threshold = 1e-8;
  int stability_window = 5;
};

struct CascadeResult {
  /// Sample points, evenly spaced on [-1/2, 1/2] inclusive.
  std::vector<double> omega;
  /// Partial product after the last iteration.
  std::vector<Complex> values;
  /// sup_w |P_j(w) - P_{j-1}(w)| for j = 1..iterations.
  std::vector<double> increments;
  CascadeVerdict verdict = CascadeVerdict::Inconclusive;
};

/// Partial products P_J(w) = prod_{j=1..J} h(w / N^j) / sqrt(N) of the
/// refinement equation for a scalar filter.
CascadeResult cascade_diagnostic(const FilterMatrix& h, const CascadeOptions& options = {});

}  // namespace gmra
