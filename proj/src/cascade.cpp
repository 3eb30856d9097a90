#include "gmra/cascade.hpp"

#include <algorithm>
#include <cmath>

#include "gmra/error.hpp"

namespace gmra {

std::string_view to_string(CascadeVerdict v) {
  switch (v) {
    case CascadeVerdict::ConvergentNonzero: return "ConvergentNonzero";
    case CascadeVerdict::DegeneratesToZero: return "DegeneratesToZero";
    case CascadeVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

CascadeResult cascade_diagnostic(const FilterMatrix& h, const CascadeOptions& options) {
  if (!h.is_scalar() || !(h.multiplicity() == MultiplicityFunction::constant(1))) {
    throw Error(ErrorCode::NotApplicable, "cascade needs a scalar filter with multiplicity 1");
  }
  if (options.iterations < 1 || options.samples < 2) {
    throw Error(ErrorCode::ParseError, "cascade needs at least one iteration and two samples");
  }
  const auto& f = h(0, 0);
  const double n = static_cast<double>(h.endomorphism().n());
  const double inv_root_n = 1.0 / std::sqrt(n);

  CascadeResult out;
  out.omega.resize(options.samples);
  for (std::size_t s = 0; s < options.samples; ++s) {
    out.omega[s] = -0.5 + static_cast<double>(s) / static_cast<double>(options.samples - 1);
  }
  out.values.assign(options.samples, Complex(1.0, 0.0));
  std::vector<double> at_zero{1.0};
  double scale = 1.0;
  for (int j = 1; j <= options.iterations; ++j) {
    scale /= n;
    double increment = 0.0;
    for (std::size_t s = 0; s < options.samples; ++s) {
      const Complex next = out.values[s] * f(out.omega[s] * scale) * inv_root_n;
      increment = std::max(increment, std::abs(next - out.values[s]));
      out.values[s] = next;
    }
    out.increments.push_back(increment);
    at_zero.push_back(at_zero.back() * std::abs(f(0.0)) * inv_root_n);
  }

  double peak = 0.0;
  for (const auto& v : out.values) peak = std::max(peak, std::abs(v));
  const bool normalized = std::abs(std::abs(f(Rational(0))) - std::sqrt(n)) <= options.tol;
  const bool decaying = at_zero.back() < at_zero[at_zero.size() - 2];
  const auto window = static_cast<std::size_t>(options.stability_window);
  const bool stable = out.increments.size() >= window &&
                      std::all_of(out.increments.end() - static_cast<std::ptrdiff_t>(window), out.increments.end(),
                                  [&](double d) { return d < options.stability_threshold; });
  if (peak < options.zero_threshold || (!normalized && decaying)) {
    out.verdict = CascadeVerdict::DegeneratesToZero;
  } else if (stable) {
    out.verdict = CascadeVerdict::ConvergentNonzero;
  } else {
    out.verdict = CascadeVerdict::Inconclusive;
  }
  return out;
}

}  // namespace gmra
