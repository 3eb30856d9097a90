#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gmra/filter.hpp"

namespace gmra {

/// Element of a direct sum of L2(domain_i) spaces, one component per domain.
struct SectionVector {
  std::vector<PiecewiseTrigPoly> components;
  std::vector<TorusSet> domains;

  static SectionVector zero(std::vector<TorusSet> domains);
  /// Indicator of domain i in slot i, zero elsewhere.
  static SectionVector canonical(std::vector<TorusSet> domains, std::size_t i);

  std::size_t size() const noexcept { return components.size(); }
  SectionVector& operator+=(const SectionVector& o);
  SectionVector& operator-=(const SectionVector& o);
  friend SectionVector operator+(SectionVector a, const SectionVector& b) { return a += b; }
  friend SectionVector operator-(SectionVector a, const SectionVector& b) { return a -= b; }
};

/// Column domains of f (the target of the Ruelle operator).
std::vector<TorusSet> column_domains(const FilterMatrix& f);
/// Row domains of f (the source of the Ruelle operator).
std::vector<TorusSet> row_domains(const FilterMatrix& f);

/// Component j of the result is sum_i f_ij(w) x_i(N w), restricted to {m > j}.
SectionVector apply_S(const FilterMatrix& f, const SectionVector& x);
/// Component i of the result is (1/N) sum over preimages of sum_j conj(f_ij) y_j.
SectionVector apply_S_adjoint(const FilterMatrix& f, const SectionVector& y);

/// L2 norm against Haar measure (square root of the summed integrals).
double norm(const SectionVector& x);
Complex inner(const SectionVector& x, const SectionVector& y);

/// Degree <= 8 integer-frequency polynomials, coefficients uniform in the
/// unit disc, restricted to each domain.
SectionVector random_section(const std::vector<TorusSet>& domains, std::mt19937_64& rng, int degree = 8);

/// Uniform point of the unit disc from raw engine output.
Complex random_disc_point(std::mt19937_64& rng);

/// The four Cuntz relations evaluated on canonical vectors and `trials`
/// seeded random vectors. Residual keys: "SH*SH=I", "SG*SG=I", "SH*SG=0",
/// "SHSH*+SGSG*=I".
VerificationReport cuntz_check(const FilterMatrix& h, const FilterMatrix& g, int trials, std::uint64_t seed,
                               double tol = kDefaultTolerance);

}  // namespace gmra
