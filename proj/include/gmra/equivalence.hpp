#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmra/filter.hpp"

namespace gmra {

struct EigenfilterResult {
  bool eigen = false;
  Complex lambda{};
};

/// Row 0 equals (lambda, 0, ..., 0) everywhere with |lambda| = 1 and lambda
/// constant.
EigenfilterResult is_eigenfilter(const FilterMatrix& h, double tol = kDefaultTolerance);

enum class PurityKind { Pure, NotPure, Unknown };

struct PurityVerdict {
  PurityKind kind = PurityKind::Unknown;
  /// Pure: a positive-measure set on which the bound holds.
  TorusSet certificate;
  /// NotPure: eigenvalue and eigenvector of the transposed filter.
  Complex lambda{};
  std::vector<PiecewiseTrigPoly> eigenvector;
  std::string reason;
};

/// Decision ladder: exact eigenfilter, then |h| away from 1 (scalar case),
/// then a small top singular value of the active block (matrix case).
PurityVerdict purity_test(const FilterMatrix& h, double tol = kDefaultTolerance);

/// Rational interval set on which |p(x)| > threshold is guaranteed, built
/// from exact decisions on constant cells and Lipschitz balls around sample
/// points elsewhere.
TorusSet certified_exceedance(const PiecewiseTrigPoly& p, double threshold, int samples_per_cell = 16);

enum class ObstructionKind {
  MultiplicityMismatch,
  ModuliMismatch,
  SingularValueMismatch,
  ConstantRatio,
  NoSolutionUpToDegree,
};

std::string_view to_string(ObstructionKind k);

struct Obstruction {
  ObstructionKind kind = ObstructionKind::NoSolutionUpToDegree;
  /// ConstantRatio: the ratio c with h' = c h.
  Complex ratio{};
  /// NoSolutionUpToDegree: the searched degree.
  int degree = 0;
  /// Where the invariant differs (moduli or singular values).
  TorusSet where;
  std::string detail;
};

/// First certified invariant that differs between h and h2, if any.
std::optional<Obstruction> invariant_check(const FilterMatrix& h, const FilterMatrix& h2,
                                           double tol = kDefaultTolerance);

/// Scalar filters with h2 = c h for a unimodular constant c. Returns the
/// obstruction when c != 1 and nothing when c == 1. Throws NotApplicable if
/// the ratio is not constant or h vanishes on a cell.
std::optional<Obstruction> constant_ratio_obstruction(const FilterMatrix& h, const FilterMatrix& h2,
                                                      double tol = kDefaultTolerance);

struct CoboundaryWitness {
  TrigPoly multiplier;
  double residual = 0.0;
};

/// Unimodular trigonometric polynomial a of degree <= max_degree with
/// h2(w) a(w) = a(N w) h(w), found from the null space of the coefficient
/// system and checked on a grid.
std::optional<CoboundaryWitness> coboundary_solve(const FilterMatrix& h, const FilterMatrix& h2, int max_degree,
                                                  double tol = kDefaultTolerance);

/// max over a grid of |A(N w) H(w) A*(w) - H2(w)|.
double witness_residual(const FilterMatrix& h, const FilterMatrix& h2, const FilterMatrix& a,
                        std::size_t grid = 1024);

enum class EquivalenceKind { Equivalent, Inequivalent, Unknown };

std::string_view to_string(EquivalenceKind k);
std::string_view to_string(PurityKind k);

struct EquivalenceOptions {
  int max_degree = 16;
  double tol = kDefaultTolerance;
  std::size_t grid = 1024;
};

struct EquivalenceVerdict {
  EquivalenceKind kind = EquivalenceKind::Unknown;
  std::optional<FilterMatrix> witness;
  double witness_residual = 0.0;
  std::optional<Obstruction> obstruction;
  std::string detail;
};

EquivalenceVerdict decide(const FilterMatrix& h, const FilterMatrix& h2, const EquivalenceOptions& options = {});

}  // namespace gmra
