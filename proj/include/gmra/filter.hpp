#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gmra/multiplicity.hpp"
#include "gmra/trig_poly.hpp"

namespace gmra {

inline constexpr double kDefaultTolerance = 1e-9;

/// Which multiplicity indexes the rows of a filter matrix.
enum class RowIndex {
  LowPass,   // rows indexed by m (a filter H)
  HighPass,  // rows indexed by the complementary multiplicity (a filter G)
};

/// Matrix of piecewise trigonometric polynomials tied to a multiplicity
/// function and a dilation. Columns are indexed by m; rows by m or by the
/// complementary multiplicity depending on RowIndex.
class FilterMatrix {
 public:
  FilterMatrix(MultiplicityFunction m, TorusEndomorphism e, RowIndex kind, std::size_t rows, std::size_t cols);
  FilterMatrix(MultiplicityFunction m, TorusEndomorphism e, RowIndex kind,
               std::vector<std::vector<PiecewiseTrigPoly>> entries);

  std::size_t rows() const noexcept { return entries_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const PiecewiseTrigPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  PiecewiseTrigPoly& operator()(std::size_t i, std::size_t j) { return entries_[i][j]; }
  const std::vector<std::vector<PiecewiseTrigPoly>>& entries() const noexcept { return entries_; }

  const MultiplicityFunction& multiplicity() const noexcept { return m_; }
  const TorusEndomorphism& endomorphism() const noexcept { return e_; }
  RowIndex row_index() const noexcept { return kind_; }

  /// m, or the complementary multiplicity for high-pass rows.
  MultiplicityFunction row_multiplicity() const;
  /// Domain of row i: {row multiplicity > i}.
  TorusSet row_domain(std::size_t i) const;
  /// Domain of column j: {m > j}.
  TorusSet column_domain(std::size_t j) const;

  bool is_scalar() const noexcept { return rows() == 1 && cols() == 1; }
  bool is_exactly_piecewise_constant() const;

  friend bool operator==(const FilterMatrix&, const FilterMatrix&) = default;

 private:
  MultiplicityFunction m_;
  TorusEndomorphism e_;
  RowIndex kind_;
  std::size_t cols_;
  std::vector<std::vector<PiecewiseTrigPoly>> entries_;
};

/// Filter rows sampled on the midpoint grid x_s = (s + 1/2) / (N M),
/// s = 0 .. N M - 1. The N points t, t + M, ..., t + (N-1) M are exactly the
/// preimages of the quotient grid point (t + 1/2) / M.
struct SampledFilter {
  std::int64_t n = 2;
  std::size_t quotient_grid = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// samples[i][j][s]
  std::vector<std::vector<std::vector<Complex>>> samples;

  std::size_t grid_size() const noexcept { return static_cast<std::size_t>(n) * quotient_grid; }
  double point(std::size_t s) const {
    return (static_cast<double>(s) + 0.5) / static_cast<double>(grid_size());
  }
};

struct VerificationReport {
  bool passed = true;
  double max_residual = 0.0;
  std::map<std::string, double> residuals;
  std::vector<std::string> offending;

  /// Record a named residual; passed tracks max_residual <= tol.
  void record(const std::string& name, double residual, double tol);
  void merge(const VerificationReport& other, double tol);
};

/// Support and block constraints plus the orthogonality relations among the
/// rows of f, each row pair summed over columns and folded.
VerificationReport verify_filter(const FilterMatrix& f, double tol = kDefaultTolerance);

/// Rows of g checked against each other and against the rows of h.
VerificationReport verify_complementary(const FilterMatrix& g, const FilterMatrix& h,
                                        double tol = kDefaultTolerance);

/// Same relations evaluated on the sample grid of g.
VerificationReport verify_complementary(const SampledFilter& g, const FilterMatrix& h,
                                        double tol = kDefaultTolerance);

/// A(N w) F(w) A*(w), with A square of size rows() == cols() of f.
/// Throws NotUnitary when the m-block of A fails unitarity on a check grid.
FilterMatrix conjugate_filter(const FilterMatrix& f, const FilterMatrix& a, double tol = kDefaultTolerance);

/// max over a midpoint grid of || A(w)_block^* A(w)_block - I ||.
double unitarity_defect(const FilterMatrix& a, std::size_t grid = 512);

struct Completion {
  SampledFilter g;
  VerificationReport report;
};

/// Pointwise completion of the rows of h to an orthonormal frame over the
/// preimages of each quotient grid point. Throws CompletionFailed if the
/// canonical basis runs out of pivots.
Completion complement_numeric(const FilterMatrix& h, std::size_t grid, double tol = kDefaultTolerance);

/// Sample every entry of f on the grid used by SampledFilter.
SampledFilter sample(const FilterMatrix& f, std::size_t quotient_grid);

}  // namespace gmra
