#pragma once

#include <cstdint>
#include <vector>

#include "gmra/rational.hpp"
#include "gmra/torus.hpp"

namespace gmra {

/// Piecewise-constant nonnegative integer function on the circle.
///
/// Stored as breakpoints 0 = x_0 < x_1 < ... < x_n = 1 with one value per
/// half-open cell [x_k, x_{k+1}). Adjacent cells never carry equal values, so
/// the representation is canonical and operator== is function equality.
class MultiplicityFunction {
 public:
  struct Piece {
    TorusSet set;
    std::int64_t value = 0;
  };

  /// Zero function.
  MultiplicityFunction();
  static MultiplicityFunction constant(std::int64_t value);
  /// Pieces must be pairwise disjoint; uncovered points get value 0.
  static MultiplicityFunction from_pieces(const std::vector<Piece>& pieces);
  static MultiplicityFunction from_cells(std::vector<Rational> breaks, std::vector<std::int64_t> values);

  const std::vector<Rational>& breaks() const noexcept { return breaks_; }
  const std::vector<std::int64_t>& values() const noexcept { return values_; }

  std::int64_t operator()(const Rational& w) const;
  std::int64_t max_value() const;
  bool is_zero() const { return values_.size() == 1 && values_[0] == 0; }
  bool is_constant() const { return values_.size() == 1; }

  /// {w : f(w) >= level}.
  TorusSet superlevel(std::int64_t level) const;
  /// {w : f(w) > 0}.
  TorusSet support() const { return superlevel(1); }
  /// Integral against Haar measure.
  Rational integral() const;

  /// Maximal pieces (set, value) with nonzero value, ordered by first cell.
  std::vector<Piece> pieces() const;

  friend bool operator==(const MultiplicityFunction&, const MultiplicityFunction&) = default;

 private:
  std::vector<Rational> breaks_;
  std::vector<std::int64_t> values_;
};

/// w -> sum over the N preimages zeta of f(zeta), exact.
MultiplicityFunction fold_multiplicity(const MultiplicityFunction& m, const TorusEndomorphism& e);
/// w -> f(N w).
MultiplicityFunction compose_endomorphism(const MultiplicityFunction& m, const TorusEndomorphism& e);

struct ConsistencyReport {
  bool holds = false;
  /// Exact set where the folded sum is strictly below m.
  TorusSet violation;
};

ConsistencyReport check_consistency(const MultiplicityFunction& m, const TorusEndomorphism& e);

/// The complementary multiplicity sum_{N zeta = w} m(zeta) - m(w).
/// Throws Error(ConsistencyViolated) when that difference is negative on a
/// set of positive measure.
MultiplicityFunction compute_mtilde(const MultiplicityFunction& m, const TorusEndomorphism& e);

/// sigma_i = {m >= i} for i = 1..max(m).
std::vector<TorusSet> sigma_sets(const MultiplicityFunction& m);
std::vector<TorusSet> sigma_tilde_sets(const MultiplicityFunction& m, const TorusEndomorphism& e);

/// Support of the complementary multiplicity: the set where the consistency
/// inequality is strict.
TorusSet strict_set(const MultiplicityFunction& m, const TorusEndomorphism& e);

}  // namespace gmra
