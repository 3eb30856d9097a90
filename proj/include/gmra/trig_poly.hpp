#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "gmra/rational.hpp"
#include "gmra/torus.hpp"

namespace gmra {

using Complex = std::complex<double>;

inline constexpr double kRoundoffFloor = 1e-14;

/// e^{2 pi i r}, exact at multiples of a quarter turn.
Complex unit_phase(const Rational& r);

/// Finite sum  sum_nu c_nu e^{2 pi i nu x}  with rational frequencies nu.
///
/// Terms are kept sorted by frequency. Coefficients of magnitude at most
/// kRoundoffFloor are treated as cancellation residue and dropped. The variable
/// x is the circle coordinate in [0, 1); non-integer frequencies are not
/// periodic, so the coordinate matters.
class TrigPoly {
 public:
  using Term = std::pair<Rational, Complex>;

  TrigPoly() = default;
  static TrigPoly constant(Complex c);
  static TrigPoly exponential(const Rational& freq, Complex c = 1.0);
  static TrigPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// True when the only surviving term has frequency zero (or none).
  bool is_constant() const noexcept;
  Complex constant_term() const;
  bool has_integer_frequencies() const;

  Complex operator()(const Rational& x) const;
  Complex operator()(double x) const;

  TrigPoly operator-() const;
  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(Complex s);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(TrigPoly a, Complex s) { return a *= s; }
  friend TrigPoly operator*(Complex s, TrigPoly a) { return a *= s; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

  TrigPoly conj() const;
  /// p((x + shift)) expressed as a polynomial in x.
  TrigPoly translate(const Rational& shift) const;
  /// p((x + j)/N).
  TrigPoly branch(std::int64_t n, std::int64_t j) const;
  /// p(N x - k).
  TrigPoly dilate(std::int64_t n, std::int64_t k) const;

  /// Sum of |c_nu|; an upper bound for sup |p|.
  double l1_norm() const;
  /// Upper bound for |p'| : 2 pi sum |nu| |c_nu|.
  double lipschitz_bound() const;
  /// Exact-form integral over [a, b).
  Complex integral(const Rational& a, const Rational& b) const;

  /// Drop terms with |c| <= eps.
  TrigPoly pruned(double eps) const;

  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

/// Function on the circle: a rational-breakpoint partition of [0, 1) with a
/// TrigPoly on each half-open cell. Cells with equal polynomials are merged.
class PiecewiseTrigPoly {
 public:
  /// One piece given on a real interval [lo, hi) in the piece's own
  /// coordinate; it is wrapped onto the circle with matching phase shifts.
  struct RealPiece {
    Rational lo;
    Rational hi;
    TrigPoly poly;
  };

  PiecewiseTrigPoly();
  explicit PiecewiseTrigPoly(TrigPoly p);
  static PiecewiseTrigPoly zero() { return {}; }
  static PiecewiseTrigPoly constant(Complex c) { return PiecewiseTrigPoly(TrigPoly::constant(c)); }
  static PiecewiseTrigPoly exponential(const Rational& freq, Complex c = 1.0) {
    return PiecewiseTrigPoly(TrigPoly::exponential(freq, c));
  }
  /// c times the indicator of s.
  static PiecewiseTrigPoly indicator(const TorusSet& s, Complex c = 1.0);
  /// p restricted to s.
  static PiecewiseTrigPoly on_set(const TorusSet& s, const TrigPoly& p);
  static PiecewiseTrigPoly from_cells(std::vector<Rational> breaks, std::vector<TrigPoly> polys);
  /// Throws ParseError if the wrapped pieces overlap.
  static PiecewiseTrigPoly from_real_pieces(const std::vector<RealPiece>& pieces);

  const std::vector<Rational>& breaks() const noexcept { return breaks_; }
  const std::vector<TrigPoly>& polys() const noexcept { return polys_; }
  std::size_t cell_count() const noexcept { return polys_.size(); }
  /// Index of the cell containing w (half-open rule, w reduced mod 1).
  std::size_t cell_of(const Rational& w) const;
  const TrigPoly& poly_at(const Rational& w) const { return polys_[cell_of(w)]; }

  Complex operator()(const Rational& w) const;
  Complex operator()(double w) const;

  bool is_zero() const { return polys_.size() == 1 && polys_[0].is_zero(); }
  bool is_single_piece() const { return polys_.size() == 1; }
  bool has_integer_frequencies() const;

  PiecewiseTrigPoly operator-() const;
  PiecewiseTrigPoly& operator+=(const PiecewiseTrigPoly& o);
  PiecewiseTrigPoly& operator-=(const PiecewiseTrigPoly& o);
  PiecewiseTrigPoly& operator*=(Complex s);
  friend PiecewiseTrigPoly operator+(PiecewiseTrigPoly a, const PiecewiseTrigPoly& b) { return a += b; }
  friend PiecewiseTrigPoly operator-(PiecewiseTrigPoly a, const PiecewiseTrigPoly& b) { return a -= b; }
  friend PiecewiseTrigPoly operator*(PiecewiseTrigPoly a, Complex s) { return a *= s; }
  friend PiecewiseTrigPoly operator*(Complex s, PiecewiseTrigPoly a) { return a *= s; }
  friend PiecewiseTrigPoly operator*(const PiecewiseTrigPoly& a, const PiecewiseTrigPoly& b);

  PiecewiseTrigPoly conj() const;
  PiecewiseTrigPoly restrict_to(const TorusSet& s) const;
  /// w -> f(N w mod 1).
  PiecewiseTrigPoly compose_endomorphism(std::int64_t n) const;
  /// w -> f((w + j)/N), the j-th inverse branch.
  PiecewiseTrigPoly branch(std::int64_t n, std::int64_t j) const;

  /// Union of cells whose polynomial has a coefficient above eps. Nonzero
  /// trig polynomials vanish only on a null set, so this is the a.e. support.
  TorusSet support(double eps = 0.0) const;
  /// max over cells of the coefficient l1 norm; bounds sup |f|.
  double sup_bound() const;
  /// Integral over the circle.
  Complex integral() const;
  PiecewiseTrigPoly pruned(double eps) const;

  /// Cells in the requested convention; polynomials are re-expressed in the
  /// displayed coordinate. Zero cells are omitted.
  std::vector<RealPiece> display(Convention c) const;

  friend bool operator==(const PiecewiseTrigPoly&, const PiecewiseTrigPoly&) = default;

 private:
  void canonicalize();
  std::vector<Rational> breaks_;
  std::vector<TrigPoly> polys_;
};

/// <f, g> = integral of f conj(g).
Complex inner(const PiecewiseTrigPoly& f, const PiecewiseTrigPoly& g);

/// w -> sum_{N zeta = w} f(zeta) conj(g(zeta)), exact in the class.
PiecewiseTrigPoly fold(const TorusEndomorphism& e, const PiecewiseTrigPoly& f, const PiecewiseTrigPoly& g);

}  // namespace gmra
