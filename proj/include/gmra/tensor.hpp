#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gmra/gmra.hpp"

namespace gmra {

/// Function on the product circle: a product partition of [0,1)^2 with a
/// two-variable trigonometric polynomial on each cell.
class ProductTrigPoly {
 public:
  using Frequency = std::pair<Rational, Rational>;
  using Poly = std::map<Frequency, Complex>;

  ProductTrigPoly();
  /// (x, y) -> f(x) g(y).
  static ProductTrigPoly separable(const PiecewiseTrigPoly& f, const PiecewiseTrigPoly& g);
  static ProductTrigPoly indicator(const TorusSet& a, const TorusSet& b, Complex c = 1.0);

  const std::vector<Rational>& breaks_x() const noexcept { return bx_; }
  const std::vector<Rational>& breaks_y() const noexcept { return by_; }
  const Poly& cell(std::size_t i, std::size_t j) const { return cells_[i * (by_.size() - 1) + j]; }

  Complex operator()(const Rational& x, const Rational& y) const;
  bool is_zero() const;

  ProductTrigPoly& operator+=(const ProductTrigPoly& o);
  ProductTrigPoly& operator-=(const ProductTrigPoly& o);
  friend ProductTrigPoly operator+(ProductTrigPoly a, const ProductTrigPoly& b) { return a += b; }
  friend ProductTrigPoly operator-(ProductTrigPoly a, const ProductTrigPoly& b) { return a -= b; }
  friend ProductTrigPoly operator*(const ProductTrigPoly& a, const ProductTrigPoly& b);
  ProductTrigPoly conj() const;
  /// (x, y) -> f((x + j)/N1, (y + k)/N2).
  ProductTrigPoly branch(std::int64_t n1, std::int64_t j, std::int64_t n2, std::int64_t k) const;

  /// max over cells of the coefficient l1 norm.
  double sup_bound() const;

 private:
  template <typename Op>
  friend ProductTrigPoly combine_cells(const ProductTrigPoly& a, const ProductTrigPoly& b, Op op);
  void canonicalize();

  std::vector<Rational> bx_;
  std::vector<Rational> by_;
  std::vector<Poly> cells_;
};

/// sum over the N1 N2 preimages of f conj(g).
ProductTrigPoly fold(std::int64_t n1, std::int64_t n2, const ProductTrigPoly& f, const ProductTrigPoly& g);

/// Component domain on the product circle: a product of two circle sets.
struct ProductSet {
  TorusSet first;
  TorusSet second;
};

/// Tensor product of two canonical GMRAs. Components are indexed by pairs;
/// the wavelet rows are H1 x G2, then G1 x H2, then G1 x G2.
class TensorGMRA {
 public:
  std::int64_t n1() const noexcept { return n1_; }
  std::int64_t n2() const noexcept { return n2_; }
  /// Size of the kernel of the product endomorphism.
  std::int64_t kernel_size() const noexcept { return n1_ * n2_; }

  std::int64_t multiplicity(const Rational& x, const Rational& y) const;
  std::int64_t complementary_multiplicity(const Rational& x, const Rational& y) const;
  /// m1(x) m2(y) summed over preimages, minus m1(x) m2(y); equals
  /// complementary_multiplicity by the consistency equation.
  std::int64_t folded_multiplicity(const Rational& x, const Rational& y) const;

  const std::vector<std::vector<ProductTrigPoly>>& low_pass() const noexcept { return h_; }
  const std::vector<std::vector<ProductTrigPoly>>& high_pass() const noexcept { return g_; }
  const std::vector<ProductSet>& column_domains() const noexcept { return columns_; }
  const std::vector<ProductSet>& low_row_domains() const noexcept { return low_rows_; }
  const std::vector<ProductSet>& high_row_domains() const noexcept { return high_rows_; }
  const VerificationReport& verification() const noexcept { return report_; }

 private:
  friend TensorGMRA tensor(const CanonicalGMRA& a, const CanonicalGMRA& b, double tol);

  std::int64_t n1_ = 2;
  std::int64_t n2_ = 2;
  MultiplicityFunction m1_, m2_, mt1_, mt2_;
  std::vector<std::vector<ProductTrigPoly>> h_;
  std::vector<std::vector<ProductTrigPoly>> g_;
  std::vector<ProductSet> columns_;
  std::vector<ProductSet> low_rows_;
  std::vector<ProductSet> high_rows_;
  VerificationReport report_;
};

/// Kronecker products of the factor filters, re-verified on the product
/// circle. Both factors need exact high-pass filters. Throws FilterInvalid.
TensorGMRA tensor(const CanonicalGMRA& a, const CanonicalGMRA& b, double tol = kDefaultTolerance);

/// Filter equations for matrices over the product circle.
VerificationReport verify_product_filters(std::int64_t n1, std::int64_t n2,
                                          const std::vector<std::vector<ProductTrigPoly>>& h,
                                          const std::vector<ProductSet>& h_rows,
                                          const std::vector<std::vector<ProductTrigPoly>>& g,
                                          const std::vector<ProductSet>& g_rows, double tol);

}  // namespace gmra
