#include "gmra/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gmra/error.hpp"

namespace gmra {

namespace {

std::vector<Rational> merged(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t locate(const std::vector<Rational>& breaks, const Rational& x) {
  auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
  return static_cast<std::size_t>(std::distance(breaks.begin(), it)) - 1;
}

void prune(ProductTrigPoly::Poly& p) {
  std::erase_if(p, [](const auto& t) { return std::abs(t.second) <= kRoundoffFloor; });
}

ProductTrigPoly::Poly add(const ProductTrigPoly::Poly& a, const ProductTrigPoly::Poly& b, double sign) {
  ProductTrigPoly::Poly out = a;
  for (const auto& [f, c] : b) out[f] += sign * c;
  prune(out);
  return out;
}

ProductTrigPoly::Poly multiply(const ProductTrigPoly::Poly& a, const ProductTrigPoly::Poly& b) {
  ProductTrigPoly::Poly out;
  for (const auto& [fa, ca] : a) {
    for (const auto& [fb, cb] : b) out[{fa.first + fb.first, fa.second + fb.second}] += ca * cb;
  }
  prune(out);
  return out;
}

// Cells of one axis that meet [lo, hi), with the pulled-back cut points.
struct AxisBranch {
  std::vector<Rational> cuts;
  std::vector<std::size_t> source;
};

AxisBranch axis_branch(const std::vector<Rational>& breaks, std::int64_t n, std::int64_t j) {
  const Rational lo(j, n);
  const Rational hi(j + 1, n);
  AxisBranch out;
  out.cuts.push_back(Rational(0));
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= lo || breaks[i] >= hi) continue;
    out.cuts.push_back(std::min(breaks[i + 1], hi) * Rational(n) - Rational(j));
    out.source.push_back(i);
  }
  return out;
}

}  // namespace

template <typename Op>
ProductTrigPoly combine_cells(const ProductTrigPoly& a, const ProductTrigPoly& b, Op op) {
  ProductTrigPoly out;
  out.bx_ = merged(a.bx_, b.bx_);
  out.by_ = merged(a.by_, b.by_);
  out.cells_.clear();
  for (std::size_t i = 0; i + 1 < out.bx_.size(); ++i) {
    const std::size_t ia = locate(a.bx_, out.bx_[i]);
    const std::size_t ib = locate(b.bx_, out.bx_[i]);
    for (std::size_t j = 0; j + 1 < out.by_.size(); ++j) {
      const std::size_t ja = locate(a.by_, out.by_[j]);
      const std::size_t jb = locate(b.by_, out.by_[j]);
      out.cells_.push_back(op(a.cell(ia, ja), b.cell(ib, jb)));
    }
  }
  out.canonicalize();
  return out;
}

ProductTrigPoly::ProductTrigPoly() : bx_{Rational(0), Rational(1)}, by_{Rational(0), Rational(1)}, cells_(1) {}

ProductTrigPoly ProductTrigPoly::separable(const PiecewiseTrigPoly& f, const PiecewiseTrigPoly& g) {
  ProductTrigPoly out;
  out.bx_ = f.breaks();
  out.by_ = g.breaks();
  out.cells_.clear();
  for (const auto& pf : f.polys()) {
    for (const auto& pg : g.polys()) {
      Poly cell;
      for (const auto& [nf, cf] : pf.terms()) {
        for (const auto& [ng, cg] : pg.terms()) cell[{nf, ng}] += cf * cg;
      }
      prune(cell);
      out.cells_.push_back(std::move(cell));
    }
  }
  out.canonicalize();
  return out;
}

ProductTrigPoly ProductTrigPoly::indicator(const TorusSet& a, const TorusSet& b, Complex c) {
  return separable(PiecewiseTrigPoly::indicator(a, c), PiecewiseTrigPoly::indicator(b));
}

void ProductTrigPoly::canonicalize() {
  const std::size_t ny = by_.size() - 1;
  // Drop x-breaks between identical columns of cells.
  for (std::size_t i = bx_.size() - 2; i >= 1; --i) {
    bool same = true;
    for (std::size_t j = 0; j < ny && same; ++j) same = cells_[(i - 1) * ny + j] == cells_[i * ny + j];
    if (same) {
      cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(i * ny),
                   cells_.begin() + static_cast<std::ptrdiff_t>((i + 1) * ny));
      bx_.erase(bx_.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  const std::size_t nx = bx_.size() - 1;
  for (std::size_t j = by_.size() - 2; j >= 1; --j) {
    const std::size_t stride = by_.size() - 1;
    bool same = true;
    for (std::size_t i = 0; i < nx && same; ++i) same = cells_[i * stride + j - 1] == cells_[i * stride + j];
    if (!same) continue;
    std::vector<Poly> kept;
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t k = 0; k < stride; ++k) {
        if (k != j) kept.push_back(std::move(cells_[i * stride + k]));
      }
    }
    cells_ = std::move(kept);
    by_.erase(by_.begin() + static_cast<std::ptrdiff_t>(j));
  }
}

Complex ProductTrigPoly::operator()(const Rational& x, const Rational& y) const {
  const Rational fx = x.frac();
  const Rational fy = y.frac();
  Complex s{};
  for (const auto& [f, c] : cell(locate(bx_, fx), locate(by_, fy))) s += c * unit_phase(f.first * fx + f.second * fy);
  return s;
}

bool ProductTrigPoly::is_zero() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const Poly& p) { return p.empty(); });
}

ProductTrigPoly& ProductTrigPoly::operator+=(const ProductTrigPoly& o) {
  *this = combine_cells(*this, o, [](const Poly& a, const Poly& b) { return add(a, b, 1.0); });
  return *this;
}

ProductTrigPoly& ProductTrigPoly::operator-=(const ProductTrigPoly& o) {
  *this = combine_cells(*this, o, [](const Poly& a, const Poly& b) { return add(a, b, -1.0); });
  return *this;
}

ProductTrigPoly operator*(const ProductTrigPoly& a, const ProductTrigPoly& b) {
  return combine_cells(a, b, [](const ProductTrigPoly::Poly& x, const ProductTrigPoly::Poly& y) {
    return multiply(x, y);
  });
}

ProductTrigPoly ProductTrigPoly::conj() const {
  ProductTrigPoly out = *this;
  for (auto& cell : out.cells_) {
    Poly flipped;
    for (const auto& [f, c] : cell) flipped[{-f.first, -f.second}] = std::conj(c);
    cell = std::move(flipped);
  }
  return out;
}

ProductTrigPoly ProductTrigPoly::branch(std::int64_t n1, std::int64_t j, std::int64_t n2, std::int64_t k) const {
  const AxisBranch ax = axis_branch(bx_, n1, j);
  const AxisBranch ay = axis_branch(by_, n2, k);
  const Rational r1(n1);
  const Rational r2(n2);
  ProductTrigPoly out;
  out.bx_ = ax.cuts;
  out.by_ = ay.cuts;
  out.cells_.clear();
  for (const std::size_t sx : ax.source) {
    for (const std::size_t sy : ay.source) {
      Poly cell;
      for (const auto& [f, c] : this->cell(sx, sy)) {
        const Rational phase = f.first * Rational(j) / r1 + f.second * Rational(k) / r2;
        cell[{f.first / r1, f.second / r2}] += c * unit_phase(phase);
      }
      prune(cell);
      out.cells_.push_back(std::move(cell));
    }
  }
  out.canonicalize();
  return out;
}

double ProductTrigPoly::sup_bound() const {
  double m = 0.0;
  for (const auto& cell : cells_) {
    double s = 0.0;
    for (const auto& t : cell) s += std::abs(t.second);
    m = std::max(m, s);
  }
  return m;
}

ProductTrigPoly fold(std::int64_t n1, std::int64_t n2, const ProductTrigPoly& f, const ProductTrigPoly& g) {
  const ProductTrigPoly prod = f * g.conj();
  ProductTrigPoly out;
  for (std::int64_t j = 0; j < n1; ++j) {
    for (std::int64_t k = 0; k < n2; ++k) out += prod.branch(n1, j, n2, k);
  }
  return out;
}

VerificationReport verify_product_filters(std::int64_t n1, std::int64_t n2,
                                          const std::vector<std::vector<ProductTrigPoly>>& h,
                                          const std::vector<ProductSet>& h_rows,
                                          const std::vector<std::vector<ProductTrigPoly>>& g,
                                          const std::vector<ProductSet>& g_rows, double tol) {
  const auto n = static_cast<double>(n1 * n2);
  VerificationReport report;
  auto rows_check = [&](const auto& a, const auto& b, const std::vector<ProductSet>* diag, const std::string& key) {
    double worst = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r) {
      for (std::size_t r2 = 0; r2 < b.size(); ++r2) {
        ProductTrigPoly sum;
        for (std::size_t c = 0; c < a[r].size(); ++c) sum += fold(n1, n2, a[r][c], b[r2][c]);
        if (diag && r == r2) sum -= ProductTrigPoly::indicator((*diag)[r].first, (*diag)[r].second, n);
        const double res = sum.sup_bound();
        if (res > tol) {
          std::ostringstream os;
          os << key << "(" << r << "," << r2 << "): residual " << res;
          report.offending.push_back(os.str());
        }
        worst = std::max(worst, res);
      }
    }
    report.record(key, worst, tol);
  };
  rows_check(h, h, &h_rows, "orthogonality");
  rows_check(g, g, &g_rows, "high.orthogonality");
  rows_check(g, h, nullptr, "cross");
  return report;
}

std::int64_t TensorGMRA::multiplicity(const Rational& x, const Rational& y) const { return m1_(x) * m2_(y); }

std::int64_t TensorGMRA::complementary_multiplicity(const Rational& x, const Rational& y) const {
  return m1_(x) * mt2_(y) + mt1_(x) * m2_(y) + mt1_(x) * mt2_(y);
}

std::int64_t TensorGMRA::folded_multiplicity(const Rational& x, const Rational& y) const {
  std::int64_t total = 0;
  for (std::int64_t j = 0; j < n1_; ++j) {
    for (std::int64_t k = 0; k < n2_; ++k) {
      total += m1_((x.frac() + Rational(j)) / Rational(n1_)) * m2_((y.frac() + Rational(k)) / Rational(n2_));
    }
  }
  return total - multiplicity(x, y);
}

TensorGMRA tensor(const CanonicalGMRA& a, const CanonicalGMRA& b, double tol) {
  if (!a.has_exact_high_pass() || !b.has_exact_high_pass()) {
    throw Error(ErrorCode::UnsupportedRepresentation, "tensor product needs high-pass filters in piecewise form");
  }
  const FilterMatrix& h1 = a.low_pass();
  const FilterMatrix& h2 = b.low_pass();
  const FilterMatrix& g1 = std::get<FilterMatrix>(a.high_pass());
  const FilterMatrix& g2 = std::get<FilterMatrix>(b.high_pass());

  TensorGMRA t;
  t.n1_ = a.endomorphism().n();
  t.n2_ = b.endomorphism().n();
  t.m1_ = a.multiplicity();
  t.m2_ = b.multiplicity();
  t.mt1_ = a.complementary_multiplicity();
  t.mt2_ = b.complementary_multiplicity();

  for (std::size_t j1 = 0; j1 < h1.cols(); ++j1) {
    for (std::size_t j2 = 0; j2 < h2.cols(); ++j2) t.columns_.push_back({h1.column_domain(j1), h2.column_domain(j2)});
  }
  auto kron = [](const FilterMatrix& x, const FilterMatrix& y, std::vector<std::vector<ProductTrigPoly>>& out,
                 std::vector<ProductSet>& domains) {
    for (std::size_t i1 = 0; i1 < x.rows(); ++i1) {
      for (std::size_t i2 = 0; i2 < y.rows(); ++i2) {
        std::vector<ProductTrigPoly> row;
        for (std::size_t j1 = 0; j1 < x.cols(); ++j1) {
          for (std::size_t j2 = 0; j2 < y.cols(); ++j2) row.push_back(ProductTrigPoly::separable(x(i1, j1), y(i2, j2)));
        }
        out.push_back(std::move(row));
        domains.push_back({x.row_domain(i1), y.row_domain(i2)});
      }
    }
  };
  kron(h1, h2, t.h_, t.low_rows_);
  kron(h1, g2, t.g_, t.high_rows_);
  kron(g1, h2, t.g_, t.high_rows_);
  kron(g1, g2, t.g_, t.high_rows_);

  t.report_ = verify_product_filters(t.n1_, t.n2_, t.h_, t.low_rows_, t.g_, t.high_rows_, tol);
  if (!t.report_.passed) {
    std::ostringstream os;
    os << "tensor filters fail with residual " << t.report_.max_residual;
    throw Error(ErrorCode::FilterInvalid, os.str());
  }
  return t;
}

}  // namespace gmra
