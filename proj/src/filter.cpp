#include "gmra/filter.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "gmra/error.hpp"

namespace gmra {

namespace {

std::string pair_label(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string describe(const std::string& what, double residual, const TorusSet& where) {
  std::ostringstream os;
  os << what << ": residual " << residual << " on " << where.to_string();
  return os.str();
}

Rational grid_point(std::size_t s, std::size_t size) {
  return Rational(static_cast<std::int64_t>(2 * s + 1), static_cast<std::int64_t>(2 * size));
}

// Support and block residuals of every entry; keys are prefixed.
void check_constraints(const FilterMatrix& f, const std::string& prefix, double tol, VerificationReport& report) {
  const auto& e = f.endomorphism();
  double support = 0.0;
  double block = 0.0;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    const TorusSet row_ok = e.preimage_set(f.row_domain(i));
    for (std::size_t j = 0; j < f.cols(); ++j) {
      const auto& entry = f(i, j);
      if (entry.is_zero()) continue;
      const TorusSet outside_col = f.column_domain(j).complement();
      const double s = entry.restrict_to(outside_col).sup_bound();
      if (s > tol) {
        report.offending.push_back(describe(prefix + "support" + pair_label(i, j), s,
                                            entry.support().intersect(outside_col)));
      }
      support = std::max(support, s);
      const TorusSet outside_row = row_ok.complement();
      const double b = entry.restrict_to(outside_row).sup_bound();
      if (b > tol) {
        report.offending.push_back(describe(prefix + "block" + pair_label(i, j), b,
                                            entry.support().intersect(outside_row)));
      }
      block = std::max(block, b);
    }
  }
  report.record(prefix + "support", support, tol);
  report.record(prefix + "block", block, tol);
}

// sum_j fold(a_ij, b_kj) for all row pairs, compared with N delta chi_{domain}
// (diagonal) or zero (cross terms).
void check_rows(const FilterMatrix& a, const FilterMatrix& b, bool same, const std::string& key, double tol,
                VerificationReport& report) {
  const auto& e = a.endomorphism();
  const auto n = static_cast<double>(e.n());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < b.rows(); ++k) {
      PiecewiseTrigPoly sum;
      for (std::size_t j = 0; j < a.cols(); ++j) sum += fold(e, a(i, j), b(k, j));
      if (same && i == k) sum -= PiecewiseTrigPoly::indicator(a.row_domain(i), n);
      const double r = sum.sup_bound();
      if (r > tol) report.offending.push_back(describe(key + pair_label(i, k), r, sum.support(tol)));
      worst = std::max(worst, r);
    }
  }
  report.record(key, worst, tol);
}

}  // namespace

// ------------------------------------------------------------ FilterMatrix

FilterMatrix::FilterMatrix(MultiplicityFunction m, TorusEndomorphism e, RowIndex kind, std::size_t rows,
                           std::size_t cols)
    : m_(std::move(m)), e_(e), kind_(kind), cols_(cols),
      entries_(rows, std::vector<PiecewiseTrigPoly>(cols)) {}

FilterMatrix::FilterMatrix(MultiplicityFunction m, TorusEndomorphism e, RowIndex kind,
                           std::vector<std::vector<PiecewiseTrigPoly>> entries)
    : m_(std::move(m)), e_(e), kind_(kind), cols_(entries.empty() ? 0 : entries.front().size()),
      entries_(std::move(entries)) {
  for (const auto& row : entries_) {
    if (row.size() != cols_) throw Error(ErrorCode::ParseError, "filter rows must have equal length");
  }
}

MultiplicityFunction FilterMatrix::row_multiplicity() const {
  return kind_ == RowIndex::LowPass ? m_ : compute_mtilde(m_, e_);
}

TorusSet FilterMatrix::row_domain(std::size_t i) const {
  return row_multiplicity().superlevel(static_cast<std::int64_t>(i) + 1);
}

TorusSet FilterMatrix::column_domain(std::size_t j) const { return m_.superlevel(static_cast<std::int64_t>(j) + 1); }

bool FilterMatrix::is_exactly_piecewise_constant() const {
  for (const auto& row : entries_) {
    for (const auto& entry : row) {
      for (const auto& p : entry.polys()) {
        if (!p.is_constant()) return false;
      }
    }
  }
  return true;
}

// ------------------------------------------------------ VerificationReport

void VerificationReport::record(const std::string& name, double residual, double tol) {
  auto [it, inserted] = residuals.emplace(name, residual);
  if (!inserted) it->second = std::max(it->second, residual);
  max_residual = std::max(max_residual, residual);
  passed = max_residual <= tol;
}

void VerificationReport::merge(const VerificationReport& other, double tol) {
  for (const auto& [k, v] : other.residuals) record(k, v, tol);
  offending.insert(offending.end(), other.offending.begin(), other.offending.end());
  max_residual = std::max(max_residual, other.max_residual);
  passed = max_residual <= tol;
}

// ------------------------------------------------------------ verification

VerificationReport verify_filter(const FilterMatrix& f, double tol) {
  const auto rows_m = f.row_multiplicity();
  if (static_cast<std::int64_t>(f.cols()) < f.multiplicity().max_value() ||
      static_cast<std::int64_t>(f.rows()) < rows_m.max_value()) {
    throw Error(ErrorCode::ContextMismatch, "filter is " + std::to_string(f.rows()) + "x" +
                                                std::to_string(f.cols()) + " but multiplicities reach " +
                                                std::to_string(rows_m.max_value()) + " rows and " +
                                                std::to_string(f.multiplicity().max_value()) + " columns");
  }
  VerificationReport report;
  check_constraints(f, "", tol, report);
  check_rows(f, f, true, "orthogonality", tol, report);
  return report;
}

VerificationReport verify_complementary(const FilterMatrix& g, const FilterMatrix& h, double tol) {
  if (!(g.multiplicity() == h.multiplicity()) || !(g.endomorphism() == h.endomorphism()) ||
      g.cols() != h.cols()) {
    throw Error(ErrorCode::ContextMismatch, "complementary filter does not share the multiplicity context");
  }
  if (g.row_index() != RowIndex::HighPass) {
    throw Error(ErrorCode::ContextMismatch, "complementary filter rows must be indexed by the complement");
  }
  VerificationReport report = verify_filter(g, tol);
  check_rows(g, h, false, "cross", tol, report);
  return report;
}

VerificationReport verify_complementary(const SampledFilter& g, const FilterMatrix& h, double tol) {
  const auto& e = h.endomorphism();
  if (g.n != e.n() || g.cols != h.cols()) {
    throw Error(ErrorCode::ContextMismatch, "sampled filter does not match the low-pass context");
  }
  const auto mtilde = compute_mtilde(h.multiplicity(), e);
  const auto& m = h.multiplicity();
  const std::size_t size = g.grid_size();
  const std::size_t quot = g.quotient_grid;
  const auto n = static_cast<std::size_t>(g.n);

  std::vector<std::vector<std::vector<Complex>>> hs(h.rows(), std::vector<std::vector<Complex>>(h.cols()));
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < h.cols(); ++j) {
      hs[i][j].resize(size);
      for (std::size_t s = 0; s < size; ++s) hs[i][j][s] = h(i, j)(grid_point(s, size));
    }
  }

  double support = 0.0;
  double block = 0.0;
  double ortho = 0.0;
  double cross = 0.0;
  for (std::size_t s = 0; s < size; ++s) {
    const Rational x = grid_point(s, size);
    const std::int64_t rows_here = mtilde(x * Rational(g.n));
    for (std::size_t r = 0; r < g.rows; ++r) {
      for (std::size_t j = 0; j < g.cols; ++j) {
        const double v = std::abs(g.samples[r][j][s]);
        if (static_cast<std::int64_t>(j) >= m(x)) support = std::max(support, v);
        if (static_cast<std::int64_t>(r) >= rows_here) block = std::max(block, v);
      }
    }
  }
  for (std::size_t t = 0; t < quot; ++t) {
    const Rational w = grid_point(t, quot);
    const std::int64_t mt = mtilde(w);
    for (std::size_t r = 0; r < g.rows; ++r) {
      for (std::size_t r2 = 0; r2 < g.rows; ++r2) {
        Complex sum{};
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t j = 0; j < g.cols; ++j) sum += g.samples[r][j][t + k * quot] * std::conj(g.samples[r2][j][t + k * quot]);
        }
        if (r == r2 && static_cast<std::int64_t>(r) < mt) sum -= static_cast<double>(n);
        ortho = std::max(ortho, std::abs(sum));
      }
      for (std::size_t i = 0; i < h.rows(); ++i) {
        Complex sum{};
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t j = 0; j < g.cols; ++j) sum += g.samples[r][j][t + k * quot] * std::conj(hs[i][j][t + k * quot]);
        }
        cross = std::max(cross, std::abs(sum));
      }
    }
  }
  VerificationReport report;
  report.record("support", support, tol);
  report.record("block", block, tol);
  report.record("orthogonality", ortho, tol);
  report.record("cross", cross, tol);
  return report;
}

// ------------------------------------------------------------ conjugation

double unitarity_defect(const FilterMatrix& a, std::size_t grid) {
  const auto& m = a.multiplicity();
  double worst = 0.0;
  for (std::size_t t = 0; t < grid; ++t) {
    const Rational w = grid_point(t, grid);
    const auto k = static_cast<std::size_t>(std::min<std::int64_t>(m(w), static_cast<std::int64_t>(a.rows())));
    Eigen::MatrixXcd block(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j)(w);
    }
    if (k > 0) {
      const Eigen::MatrixXcd d = block.adjoint() * block - Eigen::MatrixXcd::Identity(k, k);
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if ((i < k) != (j < k)) worst = std::max(worst, std::abs(a(i, j)(w)));
      }
    }
  }
  return worst;
}

FilterMatrix conjugate_filter(const FilterMatrix& f, const FilterMatrix& a, double tol) {
  const std::size_t n = f.rows();
  if (f.cols() != n || a.rows() != n || a.cols() != n) {
    throw Error(ErrorCode::ContextMismatch, "conjugation needs square matrices of equal size");
  }
  const double defect = unitarity_defect(a);
  if (defect > tol) {
    std::ostringstream os;
    os << "multiplier fails block unitarity by " << defect;
    throw Error(ErrorCode::NotUnitary, os.str());
  }
  const auto dil = f.endomorphism().n();
  std::vector<std::vector<PiecewiseTrigPoly>> lifted(n, std::vector<PiecewiseTrigPoly>(n));
  std::vector<std::vector<PiecewiseTrigPoly>> adj(n, std::vector<PiecewiseTrigPoly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      lifted[i][j] = a(i, j).compose_endomorphism(dil);
      adj[i][j] = a(j, i).conj();
    }
  }
  FilterMatrix out(f.multiplicity(), f.endomorphism(), f.row_index(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      PiecewiseTrigPoly left;
      for (std::size_t k = 0; k < n; ++k) left += lifted[i][k] * f(k, l);
      if (left.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += left * adj[l][j];
    }
  }
  return out;
}

// ------------------------------------------------------------- completion

SampledFilter sample(const FilterMatrix& f, std::size_t quotient_grid) {
  SampledFilter out;
  out.n = f.endomorphism().n();
  out.quotient_grid = quotient_grid;
  out.rows = f.rows();
  out.cols = f.cols();
  const std::size_t size = out.grid_size();
  out.samples.assign(f.rows(), std::vector<std::vector<Complex>>(f.cols(), std::vector<Complex>(size)));
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = 0; j < f.cols(); ++j) {
      for (std::size_t s = 0; s < size; ++s) out.samples[i][j][s] = f(i, j)(grid_point(s, size));
    }
  }
  return out;
}

Completion complement_numeric(const FilterMatrix& h, std::size_t grid, double tol) {
  if (grid == 0) throw Error(ErrorCode::ParseError, "grid size must be positive");
  const auto& e = h.endomorphism();
  const auto& m = h.multiplicity();
  const auto mtilde = compute_mtilde(m, e);
  if (static_cast<std::int64_t>(h.rows()) < m.max_value() || static_cast<std::int64_t>(h.cols()) < m.max_value()) {
    throw Error(ErrorCode::ContextMismatch, "filter is smaller than the multiplicity");
  }
  const auto n = static_cast<std::size_t>(e.n());
  const double root_n = std::sqrt(static_cast<double>(n));

  SampledFilter g;
  g.n = e.n();
  g.quotient_grid = grid;
  g.rows = static_cast<std::size_t>(mtilde.max_value());
  g.cols = h.cols();
  g.samples.assign(g.rows, std::vector<std::vector<Complex>>(g.cols, std::vector<Complex>(g.grid_size())));

  for (std::size_t t = 0; t < grid; ++t) {
    const Rational w = grid_point(t, grid);
    // Coordinates (k, j): preimage k, column j < m(preimage).
    std::vector<std::pair<std::size_t, std::size_t>> coords;
    std::vector<Rational> preimages;
    for (std::size_t k = 0; k < n; ++k) {
      preimages.push_back((w + Rational(static_cast<std::int64_t>(k))) / Rational(e.n()));
      for (std::int64_t j = 0; j < m(preimages.back()); ++j) coords.emplace_back(k, static_cast<std::size_t>(j));
    }
    const auto dim = static_cast<Eigen::Index>(coords.size());
    std::vector<Eigen::VectorXcd> basis;
    for (std::int64_t i = 0; i < m(w); ++i) {
      Eigen::VectorXcd u(dim);
      for (Eigen::Index c = 0; c < dim; ++c) {
        const auto [k, j] = coords[static_cast<std::size_t>(c)];
        u(c) = h(static_cast<std::size_t>(i), j)(preimages[k]) / root_n;
      }
      basis.push_back(std::move(u));
    }
    const std::int64_t want = mtilde(w);
    std::vector<Eigen::VectorXcd> added;
    for (Eigen::Index c = 0; c < dim && static_cast<std::int64_t>(added.size()) < want; ++c) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Unit(dim, c);
      // Two passes of modified Gram-Schmidt.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) v -= b.dot(v) * b;
        for (const auto& b : added) v -= b.dot(v) * b;
      }
      const double norm = v.norm();
      if (norm > tol) added.push_back(v / norm);
    }
    if (static_cast<std::int64_t>(added.size()) < want) {
      throw Error(ErrorCode::CompletionFailed, "completion ran out of pivots at w = " + w.to_string() + " (" +
                                                   std::to_string(added.size()) + " of " + std::to_string(want) +
                                                   " vectors)");
    }
    for (std::size_t r = 0; r < added.size(); ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        const auto [k, j] = coords[static_cast<std::size_t>(c)];
        g.samples[r][j][t + k * grid] = root_n * added[r](c);
      }
    }
  }
  Completion out{std::move(g), {}};
  out.report = verify_complementary(out.g, h, tol);
  return out;
}

}  // namespace gmra
