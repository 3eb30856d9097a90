#include "gmra/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Dense>

#include "gmra/error.hpp"

namespace gmra {

namespace {

constexpr int kMaxRadiusExponent = 40;

// Largest 2^-k <= r, or zero if r is below 2^-kMaxRadiusExponent.
Rational dyadic_below(double r) {
  if (!(r > 0.0)) return Rational(0);
  for (int k = 0; k <= kMaxRadiusExponent; ++k) {
    const double p = std::ldexp(1.0, -k);
    if (p <= r) return Rational(1, std::int64_t{1} << k);
  }
  return Rational(0);
}

TorusSet ball_in_cell(const Rational& x, const Rational& radius, const Rational& lo, const Rational& hi) {
  if (radius.is_zero()) return {};
  const Rational a = std::max(lo, x - radius);
  const Rational b = std::min(hi, x + radius);
  if (!(a < b)) return {};
  return TorusSet::from_intervals({{a, b}});
}

Rational sample_point(const Rational& lo, const Rational& hi, int s, int count) {
  return lo + (hi - lo) * Rational(2 * s + 1, 2 * count);
}

// Common refinement of every entry partition and of m and m(N .).
std::vector<Rational> block_breaks(const FilterMatrix& h) {
  std::vector<Rational> cuts = h.multiplicity().breaks();
  const auto lifted = compose_endomorphism(h.row_multiplicity(), h.endomorphism());
  cuts.insert(cuts.end(), lifted.breaks().begin(), lifted.breaks().end());
  for (const auto& row : h.entries()) {
    for (const auto& entry : row) cuts.insert(cuts.end(), entry.breaks().begin(), entry.breaks().end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// Active block of h on the refined cell starting at lo.
struct CellBlock {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<TrigPoly>> polys;
  bool constant = true;
  double lipschitz = 0.0;  // Frobenius norm of the entrywise Lipschitz bounds

  Eigen::MatrixXcd at(const Rational& x) const {
    Eigen::MatrixXcd b(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = polys[i][j](x);
    }
    return b;
  }
};

CellBlock block_on_cell(const FilterMatrix& h, const Rational& lo) {
  CellBlock c;
  const auto& e = h.endomorphism();
  c.cols = static_cast<std::size_t>(std::min<std::int64_t>(h.multiplicity()(lo), static_cast<std::int64_t>(h.cols())));
  c.rows = static_cast<std::size_t>(
      std::min<std::int64_t>(h.row_multiplicity()(lo * Rational(e.n())), static_cast<std::int64_t>(h.rows())));
  double l2 = 0.0;
  c.polys.assign(c.rows, std::vector<TrigPoly>(c.cols));
  for (std::size_t i = 0; i < c.rows; ++i) {
    for (std::size_t j = 0; j < c.cols; ++j) {
      c.polys[i][j] = h(i, j).poly_at(lo);
      c.constant = c.constant && c.polys[i][j].is_constant();
      const double l = c.polys[i][j].lipschitz_bound();
      l2 += l * l;
    }
  }
  c.lipschitz = std::sqrt(l2);
  return c;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& b) {
  if (b.size() == 0) return {};
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(b).singularValues();
}

double top_singular_value(const Eigen::MatrixXcd& b) {
  const auto sv = singular_values(b);
  return sv.size() == 0 ? 0.0 : sv(0);
}

FilterMatrix identity_multiplier(const FilterMatrix& h) {
  const std::size_t n = h.cols();
  FilterMatrix a(h.multiplicity(), h.endomorphism(), RowIndex::LowPass, n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = PiecewiseTrigPoly::indicator(h.column_domain(i));
  return a;
}

double entrywise_distance(const FilterMatrix& a, const FilterMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, (a(i, j) - b(i, j)).sup_bound());
  }
  return worst;
}

TorusSet multiplicity_difference(const MultiplicityFunction& a, const MultiplicityFunction& b) {
  std::vector<Rational> cuts = a.breaks();
  cuts.insert(cuts.end(), b.breaks().begin(), b.breaks().end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<TorusInterval> parts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (a(cuts[i]) != b(cuts[i])) parts.push_back({cuts[i], cuts[i + 1]});
  }
  return TorusSet::from_intervals(std::move(parts));
}

// Point of the sample grid where |p| is largest.
Rational strongest_point(const PiecewiseTrigPoly& p) {
  Rational best;
  double best_abs = -1.0;
  for (std::size_t c = 0; c < p.cell_count(); ++c) {
    for (int s = 0; s < 8; ++s) {
      const Rational x = sample_point(p.breaks()[c], p.breaks()[c + 1], s, 8);
      const double v = std::abs(p(x));
      if (v > best_abs) {
        best_abs = v;
        best = x;
      }
    }
  }
  return best;
}

std::optional<FilterMatrix> diagonal_phase_witness(const FilterMatrix& h, const FilterMatrix& h2, double tol,
                                                   std::size_t grid) {
  const std::size_t n = h.cols();
  if (h.rows() != n || h2.rows() != n || h2.cols() != n) return std::nullopt;
  // ratio[i][j] = d_i conj(d_j) wherever h_ij does not vanish.
  std::map<std::pair<std::size_t, std::size_t>, Complex> ratio;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (h(i, j).is_zero()) continue;
      const Rational x = strongest_point(h(i, j));
      ratio[{i, j}] = h2(i, j)(x) / h(i, j)(x);
    }
  }
  std::vector<std::optional<Complex>> phase(n);
  for (std::size_t start = 0; start < n; ++start) {
    if (phase[start]) continue;
    phase[start] = Complex(1.0, 0.0);
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (const auto& [key, r] : ratio) {
        const auto [a, b] = key;
        if (a == i && !phase[b]) {
          phase[b] = std::conj(r) * *phase[i];
          stack.push_back(b);
        } else if (b == i && !phase[a]) {
          phase[a] = r * *phase[i];
          stack.push_back(a);
        }
      }
    }
  }
  FilterMatrix a(h.multiplicity(), h.endomorphism(), RowIndex::LowPass, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex d = *phase[i] / std::abs(*phase[i]);
    a(i, i) = PiecewiseTrigPoly::indicator(h.column_domain(i), d);
  }
  if (witness_residual(h, h2, a, grid) > tol) return std::nullopt;
  return a;
}

}  // namespace

std::string_view to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::MultiplicityMismatch: return "MultiplicityMismatch";
    case ObstructionKind::ModuliMismatch: return "ModuliMismatch";
    case ObstructionKind::SingularValueMismatch: return "SingularValueMismatch";
    case ObstructionKind::ConstantRatio: return "ConstantRatio";
    case ObstructionKind::NoSolutionUpToDegree: return "NoSolutionUpToDegree";
  }
  return "?";
}

std::string_view to_string(EquivalenceKind k) {
  switch (k) {
    case EquivalenceKind::Equivalent: return "Equivalent";
    case EquivalenceKind::Inequivalent: return "Inequivalent";
    case EquivalenceKind::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view to_string(PurityKind k) {
  switch (k) {
    case PurityKind::Pure: return "Pure";
    case PurityKind::NotPure: return "NotPure";
    case PurityKind::Unknown: return "Unknown";
  }
  return "?";
}

TorusSet certified_exceedance(const PiecewiseTrigPoly& p, double threshold, int samples_per_cell) {
  TorusSet out;
  for (std::size_t c = 0; c < p.cell_count(); ++c) {
    const Rational& lo = p.breaks()[c];
    const Rational& hi = p.breaks()[c + 1];
    const TrigPoly& q = p.polys()[c];
    if (q.is_constant()) {
      if (std::abs(q.constant_term()) > threshold) out = out.unite(TorusSet::from_intervals({{lo, hi}}));
      continue;
    }
    const double lip = q.lipschitz_bound();
    for (int s = 0; s < samples_per_cell; ++s) {
      const Rational x = sample_point(lo, hi, s, samples_per_cell);
      const double margin = std::abs(q(x)) - threshold;
      if (margin <= 0.0) continue;
      // Half the exact radius absorbs rounding in the sampled value.
      out = out.unite(ball_in_cell(x, dyadic_below(0.5 * margin / lip), lo, hi));
    }
  }
  return out;
}

EigenfilterResult is_eigenfilter(const FilterMatrix& h, double tol) {
  if (h.rows() == 0 || h.cols() == 0) return {};
  const auto& lead = h(0, 0);
  if (!lead.is_single_piece() || !lead.polys()[0].is_constant()) return {};
  const Complex lambda = lead.polys()[0].constant_term();
  if (std::abs(std::abs(lambda) - 1.0) > tol) return {};
  for (std::size_t j = 1; j < h.cols(); ++j) {
    if (h(0, j).sup_bound() > tol) return {};
  }
  return {true, lambda};
}

PurityVerdict purity_test(const FilterMatrix& h, double tol) {
  PurityVerdict v;
  const auto& m = h.multiplicity();
  if (const auto eig = is_eigenfilter(h, tol); eig.eigen) {
    v.kind = PurityKind::NotPure;
    v.lambda = eig.lambda;
    v.eigenvector.assign(h.rows(), PiecewiseTrigPoly{});
    v.eigenvector[0] = PiecewiseTrigPoly::indicator(h.column_domain(0));
    v.reason = "first row is a unimodular constant followed by zeros";
    return v;
  }
  if (m == MultiplicityFunction::constant(1)) {
    const auto& f = h(0, 0);
    const PiecewiseTrigPoly defect = f * f.conj() - PiecewiseTrigPoly::constant(1.0);
    v.certificate = certified_exceedance(defect, tol);
    if (!v.certificate.is_empty()) {
      v.kind = PurityKind::Pure;
      v.reason = "|h|^2 differs from 1 on the certificate set";
    } else {
      v.reason = "|h| = 1 within tolerance wherever checked; no certificate";
    }
    return v;
  }
  const auto cuts = block_breaks(h);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const Rational& lo = cuts[c];
    const Rational& hi = cuts[c + 1];
    const CellBlock block = block_on_cell(h, lo);
    if (block.cols == 0) continue;
    if (block.rows == 0 || block.constant) {
      const double top = block.rows == 0 ? 0.0 : top_singular_value(block.at(lo));
      if (top < 1.0 - tol) v.certificate = v.certificate.unite(TorusSet::from_intervals({{lo, hi}}));
      continue;
    }
    for (int s = 0; s < 16; ++s) {
      const Rational x = sample_point(lo, hi, s, 16);
      const double margin = 1.0 - tol - top_singular_value(block.at(x));
      if (margin <= 0.0) continue;
      v.certificate = v.certificate.unite(ball_in_cell(x, dyadic_below(0.5 * margin / block.lipschitz), lo, hi));
    }
  }
  if (!v.certificate.is_empty()) {
    v.kind = PurityKind::Pure;
    v.reason = "top singular value of the active block is below 1 on the certificate set";
  } else {
    v.reason = "active block has norm 1 within tolerance wherever checked; no certificate";
  }
  return v;
}

std::optional<Obstruction> invariant_check(const FilterMatrix& h, const FilterMatrix& h2, double tol) {
  if (!(h.endomorphism() == h2.endomorphism())) {
    throw Error(ErrorCode::ContextMismatch, "filters use different dilations");
  }
  if (!(h.multiplicity() == h2.multiplicity())) {
    Obstruction o;
    o.kind = ObstructionKind::MultiplicityMismatch;
    o.where = multiplicity_difference(h.multiplicity(), h2.multiplicity());
    o.detail = "multiplicities differ on " + o.where.to_string();
    return o;
  }
  if (h.multiplicity() == MultiplicityFunction::constant(1)) {
    const PiecewiseTrigPoly d = h(0, 0) * h(0, 0).conj() - h2(0, 0) * h2(0, 0).conj();
    TorusSet where = certified_exceedance(d, tol);
    if (!where.is_empty()) {
      Obstruction o;
    o.kind = ObstructionKind::ModuliMismatch;
      o.where = std::move(where);
      o.detail = "|h|^2 - |h'|^2 exceeds tolerance on " + o.where.to_string();
      return o;
    }
    return std::nullopt;
  }
  std::vector<Rational> cuts = block_breaks(h);
  const auto other = block_breaks(h2);
  cuts.insert(cuts.end(), other.begin(), other.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  TorusSet where;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const Rational& lo = cuts[c];
    const Rational& hi = cuts[c + 1];
    const CellBlock a = block_on_cell(h, lo);
    const CellBlock b = block_on_cell(h2, lo);
    if (a.cols == 0 || a.rows == 0) continue;
    const bool exact = a.constant && b.constant;
    const int count = exact ? 1 : 16;
    for (int s = 0; s < count; ++s) {
      const Rational x = sample_point(lo, hi, s, count);
      const Eigen::VectorXd sa = singular_values(a.at(x));
      const Eigen::VectorXd sb = singular_values(b.at(x));
      const double gap = (sa - sb).cwiseAbs().maxCoeff();
      if (gap <= tol) continue;
      if (exact) {
        where = where.unite(TorusSet::from_intervals({{lo, hi}}));
      } else {
        // Singular values move by at most the spectral (hence Frobenius) change.
        where = where.unite(ball_in_cell(x, dyadic_below(0.5 * (gap - tol) / (a.lipschitz + b.lipschitz)), lo, hi));
      }
    }
  }
  if (where.is_empty()) return std::nullopt;
  Obstruction o;
    o.kind = ObstructionKind::SingularValueMismatch;
  o.where = std::move(where);
  o.detail = "singular values of the active blocks differ on " + o.where.to_string();
  return o;
}

std::optional<Obstruction> constant_ratio_obstruction(const FilterMatrix& h, const FilterMatrix& h2, double tol) {
  if (!h.is_scalar() || !h2.is_scalar()) throw Error(ErrorCode::NotApplicable, "constant ratio test needs 1x1 filters");
  const auto& f = h(0, 0);
  const auto& f2 = h2(0, 0);
  for (std::size_t c = 0; c < f.cell_count(); ++c) {
    if (f.polys()[c].is_zero()) {
      throw Error(ErrorCode::NotApplicable, "filter vanishes on [" + f.breaks()[c].to_string() + "," +
                                                f.breaks()[c + 1].to_string() + ")");
    }
  }
  const Rational x = strongest_point(f);
  const Complex ratio = f2(x) / f(x);
  const double spread = (f2 - f * ratio).sup_bound();
  if (spread > tol) {
    std::ostringstream os;
    os << "ratio is not constant (residual " << spread << ")";
    throw Error(ErrorCode::NotApplicable, os.str());
  }
  if (std::abs(std::abs(ratio) - 1.0) > tol) throw Error(ErrorCode::NotApplicable, "ratio is not unimodular");
  if (std::abs(ratio - 1.0) <= tol) return std::nullopt;
  Obstruction o;
    o.kind = ObstructionKind::ConstantRatio;
  o.ratio = ratio;
  std::ostringstream os;
  os << "h' = c h with c = " << ratio.real() << (ratio.imag() < 0 ? " - " : " + ") << std::abs(ratio.imag()) << "i";
  o.detail = os.str();
  return o;
}

std::optional<CoboundaryWitness> coboundary_solve(const FilterMatrix& h, const FilterMatrix& h2, int max_degree,
                                                  double tol) {
  if (!h.is_scalar() || !h2.is_scalar()) throw Error(ErrorCode::NotApplicable, "coboundary search needs 1x1 filters");
  const auto& f = h(0, 0);
  const auto& f2 = h2(0, 0);
  if (!f.is_single_piece() || !f2.is_single_piece() || !f.has_integer_frequencies() ||
      !f2.has_integer_frequencies()) {
    throw Error(ErrorCode::NotApplicable, "coboundary search needs single-piece integer-frequency filters");
  }
  const std::int64_t n = h.endomorphism().n();
  const auto unknowns = static_cast<Eigen::Index>(2 * max_degree + 1);
  // Coefficient of e_freq in h2(w) a(w) - a(N w) h(w).
  std::map<std::int64_t, std::vector<std::pair<Eigen::Index, Complex>>> rows;
  for (int k = -max_degree; k <= max_degree; ++k) {
    const Eigen::Index col = k + max_degree;
    for (const auto& [freq, c] : f2.polys()[0].terms()) rows[freq.num() + k].emplace_back(col, c);
    for (const auto& [freq, c] : f.polys()[0].terms()) rows[freq.num() + n * k].emplace_back(col, -c);
  }
  Eigen::MatrixXcd system = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()), unknowns);
  Eigen::Index r = 0;
  for (const auto& [freq, entries] : rows) {
    for (const auto& [col, c] : entries) system(r, col) += c;
    ++r;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system, Eigen::ComputeFullV);
  Eigen::VectorXcd null = svd.matrixV().col(unknowns - 1);
  if ((system * null).norm() > tol) return std::nullopt;

  null /= null.norm();
  Eigen::Index lead = 0;
  null.cwiseAbs().maxCoeff(&lead);
  null *= std::conj(null(lead)) / std::abs(null(lead));
  std::vector<TrigPoly::Term> terms;
  for (Eigen::Index k = 0; k < unknowns; ++k) terms.emplace_back(Rational(k - max_degree), null(k));
  CoboundaryWitness w{TrigPoly::from_terms(std::move(terms)), 0.0};

  FilterMatrix a(h.multiplicity(), h.endomorphism(), RowIndex::LowPass, 1, 1);
  a(0, 0) = PiecewiseTrigPoly(w.multiplier);
  w.residual = std::max(witness_residual(h, h2, a), unitarity_defect(a, 1024));
  if (w.residual > tol) return std::nullopt;
  return w;
}

double witness_residual(const FilterMatrix& h, const FilterMatrix& h2, const FilterMatrix& a, std::size_t grid) {
  const auto n = static_cast<Eigen::Index>(h.cols());
  if (static_cast<Eigen::Index>(h.rows()) != n || h2.rows() != h.rows() || h2.cols() != h.cols() ||
      static_cast<Eigen::Index>(a.rows()) != n || static_cast<Eigen::Index>(a.cols()) != n) {
    return std::numeric_limits<double>::infinity();
  }
  const Rational dil(h.endomorphism().n());
  auto eval = [n](const FilterMatrix& f, const Rational& x) {
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) out(i, j) = f(static_cast<std::size_t>(i), static_cast<std::size_t>(j))(x);
    }
    return out;
  };
  double worst = 0.0;
  for (std::size_t t = 0; t < grid; ++t) {
    const Rational x(static_cast<std::int64_t>(2 * t + 1), static_cast<std::int64_t>(2 * grid));
    const Eigen::MatrixXcd d = eval(a, x * dil) * eval(h, x) * eval(a, x).adjoint() - eval(h2, x);
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  return worst;
}

EquivalenceVerdict decide(const FilterMatrix& h, const FilterMatrix& h2, const EquivalenceOptions& options) {
  EquivalenceVerdict v;
  if (auto o = invariant_check(h, h2, options.tol)) {
    v.kind = EquivalenceKind::Inequivalent;
    v.detail = o->detail;
    v.obstruction = std::move(o);
    return v;
  }
  if (entrywise_distance(h, h2) <= options.tol) {
    v.kind = EquivalenceKind::Equivalent;
    v.witness = identity_multiplier(h);
    v.witness_residual = witness_residual(h, h2, *v.witness, options.grid);
    v.detail = "filters coincide";
    return v;
  }
  if (h.is_scalar() && h2.is_scalar()) {
    try {
      if (auto o = constant_ratio_obstruction(h, h2, options.tol)) {
        v.kind = EquivalenceKind::Inequivalent;
        v.detail = o->detail;
        v.obstruction = std::move(o);
        return v;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotApplicable) throw;
    }
    try {
      if (auto w = coboundary_solve(h, h2, options.max_degree, options.tol)) {
        v.kind = EquivalenceKind::Equivalent;
        FilterMatrix a(h.multiplicity(), h.endomorphism(), RowIndex::LowPass, 1, 1);
        a(0, 0) = PiecewiseTrigPoly(w->multiplier);
        v.witness = std::move(a);
        v.witness_residual = w->residual;
        v.detail = "coboundary multiplier found";
        return v;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotApplicable) throw;
    }
  } else if (auto a = diagonal_phase_witness(h, h2, options.tol, options.grid)) {
    v.kind = EquivalenceKind::Equivalent;
    v.witness_residual = witness_residual(h, h2, *a, options.grid);
    v.witness = std::move(a);
    v.detail = "constant diagonal multiplier found";
    return v;
  }
  Obstruction o;
    o.kind = ObstructionKind::NoSolutionUpToDegree;
  o.degree = options.max_degree;
  o.detail = "no multiplier found up to degree " + std::to_string(options.max_degree);
  v.kind = EquivalenceKind::Unknown;
  v.detail = o.detail;
  v.obstruction = std::move(o);
  return v;
}

}  // namespace gmra
