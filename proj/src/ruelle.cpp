#include "gmra/ruelle.hpp"

#include <cmath>

#include "gmra/error.hpp"

namespace gmra {

namespace {

void require_same_shape(const SectionVector& a, const SectionVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ContextMismatch, "section vectors have different lengths");
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

SectionVector SectionVector::zero(std::vector<TorusSet> domains) {
  SectionVector v;
  v.components.resize(domains.size());
  v.domains = std::move(domains);
  return v;
}

SectionVector SectionVector::canonical(std::vector<TorusSet> domains, std::size_t i) {
  SectionVector v = zero(std::move(domains));
  v.components.at(i) = PiecewiseTrigPoly::indicator(v.domains[i]);
  return v;
}

SectionVector& SectionVector::operator+=(const SectionVector& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < size(); ++i) components[i] += o.components[i];
  return *this;
}

SectionVector& SectionVector::operator-=(const SectionVector& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < size(); ++i) components[i] -= o.components[i];
  return *this;
}

std::vector<TorusSet> column_domains(const FilterMatrix& f) {
  std::vector<TorusSet> out;
  for (std::size_t j = 0; j < f.cols(); ++j) out.push_back(f.column_domain(j));
  return out;
}

std::vector<TorusSet> row_domains(const FilterMatrix& f) {
  const auto rm = f.row_multiplicity();
  std::vector<TorusSet> out;
  for (std::size_t i = 0; i < f.rows(); ++i) out.push_back(rm.superlevel(static_cast<std::int64_t>(i) + 1));
  return out;
}

SectionVector apply_S(const FilterMatrix& f, const SectionVector& x) {
  if (x.size() != f.rows()) {
    throw Error(ErrorCode::ContextMismatch, "operator expects " + std::to_string(f.rows()) + " components, got " +
                                                std::to_string(x.size()));
  }
  const auto n = f.endomorphism().n();
  std::vector<PiecewiseTrigPoly> lifted;
  lifted.reserve(x.size());
  for (const auto& c : x.components) lifted.push_back(c.compose_endomorphism(n));
  SectionVector out = SectionVector::zero(column_domains(f));
  for (std::size_t j = 0; j < f.cols(); ++j) {
    PiecewiseTrigPoly sum;
    for (std::size_t i = 0; i < f.rows(); ++i) {
      if (!f(i, j).is_zero() && !lifted[i].is_zero()) sum += f(i, j) * lifted[i];
    }
    out.components[j] = sum.restrict_to(out.domains[j]);
  }
  return out;
}

SectionVector apply_S_adjoint(const FilterMatrix& f, const SectionVector& y) {
  if (y.size() != f.cols()) {
    throw Error(ErrorCode::ContextMismatch, "adjoint expects " + std::to_string(f.cols()) + " components, got " +
                                                std::to_string(y.size()));
  }
  const auto& e = f.endomorphism();
  const Complex scale = 1.0 / static_cast<double>(e.n());
  SectionVector out = SectionVector::zero(row_domains(f));
  for (std::size_t i = 0; i < f.rows(); ++i) {
    PiecewiseTrigPoly sum;
    for (std::size_t j = 0; j < f.cols(); ++j) {
      if (!f(i, j).is_zero() && !y.components[j].is_zero()) sum += fold(e, y.components[j], f(i, j));
    }
    out.components[i] = sum * scale;
  }
  return out;
}

Complex inner(const SectionVector& x, const SectionVector& y) {
  require_same_shape(x, y);
  Complex s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += inner(x.components[i], y.components[i]);
  return s;
}

double norm(const SectionVector& x) { return std::sqrt(std::max(0.0, inner(x, x).real())); }

Complex random_disc_point(std::mt19937_64& rng) {
  for (;;) {
    const double re = 2.0 * unit_double(rng) - 1.0;
    const double im = 2.0 * unit_double(rng) - 1.0;
    if (re * re + im * im < 1.0) return {re, im};
  }
}

SectionVector random_section(const std::vector<TorusSet>& domains, std::mt19937_64& rng, int degree) {
  SectionVector v = SectionVector::zero(domains);
  for (std::size_t i = 0; i < domains.size(); ++i) {
    std::vector<TrigPoly::Term> terms;
    for (int k = -degree; k <= degree; ++k) terms.emplace_back(Rational(k), random_disc_point(rng));
    v.components[i] = PiecewiseTrigPoly::on_set(domains[i], TrigPoly::from_terms(std::move(terms)));
  }
  return v;
}

VerificationReport cuntz_check(const FilterMatrix& h, const FilterMatrix& g, int trials, std::uint64_t seed,
                               double tol) {
  const auto v_domains = row_domains(h);
  const auto w_domains = row_domains(g);
  const auto target = column_domains(h);
  std::mt19937_64 rng(seed);

  std::vector<SectionVector> vs;
  std::vector<SectionVector> ws;
  std::vector<SectionVector> ts;
  for (std::size_t i = 0; i < v_domains.size(); ++i) vs.push_back(SectionVector::canonical(v_domains, i));
  for (std::size_t k = 0; k < w_domains.size(); ++k) ws.push_back(SectionVector::canonical(w_domains, k));
  for (std::size_t j = 0; j < target.size(); ++j) ts.push_back(SectionVector::canonical(target, j));
  for (int t = 0; t < trials; ++t) {
    vs.push_back(random_section(v_domains, rng));
    ws.push_back(random_section(w_domains, rng));
    ts.push_back(random_section(target, rng));
  }

  VerificationReport report;
  double hh = 0.0;
  double gg = 0.0;
  double hg = 0.0;
  double sum = 0.0;
  for (const auto& v : vs) hh = std::max(hh, norm(apply_S_adjoint(h, apply_S(h, v)) - v));
  for (const auto& w : ws) {
    const SectionVector image = apply_S(g, w);
    gg = std::max(gg, norm(apply_S_adjoint(g, image) - w));
    hg = std::max(hg, norm(apply_S_adjoint(h, image)));
  }
  for (const auto& x : ts) {
    const SectionVector back = apply_S(h, apply_S_adjoint(h, x)) + apply_S(g, apply_S_adjoint(g, x));
    sum = std::max(sum, norm(back - x));
  }
  report.record("SH*SH=I", hh, tol);
  report.record("SG*SG=I", gg, tol);
  report.record("SH*SG=0", hg, tol);
  report.record("SHSH*+SGSG*=I", sum, tol);
  return report;
}

}  // namespace gmra
