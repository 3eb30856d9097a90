#include "gmra/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gmra/error.hpp"

namespace gmra {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<Rational> merged_breaks(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Walk the refinement of two partitions cell by cell; op receives the two
// polynomials active on each refined cell.
template <typename Op>
PiecewiseTrigPoly combine(const PiecewiseTrigPoly& a, const PiecewiseTrigPoly& b, Op op) {
  std::vector<Rational> cuts = merged_breaks(a.breaks(), b.breaks());
  std::vector<TrigPoly> polys;
  polys.reserve(cuts.size() - 1);
  std::size_t ia = 0;
  std::size_t ib = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    while (a.breaks()[ia + 1] <= cuts[i]) ++ia;
    while (b.breaks()[ib + 1] <= cuts[i]) ++ib;
    polys.push_back(op(a.polys()[ia], b.polys()[ib]));
  }
  return PiecewiseTrigPoly::from_cells(std::move(cuts), std::move(polys));
}

}  // namespace

Complex unit_phase(const Rational& r) {
  const Rational f = r.frac();
  if (f.is_zero()) return {1.0, 0.0};
  if (f == Rational(1, 4)) return {0.0, 1.0};
  if (f == Rational(1, 2)) return {-1.0, 0.0};
  if (f == Rational(3, 4)) return {0.0, -1.0};
  const double angle = kTwoPi * f.to_double();
  return {std::cos(angle), std::sin(angle)};
}

// ---------------------------------------------------------------- TrigPoly

TrigPoly TrigPoly::constant(Complex c) { return exponential(Rational(0), c); }

TrigPoly TrigPoly::exponential(const Rational& freq, Complex c) { return from_terms({{freq, c}}); }

TrigPoly TrigPoly::from_terms(std::vector<Term> terms) {
  TrigPoly p;
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void TrigPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return std::abs(t.second) <= kRoundoffFloor; });
  terms_ = std::move(out);
}

bool TrigPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_zero());
}

Complex TrigPoly::constant_term() const {
  for (const auto& [f, c] : terms_) {
    if (f.is_zero()) return c;
  }
  return {};
}

bool TrigPoly::has_integer_frequencies() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first.is_integer(); });
}

Complex TrigPoly::operator()(const Rational& x) const {
  Complex s{};
  for (const auto& [f, c] : terms_) s += c * unit_phase(f * x);
  return s;
}

Complex TrigPoly::operator()(double x) const {
  Complex s{};
  for (const auto& [f, c] : terms_) {
    const double angle = kTwoPi * f.to_double() * x;
    s += c * Complex(std::cos(angle), std::sin(angle));
  }
  return s;
}

TrigPoly TrigPoly::operator-() const {
  TrigPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  canonicalize();
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) { return *this += -o; }

TrigPoly& TrigPoly::operator*=(Complex s) {
  for (auto& t : terms_) t.second *= s;
  canonicalize();
  return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  std::vector<TrigPoly::Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [fa, ca] : a.terms_) {
    for (const auto& [fb, cb] : b.terms_) terms.emplace_back(fa + fb, ca * cb);
  }
  return TrigPoly::from_terms(std::move(terms));
}

TrigPoly TrigPoly::conj() const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& [f, c] : terms_) terms.emplace_back(-f, std::conj(c));
  return from_terms(std::move(terms));
}

TrigPoly TrigPoly::translate(const Rational& shift) const {
  std::vector<Term> terms = terms_;
  for (auto& [f, c] : terms) c *= unit_phase(f * shift);
  return from_terms(std::move(terms));
}

TrigPoly TrigPoly::branch(std::int64_t n, std::int64_t j) const {
  // c e(nu (x + j)/N) = c e(nu j / N) e((nu/N) x)
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  const Rational rn(n);
  for (const auto& [f, c] : terms_) terms.emplace_back(f / rn, c * unit_phase(f * Rational(j) / rn));
  return from_terms(std::move(terms));
}

TrigPoly TrigPoly::dilate(std::int64_t n, std::int64_t k) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& [f, c] : terms_) terms.emplace_back(f * Rational(n), c * unit_phase(-f * Rational(k)));
  return from_terms(std::move(terms));
}

double TrigPoly::l1_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.second);
  return s;
}

double TrigPoly::lipschitz_bound() const {
  double s = 0.0;
  for (const auto& [f, c] : terms_) s += std::abs(f.to_double()) * std::abs(c);
  return kTwoPi * s;
}

Complex TrigPoly::integral(const Rational& a, const Rational& b) const {
  Complex s{};
  for (const auto& [f, c] : terms_) {
    if (f.is_zero()) {
      s += c * (b - a).to_double();
    } else {
      s += c * (unit_phase(f * b) - unit_phase(f * a)) / Complex(0.0, kTwoPi * f.to_double());
    }
  }
  return s;
}

TrigPoly TrigPoly::pruned(double eps) const {
  TrigPoly p = *this;
  std::erase_if(p.terms_, [eps](const Term& t) { return std::abs(t.second) <= eps; });
  return p;
}

// ------------------------------------------------------- PiecewiseTrigPoly

PiecewiseTrigPoly::PiecewiseTrigPoly() : breaks_{Rational(0), Rational(1)}, polys_(1) {}

PiecewiseTrigPoly::PiecewiseTrigPoly(TrigPoly p) : breaks_{Rational(0), Rational(1)}, polys_{std::move(p)} {}

PiecewiseTrigPoly PiecewiseTrigPoly::indicator(const TorusSet& s, Complex c) {
  return on_set(s, TrigPoly::constant(c));
}

PiecewiseTrigPoly PiecewiseTrigPoly::on_set(const TorusSet& s, const TrigPoly& p) {
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  const auto bp = s.breakpoints();
  cuts.insert(cuts.end(), bp.begin(), bp.end());
  sort_unique(cuts);
  std::vector<TrigPoly> polys;
  polys.reserve(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) polys.push_back(s.contains(cuts[i]) ? p : TrigPoly{});
  return from_cells(std::move(cuts), std::move(polys));
}

PiecewiseTrigPoly PiecewiseTrigPoly::from_cells(std::vector<Rational> breaks, std::vector<TrigPoly> polys) {
  if (breaks.size() != polys.size() + 1 || breaks.front() != Rational(0) || breaks.back() != Rational(1)) {
    throw Error(ErrorCode::ParseError, "cells must partition [0,1)");
  }
  PiecewiseTrigPoly f;
  f.breaks_ = std::move(breaks);
  f.polys_ = std::move(polys);
  f.canonicalize();
  return f;
}

PiecewiseTrigPoly PiecewiseTrigPoly::from_real_pieces(const std::vector<RealPiece>& pieces) {
  PiecewiseTrigPoly out;
  TorusSet covered;
  for (const auto& piece : pieces) {
    if (!(piece.lo < piece.hi) || piece.hi - piece.lo > Rational(1)) {
      throw Error(ErrorCode::ParseError, "piece [" + piece.lo.to_string() + "," + piece.hi.to_string() +
                                             ") must have length in (0,1]");
    }
    for (std::int64_t n = piece.lo.floor(); Rational(n) < piece.hi; ++n) {
      const Rational lo = std::max(piece.lo, Rational(n)) - Rational(n);
      const Rational hi = std::min(piece.hi, Rational(n + 1)) - Rational(n);
      if (!(lo < hi)) continue;
      const TorusSet cell = TorusSet::from_intervals({{lo, hi}});
      if (!covered.intersect(cell).is_empty()) {
        throw Error(ErrorCode::ParseError, "pieces overlap on " + covered.intersect(cell).to_string());
      }
      covered = covered.unite(cell);
      // x = w + n on this part of the piece.
      out += on_set(cell, piece.poly.translate(Rational(n)));
    }
  }
  return out;
}

void PiecewiseTrigPoly::canonicalize() {
  std::vector<Rational> breaks{breaks_.front()};
  std::vector<TrigPoly> polys;
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    if (!polys.empty() && polys.back() == polys_[i]) {
      breaks.back() = breaks_[i + 1];
    } else {
      polys.push_back(std::move(polys_[i]));
      breaks.push_back(breaks_[i + 1]);
    }
  }
  breaks_ = std::move(breaks);
  polys_ = std::move(polys);
}

std::size_t PiecewiseTrigPoly::cell_of(const Rational& w) const {
  const Rational x = w.frac();
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return static_cast<std::size_t>(std::distance(breaks_.begin(), it)) - 1;
}

Complex PiecewiseTrigPoly::operator()(const Rational& w) const {
  const Rational x = w.frac();
  return polys_[cell_of(x)](x);
}

Complex PiecewiseTrigPoly::operator()(double w) const {
  const double x = w - std::floor(w);
  std::size_t k = 0;
  while (k + 1 < polys_.size() && breaks_[k + 1].to_double() <= x) ++k;
  return polys_[k](x);
}

bool PiecewiseTrigPoly::has_integer_frequencies() const {
  return std::all_of(polys_.begin(), polys_.end(), [](const TrigPoly& p) { return p.has_integer_frequencies(); });
}

PiecewiseTrigPoly PiecewiseTrigPoly::operator-() const {
  PiecewiseTrigPoly f = *this;
  for (auto& p : f.polys_) p = -p;
  return f;
}

PiecewiseTrigPoly& PiecewiseTrigPoly::operator+=(const PiecewiseTrigPoly& o) {
  *this = combine(*this, o, [](const TrigPoly& a, const TrigPoly& b) { return a + b; });
  return *this;
}

PiecewiseTrigPoly& PiecewiseTrigPoly::operator-=(const PiecewiseTrigPoly& o) {
  *this = combine(*this, o, [](const TrigPoly& a, const TrigPoly& b) { return a - b; });
  return *this;
}

PiecewiseTrigPoly& PiecewiseTrigPoly::operator*=(Complex s) {
  for (auto& p : polys_) p *= s;
  canonicalize();
  return *this;
}

PiecewiseTrigPoly operator*(const PiecewiseTrigPoly& a, const PiecewiseTrigPoly& b) {
  return combine(a, b, [](const TrigPoly& x, const TrigPoly& y) { return x * y; });
}

PiecewiseTrigPoly PiecewiseTrigPoly::conj() const {
  PiecewiseTrigPoly f = *this;
  for (auto& p : f.polys_) p = p.conj();
  return f;
}

PiecewiseTrigPoly PiecewiseTrigPoly::restrict_to(const TorusSet& s) const { return *this * indicator(s); }

PiecewiseTrigPoly PiecewiseTrigPoly::compose_endomorphism(std::int64_t n) const {
  // On [(a + k)/N, (b + k)/N) the argument N w - k runs over the cell [a, b).
  std::vector<Rational> cuts;
  std::vector<TrigPoly> polys;
  cuts.reserve(polys_.size() * static_cast<std::size_t>(n) + 1);
  cuts.push_back(Rational(0));
  const Rational rn(n);
  for (std::int64_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      cuts.push_back((breaks_[i + 1] + Rational(k)) / rn);
      polys.push_back(polys_[i].dilate(n, k));
    }
  }
  return from_cells(std::move(cuts), std::move(polys));
}

PiecewiseTrigPoly PiecewiseTrigPoly::branch(std::int64_t n, std::int64_t j) const {
  // w in [0,1) maps to x = (w + j)/N in [j/N, (j+1)/N); cell [a, b) of f
  // pulls back to [N a - j, N b - j) clipped to [0, 1).
  const Rational rn(n);
  const Rational lo(j, n);
  const Rational hi(j + 1, n);
  std::vector<Rational> cuts{Rational(0)};
  std::vector<TrigPoly> polys;
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    if (breaks_[i + 1] <= lo || breaks_[i] >= hi) continue;
    const Rational end = std::min(breaks_[i + 1], hi) * rn - Rational(j);
    cuts.push_back(end);
    polys.push_back(polys_[i].branch(n, j));
  }
  return from_cells(std::move(cuts), std::move(polys));
}

TorusSet PiecewiseTrigPoly::support(double eps) const {
  std::vector<TorusInterval> parts;
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    const auto& terms = polys_[i].terms();
    const bool nonzero =
        std::any_of(terms.begin(), terms.end(), [eps](const TrigPoly::Term& t) { return std::abs(t.second) > eps; });
    if (nonzero) parts.push_back({breaks_[i], breaks_[i + 1]});
  }
  return TorusSet::from_intervals(std::move(parts));
}

double PiecewiseTrigPoly::sup_bound() const {
  double m = 0.0;
  for (const auto& p : polys_) m = std::max(m, p.l1_norm());
  return m;
}

Complex PiecewiseTrigPoly::integral() const {
  Complex s{};
  for (std::size_t i = 0; i < polys_.size(); ++i) s += polys_[i].integral(breaks_[i], breaks_[i + 1]);
  return s;
}

PiecewiseTrigPoly PiecewiseTrigPoly::pruned(double eps) const {
  PiecewiseTrigPoly f = *this;
  for (auto& p : f.polys_) p = p.pruned(eps);
  f.canonicalize();
  return f;
}

std::vector<PiecewiseTrigPoly::RealPiece> PiecewiseTrigPoly::display(Convention c) const {
  std::vector<RealPiece> out;
  const Rational half(1, 2);
  const Rational one(1);
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    if (polys_[i].is_zero()) continue;
    const Rational& a = breaks_[i];
    const Rational& b = breaks_[i + 1];
    if (c == Convention::Unit || b <= half) {
      out.push_back({a, b, polys_[i]});
      continue;
    }
    // Displayed coordinate x = w - 1 on [1/2, 1), so p(w) = p(x + 1).
    const TrigPoly shifted = polys_[i].translate(one);
    if (a >= half) {
      out.push_back({a - one, b - one, shifted});
    } else {
      out.push_back({a, half, polys_[i]});
      out.push_back({half - one, b - one, shifted});
    }
  }
  std::sort(out.begin(), out.end(), [](const RealPiece& x, const RealPiece& y) { return x.lo < y.lo; });
  return out;
}

Complex inner(const PiecewiseTrigPoly& f, const PiecewiseTrigPoly& g) { return (f * g.conj()).integral(); }

PiecewiseTrigPoly fold(const TorusEndomorphism& e, const PiecewiseTrigPoly& f, const PiecewiseTrigPoly& g) {
  const PiecewiseTrigPoly prod = f * g.conj();
  PiecewiseTrigPoly out;
  for (std::int64_t j = 0; j < e.n(); ++j) out += prod.branch(e.n(), j);
  return out;
}

}  // namespace gmra
