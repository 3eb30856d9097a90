#include "gmra/multiplicity.hpp"

#include <algorithm>

#include "gmra/error.hpp"

namespace gmra {

namespace {

std::vector<Rational> unit_breaks() { return {Rational(0), Rational(1)}; }

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Apply op cellwise over the common refinement of two step functions.
template <typename Op>
MultiplicityFunction combine(const MultiplicityFunction& a, const MultiplicityFunction& b, Op op) {
  std::vector<Rational> cuts = a.breaks();
  cuts.insert(cuts.end(), b.breaks().begin(), b.breaks().end());
  sort_unique(cuts);
  std::vector<std::int64_t> vals;
  vals.reserve(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) vals.push_back(op(a(cuts[i]), b(cuts[i])));
  return MultiplicityFunction::from_cells(std::move(cuts), std::move(vals));
}

}  // namespace

MultiplicityFunction::MultiplicityFunction() : breaks_(unit_breaks()), values_{0} {}

MultiplicityFunction MultiplicityFunction::constant(std::int64_t value) {
  return from_cells(unit_breaks(), {value});
}

MultiplicityFunction MultiplicityFunction::from_cells(std::vector<Rational> breaks, std::vector<std::int64_t> values) {
  if (breaks.size() != values.size() + 1 || breaks.front() != Rational(0) || breaks.back() != Rational(1)) {
    throw Error(ErrorCode::ParseError, "multiplicity cells must partition [0,1)");
  }
  MultiplicityFunction f;
  f.breaks_.assign(1, breaks.front());
  f.values_.clear();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0) throw Error(ErrorCode::ParseError, "multiplicity values must be nonnegative");
    if (!(breaks[i] < breaks[i + 1])) throw Error(ErrorCode::ParseError, "multiplicity breakpoints must increase");
    if (!f.values_.empty() && f.values_.back() == values[i]) {
      f.breaks_.back() = breaks[i + 1];
    } else {
      f.values_.push_back(values[i]);
      f.breaks_.push_back(breaks[i + 1]);
    }
  }
  return f;
}

MultiplicityFunction MultiplicityFunction::from_pieces(const std::vector<Piece>& pieces) {
  std::vector<Rational> cuts = unit_breaks();
  TorusSet covered;
  for (const auto& p : pieces) {
    if (!covered.intersect(p.set).is_empty()) {
      throw Error(ErrorCode::ParseError, "multiplicity pieces overlap on " + covered.intersect(p.set).to_string());
    }
    covered = covered.unite(p.set);
    const auto bp = p.set.breakpoints();
    cuts.insert(cuts.end(), bp.begin(), bp.end());
  }
  sort_unique(cuts);
  std::vector<std::int64_t> vals(cuts.size() - 1, 0);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    for (const auto& p : pieces) {
      if (p.set.contains(cuts[i])) {
        vals[i] = p.value;
        break;
      }
    }
  }
  return from_cells(std::move(cuts), std::move(vals));
}

std::int64_t MultiplicityFunction::operator()(const Rational& w) const {
  const Rational x = w.frac();
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return values_[static_cast<std::size_t>(std::distance(breaks_.begin(), it)) - 1];
}

std::int64_t MultiplicityFunction::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

TorusSet MultiplicityFunction::superlevel(std::int64_t level) const {
  std::vector<TorusInterval> parts;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] >= level) parts.push_back({breaks_[i], breaks_[i + 1]});
  }
  return TorusSet::from_intervals(std::move(parts));
}

Rational MultiplicityFunction::integral() const {
  Rational total;
  for (std::size_t i = 0; i < values_.size(); ++i) total += Rational(values_[i]) * (breaks_[i + 1] - breaks_[i]);
  return total;
}

std::vector<MultiplicityFunction::Piece> MultiplicityFunction::pieces() const {
  std::vector<Piece> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == 0) continue;
    const TorusSet cell = TorusSet::from_intervals({{breaks_[i], breaks_[i + 1]}});
    auto it = std::find_if(out.begin(), out.end(), [&](const Piece& p) { return p.value == values_[i]; });
    if (it == out.end()) {
      out.push_back({cell, values_[i]});
    } else {
      it->set = it->set.unite(cell);
    }
  }
  return out;
}

MultiplicityFunction fold_multiplicity(const MultiplicityFunction& m, const TorusEndomorphism& e) {
  const Rational n(e.n());
  std::vector<Rational> cuts = unit_breaks();
  for (const auto& b : m.breaks()) cuts.push_back((b * n).frac());
  sort_unique(cuts);
  std::vector<std::int64_t> vals;
  vals.reserve(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // Every branch (cuts[i] + k)/N of this cell stays inside one cell of m.
    std::int64_t sum = 0;
    for (const auto& z : e.preimages(TorusPoint(cuts[i]))) sum += m(z.value());
    vals.push_back(sum);
  }
  return MultiplicityFunction::from_cells(std::move(cuts), std::move(vals));
}

MultiplicityFunction compose_endomorphism(const MultiplicityFunction& m, const TorusEndomorphism& e) {
  const Rational n(e.n());
  std::vector<Rational> cuts = unit_breaks();
  for (const auto& b : m.breaks()) {
    for (std::int64_t k = 0; k < e.n(); ++k) cuts.push_back((b + Rational(k)) / n);
  }
  sort_unique(cuts);
  std::vector<std::int64_t> vals;
  vals.reserve(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) vals.push_back(m(cuts[i] * n));
  return MultiplicityFunction::from_cells(std::move(cuts), std::move(vals));
}

ConsistencyReport check_consistency(const MultiplicityFunction& m, const TorusEndomorphism& e) {
  const auto folded = fold_multiplicity(m, e);
  const auto deficit = combine(m, folded, [](std::int64_t a, std::int64_t b) { return a > b ? 1 : 0; });
  ConsistencyReport r;
  r.violation = deficit.support();
  r.holds = r.violation.is_empty();
  return r;
}

MultiplicityFunction compute_mtilde(const MultiplicityFunction& m, const TorusEndomorphism& e) {
  const auto report = check_consistency(m, e);
  if (!report.holds) {
    throw Error(ErrorCode::ConsistencyViolated, "consistency inequality fails on " + report.violation.to_string());
  }
  return combine(fold_multiplicity(m, e), m, [](std::int64_t a, std::int64_t b) { return a - b; });
}

std::vector<TorusSet> sigma_sets(const MultiplicityFunction& m) {
  std::vector<TorusSet> out;
  for (std::int64_t i = 1; i <= m.max_value(); ++i) out.push_back(m.superlevel(i));
  return out;
}

std::vector<TorusSet> sigma_tilde_sets(const MultiplicityFunction& m, const TorusEndomorphism& e) {
  return sigma_sets(compute_mtilde(m, e));
}

TorusSet strict_set(const MultiplicityFunction& m, const TorusEndomorphism& e) {
  return compute_mtilde(m, e).support();
}

}  // namespace gmra
