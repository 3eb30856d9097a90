#include "gmra/gmra.hpp"

#include <cmath>
#include <sstream>

#include "gmra/error.hpp"

namespace gmra {

namespace {

SectionVector slice(const LedgerVector& v, const std::vector<SpaceSlot>& slots, std::size_t from, std::size_t count) {
  SectionVector out;
  for (std::size_t i = from; i < from + count; ++i) {
    out.components.push_back(v.components[i]);
    out.domains.push_back(slots[i].base);
  }
  return out;
}

const FilterMatrix& exact_high_pass(const CanonicalGMRA& g) {
  if (!g.has_exact_high_pass()) {
    throw Error(ErrorCode::UnsupportedRepresentation, "operation needs the high-pass filter in piecewise form");
  }
  return std::get<FilterMatrix>(g.high_pass());
}

void require_shape(const CanonicalGMRA& g, const LedgerVector& v) {
  if (v.components.size() != g.branch_ledger().size()) {
    throw Error(ErrorCode::ContextMismatch, "ledger vector has " + std::to_string(v.components.size()) +
                                                " components, ledger has " +
                                                std::to_string(g.branch_ledger().size()) + " slots");
  }
}

}  // namespace

std::string SpaceSlot::label() const {
  std::ostringstream os;
  os << (kind == SlotKind::Scaling ? "V0" : "W" + std::to_string(level)) << '[' << component << ']';
  for (const auto& z : branch) os << '/' << z.value();
  return os.str();
}

std::string ledger_shape(const CanonicalGMRA& g) {
  std::string out;
  for (const auto& s : g.ledger()) {
    if (!out.empty()) out += " + ";
    const std::string scale = s.weight > 1 ? std::to_string(s.weight) : "";
    if (s.base.is_full()) {
      out += "L2(" + scale + "T)";
    } else {
      out += "L2(" + (scale.empty() ? "" : scale + " ") + s.base.to_string(Convention::Centered) + ")";
    }
  }
  return out;
}

std::vector<SpaceSlot> dilate_space(const std::vector<SpaceSlot>& slots, const TorusEndomorphism& e) {
  std::vector<SpaceSlot> out;
  for (const auto& s : slots) {
    for (auto& [zeta, piece] : e.tau_partition(s.base)) {
      SpaceSlot child = s;
      child.level = s.level + 1;
      child.branch.push_back(zeta);
      child.base = e.image_set(piece);
      child.weight = s.weight * e.n();
      out.push_back(std::move(child));
    }
  }
  return out;
}

MultiplicityFunction CanonicalGMRA::scaling_multiplicity() const {
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  for (std::size_t i = 0; i < scaling_count_; ++i) {
    const auto bp = slots_[i].base.breakpoints();
    cuts.insert(cuts.end(), bp.begin(), bp.end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<std::int64_t> values;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < scaling_count_; ++i) count += slots_[i].base.contains(cuts[c]) ? 1 : 0;
    values.push_back(count);
  }
  return MultiplicityFunction::from_cells(std::move(cuts), std::move(values));
}

CanonicalGMRA build(FilterMatrix h, CanonicalGMRA::HighPass g, int depth, double tol) {
  if (depth < 0) throw Error(ErrorCode::ParseError, "depth must be nonnegative");
  if (h.rows() != h.cols()) throw Error(ErrorCode::ContextMismatch, "low-pass filter must be square");

  CanonicalGMRA out(std::move(h), std::move(g));
  const FilterMatrix& low = out.h_;
  const auto& e = low.endomorphism();
  out.mtilde_ = compute_mtilde(low.multiplicity(), e);
  out.depth_ = depth;

  VerificationReport report = verify_filter(low, tol);
  if (const auto* exact = std::get_if<FilterMatrix>(&out.g_)) {
    report.merge(verify_complementary(*exact, low, tol), tol);
  } else {
    report.merge(verify_complementary(std::get<SampledFilter>(out.g_), low, tol), tol);
  }
  if (!report.passed) {
    std::ostringstream os;
    os << "filter equations fail with residual " << report.max_residual;
    throw Error(ErrorCode::FilterInvalid, os.str());
  }
  out.verification_ = std::move(report);

  out.purity_ = purity_test(low, tol);
  if (out.purity_.kind == PurityKind::NotPure) {
    std::ostringstream os;
    os << "eigenfilter with lambda = " << out.purity_.lambda.real() << (out.purity_.lambda.imag() < 0 ? " - " : " + ")
       << std::abs(out.purity_.lambda.imag()) << "i; the Ruelle operator is not pure";
    throw Error(ErrorCode::NotPureIsometry, os.str());
  }
  if (out.purity_.kind == PurityKind::Unknown) {
    throw Error(ErrorCode::NotPureIsometry, "purity could not be certified: " + out.purity_.reason);
  }

  const std::size_t low_count = low.cols();
  const std::size_t high_count = std::holds_alternative<FilterMatrix>(out.g_)
                                     ? std::get<FilterMatrix>(out.g_).rows()
                                     : std::get<SampledFilter>(out.g_).rows;
  out.scaling_count_ = low_count;
  out.wavelet_count_ = high_count;

  for (std::size_t i = 0; i < low_count; ++i) {
    out.slots_.push_back({SlotKind::Scaling, i, 0, {}, low.column_domain(i), 1});
  }
  std::vector<SpaceSlot> level;
  for (std::size_t k = 0; k < high_count; ++k) {
    level.push_back({SlotKind::Wavelet, k, 0, {}, out.mtilde_.superlevel(static_cast<std::int64_t>(k) + 1), 1});
  }
  out.scaled_ = out.slots_;
  out.scaled_.insert(out.scaled_.end(), level.begin(), level.end());
  std::int64_t weight = 1;
  for (int n = 1; n <= depth; ++n) {
    weight *= e.n();
    for (std::size_t k = 0; k < high_count; ++k) {
      out.scaled_.push_back(
          {SlotKind::Wavelet, k, n, {}, out.mtilde_.superlevel(static_cast<std::int64_t>(k) + 1), weight});
    }
  }

  out.children_.assign(out.slots_.size(), {});
  std::size_t level_start = out.slots_.size();
  out.slots_.insert(out.slots_.end(), level.begin(), level.end());
  out.children_.resize(out.slots_.size());
  for (int n = 1; n <= depth; ++n) {
    std::vector<SpaceSlot> next;
    for (std::size_t s = 0; s < level.size(); ++s) {
      auto kids = dilate_space({level[s]}, e);
      for (auto& kid : kids) {
        out.children_[level_start + s].push_back(out.slots_.size() + next.size());
        next.push_back(std::move(kid));
      }
    }
    level_start = out.slots_.size();
    out.slots_.insert(out.slots_.end(), next.begin(), next.end());
    out.children_.resize(out.slots_.size());
    level = std::move(next);
  }
  return out;
}

LedgerVector zero_vector(const CanonicalGMRA& g) {
  return LedgerVector{std::vector<PiecewiseTrigPoly>(g.branch_ledger().size())};
}

LedgerVector random_ledger_vector(const CanonicalGMRA& g, std::mt19937_64& rng, int degree) {
  LedgerVector v = zero_vector(g);
  const auto& slots = g.branch_ledger();
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (slots[s].kind == SlotKind::Wavelet && slots[s].level == g.depth()) continue;
    std::vector<TrigPoly::Term> terms;
    for (int k = -degree; k <= degree; ++k) terms.emplace_back(Rational(k), random_disc_point(rng));
    v.components[s] = PiecewiseTrigPoly::on_set(slots[s].base, TrigPoly::from_terms(std::move(terms)));
  }
  return v;
}

double norm(const LedgerVector& v) {
  double total = 0.0;
  for (const auto& c : v.components) total += inner(c, c).real();
  return std::sqrt(std::max(0.0, total));
}

LedgerVector operator-(const LedgerVector& a, const LedgerVector& b) {
  if (a.components.size() != b.components.size()) {
    throw Error(ErrorCode::ContextMismatch, "ledger vectors have different lengths");
  }
  LedgerVector out = a;
  for (std::size_t i = 0; i < a.components.size(); ++i) out.components[i] -= b.components[i];
  return out;
}

LedgerVector apply_T(const CanonicalGMRA& g, const LedgerVector& v) {
  require_shape(g, v);
  const FilterMatrix& high = exact_high_pass(g);
  const auto& e = g.endomorphism();
  const auto& slots = g.branch_ledger();
  const std::size_t nv = g.scaling_slot_count();
  const std::size_t nw = g.wavelet_base_count();
  const double root_n = std::sqrt(static_cast<double>(e.n()));

  LedgerVector out = zero_vector(g);
  const SectionVector scaling = apply_S(g.low_pass(), slice(v, slots, 0, nv)) + apply_S(high, slice(v, slots, nv, nw));
  for (std::size_t i = 0; i < nv; ++i) out.components[i] = scaling.components[i];

  for (std::size_t s = nv; s < slots.size(); ++s) {
    PiecewiseTrigPoly sum;
    for (const std::size_t c : g.children(s)) {
      if (v.components[c].is_zero()) continue;
      const TorusSet piece = slots[s].base.intersect(e.tau_branch(slots[c].branch.back()));
      sum += v.components[c].compose_endomorphism(e.n()).restrict_to(piece);
    }
    out.components[s] = sum * Complex(root_n, 0.0);
  }
  return out;
}

LedgerVector apply_T_inverse(const CanonicalGMRA& g, const LedgerVector& v) {
  require_shape(g, v);
  const FilterMatrix& high = exact_high_pass(g);
  const auto& e = g.endomorphism();
  const auto& slots = g.branch_ledger();
  const std::size_t nv = g.scaling_slot_count();
  const std::size_t nw = g.wavelet_base_count();
  const double inv_root_n = 1.0 / std::sqrt(static_cast<double>(e.n()));

  for (std::size_t s = nv; s < slots.size(); ++s) {
    if (slots[s].level == g.depth() && !v.components[s].is_zero()) {
      throw Error(ErrorCode::DepthExceeded, "slot " + slots[s].label() + " is occupied at the top level " +
                                                std::to_string(g.depth()));
    }
  }
  LedgerVector out = zero_vector(g);
  const SectionVector scaling = slice(v, slots, 0, nv);
  const SectionVector low = apply_S_adjoint(g.low_pass(), scaling);
  const SectionVector wave = apply_S_adjoint(high, scaling);
  for (std::size_t i = 0; i < nv; ++i) out.components[i] = low.components[i];
  for (std::size_t k = 0; k < nw; ++k) out.components[nv + k] = wave.components[k];

  for (std::size_t s = nv; s < slots.size(); ++s) {
    if (v.components[s].is_zero()) continue;
    for (const std::size_t c : g.children(s)) {
      const KernelElement& zeta = slots[c].branch.back();
      const std::int64_t j = (e.n() - zeta.k) % e.n();
      out.components[c] = v.components[s].branch(e.n(), j).restrict_to(slots[c].base) * Complex(inv_root_n, 0.0);
    }
  }
  return out;
}

LedgerVector apply_translation(const CanonicalGMRA& g, std::int64_t gamma, const LedgerVector& v) {
  require_shape(g, v);
  const PiecewiseTrigPoly character = PiecewiseTrigPoly::exponential(Rational(gamma));
  LedgerVector out = v;
  for (auto& c : out.components) c = c * character;
  return out;
}

std::vector<TorusSet> propagate_supports(const FilterMatrix& f, const std::vector<TorusSet>& in) {
  if (in.size() != f.rows()) throw Error(ErrorCode::ContextMismatch, "support list does not match filter rows");
  const auto& e = f.endomorphism();
  std::vector<TorusSet> out(f.cols());
  for (std::size_t i = 0; i < f.rows(); ++i) {
    if (in[i].is_empty()) continue;
    const TorusSet pulled = e.preimage_set(in[i]);
    for (std::size_t j = 0; j < f.cols(); ++j) out[j] = out[j].unite(f(i, j).support().intersect(pulled));
  }
  return out;
}

std::vector<NegativeLevel> negative_supports(const CanonicalGMRA& g, int levels) {
  const FilterMatrix& high = exact_high_pass(g);
  const FilterMatrix& low = g.low_pass();
  std::vector<NegativeLevel> out;
  std::vector<TorusSet> scaling = row_domains(low);
  std::vector<TorusSet> wavelet;
  for (int j = 1; j <= levels; ++j) {
    scaling = propagate_supports(low, scaling);
    wavelet = j == 1 ? propagate_supports(high, row_domains(high)) : propagate_supports(low, wavelet);
    out.push_back({j, scaling, wavelet});
  }
  return out;
}

}  // namespace gmra
