#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "gmra/equivalence.hpp"
#include "gmra/filter.hpp"
#include "gmra/ruelle.hpp"

namespace gmra {

enum class SlotKind { Scaling, Wavelet };

/// One summand of the ledger. In the branch view a level-n wavelet slot is
/// L2(base) for the image of one tau-branch path; in the scaled view it is
/// the whole level presented on N^n times the circle.
struct SpaceSlot {
  SlotKind kind = SlotKind::Scaling;
  std::size_t component = 0;
  int level = 0;
  std::vector<KernelElement> branch;
  TorusSet base;
  std::int64_t weight = 1;

  std::string label() const;
  friend bool operator==(const SpaceSlot&, const SpaceSlot&) = default;
};

/// Splits every base along the tau-partition and maps each piece forward by
/// the endomorphism, one level up.
std::vector<SpaceSlot> dilate_space(const std::vector<SpaceSlot>& slots, const TorusEndomorphism& e);

/// Components aligned with CanonicalGMRA::branch_ledger().
struct LedgerVector {
  std::vector<PiecewiseTrigPoly> components;
};

class CanonicalGMRA {
 public:
  using HighPass = std::variant<FilterMatrix, SampledFilter>;

  const TorusEndomorphism& endomorphism() const noexcept { return h_.endomorphism(); }
  const MultiplicityFunction& multiplicity() const noexcept { return h_.multiplicity(); }
  const MultiplicityFunction& complementary_multiplicity() const noexcept { return mtilde_; }
  const FilterMatrix& low_pass() const noexcept { return h_; }
  const HighPass& high_pass() const noexcept { return g_; }
  bool has_exact_high_pass() const noexcept { return std::holds_alternative<FilterMatrix>(g_); }
  int depth() const noexcept { return depth_; }
  const PurityVerdict& purity() const noexcept { return purity_; }
  const VerificationReport& verification() const noexcept { return verification_; }

  /// V0 components, W0 components, then one slot per (level, component)
  /// with weight N^level.
  const std::vector<SpaceSlot>& ledger() const noexcept { return scaled_; }
  /// V0, W0, then one slot per tau-branch path up to the build depth.
  const std::vector<SpaceSlot>& branch_ledger() const noexcept { return slots_; }
  /// Indices into branch_ledger() of the slots one level above slot s.
  const std::vector<std::size_t>& children(std::size_t s) const { return children_.at(s); }

  std::size_t scaling_slot_count() const noexcept { return scaling_count_; }
  std::size_t wavelet_base_count() const noexcept { return wavelet_count_; }

  /// The multiplicity read back off the V0 slots.
  MultiplicityFunction scaling_multiplicity() const;

 private:
  friend CanonicalGMRA build(FilterMatrix h, HighPass g, int depth, double tol);

  CanonicalGMRA(FilterMatrix h, HighPass g) : h_(std::move(h)), g_(std::move(g)) {}

  FilterMatrix h_;
  HighPass g_;
  MultiplicityFunction mtilde_;
  int depth_ = 0;
  PurityVerdict purity_;
  VerificationReport verification_;
  std::vector<SpaceSlot> scaled_;
  std::vector<SpaceSlot> slots_;
  std::vector<std::vector<std::size_t>> children_;
  std::size_t scaling_count_ = 0;
  std::size_t wavelet_count_ = 0;
};

/// Verifies both filters and certifies purity, then lays out the ledger to
/// the given depth. Throws FilterInvalid or NotPureIsometry.
CanonicalGMRA build(FilterMatrix h, CanonicalGMRA::HighPass g, int depth, double tol = kDefaultTolerance);

/// Scaled ledger as text, e.g. "L2(T) + L2(T) + L2(2T)"; bases other than the
/// whole circle are printed in the centered convention.
std::string ledger_shape(const CanonicalGMRA& g);

LedgerVector zero_vector(const CanonicalGMRA& g);
/// Random components on every slot below the top level; the top level is
/// left at zero so the inverse dilation has room.
LedgerVector random_ledger_vector(const CanonicalGMRA& g, std::mt19937_64& rng, int degree = 8);
double norm(const LedgerVector& v);
LedgerVector operator-(const LedgerVector& a, const LedgerVector& b);

/// The inverse dilation: S_H and S_G into V0, and one level down elsewhere.
LedgerVector apply_T(const CanonicalGMRA& g, const LedgerVector& v);
/// The dilation. Throws DepthExceeded if the top level is occupied.
LedgerVector apply_T_inverse(const CanonicalGMRA& g, const LedgerVector& v);
/// Multiplication by e_gamma in every slot.
LedgerVector apply_translation(const CanonicalGMRA& g, std::int64_t gamma, const LedgerVector& v);

struct NegativeLevel {
  int j = 0;
  std::vector<TorusSet> scaling;
  std::vector<TorusSet> wavelet;
};

/// Supports of the components of V_{-j} and W_{-j} for j = 1..levels.
/// Throws UnsupportedRepresentation when the high-pass filter is sampled.
std::vector<NegativeLevel> negative_supports(const CanonicalGMRA& g, int levels);

/// One step of support propagation through a filter:
/// out_j = union_i supp(f_ij) intersected with the preimage of in_i.
std::vector<TorusSet> propagate_supports(const FilterMatrix& f, const std::vector<TorusSet>& in);

}  // namespace gmra
