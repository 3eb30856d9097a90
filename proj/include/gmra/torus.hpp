#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gmra/rational.hpp"

namespace gmra {

/// A point of the circle R/Z, stored as its representative in [0, 1).
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(const Rational& x) : value_(x.frac()) {}

  const Rational& value() const noexcept { return value_; }
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
  friend auto operator<=>(const TorusPoint& a, const TorusPoint& b) { return a.value_ <=> b.value_; }

 private:
  Rational value_;
};

/// Half-open interval [lo, hi) with 0 <= lo < hi <= 1.
struct TorusInterval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x < hi; }
  friend bool operator==(const TorusInterval&, const TorusInterval&) = default;
};

/// Which representative interval is used when sets are printed or read.
enum class Convention {
  Unit,      // [0, 1)
  Centered,  // [-1/2, 1/2)
};

/// Finite union of half-open intervals on the circle with rational endpoints.
///
/// The representation is canonical: intervals are sorted, pairwise disjoint,
/// and no two are adjacent, so equality of sets is equality of vectors.
class TorusSet {
 public:
  TorusSet() = default;

  static TorusSet empty() { return {}; }
  static TorusSet full();
  /// The image in R/Z of the real interval [lo, hi). Lengths >= 1 give the
  /// full circle; lo >= hi gives the empty set.
  static TorusSet interval(const Rational& lo, const Rational& hi);
  static TorusSet from_intervals(std::vector<TorusInterval> parts);
  /// Union of real intervals [lo, hi), each wrapped onto the circle.
  static TorusSet from_real(const std::vector<std::pair<Rational, Rational>>& parts);

  const std::vector<TorusInterval>& intervals() const noexcept { return parts_; }
  bool is_empty() const noexcept { return parts_.empty(); }
  bool is_full() const;

  bool contains(const Rational& x) const;
  bool contains(double x) const;

  Rational measure() const;

  TorusSet unite(const TorusSet& o) const;
  TorusSet intersect(const TorusSet& o) const;
  TorusSet difference(const TorusSet& o) const;
  TorusSet complement() const;
  bool subset_of(const TorusSet& o) const { return difference(o).is_empty(); }

  /// Endpoints of all intervals, sorted, without duplicates.
  std::vector<Rational> breakpoints() const;

  /// Intervals expressed in the requested convention; adjacent pieces that
  /// meet across the wrap point are fused.
  std::vector<std::pair<Rational, Rational>> display(Convention c) const;
  std::string to_string(Convention c = Convention::Unit) const;

  friend bool operator==(const TorusSet&, const TorusSet&) = default;

 private:
  explicit TorusSet(std::vector<TorusInterval> parts) : parts_(std::move(parts)) {}
  static std::vector<TorusInterval> normalize(std::vector<TorusInterval> parts);

  std::vector<TorusInterval> parts_;
};

/// Element k/N of the kernel of the endomorphism.
struct KernelElement {
  std::int64_t k = 0;
  std::int64_t n = 1;

  Rational value() const { return Rational(k, n); }
  friend bool operator==(const KernelElement&, const KernelElement&) = default;
};

/// The dual endomorphism w -> N w mod 1 on the circle, N >= 2.
class TorusEndomorphism {
 public:
  explicit TorusEndomorphism(std::int64_t n);

  std::int64_t n() const noexcept { return n_; }

  TorusPoint apply(const TorusPoint& w) const;
  /// The N points (w + k)/N, ascending.
  std::vector<TorusPoint> preimages(const TorusPoint& w) const;

  TorusSet preimage_set(const TorusSet& s) const;
  TorusSet image_set(const TorusSet& s) const;

  /// Fixed cross-section c(w) = w / N with values in [0, 1/N).
  TorusPoint cross_section(const TorusPoint& w) const;
  /// tau(w) = c(N w) - w, an element of the kernel.
  KernelElement tau(const TorusPoint& w) const;
  /// The nonempty pieces {w in s : tau(w) = zeta}, ordered by zeta.
  std::vector<std::pair<KernelElement, TorusSet>> tau_partition(const TorusSet& s) const;
  /// The set {w : tau(w) = zeta}.
  TorusSet tau_branch(const KernelElement& zeta) const;

  /// Periodic orbits among rationals p/q with q <= q_max and gcd(q, N) = 1,
  /// each rotated to start at its smallest element, ordered by (q, start).
  std::vector<std::vector<Rational>> cycles(std::int64_t q_max) const;

  friend bool operator==(const TorusEndomorphism&, const TorusEndomorphism&) = default;

 private:
  std::int64_t n_;
};

}  // namespace gmra
