#include "gmra/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gmra/error.hpp"

namespace gmra {

namespace {

const Rational kZero{0};
const Rational kOne{1};

enum class SetOp { Union, Intersect, Difference };

}  // namespace

TorusSet TorusSet::full() { return TorusSet({TorusInterval{kZero, kOne}}); }

TorusSet TorusSet::interval(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) return {};
  if (hi - lo >= kOne) return full();
  const Rational a = lo.frac();
  const Rational b = a + (hi - lo);
  if (b <= kOne) return TorusSet({TorusInterval{a, b}});
  return from_intervals({TorusInterval{kZero, b - kOne}, TorusInterval{a, kOne}});
}

TorusSet TorusSet::from_intervals(std::vector<TorusInterval> parts) {
  for (const auto& p : parts) {
    if (p.lo < kZero || p.hi > kOne) {
      throw Error(ErrorCode::ParseError, "interval outside [0,1): [" + p.lo.to_string() + "," + p.hi.to_string() + ")");
    }
  }
  return TorusSet(normalize(std::move(parts)));
}

TorusSet TorusSet::from_real(const std::vector<std::pair<Rational, Rational>>& parts) {
  TorusSet out;
  for (const auto& [lo, hi] : parts) out = out.unite(interval(lo, hi));
  return out;
}

std::vector<TorusInterval> TorusSet::normalize(std::vector<TorusInterval> parts) {
  std::erase_if(parts, [](const TorusInterval& p) { return !(p.lo < p.hi); });
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  std::vector<TorusInterval> out;
  for (const auto& p : parts) {
    if (!out.empty() && p.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, p.hi);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

bool TorusSet::is_full() const {
  return parts_.size() == 1 && parts_[0].lo == kZero && parts_[0].hi == kOne;
}

bool TorusSet::contains(const Rational& x) const {
  const Rational w = x.frac();
  auto it = std::upper_bound(parts_.begin(), parts_.end(), w,
                             [](const Rational& v, const TorusInterval& p) { return v < p.lo; });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(w);
}

bool TorusSet::contains(double x) const {
  const double w = x - std::floor(x);
  for (const auto& p : parts_) {
    if (p.lo.to_double() <= w && w < p.hi.to_double()) return true;
  }
  return false;
}

Rational TorusSet::measure() const {
  Rational total;
  for (const auto& p : parts_) total += p.length();
  return total;
}

namespace {

TorusSet combine(const TorusSet& a, const TorusSet& b, SetOp op) {
  std::vector<Rational> cuts = a.breakpoints();
  const auto bb = b.breakpoints();
  cuts.insert(cuts.end(), bb.begin(), bb.end());
  cuts.push_back(kZero);
  cuts.push_back(kOne);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<TorusInterval> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // No breakpoint lies strictly inside [cuts[i], cuts[i+1]), so membership
    // at the left end decides the whole segment.
    const bool in_a = a.contains(cuts[i]);
    const bool in_b = b.contains(cuts[i]);
    bool keep = false;
    switch (op) {
      case SetOp::Union: keep = in_a || in_b; break;
      case SetOp::Intersect: keep = in_a && in_b; break;
      case SetOp::Difference: keep = in_a && !in_b; break;
    }
    if (keep) out.push_back({cuts[i], cuts[i + 1]});
  }
  return TorusSet::from_intervals(std::move(out));
}

}  // namespace

TorusSet TorusSet::unite(const TorusSet& o) const {
  std::vector<TorusInterval> parts = parts_;
  parts.insert(parts.end(), o.parts_.begin(), o.parts_.end());
  return TorusSet(normalize(std::move(parts)));
}

TorusSet TorusSet::intersect(const TorusSet& o) const { return combine(*this, o, SetOp::Intersect); }
TorusSet TorusSet::difference(const TorusSet& o) const { return combine(*this, o, SetOp::Difference); }
TorusSet TorusSet::complement() const { return full().difference(*this); }

std::vector<Rational> TorusSet::breakpoints() const {
  std::vector<Rational> out;
  out.reserve(parts_.size() * 2);
  for (const auto& p : parts_) {
    out.push_back(p.lo);
    out.push_back(p.hi);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<Rational, Rational>> TorusSet::display(Convention c) const {
  std::vector<std::pair<Rational, Rational>> out;
  if (c == Convention::Unit) {
    for (const auto& p : parts_) out.emplace_back(p.lo, p.hi);
    return out;
  }
  const Rational half(1, 2);
  std::vector<std::pair<Rational, Rational>> pieces;
  for (const auto& p : parts_) {
    if (p.hi <= half) {
      pieces.emplace_back(p.lo, p.hi);
    } else if (p.lo >= half) {
      pieces.emplace_back(p.lo - kOne, p.hi - kOne);
    } else {
      pieces.emplace_back(p.lo, half);
      pieces.emplace_back(half - kOne, p.hi - kOne);
    }
  }
  std::sort(pieces.begin(), pieces.end());
  for (const auto& p : pieces) {
    if (!out.empty() && out.back().second == p.first) {
      out.back().second = p.second;
    } else {
      out.push_back(p);
    }
  }
  return out;
}

std::string TorusSet::to_string(Convention c) const {
  const auto parts = display(c);
  if (parts.empty()) return "{}";
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) os << " u ";
    os << '[' << parts[i].first << ',' << parts[i].second << ')';
  }
  return os.str();
}

TorusEndomorphism::TorusEndomorphism(std::int64_t n) : n_(n) {
  if (n < 2) throw Error(ErrorCode::ParseError, "dilation factor must be >= 2, got " + std::to_string(n));
}

TorusPoint TorusEndomorphism::apply(const TorusPoint& w) const { return TorusPoint(w.value() * Rational(n_)); }

std::vector<TorusPoint> TorusEndomorphism::preimages(const TorusPoint& w) const {
  std::vector<TorusPoint> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (std::int64_t k = 0; k < n_; ++k) out.emplace_back((w.value() + Rational(k)) / Rational(n_));
  return out;
}

TorusSet TorusEndomorphism::preimage_set(const TorusSet& s) const {
  std::vector<TorusInterval> parts;
  const Rational n(n_);
  for (const auto& p : s.intervals()) {
    for (std::int64_t k = 0; k < n_; ++k) {
      parts.push_back({(p.lo + Rational(k)) / n, (p.hi + Rational(k)) / n});
    }
  }
  return TorusSet::from_intervals(std::move(parts));
}

TorusSet TorusEndomorphism::image_set(const TorusSet& s) const {
  TorusSet out;
  const Rational n(n_);
  for (const auto& p : s.intervals()) {
    out = out.unite(TorusSet::interval(p.lo * n, p.hi * n));
    if (out.is_full()) break;
  }
  return out;
}

TorusPoint TorusEndomorphism::cross_section(const TorusPoint& w) const {
  return TorusPoint(w.value() / Rational(n_));
}

KernelElement TorusEndomorphism::tau(const TorusPoint& w) const {
  // On [j/N, (j+1)/N) the correction c(Nw) - w equals -j/N mod 1.
  const std::int64_t j = (w.value() * Rational(n_)).floor();
  return KernelElement{(n_ - j) % n_, n_};
}

TorusSet TorusEndomorphism::tau_branch(const KernelElement& zeta) const {
  const std::int64_t j = (n_ - zeta.k) % n_;
  return TorusSet::interval(Rational(j, n_), Rational(j + 1, n_));
}

std::vector<std::pair<KernelElement, TorusSet>> TorusEndomorphism::tau_partition(const TorusSet& s) const {
  std::vector<std::pair<KernelElement, TorusSet>> out;
  for (std::int64_t k = 0; k < n_; ++k) {
    const KernelElement zeta{k, n_};
    TorusSet piece = s.intersect(tau_branch(zeta));
    if (!piece.is_empty()) out.emplace_back(zeta, std::move(piece));
  }
  return out;
}

std::vector<std::vector<Rational>> TorusEndomorphism::cycles(std::int64_t q_max) const {
  std::vector<std::vector<Rational>> out;
  for (std::int64_t q = 1; q <= q_max; ++q) {
    if (std::gcd(q, n_) != 1) continue;
    std::vector<bool> seen(static_cast<std::size_t>(q), false);
    for (std::int64_t p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1 || seen[static_cast<std::size_t>(p)]) continue;
      std::vector<Rational> orbit;
      std::int64_t cur = p;
      while (!seen[static_cast<std::size_t>(cur)]) {
        seen[static_cast<std::size_t>(cur)] = true;
        orbit.emplace_back(cur, q);
        cur = static_cast<std::int64_t>((static_cast<__int128>(cur) * n_) % q);
      }
      // Multiplication by N is a bijection on units mod q, so the walk
      // closes at its start and p is the smallest element.
      out.push_back(std::move(orbit));
    }
  }
  return out;
}

}  // namespace gmra
