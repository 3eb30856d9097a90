#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gmra/error.hpp"
#include "gmra/ruelle.hpp"
#include "gmra/trig_poly.hpp"
#include "support.hpp"

using namespace gmra;
using gmra::testing::q;

namespace {

constexpr double kEps = 1e-12;

PiecewiseTrigPoly random_ptp(std::mt19937_64& rng, std::int64_t den) {
  const auto s = gmra::testing::random_set(rng, den, 3);
  std::vector<TrigPoly::Term> terms;
  for (int k = -3; k <= 3; ++k) terms.emplace_back(Rational(k), random_disc_point(rng));
  auto out = PiecewiseTrigPoly::on_set(s, TrigPoly::from_terms(terms));
  out += PiecewiseTrigPoly::indicator(s.complement(), random_disc_point(rng));
  return out;
}

Complex exp2pi(double x) { return std::polar(1.0, 2 * std::numbers::pi * x); }

}  // namespace

TEST(UnitPhase, ExactAtQuarterTurns) {
  EXPECT_EQ(unit_phase(q(1, 4)), Complex(0, 1));
  EXPECT_EQ(unit_phase(q(1, 2)), Complex(-1, 0));
  EXPECT_EQ(unit_phase(q(-1, 4)), Complex(0, -1));
  EXPECT_NEAR(std::abs(unit_phase(q(1, 3)) - exp2pi(1.0 / 3)), 0.0, kEps);
}

TEST(TrigPoly, CanonicalFormAndArithmetic) {
  const auto p = TrigPoly::from_terms({{q(1), 1.0}, {q(0), 2.0}, {q(1), -1.0}});
  EXPECT_TRUE(p.is_constant());
  EXPECT_EQ(p.constant_term(), Complex(2.0));
  const auto a = TrigPoly::from_terms({{q(0), 1.0}, {q(-1), 1.0}});
  const auto prod = a * a.conj();
  // |1 + e_-1|^2 = 2 + e_1 + e_-1
  EXPECT_EQ(prod, TrigPoly::from_terms({{q(-1), 1.0}, {q(0), 2.0}, {q(1), 1.0}}));
  EXPECT_NEAR(std::abs(a(0.25) - (1.0 + exp2pi(-0.25))), 0.0, kEps);
}

TEST(TrigPoly, BranchAndDilateMatchEvaluation) {
  const auto p = TrigPoly::from_terms({{q(0), 0.5}, {q(1), Complex(0, 1)}, {q(-3), 2.0}});
  for (std::int64_t n : {2, 3}) {
    for (std::int64_t j = 0; j < n; ++j) {
      const auto b = p.branch(n, j);
      const auto d = p.dilate(n, j);
      for (double x : {0.1, 0.37, 0.8}) {
        EXPECT_NEAR(std::abs(b(x) - p((x + j) / n)), 0.0, kEps);
        EXPECT_NEAR(std::abs(d(x) - p(n * x - j)), 0.0, kEps);
      }
    }
  }
}

TEST(TrigPoly, IntegralOfExponentials) {
  const auto p = TrigPoly::from_terms({{q(0), 1.0}, {q(1), 1.0}});
  EXPECT_NEAR(std::abs(p.integral(q(0), q(1)) - Complex(1.0)), 0.0, kEps);
  // integral of e_1 over [0, 1/4) = (i - 1)/(2 pi i) ... compare against quadrature.
  const auto e1 = TrigPoly::exponential(q(1));
  Complex sum = 0;
  const int steps = 20000;
  for (int s = 0; s < steps; ++s) sum += e1((s + 0.5) / steps * 0.25) * (0.25 / steps);
  EXPECT_NEAR(std::abs(e1.integral(q(0), q(1, 4)) - sum), 0.0, 1e-9);
}

TEST(PiecewiseTrigPoly, IndicatorAndRestriction) {
  const auto s = TorusSet::interval(q(-1, 4), q(1, 4));
  const auto f = PiecewiseTrigPoly::indicator(s, std::sqrt(2.0));
  EXPECT_EQ(f.support(), s);
  EXPECT_NEAR(std::abs(f(q(0)) - std::sqrt(2.0)), 0.0, kEps);
  EXPECT_EQ(f(q(1, 2)), Complex(0.0));
  EXPECT_NEAR(f.integral().real(), std::sqrt(2.0) / 2, kEps);
  const auto g = PiecewiseTrigPoly::exponential(q(2)).restrict_to(TorusSet::interval(q(0), q(1, 2)));
  EXPECT_EQ(g.support(), TorusSet::interval(q(0), q(1, 2)));
}

TEST(PiecewiseTrigPoly, RandomAlgebraMatchesPointwise) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_ptp(rng, 12);
    const auto g = random_ptp(rng, 10);
    const auto sum = f + g;
    const auto prod = f * g.conj();
    for (const auto& x : gmra::testing::probe_points(60, 1)) {
      const double xd = x.to_double();
      EXPECT_NEAR(std::abs(sum(x) - (f(xd) + g(xd))), 0.0, 1e-11);
      EXPECT_NEAR(std::abs(prod(x) - f(xd) * std::conj(g(xd))), 0.0, 1e-11);
    }
  }
}

TEST(PiecewiseTrigPoly, FoldMatchesPreimageSum) {
  std::mt19937_64 rng(8);
  for (std::int64_t n : {2, 3, 5}) {
    const TorusEndomorphism e(n);
    for (int trial = 0; trial < 30; ++trial) {
      const auto f = random_ptp(rng, 14);
      const auto g = random_ptp(rng, 6);
      const auto folded = fold(e, f, g);
      const auto composed = f.compose_endomorphism(n);
      for (const auto& x : gmra::testing::probe_points(7 * n, 2)) {
        Complex expect = 0;
        for (const auto& z : e.preimages(TorusPoint(x))) {
          expect += f(z.value()) * std::conj(g(z.value()));
        }
        EXPECT_NEAR(std::abs(folded(x) - expect), 0.0, 1e-11);
        EXPECT_NEAR(std::abs(composed(x) - f(e.apply(TorusPoint(x)).value())), 0.0, 1e-11);
      }
    }
  }
}

TEST(PiecewiseTrigPoly, RealPiecesWrapWithPhase) {
  // e_{1/2} on [-1/2, 1/2) is discontinuous at 0 in the unit coordinate.
  const auto f = PiecewiseTrigPoly::from_real_pieces({{q(-1, 2), q(1, 2), TrigPoly::exponential(q(1, 2))}});
  EXPECT_NEAR(std::abs(f(q(1, 4)) - exp2pi(0.125)), 0.0, kEps);
  EXPECT_NEAR(std::abs(f(q(3, 4)) - exp2pi(-0.125)), 0.0, kEps);
  for (auto c : {Convention::Unit, Convention::Centered}) {
    EXPECT_EQ(PiecewiseTrigPoly::from_real_pieces(f.display(c)).pruned(1e-13), f.pruned(1e-13));
  }
  EXPECT_THROW(PiecewiseTrigPoly::from_real_pieces({{q(0), q(1, 2), TrigPoly::constant(1.0)},
                                                    {q(1, 4), q(3, 4), TrigPoly::constant(1.0)}}),
               Error);
}

TEST(PiecewiseTrigPoly, SupBoundDominatesSamples) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_ptp(rng, 9);
    const double bound = f.sup_bound();
    for (int s = 0; s < 200; ++s) EXPECT_LE(std::abs(f((s + 0.5) / 200)), bound + 1e-12);
  }
}

TEST(PiecewiseTrigPoly, InnerProductIsConjugateLinear) {
  std::mt19937_64 rng(4);
  const auto f = random_ptp(rng, 8);
  const auto g = random_ptp(rng, 8);
  const Complex c(0.3, -1.2);
  EXPECT_NEAR(std::abs(inner(f * c, g) - c * inner(f, g)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(inner(f, g * c) - std::conj(c) * inner(f, g)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(inner(f, g) - std::conj(inner(g, f))), 0.0, 1e-12);
  EXPECT_GE(inner(f, f).real(), 0.0);
}
