#include <gtest/gtest.h>

#include <random>

#include "gmra/catalog.hpp"
#include "gmra/error.hpp"
#include "gmra/gmra.hpp"
#include "gmra/tensor.hpp"
#include "support.hpp"

using namespace gmra;
using gmra::testing::q;

namespace {

CanonicalGMRA build_named(const std::string& name, int depth) {
  const auto& e = catalog_get(name);
  return build(e.h, *e.g, depth);
}

TorusSet mirrored(const Rational& a, const Rational& b) { return TorusSet::from_real({{a, b}, {-b, -a}}); }

// Oracle for scalar filters: V_-j is supported where h(w) h(Nw) ... h(N^{j-1} w) != 0
// and W_-j where h(w) ... h(N^{j-2} w) g(N^{j-1} w) != 0. Checked at probe points.
bool chain_nonzero(const FilterMatrix& h, const FilterMatrix& last, int j, Rational w) {
  const auto& e = h.endomorphism();
  for (int k = 0; k < j - 1; ++k) {
    if (std::abs(h(0, 0)(w)) < 1e-12) return false;
    w = e.apply(TorusPoint(w)).value();
  }
  return std::abs(last(0, 0)(w)) > 1e-12;
}

}  // namespace

TEST(Ledger, HaarDepthThreeShape) {
  const auto g = build_named("haar", 3);
  EXPECT_EQ(ledger_shape(g), "L2(T) + L2(T) + L2(2T) + L2(4T) + L2(8T)");
  const auto& slots = g.ledger();
  ASSERT_EQ(slots.size(), 5u);
  const std::int64_t weights[] = {1, 1, 2, 4, 8};
  for (std::size_t s = 0; s < slots.size(); ++s) {
    EXPECT_EQ(slots[s].weight, weights[s]);
    EXPECT_TRUE(slots[s].base.is_full());
  }
  EXPECT_EQ(slots[0].kind, SlotKind::Scaling);
  EXPECT_EQ(slots[1].kind, SlotKind::Wavelet);
  EXPECT_EQ(slots[4].level, 3);
}

TEST(Ledger, BranchViewTilesEachLevel) {
  // Each wavelet component has between 1 and N^n branch slots at level n.
  for (const auto& name : {"haar", "journe", "haar3_2wavelet"}) {
    const auto g = build_named(name, 3);
    const std::int64_t n = g.endomorphism().n();
    std::map<std::pair<int, std::size_t>, std::int64_t> count;
    for (const auto& s : g.branch_ledger()) {
      if (s.kind == SlotKind::Wavelet) ++count[{s.level, s.component}];
    }
    std::int64_t pow = 1;
    for (int level = 0; level <= 3; ++level, pow *= n) {
      for (std::size_t k = 0; k < g.wavelet_base_count(); ++k) {
        const auto c = count[std::make_pair(level, k)];
        EXPECT_LE(c, pow) << name;
        EXPECT_GE(c, 1) << name;
      }
    }
  }
}

TEST(Ledger, JourneScalingSlotsRecoverMultiplicity) {
  const auto g = build_named("journe", 2);
  EXPECT_EQ(g.scaling_slot_count(), 2u);
  EXPECT_EQ(g.scaling_multiplicity(), catalog_get("journe").multiplicity());
  EXPECT_EQ(g.complementary_multiplicity(), MultiplicityFunction::constant(1));
}

TEST(Ledger, DilateSpaceMovesBasesForward) {
  const TorusEndomorphism e(2);
  SpaceSlot s;
  s.kind = SlotKind::Wavelet;
  s.base = TorusSet::interval(q(1, 8), q(3, 8));
  const auto next = dilate_space({s}, e);
  Rational total(0);
  for (const auto& c : next) {
    EXPECT_EQ(c.level, 1);
    EXPECT_EQ(c.weight, 2);
    total += c.base.measure();
  }
  EXPECT_EQ(total, q(1, 2));
}

TEST(Build, RefusesEigenfilterAndInvalidFilters) {
  const auto& c = catalog_get("constant_eigenfilter");
  try {
    build(c.h, *c.g, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPureIsometry);
  }
  const auto& u = catalog_get("haar_unnormalized");
  try {
    build(u.h, *catalog_get("haar").g, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FilterInvalid);
  }
}

TEST(Dilation, UnitaryAndCovariant) {
  for (const auto& name : {"haar", "journe", "journe_rank2", "haar3_2wavelet", "cantor3", "shannon"}) {
    const auto g = build_named(name, 3);
    const std::int64_t n = g.endomorphism().n();
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
      const auto v = random_ledger_vector(g, rng);
      const auto tv = apply_T(g, v);
      EXPECT_NEAR(norm(tv), norm(v), 1e-9) << name;
      EXPECT_LE(norm(apply_T_inverse(g, tv) - v), 1e-9) << name;
      const auto lhs = apply_T(g, apply_translation(g, 1, apply_T_inverse(g, v)));
      EXPECT_LE(norm(lhs - apply_translation(g, n, v)), 1e-9) << name;
    }
  }
}

TEST(Dilation, InverseRefusesTopLevelContent) {
  const auto g = build_named("haar", 2);
  auto v = zero_vector(g);
  const auto& slots = g.branch_ledger();
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (slots[s].level == 2) v.components[s] = PiecewiseTrigPoly::indicator(slots[s].base);
  }
  try {
    apply_T_inverse(g, v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DepthExceeded);
  }
}

TEST(Dilation, TranslationIsUnitary) {
  const auto g = build_named("journe", 2);
  std::mt19937_64 rng(7);
  const auto v = random_ledger_vector(g, rng);
  EXPECT_NEAR(norm(apply_translation(g, 3, v)), norm(v), 1e-12);
  EXPECT_LE(norm(apply_translation(g, -3, apply_translation(g, 3, v)) - v), 1e-12);
}

TEST(NegativeSupports, JourneStandard) {
  const auto levels = negative_supports(build_named("journe", 1), 1);
  ASSERT_EQ(levels.size(), 1u);
  ASSERT_EQ(levels[0].scaling.size(), 2u);
  EXPECT_EQ(levels[0].scaling[0], TorusSet::interval(q(-1, 7), q(1, 7))
                                      .unite(mirrored(q(1, 4), q(2, 7)))
                                      .unite(mirrored(q(3, 7), q(1, 2))));
  EXPECT_TRUE(levels[0].scaling[1].is_empty());
}

TEST(NegativeSupports, JourneRankTwo) {
  const auto levels = negative_supports(build_named("journe_rank2", 1), 1);
  ASSERT_EQ(levels[0].scaling.size(), 2u);
  EXPECT_EQ(levels[0].scaling[0], TorusSet::interval(q(-1, 7), q(1, 7)).unite(mirrored(q(1, 4), q(2, 7))));
  EXPECT_EQ(levels[0].scaling[1], TorusSet::interval(q(-1, 14), q(1, 14)));
}

TEST(NegativeSupports, ReversedShannonAgainstPointwiseOracle) {
  const auto& e = catalog_get("shannon_reversed");
  const auto levels = negative_supports(build(e.h, *e.g, 1), 3);
  ASSERT_EQ(levels.size(), 3u);
  EXPECT_EQ(levels[0].scaling[0], mirrored(q(1, 4), q(1, 2)));
  EXPECT_EQ(levels[0].wavelet[0], TorusSet::interval(q(-1, 4), q(1, 4)));
  // The second level splits +-[1/4,1/2) by where the doubled point lands.
  EXPECT_EQ(levels[1].scaling[0], mirrored(q(1, 4), q(3, 8)));
  EXPECT_EQ(levels[1].wavelet[0], mirrored(q(3, 8), q(1, 2)));
  for (int j = 1; j <= 3; ++j) {
    for (const auto& w : gmra::testing::probe_points(64, 1)) {
      EXPECT_EQ(levels[j - 1].scaling[0].contains(w), chain_nonzero(e.h, e.h, j, w)) << j << " " << w;
      EXPECT_EQ(levels[j - 1].wavelet[0].contains(w), chain_nonzero(e.h, *e.g, j, w)) << j << " " << w;
    }
  }
}

TEST(NegativeSupports, ShannonAgainstPointwiseOracle) {
  const auto& e = catalog_get("shannon");
  const auto levels = negative_supports(build(e.h, *e.g, 1), 4);
  for (int j = 1; j <= 4; ++j) {
    EXPECT_EQ(levels[j - 1].scaling[0], TorusSet::interval(Rational(-1, 2 << j), Rational(1, 2 << j)));
    for (const auto& w : gmra::testing::probe_points(128, 1)) {
      EXPECT_EQ(levels[j - 1].scaling[0].contains(w), chain_nonzero(e.h, e.h, j, w));
      EXPECT_EQ(levels[j - 1].wavelet[0].contains(w), chain_nonzero(e.h, *e.g, j, w));
    }
  }
}

TEST(NegativeSupports, SampledHighPassIsUnsupported) {
  const auto& e = catalog_get("haar");
  const auto c = complement_numeric(e.h, 64);
  const auto g = build(e.h, c.g, 1);
  EXPECT_FALSE(g.has_exact_high_pass());
  try {
    negative_supports(g, 1);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::UnsupportedRepresentation);
  }
}

TEST(Tensor, HaarTimesHaarIsAProductGMRA) {
  const auto a = build_named("haar", 1);
  const auto t = tensor(a, a);
  EXPECT_EQ(t.kernel_size(), 4);
  EXPECT_TRUE(t.verification().passed) << t.verification().max_residual;
  EXPECT_EQ(t.low_pass().size(), 1u);
  EXPECT_EQ(t.high_pass().size(), 3u);
  for (const auto& x : gmra::testing::probe_points(6, 1)) {
    for (const auto& y : gmra::testing::probe_points(6, 1)) {
      EXPECT_EQ(t.multiplicity(x, y), 1);
      EXPECT_EQ(t.complementary_multiplicity(x, y), 3);
      EXPECT_EQ(t.folded_multiplicity(x, y), t.complementary_multiplicity(x, y));
    }
  }
}

TEST(Tensor, JourneTimesCantorVerifies) {
  const auto t = tensor(build_named("journe", 1), build_named("cantor3", 1));
  EXPECT_EQ(t.n1(), 2);
  EXPECT_EQ(t.n2(), 3);
  EXPECT_TRUE(t.verification().passed) << t.verification().max_residual;
  for (const auto& x : gmra::testing::probe_points(14, 1)) {
    for (const auto& y : gmra::testing::probe_points(5, 1)) {
      EXPECT_EQ(t.folded_multiplicity(x, y), t.complementary_multiplicity(x, y)) << x << " " << y;
    }
  }
  // Entries are Kronecker products: check one against a pointwise product.
  const auto& j = catalog_get("journe").h;
  const auto& c = catalog_get("cantor3").h;
  for (const auto& x : gmra::testing::probe_points(14, 1)) {
    for (const auto& y : gmra::testing::probe_points(5, 1)) {
      EXPECT_NEAR(std::abs(t.low_pass()[0][0](x, y) - j(0, 0)(x) * c(0, 0)(y)), 0.0, 1e-12);
    }
  }
}

TEST(Tensor, ProductFoldMatchesPreimageSum) {
  const auto f = ProductTrigPoly::separable(catalog_get("haar").h(0, 0), catalog_get("cantor3").h(0, 0));
  const auto g = ProductTrigPoly::indicator(TorusSet::interval(q(0), q(1, 3)), TorusSet::interval(q(1, 5), q(4, 5)), 2.0);
  const auto folded = fold(2, 3, f, g);
  for (const auto& x : gmra::testing::probe_points(6, 1)) {
    for (const auto& y : gmra::testing::probe_points(5, 1)) {
      Complex s = 0;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 3; ++b) {
          const Rational px = (x + Rational(a)) / Rational(2);
          const Rational py = (y + Rational(b)) / Rational(3);
          s += f(px, py) * std::conj(g(px, py));
        }
      }
      EXPECT_NEAR(std::abs(folded(x, y) - s), 0.0, 1e-12);
    }
  }
}

TEST(Tensor, SampledFactorIsUnsupported) {
  const auto& e = catalog_get("haar");
  const auto sampled = build(e.h, complement_numeric(e.h, 32).g, 1);
  try {
    tensor(sampled, build_named("haar", 1));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::UnsupportedRepresentation);
  }
}
