#include <gtest/gtest.h>

#include <cmath>

#include "gmra/catalog.hpp"
#include "gmra/equivalence.hpp"
#include "gmra/error.hpp"
#include "support.hpp"

using namespace gmra;
using gmra::testing::q;

namespace {

FilterMatrix scalar_filter(std::int64_t n, PiecewiseTrigPoly f) {
  return FilterMatrix(MultiplicityFunction::constant(1), TorusEndomorphism(n), RowIndex::LowPass, {{std::move(f)}});
}

}  // namespace

TEST(Purity, PureCatalogEntriesHaveCertificates) {
  for (const auto& name : {"shannon", "haar", "cohen", "journe", "journe_rank2", "shannon_reversed", "haar_reversed",
                           "haar3_2wavelet", "cantor3", "haar_negated"}) {
    const auto v = purity_test(catalog_get(name).h);
    EXPECT_EQ(v.kind, PurityKind::Pure) << name << ": " << v.reason;
    EXPECT_GT(v.certificate.measure(), Rational(0)) << name;
  }
}

TEST(Purity, CertificateBoundHoldsPointwise) {
  // On the certificate, |h|^2 differs from 1 by more than the tolerance.
  for (const auto& name : {"haar", "cohen", "cantor3"}) {
    const auto& h = catalog_get(name).h;
    const auto v = purity_test(h);
    for (const auto& w : gmra::testing::probe_points(256, 1)) {
      if (v.certificate.contains(w)) {
        EXPECT_GT(std::abs(std::norm(h(0, 0)(w)) - 1.0), 1e-9) << name << " " << w;
      }
    }
  }
}

TEST(Purity, ConstantEigenfilterIsNotPure) {
  const auto& h = catalog_get("constant_eigenfilter").h;
  const auto eig = is_eigenfilter(h);
  EXPECT_TRUE(eig.eigen);
  EXPECT_EQ(eig.lambda, Complex(1.0));
  const auto v = purity_test(h);
  EXPECT_EQ(v.kind, PurityKind::NotPure);
  EXPECT_EQ(v.lambda, Complex(1.0));
  ASSERT_EQ(v.eigenvector.size(), 1u);
  EXPECT_LE((v.eigenvector[0] - PiecewiseTrigPoly::constant(1.0)).sup_bound(), 1e-15);
}

TEST(Purity, UnimodularNonConstantFilterIsUnknown) {
  // |h| = 1 everywhere but h is not a constant: no certificate can exist.
  const auto v = purity_test(scalar_filter(2, PiecewiseTrigPoly::exponential(q(1))));
  EXPECT_EQ(v.kind, PurityKind::Unknown);
}

TEST(Purity, CertifiedExceedanceIsSound) {
  const auto p = PiecewiseTrigPoly(TrigPoly::from_terms({{q(0), 1.0}, {q(1), 0.5}}));
  const auto s = certified_exceedance(p, 1.2);
  EXPECT_GT(s.measure(), Rational(0));
  for (const auto& w : gmra::testing::probe_points(512, 1)) {
    if (s.contains(w)) {
      EXPECT_GT(std::abs(p(w)), 1.2) << w;
    }
  }
  EXPECT_TRUE(certified_exceedance(p, 2.0).is_empty());
}

TEST(Equivalence, Reflexive) {
  const auto& h = catalog_get("haar").h;
  const auto v = decide(h, h);
  EXPECT_EQ(v.kind, EquivalenceKind::Equivalent);
  ASSERT_TRUE(v.witness);
  EXPECT_LE(((*v.witness)(0, 0) - PiecewiseTrigPoly::constant(1.0)).sup_bound(), 1e-15);
  EXPECT_LE(v.witness_residual, 1e-12);
}

TEST(Equivalence, ConjugatedHaarHasAWitness) {
  const auto& h = catalog_get("haar").h;
  const auto& h2 = catalog_get("haar_conjugated").h;
  const auto v = decide(h, h2);
  ASSERT_EQ(v.kind, EquivalenceKind::Equivalent) << v.detail;
  ASSERT_TRUE(v.witness);
  EXPECT_LE(v.witness_residual, 1e-9);
  // Independent check of h2(w) a(w) = a(2w) h(w) at sample points.
  const auto& a = (*v.witness)(0, 0);
  for (const auto& w : gmra::testing::probe_points(64, 1)) {
    const Complex lhs = h2(0, 0)(w) * a(w);
    const Complex rhs = a(TorusEndomorphism(2).apply(TorusPoint(w)).value()) * h(0, 0)(w);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(a(w)), 1.0, 1e-9);
  }
  EXPECT_LE(witness_residual(h, h2, *v.witness), 1e-9);
}

TEST(Equivalence, NegatedHaarHasConstantRatio) {
  const auto v = decide(catalog_get("haar").h, catalog_get("haar_negated").h);
  EXPECT_EQ(v.kind, EquivalenceKind::Inequivalent);
  ASSERT_TRUE(v.obstruction);
  EXPECT_EQ(v.obstruction->kind, ObstructionKind::ConstantRatio);
  EXPECT_NEAR(std::abs(v.obstruction->ratio - Complex(-1.0)), 0.0, 1e-12);
}

TEST(Equivalence, CohenModuliDiffer) {
  const auto v = decide(catalog_get("haar").h, catalog_get("cohen").h);
  EXPECT_EQ(v.kind, EquivalenceKind::Inequivalent);
  ASSERT_TRUE(v.obstruction);
  EXPECT_EQ(v.obstruction->kind, ObstructionKind::ModuliMismatch);
  EXPECT_GT(v.obstruction->where.measure(), Rational(0));
  // At w = 1/6 the moduli are |1 + e_-1| and |1 + e_-3| up to sqrt 2.
  EXPECT_GT(std::abs(std::abs(catalog_get("haar").h(0, 0)(q(1, 6))) - std::abs(catalog_get("cohen").h(0, 0)(q(1, 6)))),
            0.1);
}

TEST(Equivalence, MultiplicityMismatch) {
  const auto v = decide(catalog_get("journe").h, catalog_get("haar").h);
  EXPECT_EQ(v.kind, EquivalenceKind::Inequivalent);
  ASSERT_TRUE(v.obstruction);
  EXPECT_EQ(v.obstruction->kind, ObstructionKind::MultiplicityMismatch);
}

TEST(Equivalence, JourneRankTwoSingularValuesDiffer) {
  const auto v = decide(catalog_get("journe").h, catalog_get("journe_rank2").h);
  EXPECT_EQ(v.kind, EquivalenceKind::Inequivalent);
  ASSERT_TRUE(v.obstruction);
  EXPECT_EQ(v.obstruction->kind, ObstructionKind::SingularValueMismatch);
}

TEST(Equivalence, ConstantRatioNeedsNonvanishingFilter) {
  const auto& s = catalog_get("shannon").h;
  try {
    constant_ratio_obstruction(s, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotApplicable);
  }
}

TEST(Equivalence, CoboundaryFindsHigherDegreeMultiplier) {
  // Conjugating by e_2 needs a multiplier of degree 2.
  const auto& h = catalog_get("haar").h;
  const auto a = PiecewiseTrigPoly::exponential(q(2));
  const auto h2 = scalar_filter(2, a.compose_endomorphism(2) * h(0, 0) * a.conj());
  const auto w = coboundary_solve(h, h2, 4);
  ASSERT_TRUE(w);
  EXPECT_LE(w->residual, 1e-9);
  EXPECT_EQ(w->multiplier, TrigPoly::exponential(q(2)));
  EXPECT_FALSE(coboundary_solve(h, h2, 1).has_value());
}

TEST(Equivalence, CoboundaryRejectsPiecewiseFilters) {
  const auto& s = catalog_get("shannon").h;
  try {
    coboundary_solve(s, s, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotApplicable);
  }
}

TEST(Equivalence, ObstructionsAreSymmetricInKind) {
  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"haar", "cohen"}, {"haar", "journe"}, {"journe", "journe_rank2"}, {"haar", "haar_negated"}}) {
    const auto ab = decide(catalog_get(a).h, catalog_get(b).h);
    const auto ba = decide(catalog_get(b).h, catalog_get(a).h);
    EXPECT_EQ(ab.kind, ba.kind) << a << " " << b;
    ASSERT_TRUE(ab.obstruction && ba.obstruction);
    EXPECT_EQ(ab.obstruction->kind, ba.obstruction->kind) << a << " " << b;
  }
}
