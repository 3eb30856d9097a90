#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gmra/cascade.hpp"
#include "gmra/catalog.hpp"
#include "gmra/error.hpp"

using namespace gmra;

namespace {

double box_modulus(double w) {
  return w == 0.0 ? 1.0 : std::abs(std::sin(std::numbers::pi * w) / (std::numbers::pi * w));
}

}  // namespace

TEST(Cascade, HaarApproachesBoxTransform) {
  const auto r = cascade_diagnostic(catalog_get("haar").h);
  ASSERT_EQ(r.omega.size(), 1024u);
  EXPECT_DOUBLE_EQ(r.omega.front(), -0.5);
  EXPECT_DOUBLE_EQ(r.omega.back(), 0.5);
  double worst = 0;
  for (std::size_t s = 0; s < r.omega.size(); ++s) {
    worst = std::max(worst, std::abs(std::abs(r.values[s]) - box_modulus(r.omega[s])));
  }
  EXPECT_LE(worst, 1e-6);
  EXPECT_EQ(r.increments.size(), 30u);
  EXPECT_NE(r.verdict, CascadeVerdict::DegeneratesToZero);
}

TEST(Cascade, HaarIncrementsShrinkGeometrically) {
  const auto r = cascade_diagnostic(catalog_get("haar").h);
  for (std::size_t j = 5; j < r.increments.size(); ++j) {
    EXPECT_LT(r.increments[j], r.increments[j - 1]);
  }
}

TEST(Cascade, ShannonConvergesImmediately) {
  const auto r = cascade_diagnostic(catalog_get("shannon").h);
  EXPECT_EQ(r.verdict, CascadeVerdict::ConvergentNonzero);
}

TEST(Cascade, CantorDegeneratesAtZero) {
  CascadeOptions opt;
  opt.iterations = 80;
  const auto r = cascade_diagnostic(catalog_get("cantor3").h, opt);
  EXPECT_EQ(r.verdict, CascadeVerdict::DegeneratesToZero);
  // omega = 0 is the middle sample only for odd grids; locate it.
  CascadeOptions odd = opt;
  odd.samples = 1025;
  const auto r0 = cascade_diagnostic(catalog_get("cantor3").h, odd);
  EXPECT_EQ(r0.omega[512], 0.0);
  EXPECT_LE(std::abs(r0.values[512]), 1e-6);
  // (sqrt 2 / sqrt 3)^80
  EXPECT_NEAR(std::abs(r0.values[512]), std::pow(std::sqrt(2.0 / 3.0), 80), 1e-18);
}

TEST(Cascade, NegatedHaarIsNotConvergent) {
  const auto r = cascade_diagnostic(catalog_get("haar_negated").h);
  EXPECT_NE(r.verdict, CascadeVerdict::ConvergentNonzero);
}

TEST(Cascade, ReversedFiltersDegenerate) {
  for (const auto& name : {"haar_reversed", "shannon_reversed"}) {
    EXPECT_EQ(cascade_diagnostic(catalog_get(name).h).verdict, CascadeVerdict::DegeneratesToZero) << name;
  }
}

TEST(Cascade, RejectsMatrixFilters) {
  try {
    cascade_diagnostic(catalog_get("journe").h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotApplicable);
  }
}
