#include <gtest/gtest.h>

#include "gmra/catalog.hpp"
#include "gmra/error.hpp"
#include "gmra/json_io.hpp"

using namespace gmra;

TEST(Catalog, ListsEveryEntryOnce) {
  const auto names = catalog_list();
  EXPECT_EQ(names.size(), 13u);
  std::set<std::string> unique(names.begin(), names.end());
  EXPECT_EQ(unique.size(), names.size());
  for (const auto& n : {"shannon", "haar", "cohen", "journe", "journe_rank2", "haar3_2wavelet", "cantor3",
                        "shannon_reversed", "haar_reversed", "haar_unnormalized", "constant_eigenfilter"}) {
    EXPECT_TRUE(unique.count(n)) << n;
  }
}

TEST(Catalog, EveryExpectationHolds) {
  for (const auto& name : catalog_list()) {
    const auto r = run_expectations(name);
    EXPECT_TRUE(r.passed) << name;
    for (const auto& o : r.offending) ADD_FAILURE() << name << ": " << o;
    EXPECT_FALSE(catalog_get(name).expectations.empty()) << name;
  }
}

TEST(Catalog, ExpectationsCarryProvenance) {
  int published = 0;
  for (const auto& name : catalog_list()) {
    for (const auto& x : catalog_get(name).expectations) {
      EXPECT_FALSE(x.property.empty());
      EXPECT_FALSE(x.expected.empty());
      if (x.provenance == Provenance::Published) ++published;
    }
  }
  EXPECT_GT(published, 10);
}

TEST(Catalog, UnknownNameThrows) {
  try {
    catalog_get("daubechies4");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownName);
  }
}

TEST(Catalog, HaarThreeSecondWaveletRow) {
  const auto& e = catalog_get("haar3_2wavelet");
  const auto& g2 = (*e.g)(1, 0);
  // (-2 + e_1 + e_2)/sqrt 6 vanishes at 0 and has modulus 2/sqrt 6 at 1/2.
  EXPECT_NEAR(std::abs(g2(Rational(0))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g2(Rational(1, 2))), 2.0 / std::sqrt(6.0), 1e-14);
}

TEST(Catalog, ProblemJsonRoundTrips) {
  for (const auto& name : catalog_list()) {
    const auto& e = catalog_get(name);
    for (auto c : {Convention::Unit, Convention::Centered}) {
      const auto doc = io::problem_to_json(io::from_catalog(e), c);
      const auto back = io::parse_problem(io::Json::parse(io::dump(doc)));
      EXPECT_EQ(back.multiplicity, e.multiplicity()) << name;
      ASSERT_TRUE(back.h) << name;
      for (std::size_t i = 0; i < e.h.rows(); ++i) {
        for (std::size_t j = 0; j < e.h.cols(); ++j) {
          EXPECT_LE(((*back.h)(i, j) - e.h(i, j)).sup_bound(), 1e-14) << name;
        }
      }
      EXPECT_EQ(back.g.has_value(), e.g.has_value()) << name;
    }
  }
}
