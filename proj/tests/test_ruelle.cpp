#include <gtest/gtest.h>

#include <random>

#include "gmra/catalog.hpp"
#include "gmra/error.hpp"
#include "gmra/ruelle.hpp"
#include "support.hpp"

using namespace gmra;
using gmra::testing::q;

namespace {

const std::vector<std::string> kPairs = {"shannon", "haar",   "haar_negated", "cohen",          "shannon_reversed",
                                         "haar_reversed", "journe", "journe_rank2", "haar3_2wavelet", "cantor3",
                                         "constant_eigenfilter", "haar_conjugated"};

// Oracle: sum_i f_ij(w) x_i(N w), zero off the column domain.
Complex apply_S_at(const FilterMatrix& f, const SectionVector& x, std::size_t j, const Rational& w) {
  if (!f.column_domain(j).contains(w)) return 0.0;
  const Rational nw = f.endomorphism().apply(TorusPoint(w)).value();
  Complex s = 0;
  for (std::size_t i = 0; i < f.rows(); ++i) s += f(i, j)(w) * x.components[i](nw);
  return s;
}

// Oracle: (1/N) sum over preimages z of sum_j conj(f_ij(z)) y_j(z).
Complex apply_S_adjoint_at(const FilterMatrix& f, const SectionVector& y, std::size_t i, const Rational& w) {
  const auto& e = f.endomorphism();
  Complex s = 0;
  for (const auto& z : e.preimages(TorusPoint(w))) {
    for (std::size_t j = 0; j < f.cols(); ++j) s += std::conj(f(i, j)(z.value())) * y.components[j](z.value());
  }
  return f.row_domain(i).contains(w) ? s / static_cast<double>(e.n()) : 0.0;
}

}  // namespace

TEST(Ruelle, ApplyMatchesPointwiseOracle) {
  std::mt19937_64 rng(17);
  for (const auto& name : {"haar", "journe", "journe_rank2", "cantor3"}) {
    const auto& e = catalog_get(name);
    for (const FilterMatrix* f : {&e.h, &*e.g}) {
      const auto x = random_section(row_domains(*f), rng, 4);
      const auto y = random_section(column_domains(*f), rng, 4);
      const auto sx = apply_S(*f, x);
      const auto sy = apply_S_adjoint(*f, y);
      for (const auto& w : gmra::testing::probe_points(84, 1)) {
        for (std::size_t j = 0; j < f->cols(); ++j) {
          EXPECT_NEAR(std::abs(sx.components[j](w) - apply_S_at(*f, x, j, w)), 0.0, 1e-11) << name;
        }
        for (std::size_t i = 0; i < f->rows(); ++i) {
          EXPECT_NEAR(std::abs(sy.components[i](w) - apply_S_adjoint_at(*f, y, i, w)), 0.0, 1e-11) << name;
        }
      }
    }
  }
}

TEST(Ruelle, AdjointPairing) {
  std::mt19937_64 rng(23);
  for (const auto& name : kPairs) {
    const auto& e = catalog_get(name);
    for (const FilterMatrix* f : {&e.h, &*e.g}) {
      const auto x = random_section(row_domains(*f), rng);
      const auto y = random_section(column_domains(*f), rng);
      EXPECT_NEAR(std::abs(inner(apply_S(*f, x), y) - inner(x, apply_S_adjoint(*f, y))), 0.0, 1e-10) << name;
    }
  }
}

TEST(Ruelle, CuntzRelationsHoldForCatalogPairs) {
  for (const auto& name : kPairs) {
    const auto& e = catalog_get(name);
    const auto r = cuntz_check(e.h, *e.g, 20, 1234);
    EXPECT_TRUE(r.passed) << name << " " << r.max_residual;
    EXPECT_LE(r.max_residual, 1e-9) << name;
    for (const char* key : {"SH*SH=I", "SG*SG=I", "SH*SG=0", "SHSH*+SGSG*=I"}) {
      EXPECT_TRUE(r.residuals.count(key)) << name << " " << key;
    }
  }
}

TEST(Ruelle, CuntzRelationsDetectABrokenPair) {
  const auto& haar = catalog_get("haar");
  const auto& cohen = catalog_get("cohen");
  const FilterMatrix g(haar.multiplicity(), haar.endomorphism(), RowIndex::HighPass, {{(*cohen.g)(0, 0)}});
  const auto r = cuntz_check(haar.h, g, 5, 1);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.residuals.at("SH*SG=0"), 1e-3);
}

TEST(Ruelle, IsometryOnUnnormalizedFilterFails) {
  const auto& e = catalog_get("haar_unnormalized");
  std::mt19937_64 rng(1);
  const auto x = random_section(row_domains(e.h), rng);
  // |S x| = sqrt 2 |x| for this filter.
  EXPECT_NEAR(norm(apply_S(e.h, x)) / norm(x), std::sqrt(2.0), 1e-10);
}

TEST(Ruelle, CanonicalVectorsAndNorms) {
  const auto& e = catalog_get("journe");
  const auto v = SectionVector::canonical(column_domains(e.h), 1);
  EXPECT_NEAR(norm(v), std::sqrt(2.0 / 7.0), 1e-14);
  EXPECT_NEAR(norm(apply_S(e.h, SectionVector::canonical(row_domains(e.h), 0))), std::sqrt(5.0 / 7.0), 1e-12);
  const auto z = SectionVector::zero(column_domains(e.h));
  EXPECT_EQ(norm(z), 0.0);
}

TEST(Ruelle, MismatchedSectionThrows) {
  const auto& e = catalog_get("journe");
  const auto x = SectionVector::zero({TorusSet::full()});
  EXPECT_THROW(apply_S(e.h, x), Error);
}

TEST(Ruelle, RandomDiscPointsStayInDisc) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10000; ++i) EXPECT_LE(std::abs(random_disc_point(rng)), 1.0);
  std::mt19937_64 a(5), b(5);
  EXPECT_EQ(random_disc_point(a), random_disc_point(b));
}
