#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmra/filter.hpp"

namespace gmra {

/// Where an expected value comes from.
enum class Provenance {
  Published,  // stated in the literature for this example
  Derived,    // computed independently (oracle or hand derivation)
  Trivial,    // immediate from the definitions
};

std::string_view to_string(Provenance p);

struct CatalogEntry;

struct Observation {
  bool passed = false;
  std::string observed;
};

struct Expectation {
  std::string property;
  std::string expected;
  Provenance provenance = Provenance::Derived;
  std::string note;
  std::function<Observation(const CatalogEntry&, double tol)> check;
};

struct CatalogEntry {
  std::string name;
  std::string summary;
  FilterMatrix h;
  std::optional<FilterMatrix> g;
  std::vector<Expectation> expectations;

  const TorusEndomorphism& endomorphism() const noexcept { return h.endomorphism(); }
  const MultiplicityFunction& multiplicity() const noexcept { return h.multiplicity(); }
};

/// Throws UnknownName.
const CatalogEntry& catalog_get(std::string_view name);
std::vector<std::string> catalog_list();

/// One residual per expectation: 0 when it holds, 1 when it does not.
/// Offending entries read "property: expected X, observed Y".
VerificationReport run_expectations(std::string_view name, double tol = kDefaultTolerance);

}  // namespace gmra
