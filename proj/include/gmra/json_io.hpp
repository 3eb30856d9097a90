#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "gmra/catalog.hpp"
#include "gmra/filter.hpp"

namespace gmra::io {

using Json = nlohmann::ordered_json;

struct ProblemOptions {
  std::optional<double> tolerance;
  std::optional<std::size_t> grid;
  std::optional<int> degree;
  std::optional<int> depth;
  std::optional<std::uint64_t> seed;
};

/// Parsed problem file. Filters are optional so that multiplicity-only
/// commands accept files without them.
struct Problem {
  std::string source;
  TorusEndomorphism endomorphism{2};
  MultiplicityFunction multiplicity;
  std::optional<FilterMatrix> h;
  std::optional<FilterMatrix> g;
  ProblemOptions options;

  /// Throws ParseError naming filters.H when absent.
  const FilterMatrix& low_pass() const;
};

/// Throws ParseError; messages start with the offending field path.
Problem parse_problem(const Json& doc, const std::string& source = "<input>");
/// A path to a problem file, or "catalog:NAME".
Problem load_problem(const std::string& spec);
Problem from_catalog(const CatalogEntry& entry);

Rational parse_rational(const Json& v, const std::string& path);
TorusSet parse_set(const Json& v, const std::string& path);
PiecewiseTrigPoly parse_ptp(const Json& v, const std::string& path);

Json to_json(const Rational& r);
/// List of ["lo","hi"] pairs.
Json to_json(const TorusSet& s, Convention c);
/// [{"interval":[lo,hi],"value":v}] over nonzero values, sorted by lo.
Json to_json(const MultiplicityFunction& m, Convention c);
Json to_json(const PiecewiseTrigPoly& f, Convention c);
Json to_json(const FilterMatrix& f, Convention c);
Json to_json(const SampledFilter& f);
Json to_json(const VerificationReport& r);
Json to_json(Complex z);
Json problem_to_json(const Problem& p, Convention c);

/// Deterministic text: insertion key order, two-space indent, floats with
/// 17 significant digits.
std::string dump(const Json& j);

}  // namespace gmra::io
