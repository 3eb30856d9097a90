#include "gmra/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gmra/error.hpp"

namespace gmra::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ParseError, path + ": " + msg);
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "required field missing");
  return *it;
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::int64_t integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::pair<Rational, Rational> interval(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) fail(path, "expected [lo, hi]");
  return {parse_rational(v[0], path + "[0]"), parse_rational(v[1], path + "[1]")};
}

TrigPoly parse_terms(const Json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of terms");
  std::vector<TrigPoly::Term> terms;
  for (std::size_t t = 0; t < v.size(); ++t) {
    const std::string p = path + "[" + std::to_string(t) + "]";
    const Json& term = v[t];
    if (!term.is_object()) fail(p, "expected an object");
    const Rational freq = term.contains("freq") ? parse_rational(term["freq"], p + ".freq") : Rational(0);
    const double re = term.contains("re") ? number(term["re"], p + ".re") : 0.0;
    const double im = term.contains("im") ? number(term["im"], p + ".im") : 0.0;
    terms.emplace_back(freq, Complex(re, im));
  }
  return TrigPoly::from_terms(std::move(terms));
}

MultiplicityFunction parse_multiplicity(const Json& v, const std::string& path) {
  if (v.is_number_integer()) {
    const auto c = v.get<std::int64_t>();
    if (c < 0) fail(path, "multiplicity must be nonnegative");
    return MultiplicityFunction::constant(c);
  }
  if (!v.is_array()) fail(path, "expected an integer or an array of pieces");
  std::vector<MultiplicityFunction::Piece> pieces;
  TorusSet covered;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    auto [lo, hi] = interval(field(v[k], "interval", p), p + ".interval");
    const std::int64_t value = integer(field(v[k], "value", p), p + ".value");
    if (value < 0) fail(p + ".value", "multiplicity must be nonnegative");
    TorusSet s = TorusSet::from_real({{lo, hi}});
    if (!covered.intersect(s).is_empty()) fail(p + ".interval", "overlaps an earlier piece");
    covered = covered.unite(s);
    pieces.push_back({std::move(s), value});
  }
  return MultiplicityFunction::from_pieces(pieces);
}

FilterMatrix parse_filter(const Json& v, const std::string& path, const MultiplicityFunction& m,
                          const TorusEndomorphism& e, RowIndex kind) {
  if (!v.is_array()) fail(path, "expected an array of rows");
  std::vector<std::vector<PiecewiseTrigPoly>> entries;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) fail(p, "expected a row array");
    if (i == 0) cols = v[i].size();
    if (v[i].size() != cols) fail(p, "row length " + std::to_string(v[i].size()) + " differs from " + std::to_string(cols));
    std::vector<PiecewiseTrigPoly> row;
    for (std::size_t j = 0; j < v[i].size(); ++j) row.push_back(parse_ptp(v[i][j], p + "[" + std::to_string(j) + "]"));
    entries.push_back(std::move(row));
  }
  const auto expected_rows = static_cast<std::size_t>(
      kind == RowIndex::LowPass ? m.max_value() : compute_mtilde(m, e).max_value());
  const auto expected_cols = static_cast<std::size_t>(m.max_value());
  if (entries.size() != expected_rows) {
    fail(path, "expected " + std::to_string(expected_rows) + " rows, found " + std::to_string(entries.size()));
  }
  if (!entries.empty() && cols != expected_cols) {
    fail(path, "expected " + std::to_string(expected_cols) + " columns, found " + std::to_string(cols));
  }
  return FilterMatrix(m, e, kind, std::move(entries));
}

void write(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << Json(it.key()).dump() << ": ";
        write(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Short scalar arrays (intervals, frequency pairs) stay on one line.
      const bool flat = j.size() <= 4 && std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
      if (flat) {
        os << "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) os << ", ";
          write(os, j[k], indent + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ",\n";
        os << inner;
        write(os, j[k], indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        os << "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

const FilterMatrix& Problem::low_pass() const {
  if (!h) throw Error(ErrorCode::ParseError, "filters.H: required field missing");
  return *h;
}

Rational parse_rational(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (!v.is_string()) fail(path, "expected a rational string \"p/q\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

TorusSet parse_set(const Json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected a list of [lo, hi] pairs");
  std::vector<std::pair<Rational, Rational>> parts;
  for (std::size_t k = 0; k < v.size(); ++k) parts.push_back(interval(v[k], path + "[" + std::to_string(k) + "]"));
  return TorusSet::from_real(parts);
}

PiecewiseTrigPoly parse_ptp(const Json& v, const std::string& path) {
  if (v.is_number()) return PiecewiseTrigPoly::constant(v.get<double>());
  if (!v.is_object()) fail(path, "expected a number or an object with \"pieces\" or \"terms\"");
  if (v.contains("terms")) return PiecewiseTrigPoly(parse_terms(v["terms"], path + ".terms"));
  const Json& pieces = field(v, "pieces", path);
  if (!pieces.is_array()) fail(path + ".pieces", "expected an array");
  std::vector<PiecewiseTrigPoly::RealPiece> parts;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const std::string p = path + ".pieces[" + std::to_string(k) + "]";
    auto [lo, hi] = interval(field(pieces[k], "interval", p), p + ".interval");
    TrigPoly poly = parse_terms(field(pieces[k], "terms", p), p + ".terms");
    parts.push_back({lo, hi, std::move(poly)});
  }
  try {
    return PiecewiseTrigPoly::from_real_pieces(parts);
  } catch (const Error& e) {
    fail(path + ".pieces", e.what());
  }
}

Problem parse_problem(const Json& doc, const std::string& source) {
  Problem p;
  p.source = source;
  if (!doc.is_object()) fail("$", "expected an object");
  if (doc.contains("version") && integer(doc["version"], "version") != 1) fail("version", "unsupported version");
  const std::int64_t n = integer(field(field(doc, "endomorphism", "$"), "N", "endomorphism"), "endomorphism.N");
  if (n < 2) fail("endomorphism.N", "dilation must be at least 2");
  p.endomorphism = TorusEndomorphism(n);
  p.multiplicity = parse_multiplicity(field(doc, "multiplicity", "$"), "multiplicity");

  if (doc.contains("filters")) {
    const Json& f = doc["filters"];
    if (!f.is_object()) fail("filters", "expected an object");
    if (f.contains("H")) {
      p.h = parse_filter(f["H"], "filters.H", p.multiplicity, p.endomorphism, RowIndex::LowPass);
    }
    if (f.contains("G")) {
      try {
        compute_mtilde(p.multiplicity, p.endomorphism);
      } catch (const Error& e) {
        fail("multiplicity", e.what());
      }
      p.g = parse_filter(f["G"], "filters.G", p.multiplicity, p.endomorphism, RowIndex::HighPass);
    }
  }

  if (doc.contains("options")) {
    const Json& o = doc["options"];
    if (!o.is_object()) fail("options", "expected an object");
    if (o.contains("tolerance")) {
      p.options.tolerance = number(o["tolerance"], "options.tolerance");
      if (!(*p.options.tolerance > 0)) fail("options.tolerance", "must be positive");
    }
    if (o.contains("grid")) {
      const auto g = integer(o["grid"], "options.grid");
      if (g < 1) fail("options.grid", "must be positive");
      p.options.grid = static_cast<std::size_t>(g);
    }
    if (o.contains("degree")) p.options.degree = static_cast<int>(integer(o["degree"], "options.degree"));
    if (o.contains("depth")) p.options.depth = static_cast<int>(integer(o["depth"], "options.depth"));
    if (o.contains("seed")) p.options.seed = static_cast<std::uint64_t>(integer(o["seed"], "options.seed"));
  }
  return p;
}

Problem from_catalog(const CatalogEntry& entry) {
  Problem p;
  p.source = "catalog:" + entry.name;
  p.endomorphism = entry.endomorphism();
  p.multiplicity = entry.multiplicity();
  p.h = entry.h;
  p.g = entry.g;
  return p;
}

Problem load_problem(const std::string& spec) {
  if (spec.starts_with("catalog:")) return from_catalog(catalog_get(spec.substr(8)));
  std::ifstream in(spec);
  if (!in) throw Error(ErrorCode::ParseError, spec + ": cannot open file");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, spec + ": " + e.what());
  }
  return parse_problem(doc, spec);
}

Json to_json(const Rational& r) { return r.to_string(); }

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const TorusSet& s, Convention c) {
  Json out = Json::array();
  for (const auto& [lo, hi] : s.display(c)) out.push_back(Json::array({to_json(lo), to_json(hi)}));
  return out;
}

Json to_json(const MultiplicityFunction& m, Convention c) {
  std::vector<std::tuple<Rational, Rational, std::int64_t>> rows;
  for (const auto& piece : m.pieces()) {
    for (const auto& [lo, hi] : piece.set.display(c)) rows.emplace_back(lo, hi, piece.value);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
  Json out = Json::array();
  for (const auto& [lo, hi, v] : rows) {
    out.push_back(Json{{"interval", Json::array({to_json(lo), to_json(hi)})}, {"value", v}});
  }
  return out;
}

Json to_json(const PiecewiseTrigPoly& f, Convention c) {
  Json pieces = Json::array();
  for (const auto& piece : f.display(c)) {
    Json terms = Json::array();
    for (const auto& [freq, coef] : piece.poly.terms()) {
      terms.push_back(Json{{"freq", to_json(freq)}, {"re", coef.real()}, {"im", coef.imag()}});
    }
    pieces.push_back(Json{{"interval", Json::array({to_json(piece.lo), to_json(piece.hi)})}, {"terms", terms}});
  }
  return Json{{"pieces", pieces}};
}

Json to_json(const FilterMatrix& f, Convention c) {
  Json rows = Json::array();
  for (const auto& row : f.entries()) {
    Json r = Json::array();
    for (const auto& entry : row) r.push_back(to_json(entry, c));
    rows.push_back(r);
  }
  return rows;
}

Json to_json(const SampledFilter& f) {
  Json rows = Json::array();
  for (const auto& row : f.samples) {
    Json r = Json::array();
    for (const auto& entry : row) {
      Json re = Json::array();
      Json im = Json::array();
      for (const auto& z : entry) {
        re.push_back(z.real());
        im.push_back(z.imag());
      }
      r.push_back(Json{{"re", re}, {"im", im}});
    }
    rows.push_back(r);
  }
  return Json{{"N", f.n}, {"grid", f.grid_size()}, {"samples", rows}};
}

Json to_json(const VerificationReport& r) {
  Json res = Json::object();
  for (const auto& [k, v] : r.residuals) res[k] = v;
  return Json{{"passed", r.passed}, {"max_residual", r.max_residual}, {"residuals", res}, {"offending", r.offending}};
}

Json problem_to_json(const Problem& p, Convention c) {
  Json doc{{"version", 1}, {"endomorphism", Json{{"N", p.endomorphism.n()}}}, {"multiplicity", to_json(p.multiplicity, c)}};
  Json filters = Json::object();
  if (p.h) filters["H"] = to_json(*p.h, c);
  if (p.g) filters["G"] = to_json(*p.g, c);
  doc["filters"] = filters;
  return doc;
}

std::string dump(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

}  // namespace gmra::io
