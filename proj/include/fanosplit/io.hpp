#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fanosplit/census.hpp"
#include "fanosplit/identity.hpp"
#include "fanosplit/plane.hpp"
#include "fanosplit/prodrank.hpp"
#include "fanosplit/search.hpp"

namespace fanosplit::io {

using json = nlohmann::json;

inline constexpr const char* kPolySchema = "fanosplit.poly/1";
inline constexpr const char* kIdentitySchema = "fanosplit.identity/1";
inline constexpr const char* kPlaneSchema = "fanosplit.plane/1";
inline constexpr const char* kDecompositionSchema = "fanosplit.decomposition/1";
inline constexpr const char* kCertificateSchema = "fanosplit.certificate/1";
inline constexpr const char* kSearchSchema = "fanosplit.search/1";
inline constexpr const char* kSplitHuntSchema = "fanosplit.splithunt/1";
inline constexpr const char* kCensusSchema = "fanosplit.census/1";

// ---------------------------------------------------------------------------------------------
// Reading helpers with locations in error messages

inline const json& need(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

template <class T>
T need_as(const json& j, const std::string& key, const std::string& where) {
  const json& v = need(j, key, where);
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + "/" + key + ": " + e.what());
  }
}

inline void check_schema(const json& j, const std::string& schema, const std::string& where) {
  if (j.is_object() && j.contains("schema") && j.at("schema") != schema)
    throw ParseError(where + ": schema " + j.at("schema").dump() + ", expected \"" + schema + "\"");
}

inline FieldElement element_from_json(Field f, const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    if (j.is_string()) return f.parse_element(j.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected a number or string, got " + j.dump());
}

/// Residues as integers over GF(p), strings over the rationals.
inline json element_to_json(const FieldElement& c) {
  if (c.field().is_prime_field()) return c.residue();
  return c.to_string();
}

inline json read_json(std::istream& in, const std::string& where) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  return read_json(in, path);
}

// ---------------------------------------------------------------------------------------------
// Polynomials and products

inline json to_json(const MultiPoly& p, const std::vector<std::string>& names = {}) {
  json vars = json::array();
  for (std::size_t i = 0; i < p.nvars(); ++i) vars.push_back(i < names.size() ? names[i] : "x" + std::to_string(i + 1));
  json terms = json::array();
  for (const auto& t : p.terms()) terms.push_back({{"c", t.c.to_string()}, {"e", t.e}});
  return {{"field", p.field().token()}, {"vars", vars}, {"terms", terms}};
}

inline MultiPoly poly_from_json(const json& j, const std::string& where = "poly", std::optional<Field> field = {}) {
  const Field f = field ? *field : Field::parse(need_as<std::string>(j, "field", where));
  const auto& vars = need(j, "vars", where);
  if (!vars.is_array()) throw ParseError(where + "/vars: expected an array");
  const std::size_t n = vars.size();
  std::vector<Term> ts;
  const auto& terms = need(j, "terms", where);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string w = where + "/terms/" + std::to_string(i);
    const auto e = need_as<std::vector<std::uint16_t>>(terms[i], "e", w);
    if (e.size() != n) throw ParseError(w + "/e: length " + std::to_string(e.size()) + ", expected " + std::to_string(n));
    ts.push_back({Exponent(e.begin(), e.end()), element_from_json(f, need(terms[i], "c", w), w + "/c")});
  }
  return MultiPoly::from_terms(f, n, ts);
}

inline json to_json(const LinearForm& l) {
  json c = json::array();
  for (const auto& x : l.coeffs()) c.push_back(element_to_json(x));
  return c;
}

inline LinearForm form_from_json(Field f, const json& j, std::size_t nvars, const std::string& where) {
  if (!j.is_array() || j.size() != nvars) throw ParseError(where + ": expected " + std::to_string(nvars) + " coefficients");
  Vector c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(element_from_json(f, j[i], where + "/" + std::to_string(i)));
  return LinearForm(c);
}

inline json to_json(const ProductOfLinear& p) {
  json fs = json::array();
  for (const auto& l : p.factors()) fs.push_back(to_json(l));
  return {{"scalar", p.scalar().to_string()}, {"factors", fs}};
}

inline ProductOfLinear product_from_json(Field f, std::size_t nvars, const json& j, const std::string& where) {
  const FieldElement s = j.contains("scalar") ? element_from_json(f, j.at("scalar"), where + "/scalar") : f.one();
  std::vector<LinearForm> fs;
  const auto& arr = need(j, "factors", where);
  for (std::size_t i = 0; i < arr.size(); ++i) fs.push_back(form_from_json(f, arr[i], nvars, where + "/factors/" + std::to_string(i)));
  try {
    return ProductOfLinear(f, nvars, s, fs);
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------------------------
// Identities

inline json to_json(const SumProductIdentity& inst) {
  json products = json::array(), monomials = json::array(), coeffs = json::array();
  for (const auto& p : inst.products()) products.push_back(to_json(p));
  for (const auto& x : inst.monomials()) monomials.push_back(x.vars());
  for (const auto& c : inst.coeffs()) coeffs.push_back(to_json(c));
  return {{"schema", kIdentitySchema}, {"field", inst.field().token()}, {"nvars", inst.nvars()},
          {"d", inst.d()},             {"k", inst.k()},                  {"m", inst.m()},
          {"n", inst.n()},             {"constraint", to_string(inst.constraint())},
          {"products", products},      {"monomials", monomials},        {"coeffs", coeffs}};
}

inline SumProductIdentity identity_from_json(const json& j, const std::string& where = "identity") {
  check_schema(j, kIdentitySchema, where);
  const Field f = Field::parse(need_as<std::string>(j, "field", where));
  const auto nvars = need_as<std::size_t>(j, "nvars", where);
  std::vector<ProductOfLinear> products;
  const auto& ps = need(j, "products", where);
  for (std::size_t i = 0; i < ps.size(); ++i) products.push_back(product_from_json(f, nvars, ps[i], where + "/products/" + std::to_string(i)));
  std::vector<Monomial> xs;
  for (const auto& vs : need(j, "monomials", where)) xs.push_back(Monomial::from_vars(nvars, vs.get<std::vector<std::size_t>>()));
  std::vector<MultiPoly> coeffs;
  const auto& cs = need(j, "coeffs", where);
  for (std::size_t i = 0; i < cs.size(); ++i) coeffs.push_back(poly_from_json(cs[i], where + "/coeffs/" + std::to_string(i), f));
  try {
    return SumProductIdentity(need_as<unsigned>(j, "d", where), need_as<std::size_t>(j, "k", where), products, xs, coeffs,
                              parse_constraint(j.value("constraint", std::string("strict"))));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------------------------
// Planes. Columns are x_11, ..., x_1d, x_21, ..., x_rd.

inline json to_json(const KPlane& L) {
  json rows = json::array();
  for (std::size_t a = 0; a < L.matrix().rows(); ++a) {
    json row = json::array();
    for (std::size_t c = 0; c < L.matrix().cols(); ++c) row.push_back(element_to_json(L.matrix()(a, c)));
    rows.push_back(row);
  }
  return {{"schema", kPlaneSchema}, {"r", L.r()}, {"d", L.d()}, {"k", L.k()}, {"field", L.field().token()}, {"B", rows}};
}

inline KPlane plane_from_json(const json& j, const std::string& where = "plane") {
  check_schema(j, kPlaneSchema, where);
  const auto r = need_as<std::size_t>(j, "r", where), d = need_as<std::size_t>(j, "d", where);
  const Field f = Field::parse(need_as<std::string>(j, "field", where));
  const auto& B = need(j, "B", where);
  if (!B.is_array() || B.empty()) throw ParseError(where + "/B: expected a nonempty array of rows");
  Matrix M(f, B.size(), r * d);
  for (std::size_t a = 0; a < B.size(); ++a) {
    if (!B[a].is_array() || B[a].size() != r * d)
      throw ParseError(where + "/B/" + std::to_string(a) + ": expected " + std::to_string(r * d) + " entries");
    for (std::size_t c = 0; c < r * d; ++c) M(a, c) = element_from_json(f, B[a][c], where + "/B/" + std::to_string(a) + "/" + std::to_string(c));
  }
  try {
    KPlane L(HypersurfaceParams(r, d), M);
    if (j.contains("k") && j.at("k").get<std::size_t>() != L.k())
      throw ParseError(where + "/k: " + j.at("k").dump() + " but B has rank " + std::to_string(L.k() + 1));
    return L;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline json to_json(const LambdaProfile& p) {
  json basis = json::array();
  for (const auto& step : p.basis) {
    json s = json::array();
    for (const auto& l : step) s.push_back(to_json(l));
    basis.push_back(s);
  }
  return {{"ordering", p.ordering}, {"lambdas", p.lambdas}, {"basis", basis}};
}

inline json to_json(const AuditReport& a) {
  return {{"s", a.s},
          {"flags", {{"lambda_zero", a.flags.lambda_zero}, {"parity_case", a.flags.parity_case}, {"k_bound", a.flags.k_bound}}},
          {"hypotheses_hold", a.hypotheses_hold},
          {"pair_sum", a.pair_sum},
          {"conclusion_holds", a.conclusion_holds},
          {"outcome", a.outcome == AuditOutcome::consistent ? "Consistent" : "InconsistentWithLemma"}};
}

// ---------------------------------------------------------------------------------------------
// Reports

inline json to_json(const SearchReport& r, const SearchSpace& sp) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(to_json(w));
  return {{"schema", kSearchSchema},
          {"field", sp.field.token()},
          {"d", sp.d},
          {"m", sp.m},
          {"k", sp.k},
          {"pattern", sp.pattern},
          {"nvars", sp.total_vars()},
          {"constraint", to_string(sp.constraint)},
          {"mode", sp.mode == SearchMode::exhaustive ? "exhaustive" : "randomized"},
          {"seed", sp.seed},
          {"trials", sp.trials},
          {"jobs", sp.jobs},
          {"route", r.route},
          {"space_size", r.space_size},
          {"examined", r.examined},
          {"identities", r.identities},
          {"counterexamples", r.counterexamples},
          {"boundary_witnesses", r.boundary_witnesses},
          {"rank_one_vanishing", {{"applicable", r.vanishing_applicable}, {"violations", r.vanishing_violations}}},
          {"linear_factor", {{"checked", r.linear_factor_checked}, {"violations", r.linear_factor_violations}}},
          {"filtered", r.filtered},
          {"exact_checks", r.exact_checks},
          {"replay_mismatches", r.replay_mismatches},
          {"partitions", r.partitions},
          {"seconds", r.seconds},
          {"incomplete", r.incomplete},
          {"label", r.label},
          {"witnesses", witnesses}};
}

inline json to_json(const SplitHuntReport& r, std::uint64_t seed) {
  return {{"schema", kSplitHuntSchema},
          {"r", r.r},
          {"d", r.d},
          {"k", r.k},
          {"seed", seed},
          {"trials", r.trials},
          {"sampled", r.sampled},
          {"injected", r.injected},
          {"rejections", r.rejections},
          {"sampler_failures", r.sampler_failures},
          {"sampler_failed", r.sampler_failed},
          {"non_one_split", r.non_one_split},
          {"non_two_split", r.non_two_split},
          {"witness_family", r.witness_family},
          {"one_split_violations", r.one_split_violations},
          {"two_split_violations", r.two_split_violations},
          {"audit_inconsistent", r.audit_inconsistent},
          {"seconds", r.seconds},
          {"label", r.label}};
}

inline json to_json(const ComponentTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows)
    rows.push_back({{"type", to_string(row.type)}, {"count", row.count.str()}, {"dimension", row.dimension.str()}, {"note", row.note}});
  return {{"schema", kCensusSchema}, {"r", t.r}, {"d", t.d}, {"k", t.k}, {"status", to_string(t.status)}, {"rows", rows}};
}

inline json to_json(const SplittingStatus& s) {
  auto claim = [](const SplitClaim& c) { return json{{"answer", to_string(c)}, {"note", c.note}}; };
  return {{"r", s.r}, {"d", s.d}, {"k", s.k}, {"one_split", claim(s.one_split)}, {"two_split", claim(s.two_split)}};
}

inline json to_json(const BoundVerdict& v) {
  json chain = json::array();
  for (const auto& [r, k] : v.chain) chain.push_back({{"r", r}, {"k", k}});
  return {{"verdict", to_string(v)}, {"part", v.part}, {"reason", v.reason}, {"chain", chain}};
}

// ---------------------------------------------------------------------------------------------
// Decompositions and certificates

/// {"schema", "field", "target": name or polynomial, "parts": [{"scalar","factors"}]}.
inline RankDecomposition decomposition_from_json(const json& j, const std::string& where = "decomposition") {
  check_schema(j, kDecompositionSchema, where);
  const Field f = Field::parse(need_as<std::string>(j, "field", where));
  const auto& t = need(j, "target", where);
  const MultiPoly target = t.is_string() ? target_by_name(t.get<std::string>(), f).poly : poly_from_json(t, where + "/target", f);
  RankDecomposition dec{target, {}};
  const auto& parts = need(j, "parts", where);
  for (std::size_t i = 0; i < parts.size(); ++i)
    dec.parts.push_back(product_from_json(f, target.nvars(), parts[i], where + "/parts/" + std::to_string(i)));
  return dec;
}

inline json to_json(const RankDecomposition& dec, const std::string& target_name = "") {
  json parts = json::array();
  for (const auto& p : dec.parts) parts.push_back(to_json(p));
  return {{"schema", kDecompositionSchema},
          {"field", dec.target.field().token()},
          {"target", target_name.empty() ? to_json(dec.target) : json(target_name)},
          {"parts", parts}};
}

inline json to_json(const RankCertificate& c) {
  json steps = json::array();
  for (const auto& s : c.steps)
    steps.push_back({{"kind", to_string(s.kind)}, {"rule", s.rule}, {"statement", s.statement}, {"args", s.args}, {"expect", s.expect}});
  return {{"schema", kCertificateSchema}, {"target", c.target},         {"rule", c.rule},
          {"lower_bound", c.lower_bound}, {"conclusion", c.conclusion}, {"steps", steps}};
}

inline RankCertificate certificate_from_json(const json& j, const std::string& where = "certificate") {
  check_schema(j, kCertificateSchema, where);
  RankCertificate c{need_as<std::string>(j, "target", where), need_as<std::string>(j, "rule", where),
                    need_as<std::size_t>(j, "lower_bound", where), j.value("conclusion", std::string()), {}};
  const auto& steps = need(j, "steps", where);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string w = where + "/steps/" + std::to_string(i);
    c.steps.push_back({parse_step_kind(need_as<std::string>(steps[i], "kind", w)), need_as<std::string>(steps[i], "rule", w),
                       steps[i].value("statement", std::string()), steps[i].value("args", json()), steps[i].value("expect", json())});
  }
  return c;
}

}  // namespace fanosplit::io
