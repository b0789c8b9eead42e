#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fanosplit/census.hpp"
#include "fanosplit/identity.hpp"
#include "fanosplit/plane.hpp"
#include "fanosplit/prodrank.hpp"
#include "fanosplit/search.hpp"

namespace fanosplit::repro {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  std::vector<std::string> lines;  // per-run detail
};

struct Options {
  unsigned jobs = 1;
  std::uint64_t seed = 1;
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

template <class... Ts>
std::string cat(const Ts&... xs) {
  std::ostringstream os;
  (os << ... << xs);
  return os.str();
}

inline std::string pattern_str(const std::vector<unsigned>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s;
}

inline MultiPoly random_homogeneous(Field f, std::size_t nvars, unsigned deg, std::mt19937_64& rng) {
  std::vector<Exponent> es;
  fanosplit::detail::monomials_of_degree(nvars, deg, es);
  std::vector<Term> ts;
  for (auto& e : es)
    if (rng() % 3 == 0) ts.push_back({e, f.residue(rng() % f.characteristic())});
  return MultiPoly::from_terms(f, nvars, ts);
}

inline LinearForm random_form(Field f, std::size_t nvars, std::mt19937_64& rng) {
  for (;;) {
    Vector c;
    for (std::size_t i = 0; i < nvars; ++i) c.push_back(f.residue(rng() % f.characteristic()));
    LinearForm l(c);
    if (!l.is_zero()) return l;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// The search runs shared by criteria 5 and 6

struct SearchRun {
  SearchSpace space;
  SearchReport report;
  bool expect_boundary = false;  // relaxed runs
};

inline std::vector<SearchSpace> search_plan(unsigned jobs) {
  using C = DegreeConstraint;
  struct Row {
    unsigned d;
    std::size_t m;
    std::vector<unsigned> pattern;
    C c;
  };
  const std::vector<Row> rows{
      {3, 1, {2, 3}, C::strict},       {3, 1, {3, 3}, C::strict},       {4, 1, {2, 4}, C::strict},
      {4, 1, {3, 3}, C::strict},       {4, 1, {3, 4}, C::strict},       {4, 1, {4, 4}, C::strict},
      {5, 1, {2, 5}, C::strict},       {5, 1, {3, 4}, C::strict},       {5, 1, {3, 5}, C::strict},
      {5, 1, {4, 4}, C::strict},       {5, 1, {4, 5}, C::strict},       {5, 1, {5, 5}, C::strict},
      {3, 1, {2, 3, 3}, C::strict},    {4, 1, {2, 4, 4}, C::strict},    {4, 1, {3, 3, 3}, C::strict},
      {4, 1, {3, 3, 4}, C::strict},    {4, 1, {3, 4, 4}, C::strict},    {4, 1, {4, 4, 4}, C::strict},
      {5, 1, {3, 4, 4}, C::strict},    {5, 1, {2, 5, 5}, C::strict},    {3, 2, {2, 3, 3}, C::strict},
      {3, 2, {3, 3, 3}, C::strict},    {4, 2, {3, 3, 3}, C::strict},    {4, 2, {3, 3, 4}, C::strict},
      {4, 2, {3, 4, 4}, C::strict},    {4, 2, {4, 4, 4}, C::strict},    {3, 1, {2, 2}, C::relaxed},
      {4, 1, {2, 3}, C::relaxed},      {5, 1, {2, 4}, C::relaxed},      {5, 1, {3, 3}, C::relaxed},
      {3, 1, {2, 2, 2}, C::relaxed},   {4, 1, {2, 3, 3}, C::relaxed}};
  std::vector<SearchSpace> out;
  for (const auto& r : rows) {
    SearchSpace sp;
    sp.field = Field::prime(2);
    sp.d = r.d;
    sp.m = r.m;
    sp.pattern = r.pattern;
    sp.constraint = r.c;
    sp.jobs = jobs;
    sp.ceiling = 200'000'000;
    sp.time_limit_seconds = 600;
    out.push_back(sp);
  }
  return out;
}

inline std::vector<SearchRun> run_search_plan(unsigned jobs) {
  std::vector<SearchRun> runs;
  for (const auto& sp : search_plan(jobs)) {
    SearchRun run{sp, hunt_counterexamples(sp), sp.constraint == DegreeConstraint::relaxed};
    runs.push_back(std::move(run));
  }
  return runs;
}

inline std::string describe(const SearchRun& r) {
  const auto& sp = r.space;
  return detail::cat("m=", sp.m, " d=", sp.d, " pattern=(", detail::pattern_str(sp.pattern), ") ", to_string(sp.constraint),
                     " nvars=", sp.total_vars(), ": identities=", r.report.identities, " counterexamples=", r.report.counterexamples,
                     " boundary=", r.report.boundary_witnesses, " replay_mismatches=", r.report.replay_mismatches,
                     r.report.incomplete ? " INCOMPLETE" : "", " ", r.report.seconds, "s");
}

// ---------------------------------------------------------------------------------------------
// Criteria

inline CriterionResult census_table() {
  detail::Stopwatch sw;
  CriterionResult res{1, "census table (4,3,5)", false, "", 0, {}};
  const auto t = component_census(4, 3, 5);
  const std::vector<std::pair<int, int>> expect{{81, 12}, {324, 8}, {648, 5}, {216, 4}};
  bool ok = t.rows.size() == expect.size() && t.status == TableStatus::validated;
  for (std::size_t i = 0; ok && i < expect.size(); ++i) {
    ok = t.rows[i].count == expect[i].first && t.rows[i].dimension == expect[i].second;
    res.lines.push_back(detail::cat(to_string(t.rows[i].type), ": count ", t.rows[i].count.str(), " dim ", t.rows[i].dimension.str()));
  }
  res.seconds = sw.seconds();
  res.passed = ok && res.seconds < 1;
  res.detail = ok ? "A:(81,12) B:(324,8) C:(648,5) D:(216,4)" : "table differs";
  return res;
}

inline CriterionResult dimension_identity() {
  detail::Stopwatch sw;
  CriterionResult res{2, "type-A dimension identity", true, "", 0, {}};
  std::size_t checked = 0;
  for (std::size_t r = 3; r <= 8; ++r)
    for (std::size_t d = 3; d <= 8; ++d) {
      const std::size_t k = (r - 2) * (d - 1) + 1;
      const Integer special = Integer(2) * Integer((r - 2) * (d - 1) + 2) * Integer(d - 2);
      const Integer grass = Integer(k + 1) * (Integer(r * (d - 1)) - Integer(k + 1));
      const auto t = component_census(r, d, k);
      const bool ok = special == grass && !t.rows.empty() && t.rows[0].dimension == grass;
      if (!ok) {
        res.passed = false;
        res.lines.push_back(detail::cat("(r,d)=(", r, ",", d, "): ", special.str(), " vs ", grass.str()));
      }
      ++checked;
    }
  res.seconds = sw.seconds();
  res.passed = res.passed && res.seconds < 1;
  res.detail = detail::cat(checked, " pairs (r,d) in [3,8]^2");
  return res;
}

inline CriterionResult torus_planes() {
  detail::Stopwatch sw;
  CriterionResult res{3, "torus fixed planes at k = r(d-1)-1", true, "", 0, {}};
  for (auto [r, d] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {2, 4}, {3, 3}, {3, 4}, {4, 3}}) {
    const std::size_t k = r * (d - 1) - 1;
    const auto planes = torus_fixed_planes(r, d, k);
    std::size_t members = 0;
    for (const auto& p : planes) members += membership(p.to_plane(Field::prime(2))) ? 1 : 0;
    const Integer expect = fanosplit::detail::ipow(d, r);
    const bool ok = Integer(planes.size()) == expect && members == planes.size() && torus_fixed_count(r, d, k) == expect;
    res.passed = res.passed && ok;
    res.lines.push_back(detail::cat("(", r, ",", d, ") k=", k, ": ", planes.size(), " planes, d^r = ", expect.str(),
                                    ", r^d = ", fanosplit::detail::ipow(r, d).str()));
  }
  res.seconds = sw.seconds();
  res.passed = res.passed && res.seconds < 10;
  res.detail = "count is d^r";
  return res;
}

inline CriterionResult sharp_witnesses() {
  detail::Stopwatch sw;
  CriterionResult res{4, "sharp witnesses", true, "", 0, {}};
  const Field f = Field::prime(101);
  for (auto [r, d] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {4, 3}, {4, 4}, {6, 3}, {5, 3}}) {
    const KPlane W = sharp_witness(r, d, f);
    const bool member = membership(W);
    const bool one = is_one_split(W);
    const bool two = is_two_split(W);
    const bool ok = member && !one && (r % 2 == 1 || two);
    res.passed = res.passed && ok;
    res.lines.push_back(detail::cat("(", r, ",", d, ") k=", W.k(), ": member=", member, " one_split=", one, " two_split=", two));
  }
  res.seconds = sw.seconds();
  res.passed = res.passed && res.seconds < 5;
  res.detail = "member, not one-split, two-split for even r";
  return res;
}

inline CriterionResult c_property_searches(const std::vector<SearchRun>& runs) {
  CriterionResult res{5, "C-property searches over GF(2)", true, "", 0, {}};
  std::size_t strict = 0, relaxed = 0, witnesses = 0;
  double slowest = 0;
  for (const auto& r : runs) {
    res.seconds += r.report.seconds;
    slowest = std::max(slowest, r.report.seconds);
    bool ok = r.report.replay_mismatches == 0 && !r.report.incomplete && r.report.seconds < 600;
    if (r.expect_boundary) {
      ++relaxed;
      witnesses += r.report.boundary_witnesses;
    } else {
      ++strict;
      ok = ok && r.report.counterexamples == 0;
    }
    res.passed = res.passed && ok;
    res.lines.push_back(describe(r));
  }
  // The (2,2) pattern at d = 3 is the smallest relaxed case and must produce a boundary witness.
  bool smallest = false;
  for (const auto& r : runs)
    if (r.expect_boundary && r.space.d == 3 && r.space.pattern == std::vector<unsigned>{2, 2}) smallest = r.report.boundary_witnesses > 0;
  res.passed = res.passed && smallest && witnesses > 0;
  res.detail = detail::cat(strict, " strict runs with 0 counterexamples, ", relaxed, " relaxed runs with ", witnesses,
                           " boundary witnesses; slowest run ", slowest, "s");
  return res;
}

inline CriterionResult rank_one_vanishing_property(const std::vector<SearchRun>& runs) {
  CriterionResult res{6, "vanishing coefficient for m = 1, three or more monomials", true, "", 0, {}};
  std::uint64_t applicable = 0, violations = 0;
  std::size_t used = 0;
  for (const auto& r : runs) {
    if (r.space.m != 1) continue;
    ++used;
    applicable += r.report.vanishing_applicable;
    violations += r.report.vanishing_violations;
    if (r.report.vanishing_applicable)
      res.lines.push_back(detail::cat("m=1 d=", r.space.d, " pattern=(", detail::pattern_str(r.space.pattern), ") ", to_string(r.space.constraint), ": ",
                                      r.report.vanishing_applicable, " instances, ", r.report.vanishing_violations, " violations"));
  }
  res.passed = applicable > 0 && violations == 0;
  res.detail = detail::cat(applicable, " applicable instances across ", used, " m=1 runs, ", violations, " violations");
  return res;
}

inline CriterionResult rank_engine(std::uint64_t seed) {
  detail::Stopwatch sw;
  CriterionResult res{7, "rank bounds and cover witnesses", true, "", 0, {}};
  struct Ask {
    std::string target;
    std::vector<std::size_t> rs;
  };
  for (const auto& ask : std::vector<Ask>{{"det3", {4}}, {"det4", {4, 5, 6}}, {"pf6", {6}}}) {
    const Target t = target_by_name(ask.target);
    for (auto r : ask.rs) {
      detail::Stopwatch one;
      const auto v = theorem_bound(r, t.d, *t.k, t.n);
      const bool ok = to_string(v) == "RuledOut(Proven)" && one.seconds() < 1;
      res.passed = res.passed && ok;
      res.lines.push_back(detail::cat("pr(", ask.target, ") != ", r, ": ", to_string(v), " (part ", v.part, ")"));
    }
  }
  std::mt19937_64 rng(seed);
  detail::Stopwatch covers;
  for (const auto& w : {det_cover(3), det_cover(4), pfaffian_cover()}) {
    std::size_t good = 0;
    for (int i = 0; i < 100; ++i) good += w.check(w.random_point(rng)).ok(w.k()) ? 1 : 0;
    res.passed = res.passed && good == 100;
    res.lines.push_back(detail::cat(w.description(), ": ", good, "/100 samples contained with dimension ", w.k()));
  }
  res.passed = res.passed && covers.seconds() < 30;
  res.seconds = sw.seconds();
  res.detail = "det3 != 4, det4 not in {4,5,6}, pf6 != 6; 300 cover samples over GF(101)";
  return res;
}

inline CriterionResult perm4() {
  detail::Stopwatch sw;
  CriterionResult res{8, "perm4 certificate", false, "", 0, {}};
  const auto c = perm4_certificate();
  const auto rep = replay_certificate(c);
  for (const auto& s : c.steps)
    if (s.kind == StepKind::imported) res.lines.push_back("imported: " + s.statement);
  res.seconds = sw.seconds();
  res.passed = rep.ok && rep.failed.empty() && rep.bound_follows && res.seconds < 5;
  res.detail = detail::cat(rep.checked, " exact checks passed, ", rep.imported, " imported facts, pr(perm4) >= ", c.lower_bound);
  return res;
}

// ---------------------------------------------------------------------------------------------
// Property suites

struct SuiteCount {
  std::size_t run = 0, failed = 0, skipped = 0;
};

inline SuiteCount factor_round_trips(std::size_t count, std::uint64_t seed) {
  SuiteCount s;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const Field f = Field::prime(t % 2 == 0 ? 2 : 3);
    const std::size_t n = 1 + rng() % 5, d = 1 + rng() % 5;
    std::vector<LinearForm> ls;
    for (std::size_t j = 0; j < d; ++j) ls.push_back(detail::random_form(f, n, rng));
    const ProductOfLinear p(f, n, f.residue(1 + rng() % (f.characteristic() - 1)), ls);
    const auto r = factor_product(p.expand());
    ++s.run;
    if (r.status != SplitStatus::split || !(*r.product == p)) ++s.failed;
  }
  return s;
}

/// L = x * x_j' * Q with x dividing x_i and x_j' the monomial x_j, or x_i / x when j = i;
/// the coefficients start at the obvious assignment and are then moved along syzygies that
/// keep x | f_j for j != i.
inline SuiteCount cancel_instances(std::size_t count, std::uint64_t seed) {
  SuiteCount s;
  std::mt19937_64 rng(seed);
  while (s.run < count) {
    const Field f = Field::prime(s.run % 2 == 0 ? 2 : 3);
    const std::size_t n = 2 + rng() % 2;
    std::vector<unsigned> degs;
    for (std::size_t a = 0; a < n; ++a) degs.push_back(1 + rng() % 3);
    std::sort(degs.begin(), degs.end());
    const unsigned d = degs.back() + 1 + rng() % 2;
    std::vector<Monomial> xs;
    std::size_t nv = 0;
    for (auto g : degs) nv += g;
    std::size_t next = 0;
    for (auto g : degs) {
      std::vector<std::size_t> vs(g);
      std::iota(vs.begin(), vs.end(), next);
      next += g;
      xs.push_back(Monomial::from_vars(nv, vs));
    }
    std::size_t i = rng() % n;
    if (degs[i] < 2) {
      ++s.skipped;
      continue;
    }
    const auto vars_i = xs[i].vars();
    const std::size_t x = vars_i[rng() % vars_i.size()];
    const std::size_t j = rng() % n;
    std::vector<std::size_t> base = xs[j].vars();
    if (j == i) base.erase(std::find(base.begin(), base.end(), x));
    if (base.size() + 1 > d) {
      ++s.skipped;
      continue;
    }
    std::vector<LinearForm> factors{LinearForm::variable(f, nv, x)};
    std::vector<LinearForm> q;
    for (auto v : base) factors.push_back(LinearForm::variable(f, nv, v));
    while (factors.size() < d) {
      q.push_back(detail::random_form(f, nv, rng));
      factors.push_back(q.back());
    }
    const ProductOfLinear L(f, nv, f.one(), factors);
    MultiPoly Q = MultiPoly::constant(f, nv, f.one());
    for (const auto& l : q) Q = Q * l.to_poly();
    std::vector<MultiPoly> fs(n, MultiPoly::zero(f, nv));
    const MultiPoly X = MultiPoly::variable(f, nv, x);
    fs[j] = j == i ? Q : X * Q;
    for (int move = 0; move < 3; ++move) {
      const std::size_t a = rng() % n, b = rng() % n;
      if (a == b) continue;
      const int extra = (a != i && b != i) ? 1 : 0;
      const int deg = static_cast<int>(d) - static_cast<int>(degs[a] + degs[b]) - extra;
      if (deg < 0) continue;
      MultiPoly h = detail::random_homogeneous(f, nv, static_cast<unsigned>(deg), rng);
      if (extra) h = h * X;
      fs[a] += h * xs[b].to_poly(f);
      fs[b] -= h * xs[a].to_poly(f);
    }
    ++s.run;
    try {
      const SumProductIdentity inst(d, 0, {L}, xs, fs, DegreeConstraint::none);
      const auto out = cancel(inst, x, i);
      MultiPoly rhs = MultiPoly::zero(f, nv);
      for (std::size_t a = 0; a < n; ++a) rhs += out.coeffs()[a] * out.monomials()[a].to_poly(f);
      const bool ok = out.d() + 1 == inst.d() && out.lhs() * X == inst.lhs() && rhs == out.lhs();
      if (!ok) ++s.failed;
    } catch (const Error&) {
      ++s.failed;
    }
  }
  return s;
}

/// Products that are the monomials in disguise: factors permuted and rescaled, products shuffled.
inline SuiteCount match_instances(std::size_t count, std::uint64_t seed) {
  SuiteCount s;
  std::mt19937_64 rng(seed);
  const std::vector<Field> fields{Field::prime(2), Field::prime(3), Field::prime(5), Field::rationals()};
  for (std::size_t t = 0; t < count; ++t) {
    const Field f = fields[t % fields.size()];
    const std::size_t m = 1 + rng() % 4;
    const unsigned d = 3 + rng() % 3;
    const std::size_t nv = m * d;
    std::vector<Monomial> xs;
    std::vector<ProductOfLinear> ps;
    for (std::size_t a = 0; a < m; ++a) {
      std::vector<std::size_t> vs(d);
      std::iota(vs.begin(), vs.end(), a * d);
      xs.push_back(Monomial::from_vars(nv, vs));
      std::shuffle(vs.begin(), vs.end(), rng);
      std::vector<LinearForm> ls;
      FieldElement scalar = f.one();
      for (auto v : vs) {
        const FieldElement c = f.is_prime_field() ? f.residue(1 + rng() % (f.characteristic() - 1)) : f.from_int(1 + rng() % 7);
        ls.push_back(LinearForm::variable(f, nv, v).scale(c));
        scalar = scalar * c.inv();
      }
      ps.emplace_back(f, nv, scalar, ls);
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<ProductOfLinear> shuffled;
    for (auto o : order) shuffled.push_back(ps[o]);
    ++s.run;
    try {
      const auto sigma = match_products(shuffled, xs);
      if (!sigma || *sigma != order) ++s.failed;
    } catch (const Error&) {
      ++s.failed;
    }
  }
  return s;
}

/// Exhaustive over GF(2): every product l with x1x2x3 + x4x5x6 - l again a product.
inline SuiteCount match_searched_instances() {
  SuiteCount s;
  const Field f = Field::prime(2);
  const std::vector<Monomial> xs{Monomial::from_vars(6, {0, 1, 2}), Monomial::from_vars(6, {3, 4, 5})};
  const MultiPoly rhs = xs[0].to_poly(f) + xs[1].to_poly(f);
  enumerate_products(f, 6, 3, 1, [&](const std::vector<ProductOfLinear>& t) {
    const MultiPoly rest = rhs - t[0].expand();
    if (rest.is_zero()) return;
    const auto r = factor_product(rest);
    if (r.status != SplitStatus::split) return;
    ++s.run;
    const auto sigma = match_products({t[0], *r.product}, xs);
    if (!sigma) ++s.failed;
  });
  return s;
}

struct TieBreakStats {
  SuiteCount above, below;  // relative to the k bound of the reduction argument
  std::string first_failure;
};

inline TieBreakStats tie_break_planes(std::size_t count, std::uint64_t seed) {
  TieBreakStats st;
  std::mt19937_64 rng(seed);
  const Field f = Field::prime(13);
  const std::vector<std::array<std::size_t, 3>> shapes{{3, 3, 2}, {3, 3, 4}, {4, 3, 5}, {4, 4, 7}, {5, 3, 5}, {6, 3, 8}};
  std::size_t attempts = 0;
  while (st.above.run + st.below.run < count && attempts < 50 * count) {
    const auto [r, d, k] = shapes[++attempts % shapes.size()];
    SuiteCount& s = k >= profile_k_bound(r, d) ? st.above : st.below;
    MemberPlaneSampler sampler(r, d, k, f, rng());
    const auto L = sampler.sample(64);
    if (!L) continue;
    try {
      const auto pa = lambda_profile(*L, TieBreak::smallest_index), pb = lambda_profile(*L, TieBreak::largest_index);
      auto a = pa.lambdas, b = pb.lambdas;
      ++s.run;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b || std::accumulate(a.begin(), a.end(), std::size_t{0}) != L->k() + 1) {
        ++s.failed;
        if (st.first_failure.empty()) {
          auto seq = [](const std::vector<std::size_t>& v) {
            std::string t;
            for (auto x : v) t += std::to_string(x);
            return t;
          };
          st.first_failure = detail::cat("(r,d,k)=(", r, ",", d, ",", k, "): lambda ", seq(pa.lambdas), " with order ", seq(pa.ordering),
                                         ", lambda ", seq(pb.lambdas), " with order ", seq(pb.ordering));
        }
      }
    } catch (const OneSplitDetected&) {
      ++s.skipped;
    }
  }
  return st;
}

inline CriterionResult property_suites(std::uint64_t seed) {
  detail::Stopwatch sw;
  CriterionResult res{9, "property suites", true, "", 0, {}};
  auto add = [&](const std::string& name, const SuiteCount& c, std::size_t need) {
    res.passed = res.passed && c.failed == 0 && c.run >= need;
    res.lines.push_back(detail::cat(name, ": ", c.run, " run, ", c.failed, " failed, ", c.skipped, " skipped"));
  };
  add("factor_product round trip", factor_round_trips(10000, seed), 10000);
  add("cancel", cancel_instances(1000, seed + 1), 1000);
  const auto searched = match_searched_instances();
  add("match_products, searched over GF(2)", searched, 1);
  add("match_products, generated", match_instances(1000, seed + 2), 1000);
  const auto tb = tie_break_planes(1000, seed + 3);
  SuiteCount all{tb.above.run + tb.below.run, tb.above.failed + tb.below.failed, tb.above.skipped + tb.below.skipped};
  add("profile tie-break", all, 1000);
  res.lines.push_back(detail::cat("  k at or above the reduction bound: ", tb.above.run, " run, ", tb.above.failed, " failed"));
  res.lines.push_back(detail::cat("  k below the reduction bound: ", tb.below.run, " run, ", tb.below.failed, " failed"));
  if (!tb.first_failure.empty()) res.lines.push_back("  first tie-break dependence " + tb.first_failure);
  res.seconds = sw.seconds();
  res.detail = res.passed ? "zero failures" : "failures found, see below";
  return res;
}

inline CriterionResult connectedness() {
  detail::Stopwatch sw;
  CriterionResult res{10, "nonempty and connected predicates", true, "", 0, {}};
  struct Case {
    std::size_t r, d, k;
    bool nonempty, connected;
  };
  for (const auto& c : std::vector<Case>{{2, 3, 3, true, false}, {2, 3, 4, false, false}, {4, 3, 6, true, true}, {4, 3, 7, true, false}}) {
    const bool ne = fano_nonempty(c.r, c.d, c.k), co = fano_connected(c.r, c.d, c.k);
    // Independent checks: coordinate planes exist iff nonempty; at the top dimension the
    // scheme is the finite set of d^r coordinate planes, hence disconnected.
    const bool torus = torus_fixed_count(c.r, c.d, c.k) > 0;
    const bool top = c.k + 1 == c.r * (c.d - 1);
    const bool ok = ne == c.nonempty && co == c.connected && torus == ne && (!top || torus_fixed_count(c.r, c.d, c.k) > 1);
    res.passed = res.passed && ok;
    res.lines.push_back(detail::cat("(", c.r, ",", c.d, ",", c.k, "): nonempty=", ne, " connected=", co,
                                    " coordinate planes=", torus_fixed_count(c.r, c.d, c.k).str()));
  }
  res.seconds = sw.seconds();
  res.detail = "nonempty iff k < r(d-1), connected iff k < r(d-1)-1";
  return res;
}

/// Criteria 1..10 in order; `report` is called as each one finishes.
inline std::vector<CriterionResult> run_all(const Options& opt, const std::function<void(const CriterionResult&)>& report = {}) {
  std::vector<CriterionResult> out;
  auto push = [&](CriterionResult r) {
    if (report) report(r);
    out.push_back(std::move(r));
  };
  push(census_table());
  push(dimension_identity());
  push(torus_planes());
  push(sharp_witnesses());
  const auto runs = run_search_plan(opt.jobs);
  push(c_property_searches(runs));
  push(rank_one_vanishing_property(runs));
  push(rank_engine(opt.seed));
  push(perm4());
  push(property_suites(opt.seed));
  push(connectedness());
  return out;
}

}  // namespace fanosplit::repro
