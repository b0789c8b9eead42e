#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "fanosplit/identity.hpp"
#include "fanosplit/plane.hpp"

namespace fanosplit {

namespace detail {

/// Number of multisets of size k from n items.
inline std::uint64_t multichoose(std::uint64_t n, std::uint64_t k) {
  if (k == 0) return 1;
  if (n == 0) return 0;
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (n + i) / (i + 1);
    if (c > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(c);
}

inline std::uint64_t saturating_pow(std::uint64_t b, std::uint64_t e) {
  unsigned __int128 p = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    p *= b;
    if (p > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(p);
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(p);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Runs work(i) for i in [0, count) on `jobs` threads pulling indices from a shared counter.
inline void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& work) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) work(i);
  };
  if (jobs == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// Projective linear forms over GF(p): first nonzero coefficient 1, ordered by leading index
/// and then lexicographically by the remaining residues.
inline std::vector<LinearForm> projective_forms(Field f, std::size_t nvars) {
  if (!f.is_prime_field()) throw InvalidField("enumeration needs a prime field");
  const std::uint64_t q = f.characteristic();
  std::vector<LinearForm> out;
  for (std::size_t v = 0; v < nvars; ++v) {
    const std::size_t t = nvars - 1 - v;
    const std::uint64_t total = detail::saturating_pow(q, t);
    if (total > (1u << 24)) throw CeilingExceeded("too many linear forms");
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Vector c(nvars, f.zero());
      c[v] = f.one();
      std::uint64_t rest = idx;
      for (std::size_t j = t; j-- > 0;) {
        c[v + 1 + j] = f.residue(rest % q);
        rest /= q;
      }
      out.emplace_back(std::move(c));
    }
  }
  return out;
}

/// Products of d linear forms up to scaling and order of the factors, times every nonzero scalar.
class ProductEnumerator {
 public:
  ProductEnumerator(Field f, std::size_t nvars, unsigned d) : field_(f), nvars_(nvars), d_(d), forms_(projective_forms(f, nvars)) {
    if (d == 0) throw InvalidArgument("products need degree at least 1");
  }

  const std::vector<LinearForm>& forms() const noexcept { return forms_; }

  std::uint64_t count() const {
    return detail::saturating_mul(field_.characteristic() - 1, detail::multichoose(forms_.size(), d_));
  }

  /// Calls fn(product) in order: factor multisets lexicographically, then scalars 1..p-1.
  template <class Fn>
  void for_each(Fn&& fn) const {
    std::vector<std::size_t> idx(d_, 0);
    const std::size_t M = forms_.size();
    while (true) {
      std::vector<LinearForm> fs;
      for (auto i : idx) fs.push_back(forms_[i]);
      for (std::uint32_t s = 1; s < field_.characteristic(); ++s) fn(ProductOfLinear(field_, nvars_, field_.residue(s), fs));
      std::size_t pos = d_;
      while (pos > 0 && idx[pos - 1] == M - 1) --pos;
      if (pos == 0) return;
      const std::size_t v = idx[pos - 1] + 1;
      for (std::size_t j = pos - 1; j < d_; ++j) idx[j] = v;
    }
  }

 private:
  Field field_;
  std::size_t nvars_;
  unsigned d_;
  std::vector<LinearForm> forms_;
};

/// Streams every m-tuple of products (as a non-decreasing index multiset) exactly once.
template <class Fn>
void enumerate_products(Field f, std::size_t nvars, unsigned d, std::size_t m, Fn&& fn,
                        std::uint64_t ceiling = 100'000'000) {
  if (m == 0) throw InvalidArgument("m must be positive");
  ProductEnumerator pe(f, nvars, d);
  const std::uint64_t total = detail::multichoose(pe.count(), m);
  if (total > ceiling) throw CeilingExceeded("product space of size " + std::to_string(total) + " exceeds the ceiling");
  if (m == 1) {
    pe.for_each([&](const ProductOfLinear& p) { fn(std::vector<ProductOfLinear>{p}); });
    return;
  }
  std::vector<ProductOfLinear> all;
  pe.for_each([&](const ProductOfLinear& p) { all.push_back(p); });
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    std::vector<ProductOfLinear> tuple;
    for (auto i : idx) tuple.push_back(all[i]);
    fn(tuple);
    std::size_t pos = m;
    while (pos > 0 && idx[pos - 1] == all.size() - 1) --pos;
    if (pos == 0) return;
    const std::size_t v = idx[pos - 1] + 1;
    for (std::size_t j = pos - 1; j < m; ++j) idx[j] = v;
  }
}

// ---------------------------------------------------------------------------------------------
// Exact product-rank tests over GF(p)

inline std::optional<ProductOfLinear> as_product(const MultiPoly& F) {
  if (F.is_zero()) return std::nullopt;
  auto r = factor_product(F);
  if (r.status != SplitStatus::split) return std::nullopt;
  return r.product;
}

/// Writes s*a*rest as s*(a+y)*rest + (-s)*y*rest for a variable y not proportional to a.
inline std::vector<ProductOfLinear> split_in_two(const ProductOfLinear& P) {
  const Field f = P.field();
  const std::size_t n = P.nvars();
  if (n < 2 || P.degree() == 0) throw InvalidArgument("cannot split a product in fewer than two variables");
  const LinearForm& a = P.factors().front();
  const std::size_t u = a == LinearForm::variable(f, n, 0) ? 1 : 0;
  const LinearForm y = LinearForm::variable(f, n, u);
  std::vector<LinearForm> f1(P.factors().begin(), P.factors().end()), f2 = f1;
  f1.front() = a + y;
  f2.front() = y;
  return {ProductOfLinear(f, n, P.scalar(), f1), ProductOfLinear(f, n, -P.scalar(), f2)};
}

inline ProductOfLinear times_form(const ProductOfLinear& P, const LinearForm& l) {
  std::vector<LinearForm> fs = P.factors();
  fs.push_back(l);
  return ProductOfLinear(P.field(), P.nvars(), P.scalar(), fs);
}

/// F restricted to the hyperplane l = 0, with l's leading variable eliminated (l normalized).
inline MultiPoly restrict_to_hyperplane(const MultiPoly& F, const LinearForm& l) {
  const std::size_t v = *l.leading_index();
  const MultiPoly sub = MultiPoly::variable(F.field(), F.nvars(), v) - l.to_poly();
  return F.substitute({{v, sub}});
}

/// Two nonzero products summing to F, if any. Exact: if F = P1 + P2 is not a product, let l be
/// a factor of P1; either l divides P2 (recurse on F/l) or F|_{l=0} is a product whose lifts
/// are enumerated.
inline std::optional<std::vector<ProductOfLinear>> rank_two_decomposition(const MultiPoly& F,
                                                                          const std::vector<LinearForm>& forms) {
  if (F.is_zero()) return std::nullopt;
  if (auto P = as_product(F)) return split_in_two(*P);
  if (F.degree() <= 1) return std::nullopt;
  const Field f = F.field();
  const std::uint32_t q = f.characteristic();
  const std::size_t d = static_cast<std::size_t>(F.degree());
  for (const auto& l : forms) {
    const MultiPoly R = restrict_to_hyperplane(F, l);
    if (R.is_zero()) {
      auto G = divide_by_linear(F, l);
      if (!G) continue;
      if (auto dec = rank_two_decomposition(*G, forms)) return std::vector<ProductOfLinear>{times_form((*dec)[0], l), times_form((*dec)[1], l)};
      continue;
    }
    auto Q = as_product(R);
    if (!Q) continue;
    std::vector<std::uint32_t> c(d, 0);
    while (true) {
      std::vector<LinearForm> b;
      for (std::size_t j = 0; j < d; ++j) b.push_back(Q->factors()[j] + l.scale(f.residue(c[j])));
      const ProductOfLinear P2(f, F.nvars(), Q->scalar(), b);
      const MultiPoly D = F - P2.expand();
      if (auto P1 = as_product(D)) return std::vector<ProductOfLinear>{*P1, P2};
      std::size_t pos = 0;
      while (pos < d && ++c[pos] == q) c[pos++] = 0;
      if (pos == d) break;
    }
  }
  return std::nullopt;
}

/// Decomposition of F as a sum of exactly m nonzero products (m = 1 or 2), if one exists.
inline std::optional<std::vector<ProductOfLinear>> product_decomposition(const MultiPoly& F, std::size_t m,
                                                                         const std::vector<LinearForm>& forms) {
  if (!F.field().is_prime_field()) throw InvalidField("exact rank test runs over GF(p)");
  if (m == 1) {
    if (auto P = as_product(F)) return std::vector<ProductOfLinear>{*P};
    return std::nullopt;
  }
  if (m == 2) return rank_two_decomposition(F, forms);
  throw InvalidArgument("product decompositions are implemented for m <= 2");
}

/// Necessary condition for F to be a sum of m products of d forms: the partial derivatives span
/// at most md dimensions, and when fewer than all variables are essential some kernel direction
/// of the derivative map leaves F translation invariant.
inline bool passes_essential_filter(const MultiPoly& F, std::size_t m) {
  const Field f = F.field();
  const std::size_t n = F.nvars();
  const std::size_t bound = m * static_cast<std::size_t>(F.degree());
  std::vector<MultiPoly> parts;
  std::map<Exponent, std::size_t, GrlexGreater> index;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Term> ts;
    for (const auto& t : F.terms()) {
      if (t.e[v] == 0) continue;
      Exponent e = t.e;
      --e[v];
      ts.push_back({e, t.c * f.from_int(t.e[v])});
    }
    parts.push_back(MultiPoly::from_terms(f, n, ts));
    for (const auto& t : parts.back().terms()) index.emplace(t.e, index.size());
  }
  Matrix A(f, index.size(), n);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& t : parts[v].terms()) A(index.at(t.e), v) = t.c;
  const std::size_t rank = index.empty() ? 0 : A.rank();
  if (rank > bound) return false;
  if (n <= bound) return true;
  const auto K = index.empty() ? Matrix(f, 1, n).kernel() : A.kernel();
  const std::uint64_t q = f.characteristic();
  const std::uint64_t combos = detail::saturating_pow(q, K.size());
  if (combos > 4096) return true;
  const MultiPoly Fx = F.remap(n + 1, [&] {
    std::vector<std::size_t> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = i;
    return id;
  }());
  const MultiPoly t = MultiPoly::variable(f, n + 1, n);
  for (std::uint64_t code = 1; code < combos; ++code) {
    Vector a(n, f.zero());
    std::uint64_t rest = code;
    for (const auto& kv : K) {
      const FieldElement c = f.residue(rest % q);
      rest /= q;
      for (std::size_t i = 0; i < n; ++i) a[i] += c * kv[i];
    }
    std::map<std::size_t, MultiPoly> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (!a[i].is_zero()) sub.emplace(i, MultiPoly::variable(f, n + 1, i) + t.scale(a[i]));
    if (Fx.substitute(sub) == Fx) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------------------------
// Counterexample hunts

enum class SearchMode : std::uint8_t { exhaustive, randomized };

struct SearchSpace {
  Field field = Field::prime(2);
  std::size_t nvars = 0;  // 0 means the sum of the pattern
  unsigned d = 3;
  std::size_t m = 1;
  std::size_t k = 0;
  std::vector<unsigned> pattern;  // deg x_1 <= ... <= deg x_{k+n}
  DegreeConstraint constraint = DegreeConstraint::strict;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t ceiling = 100'000'000;
  unsigned jobs = 1;
  double time_limit_seconds = 0;  // 0: unlimited
  std::size_t max_witnesses = 16;

  std::size_t n() const { return pattern.size() - k; }
  std::size_t total_vars() const {
    std::size_t s = 0;
    for (auto p : pattern) s += p;
    return nvars == 0 ? s : nvars;
  }

  /// x_1, x_2, ... on consecutive blocks of variables.
  std::vector<Monomial> monomials() const {
    std::vector<Monomial> xs;
    std::size_t next = 0;
    for (auto p : pattern) {
      std::vector<std::size_t> vars;
      for (unsigned i = 0; i < p; ++i) vars.push_back(next++);
      xs.push_back(Monomial::from_vars(total_vars(), vars));
    }
    return xs;
  }

  void validate() const {
    if (!field.is_prime_field()) throw InvalidField("search runs over a prime field");
    if (pattern.empty()) throw InvalidArgument("empty degree pattern");
    if (d < 2) throw InvalidArgument("search needs d >= 2");
    if (m == 0) throw InvalidArgument("m must be positive");
    if (k >= pattern.size()) throw InvalidArgument("k must leave at least one constrained monomial");
    if (n() <= m) throw InvalidArgument("the property needs n > m");
    if (!std::is_sorted(pattern.begin(), pattern.end())) throw InvalidArgument("pattern must be nondecreasing");
    std::size_t s = 0;
    for (auto p : pattern) {
      if (p == 0 || p > d) throw InvalidArgument("monomial degrees must lie in 1..d");
      s += p;
    }
    if (nvars != 0 && nvars < s)
      throw InvalidArgument("nvars = " + std::to_string(nvars) + " cannot hold pairwise coprime monomials of total degree " +
                            std::to_string(s));
    if (constraint == DegreeConstraint::none) throw DegreeConstraintViolated("search needs a degree constraint");
    check_degree_constraint(monomials(), d, k, constraint);
  }
};

struct SearchReport {
  std::string route;             // "products" (m = 1) or "coefficients" (f-tuples)
  std::uint64_t space_size = 0;  // instances in the space
  std::uint64_t examined = 0;
  std::uint64_t identities = 0;  // instances that are identities of the required shape
  std::uint64_t counterexamples = 0;
  std::vector<SumProductIdentity> witnesses;  // first few counterexamples, replayable
  std::uint64_t boundary_witnesses = 0;
  std::uint64_t vanishing_applicable = 0;  // rank-one vanishing statement
  std::uint64_t vanishing_violations = 0;
  std::uint64_t linear_factor_checked = 0;
  std::uint64_t linear_factor_violations = 0;
  std::uint64_t filtered = 0;      // rejected by the essential-variable filter
  std::uint64_t exact_checks = 0;  // exact decompositions attempted
  std::uint64_t replay_mismatches = 0;
  std::size_t partitions = 0;
  double seconds = 0;
  bool incomplete = false;
  std::string label;

  void merge(SearchReport&& o, std::size_t max_witnesses) {
    examined += o.examined;
    identities += o.identities;
    counterexamples += o.counterexamples;
    for (auto& w : o.witnesses)
      if (witnesses.size() < max_witnesses) witnesses.push_back(std::move(w));
    boundary_witnesses += o.boundary_witnesses;
    vanishing_applicable += o.vanishing_applicable;
    vanishing_violations += o.vanishing_violations;
    linear_factor_checked += o.linear_factor_checked;
    linear_factor_violations += o.linear_factor_violations;
    filtered += o.filtered;
    exact_checks += o.exact_checks;
    replay_mismatches += o.replay_mismatches;
    incomplete = incomplete || o.incomplete;
  }
};

namespace detail {

class Deadline {
 public:
  explicit Deadline(double seconds) : start_(std::chrono::steady_clock::now()), limit_(seconds) {}
  bool expired() const { return limit_ > 0 && elapsed() > limit_; }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
  double limit_;
};

/// (x_a + c x_b) * (x_i / x_a) * (x_j / x_b) with deg x_i + deg x_j = d + 1.
inline bool is_boundary_form(const std::vector<LinearForm>& factors, const std::vector<Monomial>& xs, unsigned d) {
  const std::size_t n = factors.front().nvars();
  std::vector<std::size_t> block(n, xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (auto v : xs[i].vars()) block[v] = i;
  std::optional<std::pair<std::size_t, std::size_t>> binomial;
  std::vector<std::size_t> singles;
  for (const auto& l : factors) {
    std::vector<std::size_t> supp;
    for (std::size_t v = 0; v < n; ++v)
      if (!l[v].is_zero()) supp.push_back(v);
    if (supp.size() == 1) {
      singles.push_back(supp[0]);
    } else if (supp.size() == 2 && !binomial) {
      binomial = {supp[0], supp[1]};
    } else {
      return false;
    }
  }
  if (!binomial) return false;
  const auto [a, b] = *binomial;
  const std::size_t i = block[a], j = block[b];
  if (i == xs.size() || j == xs.size() || i == j) return false;
  if (xs[i].degree() + xs[j].degree() != d + 1) return false;
  std::vector<std::size_t> expect;
  for (auto v : xs[i].vars())
    if (v != a) expect.push_back(v);
  for (auto v : xs[j].vars())
    if (v != b) expect.push_back(v);
  std::sort(expect.begin(), expect.end());
  std::sort(singles.begin(), singles.end());
  return singles == expect;
}

/// Membership of a product of forms in the ideal (x_1, ..., x_N) of coprime squarefree
/// monomials: every transversal (one variable from each x_i) must contain the support of some
/// factor. Each form gets a bitmask of the transversals it covers.
struct CoverTable {
  std::vector<std::size_t> order;   // positions into the canonical form list
  std::vector<std::uint64_t> mask;  // cover mask per ordered position
  std::size_t covering = 0;         // ordered positions [0, covering) have nonzero masks
  std::uint64_t full = 0;
};

inline CoverTable cover_table(const std::vector<LinearForm>& forms, const std::vector<Monomial>& xs) {
  const std::size_t n = forms.front().nvars();
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block(n, xs.size()), pos(n, 0);
  std::uint64_t T = 1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    blocks.push_back(xs[i].vars());
    for (std::size_t p = 0; p < blocks.back().size(); ++p) {
      block[blocks.back()[p]] = i;
      pos[blocks.back()[p]] = p;
    }
    T *= blocks.back().size();
    if (T > 64) throw InvalidArgument("more than 64 transversals; pattern too large for the product route");
  }
  CoverTable ct;
  ct.full = T == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << T) - 1);
  std::vector<std::uint64_t> raw(forms.size(), 0);
  for (std::size_t fi = 0; fi < forms.size(); ++fi) {
    std::vector<long> fixed(xs.size(), -1);
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      if (forms[fi][v].is_zero()) continue;
      if (block[v] == xs.size() || fixed[block[v]] != -1) ok = false;
      else fixed[block[v]] = static_cast<long>(pos[v]);
    }
    if (!ok) continue;
    std::uint64_t m = 0;
    for (std::uint64_t t = 0; t < T; ++t) {
      std::uint64_t rest = t;
      bool hit = true;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::uint64_t digit = rest % blocks[i].size();
        rest /= blocks[i].size();
        if (fixed[i] != -1 && digit != static_cast<std::uint64_t>(fixed[i])) hit = false;
      }
      if (hit) m |= std::uint64_t{1} << t;
    }
    raw[fi] = m;
  }
  for (std::size_t fi = 0; fi < forms.size(); ++fi) ct.order.push_back(fi);
  std::stable_sort(ct.order.begin(), ct.order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(raw[a]) > std::popcount(raw[b]);
  });
  for (auto fi : ct.order) {
    ct.mask.push_back(raw[fi]);
    if (raw[fi] != 0) ++ct.covering;
  }
  return ct;
}

inline bool covers(const CoverTable& ct, const std::vector<LinearForm>& forms, const std::vector<LinearForm>& factors) {
  std::uint64_t m = 0;
  for (const auto& l : factors) {
    const auto it = std::find(forms.begin(), forms.end(), l);
    const std::size_t fi = static_cast<std::size_t>(it - forms.begin());
    for (std::size_t p = 0; p < ct.order.size(); ++p)
      if (ct.order[p] == fi) m |= ct.mask[p];
  }
  return m == ct.full;
}

/// Checks a single m = 1 identity: verdict, replay, vanishing and linear-factor side checks.
struct InstanceOutcome {
  bool identity = false;
  bool counterexample = false;
};

inline InstanceOutcome check_single_product(const SearchSpace& sp, const std::vector<Monomial>& xs,
                                            const ProductOfLinear& L, std::uint64_t weight, bool expect_counterexample,
                                            bool have_expectation, SearchReport& rep) {
  InstanceOutcome out;
  auto inst = identity_from_products({L}, xs, sp.k, sp.constraint);
  if (!inst) {
    if (have_expectation) ++rep.replay_mismatches;
    return out;
  }
  out.identity = true;
  const auto pv = check_property_instance(*inst);
  out.counterexample = pv.verdict == Verdict::counterexample;
  if (have_expectation && out.counterexample != expect_counterexample) ++rep.replay_mismatches;
  if (out.counterexample && rep.witnesses.size() < sp.max_witnesses) rep.witnesses.push_back(*inst);
  const auto vc = rank_one_vanishing(inst->lhs(), xs);
  if (vc.applicable) {
    rep.vanishing_applicable += weight;
    if (!vc.holds) rep.vanishing_violations += weight;
  }
  if (sp.k == 0 && sp.constraint == DegreeConstraint::strict) {
    std::vector<CoeffMonomial> pairs;
    for (std::size_t i = 0; i < xs.size(); ++i) pairs.push_back({inst->coeffs()[i], xs[i]});
    const auto& fs = L.factors();
    for (std::size_t a = 0; a < fs.size(); ++a) {
      if (a > 0 && fs[a] == fs[a - 1]) continue;
      if (!no_neither_expected(xs, sp.d, fs[a])) continue;
      ++rep.linear_factor_checked;
      const auto tags = linear_factor_conclusion(fs[a], pairs);
      if (std::find(tags.begin(), tags.end(), FactorTag::neither) != tags.end()) ++rep.linear_factor_violations;
    }
  }
  if (out.counterexample && is_boundary_form(L.factors(), xs, sp.d)) rep.boundary_witnesses += weight;
  return out;
}

/// m = 1, exhaustive: depth-first over factor multisets in cover order. The first prefix P
/// that lies in the ideal fixes the verdict of every extension P*Q, since f_i(P*Q) = f_i(P)*Q
/// by uniqueness of the f_i with i > k; its extensions are counted, one representative is
/// checked in full.
inline SearchReport hunt_products_exhaustive(const SearchSpace& sp) {
  const auto xs = sp.monomials();
  const std::size_t N = sp.total_vars();
  const auto forms = projective_forms(sp.field, N);
  const auto ct = cover_table(forms, xs);
  const std::uint64_t q1 = sp.field.characteristic() - 1;
  const std::size_t M = forms.size();
  const std::size_t d = sp.d;
  SearchReport total;
  total.route = "products";
  // No ceiling on the raw space: the walk only visits prefixes up to first full coverage.
  total.space_size = saturating_mul(q1, multichoose(M, d));
  Deadline clock(sp.time_limit_seconds);
  std::vector<SearchReport> parts(ct.covering);
  parallel_for(ct.covering, sp.jobs, [&](std::size_t first) {
    SearchReport& rep = parts[first];
    std::vector<std::size_t> idx{first};
    auto evaluate = [&](std::size_t j) {
      const std::size_t last = idx.back();
      const std::uint64_t leaves = saturating_mul(q1, multichoose(M - last, d - j));
      std::vector<LinearForm> pf;
      for (auto p : idx) pf.push_back(forms[ct.order[p]]);
      const MultiPoly P = ProductOfLinear(pf).expand();
      const auto dec = decompose(P, xs, sp.k);
      std::size_t zeros = 0;
      for (std::size_t i = sp.k; i < xs.size(); ++i) zeros += dec.coeffs[i]->is_zero() ? 1 : 0;
      const bool cex = zeros < sp.n() - 1;
      rep.identities += leaves;
      if (cex) rep.counterexamples += leaves;
      std::vector<LinearForm> full = pf;
      while (full.size() < d) full.push_back(forms[ct.order[last]]);
      const ProductOfLinear L(full);
      SearchReport side;
      side.witnesses.clear();
      check_single_product(sp, xs, L, leaves, cex, true, side);
      rep.replay_mismatches += side.replay_mismatches;
      rep.vanishing_applicable += side.vanishing_applicable;
      rep.vanishing_violations += side.vanishing_violations;
      rep.linear_factor_checked += side.linear_factor_checked;
      rep.linear_factor_violations += side.linear_factor_violations;
      // A boundary form needs every factor to reach full coverage, so it only shows up at j = d.
      if (j == d) rep.boundary_witnesses += side.boundary_witnesses / leaves * q1;
      for (auto& w : side.witnesses)
        if (rep.witnesses.size() < sp.max_witnesses) rep.witnesses.push_back(std::move(w));
    };
    auto dfs = [&](auto&& self, std::size_t j, std::uint64_t covered) -> void {
      if (rep.incomplete) return;
      if (covered == ct.full) {
        evaluate(j);
        if (clock.expired()) rep.incomplete = true;
        return;
      }
      if (j == d) return;
      const std::size_t remaining = d - j;
      const int uncovered = std::popcount(ct.full & ~covered);
      for (std::size_t s = idx.back(); s < ct.covering; ++s) {
        if (static_cast<int>(remaining) * std::popcount(ct.mask[s]) < uncovered) break;
        idx.push_back(s);
        self(self, j + 1, covered | ct.mask[s]);
        idx.pop_back();
      }
    };
    const int uncovered = std::popcount(ct.full);
    if (static_cast<int>(d) * std::popcount(ct.mask[first]) >= uncovered) dfs(dfs, 1, ct.mask[first]);
  });
  for (auto& p : parts) total.merge(std::move(p), sp.max_witnesses);
  total.examined = total.incomplete ? total.identities : total.space_size;
  total.partitions = parts.size();
  total.seconds = clock.elapsed();
  return total;
}

/// m = 1, randomized: uniform factor indices and scalar per trial.
inline SearchReport hunt_products_random(const SearchSpace& sp) {
  const auto xs = sp.monomials();
  const std::size_t N = sp.total_vars();
  const auto forms = projective_forms(sp.field, N);
  const auto ct = cover_table(forms, xs);
  SearchReport total;
  total.route = "products";
  total.space_size = saturating_mul(sp.field.characteristic() - 1, multichoose(forms.size(), sp.d));
  Deadline clock(sp.time_limit_seconds);
  const std::size_t chunk = 1024;
  const std::size_t nchunks = (sp.trials + chunk - 1) / chunk;
  std::vector<SearchReport> parts(nchunks);
  parallel_for(nchunks, sp.jobs, [&](std::size_t c) {
    SearchReport& rep = parts[c];
    for (std::uint64_t t = c * chunk; t < std::min<std::uint64_t>(sp.trials, (c + 1) * chunk); ++t) {
      if (clock.expired()) {
        rep.incomplete = true;
        return;
      }
      std::mt19937_64 rng(mix_seed(sp.seed, t));
      std::vector<LinearForm> fs;
      for (unsigned j = 0; j < sp.d; ++j) fs.push_back(forms[rng() % forms.size()]);
      const FieldElement s = sp.field.residue(1 + rng() % (sp.field.characteristic() - 1));
      ++rep.examined;
      if (!covers(ct, forms, fs)) continue;
      const ProductOfLinear L(sp.field, N, s, fs);
      const auto o = check_single_product(sp, xs, L, 1, false, false, rep);
      if (o.identity) ++rep.identities;
      if (o.counterexample) ++rep.counterexamples;
    }
  });
  for (auto& p : parts) total.merge(std::move(p), sp.max_witnesses);
  total.partitions = parts.size();
  total.seconds = clock.elapsed();
  return total;
}

/// Coefficient route: the f_i range over all nonzero forms of degree d - deg x_i and
/// F = sum f_i x_i is tested for being a sum of m products. Counterexamples need all f_i != 0
/// when n = m + 1, so only those tuples are examined.
struct CoefficientSpace {
  std::vector<Monomial> xs;
  std::vector<std::vector<Exponent>> basis;  // per i
  std::vector<std::size_t> offset;
  std::size_t bits = 0;

  explicit CoefficientSpace(const SearchSpace& sp) : xs(sp.monomials()) {
    for (const auto& x : xs) {
      std::vector<Exponent> b;
      monomials_of_degree(sp.total_vars(), sp.d - x.degree(), b);
      offset.push_back(bits);
      bits += b.size();
      basis.push_back(std::move(b));
    }
  }

  /// Term of F contributed by coordinate b.
  Exponent term(std::size_t b) const {
    std::size_t i = 0;
    while (i + 1 < offset.size() && offset[i + 1] <= b) ++i;
    Exponent e = basis[i][b - offset[i]];
    for (std::size_t v = 0; v < e.size(); ++v) e[v] = static_cast<std::uint16_t>(e[v] + xs[i].exponent()[v]);
    return e;
  }

  std::size_t block_of(std::size_t b) const {
    std::size_t i = 0;
    while (i + 1 < offset.size() && offset[i + 1] <= b) ++i;
    return i;
  }
};

inline void check_coefficient_tuple(const SearchSpace& sp, const CoefficientSpace& cs, const std::vector<LinearForm>& forms,
                                    const std::vector<MultiPoly>& f, SearchReport& rep) {
  MultiPoly F = MultiPoly::zero(sp.field, sp.total_vars());
  for (std::size_t i = 0; i < f.size(); ++i) F += f[i] * cs.xs[i].to_poly(sp.field);
  if (!passes_essential_filter(F, sp.m)) {
    ++rep.filtered;
    return;
  }
  ++rep.exact_checks;
  auto dec = product_decomposition(F, sp.m, forms);
  if (!dec) return;
  ++rep.identities;
  const SumProductIdentity inst(sp.d, sp.k, *dec, cs.xs, f, sp.constraint);
  const auto pv = check_property_instance(inst);
  if (pv.verdict != Verdict::counterexample) {
    ++rep.replay_mismatches;
    return;
  }
  ++rep.counterexamples;
  if (rep.witnesses.size() < sp.max_witnesses) rep.witnesses.push_back(inst);
}

inline std::vector<MultiPoly> coefficients_from_code(const SearchSpace& sp, const CoefficientSpace& cs,
                                                     const std::vector<std::uint32_t>& digits) {
  std::vector<MultiPoly> f;
  for (std::size_t i = 0; i < cs.xs.size(); ++i) {
    std::vector<Term> ts;
    for (std::size_t b = 0; b < cs.basis[i].size(); ++b) {
      const auto c = digits[cs.offset[i] + b];
      if (c != 0) ts.push_back({cs.basis[i][b], sp.field.residue(c)});
    }
    f.push_back(MultiPoly::from_terms(sp.field, sp.total_vars(), ts));
  }
  return f;
}

/// GF(2) partial derivatives of F as bit rows over the degree d-1 monomials, updated one
/// coordinate at a time along a Gray code.
class PartialBits {
 public:
  PartialBits(const SearchSpace& sp, const CoefficientSpace& cs) : nv_(sp.total_vars()) {
    std::vector<Exponent> lower;
    monomials_of_degree(nv_, sp.d - 1, lower);
    std::map<Exponent, std::size_t> index;
    for (std::size_t i = 0; i < lower.size(); ++i) index.emplace(lower[i], i);
    words_ = (lower.size() + 63) / 64;
    for (std::size_t b = 0; b < cs.bits; ++b) {
      const Exponent e = cs.term(b);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> flips;
      for (std::size_t v = 0; v < nv_; ++v) {
        if (e[v] % 2 == 0) continue;
        Exponent lo = e;
        --lo[v];
        flips.push_back({static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(index.at(lo))});
      }
      flips_.push_back(std::move(flips));
    }
    rows_.assign(nv_ * words_, 0);
  }

  void reset() { std::fill(rows_.begin(), rows_.end(), 0); }

  void flip(std::size_t b) {
    for (const auto& [v, pos] : flips_[b]) rows_[v * words_ + pos / 64] ^= std::uint64_t{1} << (pos % 64);
  }

  /// Whether the rank of the rows exceeds `bound`.
  bool rank_exceeds(std::size_t bound) const {
    std::uint64_t basis[64][8];
    std::size_t pivots[64];
    std::size_t rank = 0;
    for (std::size_t v = 0; v < nv_; ++v) {
      std::uint64_t row[8];
      for (std::size_t w = 0; w < words_; ++w) row[w] = rows_[v * words_ + w];
      for (std::size_t r = 0; r < rank; ++r) {
        const std::size_t p = pivots[r];
        if (row[p / 64] >> (p % 64) & 1)
          for (std::size_t w = 0; w < words_; ++w) row[w] ^= basis[r][w];
      }
      std::size_t w = 0;
      while (w < words_ && row[w] == 0) ++w;
      if (w == words_) continue;
      pivots[rank] = w * 64 + static_cast<std::size_t>(std::countr_zero(row[w]));
      for (std::size_t u = 0; u < words_; ++u) basis[rank][u] = row[u];
      // Keep earlier basis rows reduced at the new pivot.
      for (std::size_t r = 0; r < rank; ++r)
        if (basis[r][pivots[rank] / 64] >> (pivots[rank] % 64) & 1)
          for (std::size_t u = 0; u < words_; ++u) basis[r][u] ^= row[u];
      if (++rank > bound) return true;
    }
    return false;
  }

  std::size_t words() const noexcept { return words_; }

 private:
  std::size_t nv_;
  std::size_t words_ = 1;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> flips_;
  std::vector<std::uint64_t> rows_;
};

inline SearchReport hunt_coefficients_gf2(const SearchSpace& sp) {
  const CoefficientSpace cs(sp);
  if (cs.bits > 62) throw CeilingExceeded("coefficient space has 2^" + std::to_string(cs.bits) + " points");
  const std::uint64_t codes = std::uint64_t{1} << cs.bits;
  if (codes > sp.ceiling) throw CeilingExceeded("coefficient space of size " + std::to_string(codes) + " exceeds the ceiling");
  const auto forms = projective_forms(sp.field, sp.total_vars());
  std::vector<std::uint64_t> block_mask(cs.xs.size(), 0);
  for (std::size_t b = 0; b < cs.bits; ++b) block_mask[cs.block_of(b)] |= std::uint64_t{1} << b;
  SearchReport total;
  total.route = "coefficients";
  total.space_size = 1;
  for (auto mk : block_mask) total.space_size *= (std::uint64_t{1} << std::popcount(mk)) - 1;
  Deadline clock(sp.time_limit_seconds);
  const std::uint64_t chunk = std::min<std::uint64_t>(codes, std::uint64_t{1} << 20);
  const std::size_t nchunks = static_cast<std::size_t>(codes / chunk);
  std::vector<SearchReport> parts(nchunks);
  const std::size_t bound = sp.m * sp.d;
  const bool filter_rank = cs.xs.size() > 0;
  parallel_for(nchunks, sp.jobs, [&](std::size_t c) {
    SearchReport& rep = parts[c];
    if (clock.expired()) {
      rep.incomplete = true;
      return;
    }
    PartialBits pb(sp, cs);
    const std::uint64_t lo = c * chunk, hi = lo + chunk;
    std::uint64_t code = lo ^ (lo >> 1);
    for (std::size_t b = 0; b < cs.bits; ++b)
      if (code >> b & 1) pb.flip(b);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      bool nonzero = true;
      for (auto mk : block_mask) nonzero = nonzero && (code & mk) != 0;
      if (nonzero) {
        ++rep.examined;
        if (filter_rank && pb.rank_exceeds(bound)) {
          ++rep.filtered;
        } else {
          std::vector<std::uint32_t> digits(cs.bits);
          for (std::size_t b = 0; b < cs.bits; ++b) digits[b] = code >> b & 1;
          check_coefficient_tuple(sp, cs, forms, coefficients_from_code(sp, cs, digits), rep);
        }
      }
      if (idx + 1 < hi) {
        const std::size_t b = static_cast<std::size_t>(std::countr_zero(idx + 1));
        pb.flip(b);
        code ^= std::uint64_t{1} << b;
      }
    }
  });
  for (auto& p : parts) total.merge(std::move(p), sp.max_witnesses);
  total.partitions = parts.size();
  total.seconds = clock.elapsed();
  return total;
}

/// Coefficient route over GF(p), p odd or randomized: odometer or random draws, generic filter.
inline SearchReport hunt_coefficients_generic(const SearchSpace& sp) {
  const CoefficientSpace cs(sp);
  const std::uint64_t q = sp.field.characteristic();
  const auto forms = projective_forms(sp.field, sp.total_vars());
  SearchReport total;
  total.route = "coefficients";
  total.space_size = 1;
  for (const auto& b : cs.basis) total.space_size = saturating_mul(total.space_size, saturating_pow(q, b.size()) - 1);
  Deadline clock(sp.time_limit_seconds);
  const bool exhaustive = sp.mode == SearchMode::exhaustive;
  if (exhaustive && total.space_size > sp.ceiling)
    throw CeilingExceeded("coefficient space of size " + std::to_string(total.space_size) + " exceeds the ceiling");
  const std::uint64_t codes = exhaustive ? saturating_pow(q, cs.bits) : sp.trials;
  const std::uint64_t chunk = 4096;
  const std::size_t nchunks = static_cast<std::size_t>((codes + chunk - 1) / chunk);
  std::vector<SearchReport> parts(nchunks);
  parallel_for(nchunks, sp.jobs, [&](std::size_t c) {
    SearchReport& rep = parts[c];
    for (std::uint64_t idx = c * chunk; idx < std::min(codes, (c + 1) * chunk); ++idx) {
      if (clock.expired()) {
        rep.incomplete = true;
        return;
      }
      std::vector<std::uint32_t> digits(cs.bits);
      if (exhaustive) {
        std::uint64_t rest = idx;
        for (auto& dg : digits) {
          dg = static_cast<std::uint32_t>(rest % q);
          rest /= q;
        }
      } else {
        std::mt19937_64 rng(mix_seed(sp.seed, idx));
        for (auto& dg : digits) dg = static_cast<std::uint32_t>(rng() % q);
      }
      auto f = coefficients_from_code(sp, cs, digits);
      if (std::any_of(f.begin(), f.end(), [](const MultiPoly& p) { return p.is_zero(); })) continue;
      ++rep.examined;
      check_coefficient_tuple(sp, cs, forms, f, rep);
    }
  });
  for (auto& p : parts) total.merge(std::move(p), sp.max_witnesses);
  total.partitions = parts.size();
  total.seconds = clock.elapsed();
  return total;
}

}  // namespace detail

/// Searches the space for counterexamples to C^d_{k,m,n}. Empty reports are evidence over
/// GF(q), not proofs.
inline SearchReport hunt_counterexamples(const SearchSpace& sp) {
  sp.validate();
  SearchReport rep;
  const bool coefficient_route = sp.m >= 2;
  if (coefficient_route) {
    if (sp.k != 0) throw InvalidArgument("the coefficient route needs k = 0");
    if (sp.n() != sp.m + 1) throw InvalidArgument("the coefficient route needs n = m + 1");
    if (sp.m > 2) throw InvalidArgument("product decompositions are implemented for m <= 2");
    rep = (sp.mode == SearchMode::exhaustive && sp.field.characteristic() == 2) ? detail::hunt_coefficients_gf2(sp)
                                                                                : detail::hunt_coefficients_generic(sp);
  } else {
    rep = sp.mode == SearchMode::exhaustive ? detail::hunt_products_exhaustive(sp) : detail::hunt_products_random(sp);
  }
  rep.label = "evidence over GF(" + std::to_string(sp.field.characteristic()) + ")";
  return rep;
}

/// m = 1 through the coefficient route (n = 2, k = 0); used to cross-check the product route.
inline SearchReport hunt_counterexamples_by_coefficients(SearchSpace sp) {
  sp.validate();
  if (sp.k != 0 || sp.n() != sp.m + 1) throw InvalidArgument("coefficient route needs k = 0 and n = m + 1");
  SearchReport rep = (sp.mode == SearchMode::exhaustive && sp.field.characteristic() == 2) ? detail::hunt_coefficients_gf2(sp)
                                                                                           : detail::hunt_coefficients_generic(sp);
  rep.label = "evidence over GF(" + std::to_string(sp.field.characteristic()) + ")";
  return rep;
}

/// Plain enumeration of every product, for small spaces only.
inline SearchReport hunt_products_brute_force(const SearchSpace& sp) {
  sp.validate();
  if (sp.m != 1) throw InvalidArgument("brute force covers m = 1");
  const auto xs = sp.monomials();
  SearchReport rep;
  rep.route = "brute-force";
  enumerate_products(
      sp.field, sp.total_vars(), sp.d, 1,
      [&](const std::vector<ProductOfLinear>& t) {
        ++rep.examined;
        const auto o = detail::check_single_product(sp, xs, t.front(), 1, false, false, rep);
        if (o.identity) ++rep.identities;
        if (o.counterexample) ++rep.counterexamples;
      },
      sp.ceiling);
  rep.space_size = rep.examined;
  rep.label = "evidence over GF(" + std::to_string(sp.field.characteristic()) + ")";
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Splitting hunts

struct SplitHuntReport {
  std::size_t r = 0, d = 0, k = 0;
  std::uint64_t trials = 0;
  std::uint64_t sampled = 0;
  std::uint64_t injected = 0;
  std::uint64_t rejections = 0;
  std::uint64_t sampler_failures = 0;
  bool sampler_failed = false;  // no structure reaches dimension k
  std::uint64_t non_one_split = 0;
  std::uint64_t non_two_split = 0;
  std::uint64_t witness_family = 0;  // non-one-split planes whose rows pair off into cancelling pairs
  std::uint64_t one_split_violations = 0;
  std::uint64_t two_split_violations = 0;
  std::uint64_t audit_inconsistent = 0;
  double seconds = 0;
  std::string label;
};

namespace detail {

/// Whether the rows split into disjoint cancelling pairs.
inline bool pairs_off(const KPlane& L) {
  const auto pairs = splitting_subsets(L, 2);
  std::vector<std::vector<std::size_t>> two;
  for (const auto& s : pairs)
    if (s.size() == 2) two.push_back(s);
  std::vector<bool> used(L.r(), false);
  auto rec = [&](auto&& self, std::size_t covered) -> bool {
    if (covered == L.r()) return true;
    std::size_t first = 0;
    while (used[first]) ++first;
    for (const auto& s : two) {
      if (s[0] != first || used[s[1]]) continue;
      used[s[0]] = used[s[1]] = true;
      if (self(self, covered + 2)) return true;
      used[s[0]] = used[s[1]] = false;
    }
    return false;
  };
  return L.r() % 2 == 0 && rec(rec, 0);
}

}  // namespace detail

/// Samples member planes and tests splitting. With inject_every > 0 every such trial is the
/// sharp witness (or a generic subplane of it) pushed through a random torus element instead.
inline SplitHuntReport hunt_split_violations(std::size_t r, std::size_t d, std::size_t k, Field f, std::uint64_t trials,
                                             std::uint64_t seed, unsigned jobs = 1, std::uint64_t inject_every = 0) {
  if (!f.is_prime_field()) throw InvalidField("split hunts sample over GF(p)");
  HypersurfaceParams params(r, d);
  SplitHuntReport total;
  total.r = r;
  total.d = d;
  total.k = k;
  total.trials = trials;
  total.label = "evidence over GF(" + std::to_string(f.characteristic()) + ")";
  detail::Deadline clock(0);
  {
    MemberPlaneSampler probe(r, d, k, f, seed);
    total.sampler_failed = probe.shapes().empty();
  }
  const bool one_applies = k >= one_split_threshold(r, d);
  const bool two_applies = r % 2 == 0 && k >= two_split_threshold(r, d);
  std::vector<SplitHuntReport> parts(trials);
  detail::parallel_for(trials, jobs, [&](std::size_t t) {
    SplitHuntReport& rep = parts[t];
    std::mt19937_64 rng(detail::mix_seed(seed, t));
    std::optional<KPlane> L;
    if (inject_every > 0 && t % inject_every == 0 && d >= 3 && k < one_split_threshold(r, d)) {
      const KPlane W = sharp_witness(r, d, f);
      Matrix B = W.matrix();
      if (k < W.k()) {
        Matrix C(f, k + 1, W.k() + 1);
        do {
          for (std::size_t a = 0; a <= k; ++a)
            for (std::size_t b = 0; b <= W.k(); ++b) C(a, b) = f.residue(rng() % f.characteristic());
        } while ((C * B).rank() != k + 1);
        B = C * B;
      }
      for (std::size_t i = 0; i < r; ++i) {
        FieldElement prod = f.one();
        for (std::size_t j = 0; j + 1 < d; ++j) {
          const FieldElement s = f.residue(1 + rng() % (f.characteristic() - 1));
          prod *= s;
          for (std::size_t a = 0; a < B.rows(); ++a) B(a, i * d + j) *= s;
        }
        for (std::size_t a = 0; a < B.rows(); ++a) B(a, i * d + d - 1) *= prod.inv();
      }
      L.emplace(params, B);
      ++rep.injected;
    } else {
      MemberPlaneSampler sampler(r, d, k, f, rng());
      L = sampler.sample(64);
      rep.rejections += sampler.rejections();
      if (!L) {
        ++rep.sampler_failures;
        return;
      }
    }
    ++rep.sampled;
    if (!membership(*L)) {
      ++rep.sampler_failures;
      return;
    }
    if (!is_one_split(*L)) {
      ++rep.non_one_split;
      if (one_applies) ++rep.one_split_violations;
      if (detail::pairs_off(*L)) ++rep.witness_family;
      if (r >= 2) {
        const auto audit = profile_audit(*L, 0);
        if (audit.outcome == AuditOutcome::inconsistent_with_lemma) ++rep.audit_inconsistent;
      }
      if (!is_two_split(*L)) {
        ++rep.non_two_split;
        if (two_applies) ++rep.two_split_violations;
      }
    }
  });
  for (const auto& p : parts) {
    total.sampled += p.sampled;
    total.injected += p.injected;
    total.rejections += p.rejections;
    total.sampler_failures += p.sampler_failures;
    total.non_one_split += p.non_one_split;
    total.non_two_split += p.non_two_split;
    total.witness_family += p.witness_family;
    total.one_split_violations += p.one_split_violations;
    total.two_split_violations += p.two_split_violations;
    total.audit_inconsistent += p.audit_inconsistent;
  }
  total.seconds = clock.elapsed();
  return total;
}

}  // namespace fanosplit
