#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fanosplit/error.hpp"
#include "fanosplit/linalg.hpp"
#include "fanosplit/poly.hpp"

namespace fanosplit {

/// Pairwise degree bounds attached to an identity with k unconstrained leading monomials.
///   relaxed: deg x_i + deg x_j >= d+1 whenever max(i,j) > k
///   strict:  relaxed, and >= d+2 whenever both i,j > k
enum class DegreeConstraint : std::uint8_t { none, relaxed, strict };

inline const char* to_string(DegreeConstraint c) {
  switch (c) {
    case DegreeConstraint::none: return "none";
    case DegreeConstraint::relaxed: return "relaxed";
    case DegreeConstraint::strict: return "strict";
  }
  return "none";
}

inline DegreeConstraint parse_constraint(const std::string& s) {
  if (s == "none") return DegreeConstraint::none;
  if (s == "relaxed") return DegreeConstraint::relaxed;
  if (s == "strict") return DegreeConstraint::strict;
  throw ParseError("unknown degree constraint '" + s + "'");
}

/// Monomials must be squarefree, pairwise coprime, share nvars and be sorted by degree.
inline void validate_monomials(const std::vector<Monomial>& xs, bool require_sorted = true) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].nvars() != xs.front().nvars()) throw ArityMismatch("monomials with different nvars");
    if (!xs[i].squarefree()) throw InvalidArgument("monomial " + std::to_string(i + 1) + " is not squarefree");
    for (std::size_t j = 0; j < i; ++j)
      if (!xs[i].coprime(xs[j]))
        throw InvalidArgument("monomials " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                              " share a variable");
    if (require_sorted && i > 0 && xs[i].degree() < xs[i - 1].degree())
      throw InvalidArgument("monomials must be sorted by nondecreasing degree");
  }
}

/// Throws DegreeConstraintViolated naming the first offending pair (1-based).
inline void check_degree_constraint(const std::vector<Monomial>& xs, unsigned d, std::size_t k,
                                    DegreeConstraint c) {
  if (c == DegreeConstraint::none) return;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (j < k) continue;  // both indices among the first k
      const unsigned sum = xs[i].degree() + xs[j].degree();
      const unsigned need = (c == DegreeConstraint::strict && i >= k) ? d + 2 : d + 1;
      if (sum < need)
        throw DegreeConstraintViolated("deg x" + std::to_string(i + 1) + " + deg x" + std::to_string(j + 1) + " = " +
                                       std::to_string(sum) + " < " + std::to_string(need));
    }
  }
}

inline bool satisfies_constraint(const std::vector<Monomial>& xs, unsigned d, std::size_t k, DegreeConstraint c) {
  try {
    check_degree_constraint(xs, d, k, c);
    return true;
  } catch (const DegreeConstraintViolated&) {
    return false;
  }
}

struct Decomposition {
  /// coeffs[i] for i >= k; entries below k are left empty.
  std::vector<std::optional<MultiPoly>> coeffs;
  MultiPoly residual;
};

/// Splits L into sum_{i>k} f_i x_i + residual. Each term of L is divisible by at most one x_i
/// with i > k under the relaxed bound, which makes the f_i unique.
inline Decomposition decompose(const MultiPoly& L, const std::vector<Monomial>& xs, std::size_t k) {
  validate_monomials(xs, false);
  if (!L.is_homogeneous()) throw NotHomogeneous("decompose needs a homogeneous polynomial");
  if (k > xs.size()) throw InvalidArgument("k exceeds the number of monomials");
  for (const auto& x : xs)
    if (x.nvars() != L.nvars()) throw ArityMismatch("monomial nvars differs from polynomial");
  const unsigned d = L.is_zero() ? 0 : static_cast<unsigned>(L.degree());
  if (!L.is_zero()) check_degree_constraint(xs, d, k, DegreeConstraint::relaxed);
  std::vector<std::vector<Term>> parts(xs.size());
  std::vector<Term> rest;
  for (const auto& t : L.terms()) {
    bool placed = false;
    for (std::size_t i = k; i < xs.size(); ++i) {
      if (!xs[i].divides(t.e)) continue;
      Exponent q = t.e;
      for (std::size_t v = 0; v < q.size(); ++v) q[v] = static_cast<std::uint16_t>(q[v] - xs[i].exponent()[v]);
      parts[i].push_back({std::move(q), t.c});
      placed = true;
      break;
    }
    if (!placed) rest.push_back(t);
  }
  Decomposition out{std::vector<std::optional<MultiPoly>>(xs.size()), MultiPoly::from_terms(L.field(), L.nvars(), rest)};
  for (std::size_t i = k; i < xs.size(); ++i) out.coeffs[i] = MultiPoly::from_terms(L.field(), L.nvars(), parts[i]);
  return out;
}

namespace detail {

inline void monomials_of_degree(std::size_t nvars, unsigned deg, std::vector<Exponent>& out) {
  Exponent e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t v, unsigned left) -> void {
    if (v + 1 == nvars) {
      e[v] = static_cast<std::uint16_t>(left);
      out.push_back(e);
      return;
    }
    for (unsigned a = left + 1; a-- > 0;) {
      e[v] = static_cast<std::uint16_t>(a);
      self(self, v + 1, left - a);
    }
    e[v] = 0;
  };
  if (nvars == 0) return;
  rec(rec, 0, deg);
}

}  // namespace detail

/// Solves residual = sum_{i<k} g_i x_i exactly. Unknowns are the coefficients of g_i on the
/// monomials g with g*x_i in the support of the residual; this loses no solutions because the
/// x_i generate a monomial ideal.
inline std::optional<std::vector<MultiPoly>> feasible_completion(const MultiPoly& residual,
                                                                 const std::vector<Monomial>& xs, std::size_t k) {
  if (k > xs.size()) throw InvalidArgument("k exceeds the number of monomials");
  for (const auto& x : xs)
    if (x.nvars() != residual.nvars()) throw ArityMismatch("monomial nvars differs from residual");
  const Field f = residual.field();
  const std::size_t n = residual.nvars();
  std::vector<MultiPoly> g(k, MultiPoly::zero(f, n));
  if (residual.is_zero()) return g;
  if (!residual.is_homogeneous()) throw NotHomogeneous("residual must be homogeneous");
  struct Unknown {
    std::size_t i;
    Exponent quotient;
  };
  std::vector<Unknown> unknowns;
  const auto& terms = residual.terms();
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& t : terms) {
      if (!xs[i].divides(t.e)) continue;
      Exponent q = t.e;
      for (std::size_t v = 0; v < n; ++v) q[v] = static_cast<std::uint16_t>(q[v] - xs[i].exponent()[v]);
      unknowns.push_back({i, std::move(q)});
    }
  }
  // One equation per residual term; a product g*x_i lands on exactly one term.
  Matrix a(f, terms.size(), unknowns.size());
  Vector b;
  for (std::size_t r = 0; r < terms.size(); ++r) {
    b.push_back(terms[r].c);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      Exponent prod = unknowns[u].quotient;
      for (std::size_t v = 0; v < n; ++v) prod[v] = static_cast<std::uint16_t>(prod[v] + xs[unknowns[u].i].exponent()[v]);
      if (prod == terms[r].e) a(r, u) = f.one();
    }
  }
  auto sol = a.solve(b);
  if (!sol) return std::nullopt;
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    g[unknowns[u].i] += MultiPoly::monomial(f, unknowns[u].quotient, (*sol)[u]);
  return g;
}

/// An instance of l_1 + ... + l_m = sum_i f_i x_i, verified on construction.
class SumProductIdentity {
 public:
  SumProductIdentity(unsigned d, std::size_t k, std::vector<ProductOfLinear> products, std::vector<Monomial> monomials,
                     std::vector<MultiPoly> coeffs, DegreeConstraint constraint)
      : d_(d), k_(k), products_(std::move(products)), monomials_(std::move(monomials)), coeffs_(std::move(coeffs)),
        constraint_(constraint) {
    if (products_.empty()) throw InvalidArgument("identity needs at least one product");
    if (monomials_.size() != coeffs_.size()) throw ArityMismatch("one coefficient per monomial required");
    if (k_ > monomials_.size()) throw InvalidArgument("k exceeds the number of monomials");
    validate_monomials(monomials_);
    const Field f = products_.front().field();
    const std::size_t nv = products_.front().nvars();
    MultiPoly lhs = MultiPoly::zero(f, nv), rhs = MultiPoly::zero(f, nv);
    for (const auto& p : products_) {
      if (p.degree() != d_) throw InvalidArgument("product of degree " + std::to_string(p.degree()) + ", expected " + std::to_string(d_));
      if (p.nvars() != nv || !(p.field() == f)) throw ContextMismatch("products over different rings");
      lhs += p.expand();
    }
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
      if (monomials_[i].nvars() != nv || coeffs_[i].nvars() != nv) throw ArityMismatch("monomial or coefficient nvars mismatch");
      if (monomials_[i].degree() > d_) throw InvalidArgument("monomial degree exceeds d");
      const auto& c = coeffs_[i];
      if (!c.is_zero() && (!c.is_homogeneous() || static_cast<unsigned>(c.degree()) + monomials_[i].degree() != d_))
        throw InvalidArgument("coefficient " + std::to_string(i + 1) + " must be a form of degree d - deg x_i");
      rhs += c * monomials_[i].to_poly(f);
    }
    if (!(lhs == rhs)) throw IdentityMismatch("sum of products differs from sum of f_i x_i");
    check_degree_constraint(monomials_, d_, k_, constraint_);
  }

  unsigned d() const noexcept { return d_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t m() const noexcept { return products_.size(); }
  /// Number of monomials beyond the first k.
  std::size_t n() const noexcept { return monomials_.size() - k_; }
  const Field& field() const noexcept { return products_.front().field(); }
  std::size_t nvars() const noexcept { return products_.front().nvars(); }
  const std::vector<ProductOfLinear>& products() const noexcept { return products_; }
  const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
  const std::vector<MultiPoly>& coeffs() const noexcept { return coeffs_; }
  DegreeConstraint constraint() const noexcept { return constraint_; }

  MultiPoly lhs() const {
    MultiPoly s = MultiPoly::zero(field(), nvars());
    for (const auto& p : products_) s += p.expand();
    return s;
  }

 private:
  unsigned d_;
  std::size_t k_;
  std::vector<ProductOfLinear> products_;
  std::vector<Monomial> monomials_;
  std::vector<MultiPoly> coeffs_;
  DegreeConstraint constraint_;
};

/// Builds an identity from products alone: the f_i beyond k come from decompose, the first k
/// from feasible_completion. nullopt when the sum is not in the ideal of the monomials.
inline std::optional<SumProductIdentity> identity_from_products(const std::vector<ProductOfLinear>& products,
                                                                const std::vector<Monomial>& xs, std::size_t k,
                                                                DegreeConstraint c) {
  if (products.empty()) throw InvalidArgument("identity needs at least one product");
  MultiPoly L = MultiPoly::zero(products.front().field(), products.front().nvars());
  for (const auto& p : products) L += p.expand();
  auto dec = decompose(L, xs, k);
  auto head = feasible_completion(dec.residual, xs, k);
  if (!head) return std::nullopt;
  std::vector<MultiPoly> coeffs;
  for (std::size_t i = 0; i < xs.size(); ++i) coeffs.push_back(i < k ? (*head)[i] : *dec.coeffs[i]);
  return SumProductIdentity(static_cast<unsigned>(products.front().degree()), k, products, xs, std::move(coeffs), c);
}

enum class Verdict : std::uint8_t { satisfies, counterexample };

struct PropertyVerdict {
  Verdict verdict;
  std::size_t vanishing;  // zero coefficients with index > k
  std::size_t required;   // n - m
};

/// Checks the conclusion of C^d_{k,m,n}: at least n - m of the f_i with i > k vanish.
inline PropertyVerdict check_property_instance(const SumProductIdentity& inst) {
  if (inst.constraint() == DegreeConstraint::none)
    throw DegreeConstraintViolated("instance carries no degree constraint tag");
  check_degree_constraint(inst.monomials(), inst.d(), inst.k(), inst.constraint());
  if (inst.n() <= inst.m()) throw InvalidArgument("property needs n > m");
  std::size_t zeros = 0;
  for (std::size_t i = inst.k(); i < inst.coeffs().size(); ++i)
    if (inst.coeffs()[i].is_zero()) ++zeros;
  const std::size_t need = inst.n() - inst.m();
  return {zeros >= need ? Verdict::satisfies : Verdict::counterexample, zeros, need};
}

/// Cancellation by the variable x at monomial index i (0-based); requires m = 1.
inline SumProductIdentity cancel(const SumProductIdentity& inst, std::size_t x, std::size_t i) {
  if (inst.m() != 1) throw NotCancellable("cancellation needs a single product");
  if (i >= inst.monomials().size()) throw NotCancellable("monomial index out of range");
  if (x >= inst.nvars()) throw NotCancellable("variable index out of range");
  const Field f = inst.field();
  const std::size_t nv = inst.nvars();
  const LinearForm var = LinearForm::variable(f, nv, x);
  const auto& prod = inst.products().front();
  std::vector<LinearForm> factors = prod.factors();
  auto hit = std::find(factors.begin(), factors.end(), var);
  if (hit == factors.end()) throw NotCancellable("variable does not divide the product");
  factors.erase(hit);
  if (inst.monomials()[i].exponent()[x] == 0) throw NotCancellable("variable does not divide monomial " + std::to_string(i + 1));
  struct Row {
    Monomial x;
    MultiPoly f;
  };
  std::vector<Row> rows;
  for (std::size_t j = 0; j < inst.monomials().size(); ++j) {
    if (j == i) {
      Exponent e = inst.monomials()[j].exponent();
      e[x] = 0;
      rows.push_back({Monomial(std::move(e)), inst.coeffs()[j]});
      continue;
    }
    auto q = divide_by_linear(inst.coeffs()[j], var);
    if (!q) throw NotCancellable("variable does not divide f_" + std::to_string(j + 1));
    rows.push_back({inst.monomials()[j], *q});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.x.degree() < b.x.degree(); });
  std::vector<Monomial> xs;
  std::vector<MultiPoly> fs;
  for (auto& r : rows) {
    xs.push_back(std::move(r.x));
    fs.push_back(std::move(r.f));
  }
  std::vector<ProductOfLinear> ps;
  ps.emplace_back(f, nv, prod.scalar(), std::move(factors));
  return SumProductIdentity(inst.d() - 1, 0, std::move(ps), std::move(xs), std::move(fs), DegreeConstraint::none);
}

enum class FactorTag : std::uint8_t { divides_monomial, divides_coeff, neither };

inline const char* to_string(FactorTag t) {
  switch (t) {
    case FactorTag::divides_monomial: return "DividesMonomial";
    case FactorTag::divides_coeff: return "DividesCoeff";
    case FactorTag::neither: return "Neither";
  }
  return "Neither";
}

struct CoeffMonomial {
  MultiPoly f;
  Monomial x;
};

/// For a linear form dividing sum f_i x_i, tags whether it divides x_i or f_i.
inline std::vector<FactorTag> linear_factor_conclusion(const LinearForm& l, const std::vector<CoeffMonomial>& pairs) {
  if (pairs.empty()) return {};
  const Field f = l.field();
  MultiPoly sum = MultiPoly::zero(f, l.nvars());
  for (const auto& p : pairs) sum += p.f * p.x.to_poly(f);
  if (!divide_by_linear(sum, l)) throw InvalidArgument("linear form does not divide the sum");
  std::vector<FactorTag> tags;
  for (const auto& p : pairs) {
    if (divide_by_linear(p.x.to_poly(f), l)) tags.push_back(FactorTag::divides_monomial);
    else if (p.f.is_zero() || divide_by_linear(p.f, l)) tags.push_back(FactorTag::divides_coeff);
    else tags.push_back(FactorTag::neither);
  }
  return tags;
}

/// True when l is a scalar multiple of a variable.
inline bool is_monomial_form(const LinearForm& l) {
  return std::count_if(l.coeffs().begin(), l.coeffs().end(), [](const FieldElement& a) { return !a.is_zero(); }) == 1;
}

/// Hypotheses under which no index may be tagged Neither (monomials sorted by degree).
inline bool no_neither_expected(const std::vector<Monomial>& xs, unsigned d, const LinearForm& l) {
  if (xs.size() < 2) return false;
  const unsigned s = xs[0].degree() + xs[1].degree();
  return s >= d + 2 || (s >= d + 1 && is_monomial_form(l));
}

/// Permutation sigma with expand(products[i]) = monomials[sigma[i]], or nullopt.
inline std::optional<std::vector<std::size_t>> match_products(const std::vector<ProductOfLinear>& products,
                                                             const std::vector<Monomial>& xs) {
  if (products.size() != xs.size()) throw ArityMismatch("need as many products as monomials");
  if (products.empty()) return std::vector<std::size_t>{};
  validate_monomials(xs, false);
  const Field f = products.front().field();
  const std::size_t nv = products.front().nvars();
  const std::size_t d = products.front().degree();
  MultiPoly lhs = MultiPoly::zero(f, nv), rhs = MultiPoly::zero(f, nv);
  for (const auto& p : products) {
    if (p.degree() != d) throw InvalidArgument("products of different degree");
    lhs += p.expand();
  }
  for (const auto& x : xs) {
    if (x.degree() != d) throw InvalidArgument("monomials must have degree d");
    rhs += x.to_poly(f);
  }
  if (!(lhs == rhs)) throw IdentityMismatch("sum of products differs from sum of monomials");
  std::vector<std::size_t> sigma;
  std::vector<bool> used(xs.size(), false);
  for (const auto& p : products) {
    const MultiPoly e = p.expand();
    bool found = false;
    for (std::size_t j = 0; j < xs.size() && !found; ++j) {
      if (!used[j] && e == xs[j].to_poly(f)) {
        sigma.push_back(j);
        used[j] = true;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return sigma;
}

/// The vanishing statement for m = 1 with r >= 3 monomials and deg x_1 + deg x_{r-1} >= d+1:
/// some f_i with deg x_i >= deg x_{r-1} is zero. Those f_i are unique, so the check is
/// well defined for any decomposition of the product.
struct VanishingCheck {
  bool applicable;
  bool holds;
};

inline VanishingCheck rank_one_vanishing(const MultiPoly& L, const std::vector<Monomial>& xs) {
  const std::size_t r = xs.size();
  if (r < 3 || L.is_zero()) return {false, true};
  const unsigned d = static_cast<unsigned>(L.degree());
  const unsigned beta = xs[r - 2].degree();
  if (xs[0].degree() + beta < d + 1) return {false, true};
  std::size_t k = 0;
  while (k < r && xs[k].degree() < beta) ++k;
  auto dec = decompose(L, xs, k);
  bool any_zero = false;
  for (std::size_t i = k; i < r; ++i)
    if (dec.coeffs[i]->is_zero()) any_zero = true;
  return {true, any_zero};
}

}  // namespace fanosplit
