#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanosplit/error.hpp"
#include "fanosplit/field.hpp"
#include "fanosplit/linalg.hpp"

namespace fanosplit {

using Exponent = std::vector<std::uint16_t>;

inline unsigned total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

/// Graded lex, x1 > x2 > ... ; sorts terms in descending order.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

struct Term {
  Exponent e;
  FieldElement c;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial: terms sorted by GrlexGreater, no zero coefficients.
class MultiPoly {
 public:
  MultiPoly(Field f, std::size_t nvars) : field_(f), nvars_(nvars) {}

  static MultiPoly zero(Field f, std::size_t nvars) { return MultiPoly(f, nvars); }

  static MultiPoly constant(Field f, std::size_t nvars, const FieldElement& c) {
    MultiPoly p(f, nvars);
    if (!c.is_zero()) p.terms_.push_back({Exponent(nvars, 0), c});
    return p;
  }

  static MultiPoly variable(Field f, std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw ArityMismatch("variable index out of range");
    Exponent e(nvars, 0);
    e[i] = 1;
    return monomial(f, std::move(e), f.one());
  }

  static MultiPoly monomial(Field f, Exponent e, const FieldElement& c) {
    MultiPoly p(f, e.size());
    if (!c.is_zero()) p.terms_.push_back({std::move(e), c});
    return p;
  }

  /// Builds from arbitrary terms; merges duplicates and drops zeros.
  static MultiPoly from_terms(Field f, std::size_t nvars, const std::vector<Term>& terms) {
    std::map<Exponent, FieldElement, GrlexGreater> acc;
    for (const auto& t : terms) {
      if (t.e.size() != nvars) throw ArityMismatch("exponent length differs from nvars");
      if (!(t.c.field() == f)) throw ContextMismatch("term coefficient in wrong field");
      auto [it, fresh] = acc.try_emplace(t.e, t.c);
      if (!fresh) it->second += t.c;
    }
    return from_map(f, nvars, acc);
  }

  const Field& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Max total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.front().e)); }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = total_degree(terms_.front().e);
    return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return total_degree(t.e) == d; });
  }

  FieldElement coefficient(const Exponent& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponent& x) { return GrlexGreater{}(t.e, x); });
    if (it != terms_.end() && it->e == e) return it->c;
    return field_.zero();
  }

  /// Variables that occur in some term.
  std::vector<bool> support() const {
    std::vector<bool> s(nvars_, false);
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < nvars_; ++i)
        if (t.e[i]) s[i] = true;
    return s;
  }

  MultiPoly operator+(const MultiPoly& o) const { return combine(o, false); }
  MultiPoly operator-(const MultiPoly& o) const { return combine(o, true); }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  MultiPoly operator*(const MultiPoly& o) const {
    check(o);
    if (is_zero() || o.is_zero()) return MultiPoly(field_, nvars_);
    std::map<Exponent, FieldElement, GrlexGreater> acc;
    Exponent e(nvars_);
    for (const auto& a : terms_) {
      for (const auto& b : o.terms_) {
        for (std::size_t i = 0; i < nvars_; ++i) e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
        auto [it, fresh] = acc.try_emplace(e, a.c * b.c);
        if (!fresh) it->second += a.c * b.c;
      }
    }
    return from_map(field_, nvars_, acc);
  }

  MultiPoly scale(const FieldElement& c) const {
    if (!(c.field() == field_)) throw ContextMismatch("scalar in wrong field");
    if (c.is_zero()) return MultiPoly(field_, nvars_);
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.c *= c;
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly pow(unsigned e) const {
    MultiPoly r = constant(field_, nvars_, field_.one());
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  FieldElement evaluate(const Vector& point) const {
    if (point.size() != nvars_) throw ArityMismatch("evaluation point has wrong length");
    FieldElement s = field_.zero();
    for (const auto& t : terms_) {
      FieldElement v = t.c;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (t.e[i]) v *= point[i].pow(t.e[i]);
      s += v;
    }
    return s;
  }

  /// Replaces the listed variables; the others stay. Replacements must have the same nvars.
  MultiPoly substitute(const std::map<std::size_t, MultiPoly>& assignments) const {
    for (const auto& [v, q] : assignments) {
      if (v >= nvars_ || q.nvars_ != nvars_) throw ArityMismatch("substitution arity mismatch");
      if (!(q.field_ == field_)) throw ContextMismatch("substitution in wrong field");
    }
    std::map<std::pair<std::size_t, unsigned>, MultiPoly> powers;
    auto power_of = [&](std::size_t v, unsigned k) -> const MultiPoly& {
      auto key = std::make_pair(v, k);
      auto it = powers.find(key);
      if (it == powers.end()) it = powers.emplace(key, assignments.at(v).pow(k)).first;
      return it->second;
    };
    MultiPoly out(field_, nvars_);
    for (const auto& t : terms_) {
      Exponent kept = t.e;
      MultiPoly factor = constant(field_, nvars_, t.c);
      for (const auto& [v, q] : assignments) {
        if (t.e[v] == 0) continue;
        factor *= power_of(v, t.e[v]);
        kept[v] = 0;
      }
      out += factor * monomial(field_, kept, field_.one());
    }
    return out;
  }

  /// Same polynomial in a larger or reindexed variable set: variable i maps to map[i].
  MultiPoly remap(std::size_t new_nvars, const std::vector<std::size_t>& map) const {
    if (map.size() != nvars_) throw ArityMismatch("remap table has wrong length");
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
      Exponent e(new_nvars, 0);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (t.e[i] && map[i] >= new_nvars) throw ArityMismatch("remap target out of range");
        if (t.e[i]) e[map[i]] = static_cast<std::uint16_t>(e[map[i]] + t.e[i]);
      }
      ts.push_back({std::move(e), t.c});
    }
    return from_terms(field_, new_nvars, ts);
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      std::string mono;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (!t.e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
        if (t.e[i] > 1) mono += "^" + std::to_string(t.e[i]);
      }
      std::string c = t.c.to_string();
      if (!s.empty()) s += " + ";
      if (mono.empty()) s += c;
      else if (t.c.is_one()) s += mono;
      else s += c + "*" + mono;
    }
    return s;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  static MultiPoly from_map(Field f, std::size_t nvars, const std::map<Exponent, FieldElement, GrlexGreater>& acc) {
    MultiPoly p(f, nvars);
    p.terms_.reserve(acc.size());
    for (const auto& [e, c] : acc)
      if (!c.is_zero()) p.terms_.push_back({e, c});
    return p;
  }

  void check(const MultiPoly& o) const {
    if (!(field_ == o.field_)) throw ContextMismatch("polynomials over different fields");
    if (nvars_ != o.nvars_) throw ArityMismatch("polynomials with different nvars");
  }

  MultiPoly combine(const MultiPoly& o, bool subtract) const {
    check(o);
    MultiPoly r(field_, nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    GrlexGreater gt;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && gt(terms_[i].e, o.terms_[j].e))) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || gt(o.terms_[j].e, terms_[i].e)) {
        r.terms_.push_back({o.terms_[j].e, subtract ? -o.terms_[j].c : o.terms_[j].c});
        ++j;
      } else {
        FieldElement c = subtract ? terms_[i].c - o.terms_[j].c : terms_[i].c + o.terms_[j].c;
        if (!c.is_zero()) r.terms_.push_back({terms_[i].e, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  Field field_;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// Homogeneous degree-1 form stored as its coefficient vector.
class LinearForm {
 public:
  explicit LinearForm(Vector coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw ArityMismatch("linear form needs at least one variable");
  }

  static LinearForm variable(Field f, std::size_t nvars, std::size_t i) {
    Vector c(nvars, f.zero());
    c.at(i) = f.one();
    return LinearForm(std::move(c));
  }

  static LinearForm zero(Field f, std::size_t nvars) { return LinearForm(Vector(nvars, f.zero())); }

  const Field& field() const { return c_.front().field(); }
  std::size_t nvars() const noexcept { return c_.size(); }
  const Vector& coeffs() const noexcept { return c_; }
  const FieldElement& operator[](std::size_t i) const { return c_[i]; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const FieldElement& a) { return a.is_zero(); });
  }

  /// Index of the first nonzero coefficient.
  std::optional<std::size_t> leading_index() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return i;
    return std::nullopt;
  }

  /// Scaled so the first nonzero coefficient is 1, with the factor that was divided out.
  std::pair<LinearForm, FieldElement> normalized() const {
    auto lead = leading_index();
    if (!lead) return {*this, field().one()};
    const FieldElement s = c_[*lead];
    const FieldElement inv = s.inv();
    Vector c = c_;
    for (auto& a : c) a *= inv;
    return {LinearForm(std::move(c)), s};
  }

  LinearForm scale(const FieldElement& s) const {
    Vector c = c_;
    for (auto& a : c) a *= s;
    return LinearForm(std::move(c));
  }

  LinearForm operator+(const LinearForm& o) const { return zip(o, false); }
  LinearForm operator-(const LinearForm& o) const { return zip(o, true); }
  LinearForm operator-() const { return scale(-field().one()); }

  FieldElement evaluate(const Vector& point) const {
    if (point.size() != c_.size()) throw ArityMismatch("evaluation point has wrong length");
    FieldElement s = field().zero();
    for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * point[i];
    return s;
  }

  MultiPoly to_poly() const {
    std::vector<Term> ts;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      Exponent e(c_.size(), 0);
      e[i] = 1;
      ts.push_back({std::move(e), c_[i]});
    }
    return MultiPoly::from_terms(field(), c_.size(), ts);
  }

  /// Reads a polynomial that is homogeneous of degree 1 (or zero).
  static LinearForm from_poly(const MultiPoly& p) {
    Vector c(p.nvars(), p.field().zero());
    for (const auto& t : p.terms()) {
      if (total_degree(t.e) != 1) throw NotHomogeneous("not a linear form");
      for (std::size_t i = 0; i < p.nvars(); ++i)
        if (t.e[i]) c[i] = t.c;
    }
    return LinearForm(std::move(c));
  }

  friend bool operator==(const LinearForm& a, const LinearForm& b) { return a.c_ == b.c_; }
  friend bool operator<(const LinearForm& a, const LinearForm& b) {
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end(),
                                        [](const FieldElement& x, const FieldElement& y) { return x < y; });
  }

 private:
  LinearForm zip(const LinearForm& o, bool subtract) const {
    if (o.c_.size() != c_.size()) throw ArityMismatch("linear forms with different nvars");
    Vector c = c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = subtract ? c[i] - o.c_[i] : c[i] + o.c_[i];
    return LinearForm(std::move(c));
  }

  Vector c_;
};

/// scalar * product of nonzero linear forms, kept in canonical form: every factor has
/// leading coefficient 1 and the factors are sorted.
class ProductOfLinear {
 public:
  ProductOfLinear(Field f, std::size_t nvars, FieldElement scalar, std::vector<LinearForm> factors)
      : field_(f), nvars_(nvars), scalar_(std::move(scalar)) {
    if (!(scalar_.field() == f)) throw ContextMismatch("scalar in wrong field");
    if (scalar_.is_zero()) throw InvalidArgument("product scalar must be nonzero");
    for (auto& l : factors) {
      if (l.nvars() != nvars) throw ArityMismatch("factor has wrong nvars");
      if (!(l.field() == f)) throw ContextMismatch("factor in wrong field");
      if (l.is_zero()) throw InvalidArgument("zero factor in product");
      auto [n, s] = l.normalized();
      scalar_ *= s;
      factors_.push_back(std::move(n));
    }
    std::sort(factors_.begin(), factors_.end());
  }

  explicit ProductOfLinear(const std::vector<LinearForm>& factors)
      : ProductOfLinear(factors.at(0).field(), factors.at(0).nvars(), factors.at(0).field().one(), factors) {}

  const Field& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const FieldElement& scalar() const noexcept { return scalar_; }
  const std::vector<LinearForm>& factors() const noexcept { return factors_; }
  std::size_t degree() const noexcept { return factors_.size(); }

  MultiPoly expand() const {
    MultiPoly p = MultiPoly::constant(field_, nvars_, scalar_);
    for (const auto& l : factors_) p *= l.to_poly();
    return p;
  }

  ProductOfLinear scaled(const FieldElement& s) const {
    return ProductOfLinear(field_, nvars_, scalar_ * s, factors_);
  }

  friend bool operator==(const ProductOfLinear& a, const ProductOfLinear& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.scalar_ == b.scalar_ && a.factors_ == b.factors_;
  }

 private:
  Field field_;
  std::size_t nvars_;
  FieldElement scalar_;
  std::vector<LinearForm> factors_;
};

/// Exponent vector of a monomial x^e; the monomials of sum-product identities are squarefree.
class Monomial {
 public:
  explicit Monomial(Exponent e) : e_(std::move(e)) {}

  static Monomial from_vars(std::size_t nvars, const std::vector<std::size_t>& vars) {
    Exponent e(nvars, 0);
    for (auto v : vars) {
      if (v >= nvars) throw ArityMismatch("monomial variable out of range");
      ++e[v];
    }
    return Monomial(std::move(e));
  }

  const Exponent& exponent() const noexcept { return e_; }
  std::size_t nvars() const noexcept { return e_.size(); }
  unsigned degree() const { return total_degree(e_); }
  bool squarefree() const {
    return std::all_of(e_.begin(), e_.end(), [](std::uint16_t a) { return a <= 1; });
  }

  std::vector<std::size_t> vars() const {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < e_.size(); ++i)
      for (unsigned k = 0; k < e_[i]; ++k) v.push_back(i);
    return v;
  }

  bool divides(const Exponent& t) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > t[i]) return false;
    return true;
  }

  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] && o.e_[i]) return false;
    return true;
  }

  MultiPoly to_poly(Field f) const { return MultiPoly::monomial(f, e_, f.one()); }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  Exponent e_;
};

/// Exact quotient p / l, or nullopt when l does not divide p.
inline std::optional<MultiPoly> divide_by_linear(const MultiPoly& p, const LinearForm& l) {
  if (l.nvars() != p.nvars()) throw ArityMismatch("divisor has wrong nvars");
  if (!(l.field() == p.field())) throw ContextMismatch("divisor in wrong field");
  auto lead = l.leading_index();
  if (!lead) throw DivisionByZero("division by the zero linear form");
  const std::size_t v = *lead;
  const FieldElement inv = l[v].inv();
  const Field f = p.field();
  // With x1 > x2 > ... the leading term of l is l[v]*x_v in graded lex.
  std::map<Exponent, FieldElement, GrlexGreater> rem;
  for (const auto& t : p.terms()) rem.emplace(t.e, t.c);
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (it->first[v] == 0) return std::nullopt;
    Exponent qe = it->first;
    --qe[v];
    const FieldElement qc = it->second * inv;
    for (std::size_t i = 0; i < l.nvars(); ++i) {
      if (l[i].is_zero()) continue;
      Exponent e = qe;
      ++e[i];
      auto [jt, fresh] = rem.try_emplace(e, -(qc * l[i]));
      if (!fresh) {
        jt->second -= qc * l[i];
        if (jt->second.is_zero()) rem.erase(jt);
      }
    }
    quotient.push_back({std::move(qe), qc});
  }
  return MultiPoly::from_terms(f, p.nvars(), quotient);
}

enum class SplitStatus : std::uint8_t { split, not_split, unknown };

struct FactorResult {
  SplitStatus status;
  std::optional<ProductOfLinear> product;
};

namespace detail {

/// Rational roots of a univariate polynomial with the given coefficients (index = power).
/// nullopt when the coefficients are too large for trial division.
inline std::optional<std::vector<Rational>> rational_roots(std::vector<Rational> a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  std::vector<Rational> roots;
  if (a.size() <= 1) return roots;
  std::size_t low = 0;
  while (a[low] == 0) ++low;
  if (low > 0) roots.push_back(Rational(0));
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(low));
  if (a.size() <= 1) return roots;
  Integer den_lcm = 1;
  for (const auto& c : a) den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c));
  std::vector<Integer> ints;
  for (const auto& c : a) ints.push_back(boost::multiprecision::numerator(Rational(c * den_lcm)));
  const Integer limit = Integer(1) << 40;
  auto divisors = [&](Integer n) -> std::optional<std::vector<Integer>> {
    if (n < 0) n = -n;
    if (n > limit) return std::nullopt;
    std::vector<Integer> ds;
    for (Integer q = 1; q * q <= n; ++q) {
      if (n % q == 0) {
        ds.push_back(q);
        if (q * q != n) ds.push_back(n / q);
      }
    }
    return ds;
  };
  auto num_divs = divisors(ints.front());
  auto den_divs = divisors(ints.back());
  if (!num_divs || !den_divs) return std::nullopt;
  for (const auto& pn : *num_divs) {
    for (const auto& qd : *den_divs) {
      for (int sign : {1, -1}) {
        Rational x(Integer(sign) * pn, qd);
        if (std::find(roots.begin(), roots.end(), x) != roots.end()) continue;
        Rational val = 0;
        for (auto it = a.rbegin(); it != a.rend(); ++it) val = val * x + *it;
        if (val == 0) roots.push_back(x);
      }
    }
  }
  return roots;
}

/// Candidate factors with leading variable v over a prime field: x_v + sum_{j>v, j in supp} c_j x_j.
inline std::optional<LinearForm> find_factor_prime(const MultiPoly& p, std::size_t v, const std::vector<bool>& supp) {
  const Field f = p.field();
  const std::uint32_t q = f.characteristic();
  std::vector<std::size_t> free;
  for (std::size_t j = v + 1; j < p.nvars(); ++j)
    if (supp[j]) free.push_back(j);
  std::vector<std::uint32_t> digits(free.size(), 0);
  while (true) {
    Vector c(p.nvars(), f.zero());
    c[v] = f.one();
    for (std::size_t t = 0; t < free.size(); ++t) c[free[t]] = f.residue(digits[t]);
    LinearForm l(std::move(c));
    if (divide_by_linear(p, l)) return l;
    std::size_t t = 0;
    while (t < digits.size() && ++digits[t] == q) digits[t++] = 0;
    if (t == digits.size()) return std::nullopt;
  }
}

enum class Probe : std::uint8_t { found, none, inconclusive };

/// Rational candidates harvested from binary restrictions to (x_v, x_j).
inline std::pair<Probe, std::optional<LinearForm>> find_factor_rational(const MultiPoly& p, std::size_t v,
                                                                        const std::vector<bool>& supp) {
  const Field f = p.field();
  const unsigned d = static_cast<unsigned>(p.degree());
  std::vector<std::size_t> free;
  std::vector<std::vector<Rational>> options;
  bool inconclusive = false;
  for (std::size_t j = v + 1; j < p.nvars(); ++j) {
    if (!supp[j]) continue;
    // Restrict to x_v = t, x_j = 1, others 0.
    std::vector<Rational> coeffs(d + 1, Rational(0));
    bool any = false;
    for (const auto& term : p.terms()) {
      bool ok = true;
      for (std::size_t i = 0; i < p.nvars(); ++i)
        if (i != v && i != j && term.e[i]) ok = false;
      if (!ok) continue;
      coeffs[term.e[v]] += term.c.rational();
      any = true;
    }
    if (!any) {
      inconclusive = true;
      break;
    }
    auto roots = rational_roots(coeffs);
    if (!roots) {
      inconclusive = true;
      break;
    }
    if (roots->empty()) return {Probe::none, std::nullopt};
    std::vector<Rational> cs;
    for (const auto& r : *roots) cs.push_back(-r);
    free.push_back(j);
    options.push_back(std::move(cs));
  }
  if (inconclusive) return {Probe::inconclusive, std::nullopt};
  std::size_t combos = 1;
  for (const auto& o : options) {
    combos *= o.size();
    if (combos > 100000) return {Probe::inconclusive, std::nullopt};
  }
  std::vector<std::size_t> idx(free.size(), 0);
  while (true) {
    Vector c(p.nvars(), f.zero());
    c[v] = f.one();
    for (std::size_t t = 0; t < free.size(); ++t) c[free[t]] = f.from_rational(options[t][idx[t]]);
    LinearForm l(std::move(c));
    if (divide_by_linear(p, l)) return {Probe::found, l};
    std::size_t t = 0;
    while (t < idx.size() && ++idx[t] == options[t].size()) idx[t++] = 0;
    if (t == idx.size()) return {Probe::none, std::nullopt};
  }
}

}  // namespace detail

/// Factors a homogeneous polynomial into linear forms. Over GF(p) the answer is exact.
/// Over the rationals a negative answer may be `unknown`.
inline FactorResult factor_product(const MultiPoly& p) {
  if (p.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
  if (!p.is_homogeneous()) throw NotHomogeneous("factor_product needs a homogeneous polynomial");
  const Field f = p.field();
  std::vector<LinearForm> factors;
  MultiPoly rest = p;
  while (rest.degree() > 0) {
    // Leading monomial of a product is the product of the factors' leading variables,
    // so some factor has leading variable v for each v in it. Use the last such v.
    const Exponent& lm = rest.terms().front().e;
    std::size_t v = 0;
    for (std::size_t i = 0; i < lm.size(); ++i)
      if (lm[i]) v = i;
    const auto supp = rest.support();
    std::optional<LinearForm> l;
    if (f.is_prime_field()) {
      l = detail::find_factor_prime(rest, v, supp);
      if (!l) return {SplitStatus::not_split, std::nullopt};
    } else {
      auto [probe, found] = detail::find_factor_rational(rest, v, supp);
      if (probe == detail::Probe::none) return {SplitStatus::not_split, std::nullopt};
      if (probe == detail::Probe::inconclusive) return {SplitStatus::unknown, std::nullopt};
      l = found;
    }
    rest = *divide_by_linear(rest, *l);
    factors.push_back(*l);
  }
  return {SplitStatus::split, ProductOfLinear(f, p.nvars(), rest.terms().front().c, std::move(factors))};
}

inline bool is_product_of_linear(const MultiPoly& p) {
  return !p.is_zero() && factor_product(p).status == SplitStatus::split;
}

}  // namespace fanosplit
