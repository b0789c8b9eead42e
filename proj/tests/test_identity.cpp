#include <gtest/gtest.h>

#include <random>

#include "fanosplit/identity.hpp"

using namespace fanosplit;

namespace {

// Variables a..h as indices 0..7.
enum : std::size_t { a, b, c, d, e, f, g, h };

struct Ring {
  Field fld;
  std::size_t n;
  MultiPoly x(std::size_t i) const { return MultiPoly::variable(fld, n, i); }
  MultiPoly one() const { return MultiPoly::constant(fld, n, fld.one()); }
  LinearForm v(std::size_t i) const { return LinearForm::variable(fld, n, i); }
  Monomial mono(std::vector<std::size_t> vars) const { return Monomial::from_vars(n, vars); }
  ProductOfLinear prod(std::vector<LinearForm> ls) const { return ProductOfLinear(ls); }
};

}  // namespace

TEST(Decompose, BoundaryWitness) {
  Ring r{Field::rationals(), 4};
  auto L = (r.x(a) + r.x(c)) * r.x(b) * r.x(d);
  auto dec = decompose(L, {r.mono({a, b}), r.mono({c, d})}, 0);
  EXPECT_EQ(*dec.coeffs[0], r.x(d));
  EXPECT_EQ(*dec.coeffs[1], r.x(b));
  EXPECT_TRUE(dec.residual.is_zero());
}

TEST(Decompose, ZeroCoefficientAndResidual) {
  Ring r{Field::rationals(), 7};
  auto abc = r.x(a) * r.x(b) * r.x(c);
  auto dec = decompose(abc, {r.mono({a, b, c}), r.mono({d, e})}, 0);
  EXPECT_EQ(*dec.coeffs[0], r.one());
  EXPECT_TRUE(dec.coeffs[1]->is_zero());
  EXPECT_TRUE(dec.residual.is_zero());

  auto dec2 = decompose(abc + r.x(g).pow(3), {r.mono({a, b, c}), r.mono({d, e, f})}, 0);
  EXPECT_EQ(*dec2.coeffs[0], r.one());
  EXPECT_TRUE(dec2.coeffs[1]->is_zero());
  EXPECT_EQ(dec2.residual, r.x(g).pow(3));
}

TEST(Decompose, RejectsWeakDegrees) {
  Ring r{Field::rationals(), 4};
  EXPECT_THROW(decompose(r.x(a) * r.x(b) * r.x(c), {r.mono({a}), r.mono({b, c})}, 0), DegreeConstraintViolated);
  // Pairs with both indices among the first k are unconstrained.
  Ring s{Field::rationals(), 5};
  std::vector<Monomial> xs = {s.mono({a}), s.mono({b}), s.mono({c, d, e})};
  EXPECT_THROW(decompose(s.x(a) * s.x(b) * s.x(c), xs, 0), DegreeConstraintViolated);
  auto dec = decompose(s.x(a) * s.x(b) * s.x(c) + s.x(c) * s.x(d) * s.x(e), xs, 2);
  EXPECT_EQ(*dec.coeffs[2], s.one());
  EXPECT_EQ(dec.residual, s.x(a) * s.x(b) * s.x(c));
}

TEST(FeasibleCompletion, Examples) {
  Ring r{Field::rationals(), 2};
  EXPECT_TRUE(feasible_completion(MultiPoly::zero(r.fld, 2), {r.mono({a})}, 1));
  auto g = feasible_completion(r.x(a) * r.x(b).pow(2), {r.mono({a})}, 1);
  ASSERT_TRUE(g);
  EXPECT_EQ((*g)[0], r.x(b).pow(2));
  EXPECT_FALSE(feasible_completion(r.x(b).pow(3), {r.mono({a})}, 1));
}

TEST(FeasibleCompletion, MatchesMonomialIdealMembership) {
  std::mt19937_64 rng(3);
  const Field fld = Field::prime(3);
  const std::size_t n = 6;
  for (int t = 0; t < 300; ++t) {
    std::vector<Monomial> xs = {Monomial::from_vars(n, {0, 1}), Monomial::from_vars(n, {2}), Monomial::from_vars(n, {3, 4})};
    std::vector<Term> ts;
    for (int i = 0; i < 4; ++i) {
      Exponent ex(n, 0);
      for (int s = 0; s < 3; ++s) ++ex[rng() % n];
      ts.push_back({ex, fld.residue(rng() % 3)});
    }
    auto p = MultiPoly::from_terms(fld, n, ts);
    bool member = true;
    for (const auto& term : p.terms()) {
      bool any = false;
      for (const auto& x : xs) any = any || x.divides(term.e);
      member = member && any;
    }
    auto sol = feasible_completion(p, xs, 3);
    EXPECT_EQ(sol.has_value(), member);
    if (sol) {
      MultiPoly s = MultiPoly::zero(fld, n);
      for (std::size_t i = 0; i < 3; ++i) s += (*sol)[i] * xs[i].to_poly(fld);
      EXPECT_EQ(s, p);
    }
  }
}

TEST(Property, SatisfiesAndConstraintRejection) {
  Ring r{Field::rationals(), 6};
  SumProductIdentity inst(3, 0, {r.prod({r.v(a), r.v(b), r.v(c)})}, {r.mono({a, b, c}), r.mono({d, e, f})},
                          {r.one(), MultiPoly::zero(r.fld, 6)}, DegreeConstraint::strict);
  auto v = check_property_instance(inst);
  EXPECT_EQ(v.verdict, Verdict::satisfies);

  Ring q{Field::rationals(), 4};
  auto make = [&](DegreeConstraint tag) {
    return SumProductIdentity(3, 0, {q.prod({q.v(a) + q.v(c), q.v(b), q.v(d)})}, {q.mono({a, b}), q.mono({c, d})},
                              {q.x(d), q.x(b)}, tag);
  };
  EXPECT_THROW(make(DegreeConstraint::strict), DegreeConstraintViolated);
  auto relaxed = make(DegreeConstraint::relaxed);
  EXPECT_EQ(check_property_instance(relaxed).verdict, Verdict::counterexample);
}

TEST(Property, IdentityMismatchDetected) {
  Ring r{Field::rationals(), 4};
  EXPECT_THROW(SumProductIdentity(3, 0, {r.prod({r.v(a) + r.v(c), r.v(b), r.v(d)})}, {r.mono({a, b}), r.mono({c, d})},
                                  {r.x(d), r.x(a)}, DegreeConstraint::relaxed),
               IdentityMismatch);
}

TEST(Cancel, Examples) {
  Ring r{Field::rationals(), 3};
  enum : std::size_t { x, y, z };
  SumProductIdentity one(3, 0, {r.prod({r.v(x), r.v(y), r.v(z)})}, {r.mono({x, y})}, {r.x(z)}, DegreeConstraint::none);
  auto c1 = cancel(one, x, 0);
  EXPECT_EQ(c1.d(), 2u);
  EXPECT_EQ(c1.products()[0], r.prod({r.v(y), r.v(z)}));
  EXPECT_EQ(c1.monomials()[0], r.mono({y}));
  EXPECT_EQ(c1.coeffs()[0], r.x(z));

  Ring q{Field::rationals(), 4};
  SumProductIdentity w(3, 0, {q.prod({q.v(a) + q.v(c), q.v(b), q.v(d)})}, {q.mono({a, b}), q.mono({c, d})},
                       {q.x(d), q.x(b)}, DegreeConstraint::relaxed);
  auto c2 = cancel(w, b, 0);
  EXPECT_EQ(c2.d(), 2u);
  EXPECT_EQ(c2.lhs(), (q.x(a) + q.x(c)) * q.x(d));
  EXPECT_EQ(c2.monomials()[0], q.mono({a}));
  EXPECT_EQ(c2.coeffs()[0], q.x(d));
  EXPECT_EQ(c2.monomials()[1], q.mono({c, d}));
  EXPECT_EQ(c2.coeffs()[1], q.one());

  EXPECT_THROW(cancel(w, a, 0), NotCancellable);
}

TEST(LinearFactor, Tags) {
  Ring r{Field::rationals(), 3};
  enum : std::size_t { x, y, z };
  auto t1 = linear_factor_conclusion(r.v(x), {{r.x(y), r.mono({x, z})}});
  EXPECT_EQ(t1, std::vector<FactorTag>{FactorTag::divides_monomial});

  Ring q{Field::rationals(), 4};
  auto t2 = linear_factor_conclusion(q.v(c) + q.v(d), {{q.x(c) + q.x(d), q.mono({a, b})}});
  EXPECT_EQ(t2, std::vector<FactorTag>{FactorTag::divides_coeff});

  // Degree sum 2 = d: the sharpness instance over GF(2).
  Ring g{Field::prime(2), 3};
  auto t3 = linear_factor_conclusion(g.v(a) + g.v(b), {{g.x(c), g.mono({a})}, {g.x(c), g.mono({b})}});
  EXPECT_EQ(t3[0], FactorTag::neither);
  EXPECT_FALSE(no_neither_expected({g.mono({a}), g.mono({b})}, 2, g.v(a) + g.v(b)));

  EXPECT_THROW(linear_factor_conclusion(q.v(a), {{q.x(c), q.mono({b})}}), InvalidArgument);
}

TEST(MatchProducts, Examples) {
  Ring r{Field::rationals(), 6};
  auto abc = r.prod({r.v(a), r.v(b), r.v(c)});
  auto def = r.prod({r.v(d), r.v(e), r.v(f)});
  auto s = match_products({abc, def}, {r.mono({d, e, f}), r.mono({a, b, c})});
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, (std::vector<std::size_t>{1, 0}));

  auto two = r.fld.from_int(2);
  ProductOfLinear scaled(r.fld, 6, r.fld.parse_element("1/2"), {r.v(a).scale(two), r.v(b), r.v(c)});
  auto s2 = match_products({scaled, def}, {r.mono({a, b, c}), r.mono({d, e, f})});
  ASSERT_TRUE(s2);
  EXPECT_EQ(*s2, (std::vector<std::size_t>{0, 1}));

  // d = 2: equal sums without a per-product match.
  Ring q{Field::rationals(), 4};
  auto p1 = q.prod({q.v(a) + q.v(c), q.v(b)});
  auto p2 = q.prod({q.v(c), q.v(d) - q.v(b)});
  EXPECT_FALSE(match_products({p1, p2}, {q.mono({a, b}), q.mono({c, d})}));

  EXPECT_THROW(match_products({abc, abc}, {r.mono({a, b, c}), r.mono({d, e, f})}), IdentityMismatch);
}

TEST(RankOneVanishing, SharpnessWhenDegreesTooSmall) {
  // deg x1 + deg x2 = 2 <= d: the construction f1 = -g x2, f2 = g x1 makes no f vanish,
  // so the statement is not applicable.
  Ring r{Field::rationals(), 5};
  std::vector<Monomial> xs = {r.mono({a}), r.mono({b}), r.mono({c, d, e})};
  auto L = r.x(c) * r.x(d) * r.x(e);
  EXPECT_FALSE(rank_one_vanishing(L, xs).applicable);
  std::vector<Monomial> ys = {r.mono({a}), r.mono({b, c, d}), r.mono({e})};
  std::sort(ys.begin(), ys.end(), [](const Monomial& p, const Monomial& q2) { return p.degree() < q2.degree(); });
  auto v = rank_one_vanishing(r.x(b) * r.x(c) * r.x(d), ys);
  EXPECT_FALSE(v.applicable);
}
