#include <gtest/gtest.h>

#include <random>

#include "fanosplit/poly.hpp"

using namespace fanosplit;

namespace {

struct Ring {
  Field f;
  std::size_t n;
  MultiPoly x(std::size_t i) const { return MultiPoly::variable(f, n, i); }
  MultiPoly c(std::int64_t v) const { return MultiPoly::constant(f, n, f.from_int(v)); }
  LinearForm lin(std::initializer_list<std::int64_t> cs) const {
    Vector v;
    for (auto c : cs) v.push_back(f.from_int(c));
    return LinearForm(v);
  }
};

ProductOfLinear random_product(const Field& f, std::size_t n, std::size_t d, std::mt19937_64& rng) {
  std::vector<LinearForm> ls;
  while (ls.size() < d) {
    Vector c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(f.residue(rng() % f.characteristic()));
    LinearForm l(c);
    if (!l.is_zero()) ls.push_back(l);
  }
  FieldElement s = f.residue(1 + rng() % (f.characteristic() - 1));
  return ProductOfLinear(f, n, s, ls);
}

}  // namespace

TEST(MultiPoly, Arithmetic) {
  Ring q{Field::rationals(), 2};
  auto x = q.x(0), y = q.x(1);
  EXPECT_EQ((x + y) * (x - y), x * x - y * y);
  Ring g{Field::prime(2), 2};
  EXPECT_EQ((g.x(0) + g.x(1)).pow(2), g.x(0).pow(2) + g.x(1).pow(2));
  auto p = x * y + q.c(3);
  EXPECT_TRUE((p + (-p)).is_zero());
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_THROW(x + MultiPoly::variable(q.f, 3, 0), ArityMismatch);
  EXPECT_THROW(x + g.x(0), ContextMismatch);
}

TEST(MultiPoly, Homogeneity) {
  Ring q{Field::rationals(), 3};
  auto a = q.x(0) * q.x(1) + q.x(2).pow(2);
  EXPECT_TRUE(a.is_homogeneous());
  EXPECT_TRUE((a * (q.x(0) + q.x(1))).is_homogeneous());
  EXPECT_FALSE((a + q.x(0)).is_homogeneous());
}

TEST(MultiPoly, DivideByLinear) {
  Ring q{Field::rationals(), 3};
  auto x = q.x(0), y = q.x(1), z = q.x(2);
  auto r = divide_by_linear(x * x - y * y, q.lin({1, 1, 0}));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, x - y);
  EXPECT_FALSE(divide_by_linear(x * x + q.c(1), q.lin({1, 0, 0})));
  auto r2 = divide_by_linear(x * y * z, q.lin({0, 1, 0}));
  ASSERT_TRUE(r2);
  EXPECT_EQ(*r2, x * z);
  EXPECT_THROW(divide_by_linear(x, q.lin({0, 0, 0})), DivisionByZero);
}

TEST(MultiPoly, FactorProductExamples) {
  Ring q{Field::rationals(), 2};
  auto x = q.x(0), y = q.x(1);
  auto r = factor_product(x * x - y * y);
  ASSERT_EQ(r.status, SplitStatus::split);
  EXPECT_EQ(*r.product, ProductOfLinear({q.lin({1, 1}), q.lin({1, -1})}));
  EXPECT_TRUE(r.product->scalar().is_one());
  EXPECT_EQ(factor_product(x * x + y * y).status, SplitStatus::not_split);

  Ring g{Field::prime(2), 2};
  auto r2 = factor_product(g.x(0).pow(2) + g.x(1).pow(2));
  ASSERT_EQ(r2.status, SplitStatus::split);
  EXPECT_EQ(r2.product->factors(), (std::vector<LinearForm>{g.lin({1, 1}), g.lin({1, 1})}));

  EXPECT_THROW(factor_product(x * x + y), NotHomogeneous);
  EXPECT_THROW(factor_product(MultiPoly::zero(q.f, 2)), InvalidArgument);
}

TEST(MultiPoly, FactorProductRationalScalars) {
  Ring q{Field::rationals(), 3};
  auto p = (q.x(0).scale(q.f.from_int(2)) + q.x(2)) * (q.x(1) - q.x(2).scale(q.f.parse_element("1/3"))) * q.x(2);
  auto r = factor_product(p);
  ASSERT_EQ(r.status, SplitStatus::split);
  EXPECT_EQ(r.product->expand(), p);
  EXPECT_EQ(r.product->scalar(), q.f.from_int(2));
}

TEST(MultiPoly, Substitute) {
  Ring q{Field::rationals(), 2};
  auto x = q.x(0), y = q.x(1);
  EXPECT_EQ((x + y).substitute({{0, MultiPoly::zero(q.f, 2)}}), y);
  EXPECT_EQ((x * y).substitute({{1, x}}), x * x);
  // Two rows cancelling after y2j := -y1j for one j.
  Ring r{Field::rationals(), 6};
  auto y1 = r.x(0) * r.x(1) * r.x(2);
  auto y2 = r.x(3) * r.x(4) * r.x(5);
  auto s = (y1 + y2).substitute({{3, -r.x(0)}, {4, r.x(1)}, {5, r.x(2)}});
  EXPECT_TRUE(s.is_zero());
}

TEST(MultiPoly, CanonicalProduct) {
  Ring q{Field::rationals(), 2};
  ProductOfLinear a(q.f, 2, q.f.one(), {q.lin({2, 0}), q.lin({0, 3})});
  ProductOfLinear b(q.f, 2, q.f.from_int(6), {q.lin({0, 1}), q.lin({1, 0})});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.expand(), b.expand());
  EXPECT_THROW(ProductOfLinear(q.f, 2, q.f.one(), {q.lin({0, 0})}), InvalidArgument);
}

TEST(MultiPolyProperty, FactorRoundTrip) {
  std::mt19937_64 rng(5);
  for (const Field& f : {Field::prime(2), Field::prime(3)}) {
    for (int t = 0; t < 600; ++t) {
      const std::size_t n = 1 + rng() % 5, d = 1 + rng() % 5;
      auto p = random_product(f, n, d, rng);
      auto r = factor_product(p.expand());
      ASSERT_EQ(r.status, SplitStatus::split);
      EXPECT_EQ(*r.product, p);
    }
  }
}

TEST(MultiPolyProperty, DivideRoundTrip) {
  std::mt19937_64 rng(6);
  const Field f = Field::prime(3);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 4;
    auto l = random_product(f, n, 1, rng).factors()[0];
    std::vector<Term> ts;
    for (int k = 0; k < 4; ++k) {
      Exponent e(n);
      for (auto& a : e) a = static_cast<std::uint16_t>(rng() % 3);
      ts.push_back({e, f.residue(rng() % 3)});
    }
    auto q = MultiPoly::from_terms(f, n, ts);
    auto r = divide_by_linear(l.to_poly() * q, l);
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, q);
  }
}

TEST(MultiPolyProperty, NonProductsAreRejectedOverGF2) {
  // x*y + z*w is irreducible of degree 2 in four variables.
  Ring g{Field::prime(2), 4};
  EXPECT_EQ(factor_product(g.x(0) * g.x(1) + g.x(2) * g.x(3)).status, SplitStatus::not_split);
  EXPECT_EQ(factor_product(g.x(0) * g.x(1) * g.x(2) + g.x(3).pow(3)).status, SplitStatus::not_split);
}
