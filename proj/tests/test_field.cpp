#include <gtest/gtest.h>

#include <random>

#include "fanosplit/field.hpp"
#include "fanosplit/linalg.hpp"

using namespace fanosplit;

TEST(Field, PrimeArithmetic) {
  const Field f5 = Field::prime(5);
  EXPECT_EQ(f5.from_int(3) + f5.from_int(4), f5.from_int(2));
  const Field f2 = Field::prime(2);
  EXPECT_TRUE((f2.one() + f2.one()).is_zero());
  const Field f7 = Field::prime(7);
  EXPECT_EQ(f7.from_int(3).inv(), f7.from_int(5));
  EXPECT_EQ(f2.one().inv(), f2.one());
  EXPECT_EQ(f7.from_int(-1).residue(), 6u);
}

TEST(Field, RationalArithmetic) {
  const Field q = Field::rationals();
  EXPECT_EQ((q.parse_element("1/2") + q.parse_element("1/3")).to_string(), "5/6");
  EXPECT_EQ(q.parse_element("2/3").inv().to_string(), "3/2");
  EXPECT_EQ(q.parse_element("4/-6").to_string(), "-2/3");
  EXPECT_EQ(q.parse_element("6/3").to_string(), "2");
}

TEST(Field, Errors) {
  EXPECT_THROW(Field::prime(4), InvalidField);
  EXPECT_THROW(Field::prime(1), InvalidField);
  EXPECT_THROW(Field::prime(4294967311ull), InvalidField);
  EXPECT_NO_THROW(Field::prime(2147483647ull));
  EXPECT_THROW(Field::prime(5).zero().inv(), DivisionByZero);
  EXPECT_THROW(Field::rationals().zero().inv(), DivisionByZero);
  EXPECT_THROW(Field::prime(5).one() + Field::prime(7).one(), ContextMismatch);
  EXPECT_THROW(Field::prime(5).one() * Field::rationals().one(), ContextMismatch);
  EXPECT_THROW(Field::rationals().parse_element("1/0"), DivisionByZero);
  EXPECT_THROW(Field::rationals().parse_element("abc"), ParseError);
  EXPECT_THROW(Field::parse("q=x"), ParseError);
}

TEST(Field, Tokens) {
  EXPECT_EQ(Field::parse("q=5"), Field::prime(5));
  EXPECT_EQ(Field::parse("rational"), Field::rationals());
  EXPECT_EQ(Field::prime(101).token(), "q=101");
  EXPECT_EQ(Field::parse(Field::rationals().token()), Field::rationals());
}

TEST(Field, RationalToPrimeReduction) {
  const Field f7 = Field::prime(7);
  EXPECT_EQ(f7.parse_element("1/2"), f7.from_int(4));
  EXPECT_EQ(f7.parse_element("-3"), f7.from_int(4));
  EXPECT_THROW(f7.parse_element("1/7"), DivisionByZero);
}

namespace {

FieldElement random_element(const Field& f, std::mt19937_64& rng, bool nonzero = false) {
  while (true) {
    FieldElement x = f.is_prime_field()
                         ? f.residue(rng() % f.characteristic())
                         : f.from_rational(Rational(static_cast<long>(rng() % 41) - 20,
                                                    static_cast<long>(rng() % 9) + 1));
    if (!nonzero || !x.is_zero()) return x;
  }
}

}  // namespace

TEST(FieldProperty, AxiomsAndRoundTrip) {
  std::mt19937_64 rng(17);
  for (const Field& f : {Field::prime(2), Field::prime(3), Field::prime(101), Field::prime(2147483647),
                         Field::rationals()}) {
    for (int trial = 0; trial < 500; ++trial) {
      const auto a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a - a, f.zero());
      EXPECT_EQ(a + (-a), f.zero());
      const auto n = random_element(f, rng, true);
      EXPECT_EQ(n * n.inv(), f.one());
      EXPECT_EQ((a / n) * n, a);
      EXPECT_EQ(f.parse_element(a.to_string()), a);
    }
  }
}

TEST(Linalg, RankKernelSolve) {
  const Field q = Field::rationals();
  auto v = [&](std::initializer_list<int> xs) {
    Vector r;
    for (int x : xs) r.push_back(q.from_int(x));
    return r;
  };
  Matrix m = Matrix::from_rows(q, {v({1, 2, 3}), v({2, 4, 6}), v({1, 0, 1})}, 3);
  EXPECT_EQ(m.rank(), 2u);
  auto ker = m.kernel();
  ASSERT_EQ(ker.size(), 1u);
  for (std::size_t i = 0; i < 3; ++i) {
    FieldElement s = q.zero();
    for (std::size_t j = 0; j < 3; ++j) s += m(i, j) * ker[0][j];
    EXPECT_TRUE(s.is_zero());
  }
  auto x = m.solve(v({6, 12, 2}));
  ASSERT_TRUE(x.has_value());
  EXPECT_FALSE(m.solve(v({1, 0, 0})).has_value());
  const Field f2 = Field::prime(2);
  Matrix g = Matrix::from_rows(f2, {{f2.one(), f2.one()}, {f2.one(), f2.one()}}, 2);
  EXPECT_EQ(g.rank(), 1u);
}
