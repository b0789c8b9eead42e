#include <gtest/gtest.h>

#include "fanosplit/search.hpp"

using namespace fanosplit;

namespace {

SearchSpace space(std::uint32_t p, unsigned d, std::vector<unsigned> pattern, DegreeConstraint c = DegreeConstraint::strict,
                  std::size_t m = 1, std::size_t k = 0) {
  SearchSpace sp;
  sp.field = Field::prime(p);
  sp.d = d;
  sp.m = m;
  sp.k = k;
  sp.pattern = std::move(pattern);
  sp.constraint = c;
  return sp;
}

std::uint64_t count_products(std::uint32_t p, std::size_t n, unsigned d, std::size_t m = 1) {
  std::uint64_t c = 0;
  enumerate_products(Field::prime(p), n, d, m, [&](const std::vector<ProductOfLinear>&) { ++c; });
  return c;
}

}  // namespace

TEST(Enumerate, Counts) {
  EXPECT_EQ(count_products(2, 2, 1), 3u);
  EXPECT_EQ(count_products(2, 2, 2), 6u);
  EXPECT_EQ(count_products(3, 2, 1), 8u);
  EXPECT_EQ(count_products(2, 2, 2, 2), 21u);
  EXPECT_EQ(projective_forms(Field::prime(3), 3).size(), 13u);
  EXPECT_THROW(enumerate_products(Field::prime(2), 4, 3, 2, [](const auto&) {}, 1000), CeilingExceeded);
}

TEST(Enumerate, ProductsAreDistinct) {
  std::vector<MultiPoly> seen;
  enumerate_products(Field::prime(3), 2, 2, 1, [&](const std::vector<ProductOfLinear>& t) { seen.push_back(t[0].expand()); });
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (std::size_t j = i + 1; j < seen.size(); ++j) EXPECT_FALSE(seen[i] == seen[j]);
}

TEST(RankTwo, RecoversRandomSums) {
  for (std::uint32_t p : {2u, 3u}) {
    const Field f = Field::prime(p);
    const std::size_t n = 5;
    const auto forms = projective_forms(f, n);
    std::mt19937_64 rng(p);
    for (int t = 0; t < 30; ++t) {
      auto product = [&] {
        std::vector<LinearForm> fs;
        for (int j = 0; j < 3; ++j) fs.push_back(forms[rng() % forms.size()]);
        return ProductOfLinear(f, n, f.one(), fs);
      };
      const MultiPoly F = product().expand() + product().expand();
      if (F.is_zero()) continue;
      EXPECT_TRUE(passes_essential_filter(F, 2));
      const auto dec = rank_two_decomposition(F, forms);
      ASSERT_TRUE(dec.has_value());
      EXPECT_EQ((*dec)[0].expand() + (*dec)[1].expand(), F);
    }
  }
}

TEST(RankTwo, RejectsThreeDisjointProducts) {
  const Field f = Field::prime(2);
  const std::size_t n = 9;
  auto x = [&](std::size_t i) { return MultiPoly::variable(f, n, i); };
  const MultiPoly two = x(0) * x(1) * x(2) + x(3) * x(4) * x(5);
  const auto forms = projective_forms(f, n);
  EXPECT_TRUE(passes_essential_filter(two, 2));
  EXPECT_TRUE(rank_two_decomposition(two, forms).has_value());
  const MultiPoly three = two + x(6) * x(7) * x(8);
  EXPECT_FALSE(passes_essential_filter(three, 2));
  EXPECT_FALSE(rank_two_decomposition(three, forms).has_value());
}

TEST(Search, StrictFindsNothing) {
  for (auto pat : std::vector<std::vector<unsigned>>{{2, 3}, {3, 3}}) {
    const auto rep = hunt_counterexamples(space(2, 3, pat));
    EXPECT_EQ(rep.counterexamples, 0u);
    EXPECT_EQ(rep.replay_mismatches, 0u);
    EXPECT_EQ(rep.vanishing_violations, 0u);
    EXPECT_EQ(rep.linear_factor_violations, 0u);
    EXPECT_GT(rep.identities, 0u);
    EXPECT_GT(rep.linear_factor_checked, 0u);
    EXPECT_EQ(rep.label, "evidence over GF(2)");
  }
}

TEST(Search, RelaxedFindsBoundaryWitness) {
  const auto rep = hunt_counterexamples(space(2, 3, {2, 2}, DegreeConstraint::relaxed));
  EXPECT_GT(rep.counterexamples, 0u);
  EXPECT_GT(rep.boundary_witnesses, 0u);
  EXPECT_EQ(rep.replay_mismatches, 0u);
  ASSERT_FALSE(rep.witnesses.empty());
  for (const auto& w : rep.witnesses) EXPECT_EQ(check_property_instance(w).verdict, Verdict::counterexample);
}

TEST(Search, StrictRejectsRelaxedPattern) {
  EXPECT_THROW(hunt_counterexamples(space(2, 3, {2, 2})), DegreeConstraintViolated);
  auto sp = space(2, 3, {2, 3});
  sp.nvars = 4;
  EXPECT_THROW(hunt_counterexamples(sp), InvalidArgument);
}

TEST(Search, RoutesAgree) {
  struct Case {
    std::uint32_t p;
    unsigned d;
    std::vector<unsigned> pattern;
    DegreeConstraint c;
    std::size_t k;
  };
  const std::vector<Case> cases{{2, 3, {2, 2}, DegreeConstraint::relaxed, 0},
                                {3, 3, {2, 2}, DegreeConstraint::relaxed, 0},
                                {2, 3, {2, 3}, DegreeConstraint::strict, 0},
                                {2, 2, {1, 2, 2}, DegreeConstraint::relaxed, 0},
                                {3, 2, {1, 2, 2}, DegreeConstraint::relaxed, 0},
                                {2, 2, {1, 2, 2}, DegreeConstraint::relaxed, 1}};
  for (const auto& c : cases) {
    SCOPED_TRACE(testing::Message() << "p=" << c.p << " d=" << c.d << " k=" << c.k << " n=" << c.pattern.size());
    const auto sp = space(c.p, c.d, c.pattern, c.c, 1, c.k);
    const auto a = hunt_counterexamples(sp);
    const auto brute = hunt_products_brute_force(sp);
    EXPECT_EQ(a.space_size, brute.space_size);
    EXPECT_EQ(a.identities, brute.identities);
    EXPECT_EQ(a.counterexamples, brute.counterexamples);
    EXPECT_EQ(a.boundary_witnesses, brute.boundary_witnesses);
    EXPECT_EQ(a.vanishing_applicable, brute.vanishing_applicable);
    EXPECT_EQ(a.vanishing_violations, 0u);
    EXPECT_EQ(a.vanishing_violations, brute.vanishing_violations);
    EXPECT_EQ(a.replay_mismatches, 0u);
    if (c.k == 0 && c.pattern.size() == 2) {
      // With n = 2 a counterexample is F = f_1 x_1 + f_2 x_2 with both f_i nonzero, F a product.
      const auto b = hunt_counterexamples_by_coefficients(sp);
      EXPECT_EQ(b.counterexamples, a.counterexamples);
    }
  }
}

TEST(Search, JobsDoNotChangeResults) {
  auto sp = space(3, 3, {2, 2}, DegreeConstraint::relaxed);
  const auto one = hunt_counterexamples(sp);
  sp.jobs = 3;
  const auto three = hunt_counterexamples(sp);
  EXPECT_EQ(one.counterexamples, three.counterexamples);
  EXPECT_EQ(one.identities, three.identities);
  ASSERT_EQ(one.witnesses.size(), three.witnesses.size());
  for (std::size_t i = 0; i < one.witnesses.size(); ++i) EXPECT_EQ(one.witnesses[i].lhs(), three.witnesses[i].lhs());
}

TEST(Search, RandomizedIsDeterministic) {
  auto sp = space(2, 3, {2, 2}, DegreeConstraint::relaxed);
  sp.mode = SearchMode::randomized;
  sp.trials = 20000;
  sp.seed = 7;
  const auto a = hunt_counterexamples(sp);
  sp.jobs = 2;
  const auto b = hunt_counterexamples(sp);
  EXPECT_EQ(a.examined, 20000u);
  EXPECT_EQ(a.counterexamples, b.counterexamples);
  EXPECT_GT(a.counterexamples, 0u);
  EXPECT_EQ(a.replay_mismatches, 0u);
}

TEST(Search, TwoProductsStrict) {
  for (auto [d, pat] : std::vector<std::pair<unsigned, std::vector<unsigned>>>{{3, {2, 3, 3}}, {3, {3, 3, 3}}, {4, {3, 3, 4}}}) {
    const auto rep = hunt_counterexamples(space(2, d, pat, DegreeConstraint::strict, 2));
    EXPECT_EQ(rep.route, "coefficients");
    EXPECT_EQ(rep.counterexamples, 0u);
    EXPECT_EQ(rep.replay_mismatches, 0u);
    EXPECT_GT(rep.examined, 0u);
    EXPECT_EQ(rep.examined, rep.space_size);
  }
}

TEST(Search, TwoProductsRelaxedFindsCounterexamples) {
  auto sp = space(2, 2, {1, 2, 2}, DegreeConstraint::relaxed, 2);
  const auto rep = hunt_counterexamples(sp);
  EXPECT_GT(rep.counterexamples, 0u);
  EXPECT_EQ(rep.replay_mismatches, 0u);
  for (const auto& w : rep.witnesses) {
    EXPECT_EQ(w.m(), 2u);
    EXPECT_EQ(check_property_instance(w).verdict, Verdict::counterexample);
  }
  sp.jobs = 2;
  EXPECT_EQ(hunt_counterexamples(sp).counterexamples, rep.counterexamples);
}

TEST(Search, GenericFilterMatchesBitFilter) {
  // GF(3) goes through the generic coefficient path; compare with the product route.
  const auto sp = space(3, 3, {2, 2}, DegreeConstraint::relaxed);
  const auto b = hunt_counterexamples_by_coefficients(sp);
  const auto a = hunt_counterexamples(sp);
  EXPECT_EQ(b.counterexamples, a.counterexamples);
}

TEST(SplitHunt, AboveThresholdNoViolations) {
  const auto rep = hunt_split_violations(4, 3, 6, Field::prime(101), 40, 1);
  EXPECT_EQ(rep.one_split_violations, 0u);
  EXPECT_EQ(rep.two_split_violations, 0u);
  EXPECT_EQ(rep.label, "evidence over GF(101)");
}

TEST(SplitHunt, InjectedWitnessesAreCounted) {
  const auto rep = hunt_split_violations(4, 3, 5, Field::prime(101), 30, 2, 2, 3);
  EXPECT_EQ(rep.injected, 10u);
  EXPECT_GE(rep.non_one_split, 10u);
  EXPECT_EQ(rep.non_one_split, rep.witness_family);
  EXPECT_EQ(rep.non_two_split, 0u);
  EXPECT_EQ(rep.one_split_violations, 0u);
  EXPECT_EQ(rep.audit_inconsistent, 0u);
  const auto again = hunt_split_violations(4, 3, 5, Field::prime(101), 30, 2, 1, 3);
  EXPECT_EQ(again.non_one_split, rep.non_one_split);
  EXPECT_EQ(again.rejections, rep.rejections);
}

TEST(SplitHunt, OddRows) {
  const auto rep = hunt_split_violations(3, 3, 4, Field::prime(101), 20, 3);
  EXPECT_EQ(rep.one_split_violations, 0u);
}
