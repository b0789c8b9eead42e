#include <gtest/gtest.h>

#include <random>

#include "fanosplit/plane.hpp"

using namespace fanosplit;

namespace {

using Subsets = std::vector<std::vector<std::size_t>>;

Vector unit(Field f, std::size_t n, std::size_t a, std::int64_t s = 1) {
  Vector v(n, f.zero());
  v[a] = f.from_int(s);
  return v;
}

KPlane two_row_member(Field f) {
  HypersurfaceParams p(2, 3);
  return plane_from_forms(p, f, {unit(f, 3, 0), unit(f, 3, 1), unit(f, 3, 2), unit(f, 3, 0, -1), unit(f, 3, 1), unit(f, 3, 2)});
}

std::size_t sum(const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); }

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Plane, RejectsRankDeficientMatrix) {
  const Field f = Field::prime(7);
  Matrix B(f, 2, 6);
  B(0, 0) = f.one();
  B(1, 0) = f.from_int(2);
  EXPECT_THROW(KPlane(HypersurfaceParams(2, 3), B), InvalidArgument);
  EXPECT_THROW(KPlane(HypersurfaceParams(2, 3), Matrix(f, 1, 5)), ArityMismatch);
  EXPECT_THROW(HypersurfaceParams(1, 3), InvalidArgument);
}

TEST(Plane, MembershipExamples) {
  for (Field f : {Field::prime(7), Field::rationals()}) {
    const KPlane L = two_row_member(f);
    EXPECT_EQ(L.k(), 2u);
    EXPECT_TRUE(membership(L));
    EXPECT_EQ(splitting_subsets(L, 2), (Subsets{{0, 1}}));
    EXPECT_FALSE(is_one_split(L));
    EXPECT_EQ(min_splitting(L), 2u);
  }
  // Flip a sign: no longer a member.
  const Field f = Field::prime(7);
  HypersurfaceParams p(2, 3);
  const KPlane bad = plane_from_forms(p, f, {unit(f, 3, 0), unit(f, 3, 1), unit(f, 3, 2), unit(f, 3, 0), unit(f, 3, 1), unit(f, 3, 2)});
  EXPECT_FALSE(membership(bad));
  EXPECT_THROW(splitting_subsets(bad, 2), NotMember);
  EXPECT_THROW(lambda_profile(bad), NotMember);
}

TEST(Plane, ZeroFactorRowsAreOneSplit) {
  const Field f = Field::prime(5);
  HypersurfaceParams p(3, 3);
  // Every row has a zero factor.
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < 3; ++i) {
    cols.push_back(Vector(6, f.zero()));
    cols.push_back(unit(f, 6, 2 * i));
    cols.push_back(unit(f, 6, 2 * i + 1));
  }
  const KPlane L = plane_from_forms(p, f, cols);
  EXPECT_TRUE(membership(L));
  EXPECT_TRUE(is_one_split(L));
  const auto subs = splitting_subsets(L, 1);
  EXPECT_EQ(subs, (Subsets{{0}, {1}, {2}}));
  EXPECT_THROW(lambda_profile(L), OneSplitDetected);
  try {
    lambda_profile(L);
  } catch (const OneSplitDetected& e) {
    EXPECT_EQ(e.row(), 0u);
  }

  // y11 = 0, remaining rows cancel as a mirrored pair.
  std::vector<Vector> c2{Vector(5, f.zero()), unit(f, 5, 3),     unit(f, 5, 4),
                         unit(f, 5, 0),       unit(f, 5, 1),     unit(f, 5, 2),
                         unit(f, 5, 0, -1),   unit(f, 5, 1),     unit(f, 5, 2)};
  const KPlane L2 = plane_from_forms(p, f, c2);
  EXPECT_TRUE(membership(L2));
  EXPECT_EQ(splitting_subsets(L2, 3), (Subsets{{0}, {0, 1, 2}, {1, 2}}));
  EXPECT_EQ(min_splitting(L2), 1u);
}

TEST(Plane, SharpWitnessEven) {
  const KPlane L = sharp_witness(4, 3);
  EXPECT_EQ(L.k(), 5u);
  EXPECT_TRUE(membership(L));
  EXPECT_FALSE(is_one_split(L));
  EXPECT_EQ(splitting_subsets(L, 2), (Subsets{{0, 2}, {1, 3}}));
  EXPECT_EQ(min_splitting(L), 2u);
  const auto prof = lambda_profile(L);
  EXPECT_EQ(prof.lambdas, (std::vector<std::size_t>{3, 3, 0, 0}));
  EXPECT_EQ(prof.ordering, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(Plane, SharpWitnessOdd) {
  const KPlane L = sharp_witness(5, 3);
  EXPECT_EQ(L.k(), 6u);
  EXPECT_TRUE(membership(L));
  EXPECT_FALSE(is_one_split(L));
  EXPECT_GE(min_splitting(L), 2u);
  const auto prof = lambda_profile(L);
  EXPECT_EQ(prof.lambdas, (std::vector<std::size_t>{3, 3, 1, 0, 0}));
  EXPECT_EQ(prof.ordering, (std::vector<std::size_t>{0, 1, 3, 2, 4}));
}

TEST(Plane, SharpWitnessSmall) {
  const KPlane L = sharp_witness(2, 3);
  EXPECT_EQ(L.k(), 2u);
  EXPECT_TRUE(membership(L));
  EXPECT_EQ(min_splitting(L), 2u);
  EXPECT_THROW(sharp_witness(4, 2), InvalidArgument);
  EXPECT_THROW(sharp_witness(1, 3), InvalidArgument);
}

TEST(Plane, SharpWitnessFamily) {
  for (Field f : {Field::prime(2), Field::prime(3), Field::prime(7), Field::rationals()}) {
    for (std::size_t d = 3; d <= 5; ++d) {
      for (std::size_t r = 2; r <= 6; ++r) {
        SCOPED_TRACE(std::to_string(r) + "," + std::to_string(d) + " " + f.token());
        const KPlane L = sharp_witness(r, d, f);
        EXPECT_TRUE(membership(L));
        EXPECT_FALSE(is_one_split(L));
        const std::size_t ms = min_splitting(L);
        if (r % 2 == 0) {
          EXPECT_EQ(ms, 2u);
          EXPECT_EQ(L.k(), r / 2 * d - 1);
        } else {
          EXPECT_GE(ms, 2u);
          EXPECT_EQ(L.k(), r / 2 * d);
        }
        EXPECT_EQ(L.k() + 1, one_split_threshold(r, d));
        const auto prof = lambda_profile(L);
        EXPECT_EQ(sum(prof.lambdas), L.k() + 1);
        EXPECT_TRUE(std::is_sorted(prof.lambdas.rbegin(), prof.lambdas.rend()));
      }
    }
  }
}

TEST(Plane, ProfileBasisCertifies) {
  const KPlane L = sharp_witness(5, 4, Field::prime(11));
  const auto prof = lambda_profile(L);
  std::vector<Vector> all;
  for (std::size_t s = 0; s < prof.basis.size(); ++s) {
    EXPECT_EQ(prof.basis[s].size(), prof.lambdas[s]);
    for (const auto& z : prof.basis[s]) {
      bool is_factor = false;
      for (std::size_t j = 0; j < L.d(); ++j) is_factor |= z == L.y(prof.ordering[s], j);
      EXPECT_TRUE(is_factor);
      all.push_back(z.coeffs());
    }
  }
  EXPECT_EQ(span_dim(L.field(), all, L.k() + 1), L.k() + 1);
}

TEST(Plane, AuditExamples) {
  const KPlane L = sharp_witness(4, 3);
  const auto rep = profile_audit(L, 0);
  EXPECT_TRUE(rep.flags.lambda_zero);
  EXPECT_FALSE(rep.flags.parity_case);
  EXPECT_TRUE(rep.flags.k_bound);
  EXPECT_EQ(rep.pair_sum, 6u);
  EXPECT_TRUE(rep.conclusion_holds);
  EXPECT_EQ(rep.outcome, AuditOutcome::consistent);
  EXPECT_THROW(profile_audit(L, 0, AuditFlags{true, true, true}), HypothesisMismatch);
  EXPECT_NO_THROW(profile_audit(L, 0, AuditFlags{true, false, true}));
  EXPECT_THROW(profile_audit(L, 3), InvalidArgument);

  // Profile (d,d,0,0) with d even satisfies every hypothesis and the conclusion.
  const KPlane L4 = sharp_witness(4, 4);
  const auto r4 = profile_audit(L4, 0);
  EXPECT_TRUE(r4.hypotheses_hold);
  EXPECT_EQ(r4.pair_sum, 8u);
  EXPECT_EQ(r4.outcome, AuditOutcome::consistent);

  // A hand-made profile violating the conclusion is flagged.
  LambdaProfile fake{{0, 1, 2, 3}, {3, 2, 1, 0}, {}};
  const auto bad = audit_profile(fake, 4, 4, 7, 0);
  EXPECT_TRUE(bad.hypotheses_hold);
  EXPECT_EQ(bad.outcome, AuditOutcome::inconsistent_with_lemma);
}

TEST(Plane, ProfileInvariances) {
  std::mt19937_64 rng(11);
  const Field f = Field::prime(13);
  for (std::size_t trial = 0; trial < 60; ++trial) {
    const std::size_t r = 3 + trial % 3, d = 3 + trial % 2;
    MemberPlaneSampler s(r, d, r / 2 * d - 1, f, rng());
    auto L = s.sample();
    ASSERT_TRUE(L);
    if (is_one_split(*L)) continue;
    const auto base = lambda_profile(*L);
    EXPECT_EQ(sum(base.lambdas), L->k() + 1);
    // Tie-break invariance of the multiset.
    EXPECT_EQ(sorted(lambda_profile(*L, TieBreak::largest_index).lambdas), sorted(base.lambdas));
    // Row scaling of B and permutation of factors inside each row.
    Matrix B = L->matrix();
    for (std::size_t a = 0; a < B.rows(); ++a) {
      const FieldElement t = f.residue(1 + rng() % 12);
      for (std::size_t c = 0; c < B.cols(); ++c) B(a, c) *= t;
    }
    Matrix P(f, B.rows(), B.cols());
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<std::size_t> perm(d);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t a = 0; a < B.rows(); ++a) P(a, i * d + j) = B(a, i * d + perm[j]);
    }
    const KPlane L2(L->params(), P);
    EXPECT_TRUE(membership(L2));
    EXPECT_EQ(lambda_profile(L2).lambdas, base.lambdas);
  }
}

TEST(Plane, RandomOneSplitPlanesHaveSingleton) {
  std::mt19937_64 rng(5);
  const Field f = Field::prime(31);
  for (std::size_t trial = 0; trial < 50; ++trial) {
    const std::size_t r = 2 + trial % 4, d = 3;
    const std::size_t n = 2 + rng() % (r * (d - 1) - 1);
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t zero_at = rng() % d;
      for (std::size_t j = 0; j < d; ++j) {
        Vector v(n, f.zero());
        if (j != zero_at)
          for (auto& x : v) x = f.residue(rng() % 31);
        cols.push_back(v);
      }
    }
    Matrix B(f, n, r * d);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t a = 0; a < n; ++a) B(a, c) = cols[c][a];
    if (B.rank() != n) continue;
    const KPlane L(HypersurfaceParams(r, d), B);
    EXPECT_TRUE(membership(L));
    const auto subs = splitting_subsets(L, 1);
    EXPECT_EQ(subs.size(), r);
    EXPECT_EQ(min_splitting(L), 1u);
  }
}

TEST(Plane, SamplerProducesMembers) {
  MemberPlaneSampler s(4, 3, 5, Field::prime(101), 7);
  EXPECT_FALSE(s.shapes().empty());
  std::size_t non_one = 0;
  for (int t = 0; t < 40; ++t) {
    auto L = s.sample();
    ASSERT_TRUE(L);
    EXPECT_EQ(L->k(), 5u);
    EXPECT_TRUE(membership(*L));
    EXPECT_TRUE(is_two_split(*L));
    if (!is_one_split(*L)) ++non_one;
  }
  EXPECT_GT(non_one, 0u);
  // Above every feasible structure: no shapes at all.
  MemberPlaneSampler none(2, 3, 6, Field::prime(101), 7);
  EXPECT_TRUE(none.shapes().empty());
  EXPECT_FALSE(none.sample());
}

TEST(Plane, ProfileMultisetCanDependOnTieBreakBelowBound) {
  // Below the k bound of the reduction argument the greedy multiset is not an invariant:
  // two maximal first choices can lead to (3,2,1,0,0) and (3,3,0,0,0).
  std::mt19937_64 rng(4);
  const Field f = Field::prime(13);
  bool found = false;
  for (int t = 0; t < 2000 && !found; ++t) {
    MemberPlaneSampler s(5, 3, 5, f, rng());
    auto L = s.sample(64);
    if (!L || is_one_split(*L)) continue;
    auto a = lambda_profile(*L).lambdas, b = lambda_profile(*L, TieBreak::largest_index).lambdas;
    EXPECT_EQ(sum(a), 6u);
    EXPECT_EQ(sum(b), 6u);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    found = a != b;
  }
  EXPECT_TRUE(found);
}
