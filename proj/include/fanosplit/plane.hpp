#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fanosplit/error.hpp"
#include "fanosplit/linalg.hpp"
#include "fanosplit/poly.hpp"

namespace fanosplit {

/// X_{r,d} = V(sum_i prod_j x_ij) in P^{rd-1}.
struct HypersurfaceParams {
  std::size_t r;
  std::size_t d;

  HypersurfaceParams(std::size_t r_, std::size_t d_) : r(r_), d(d_) {
    if (r < 2) throw InvalidArgument("r must be at least 2");
    if (d < 2) throw InvalidArgument("d must be at least 2");
  }
  std::size_t columns() const noexcept { return r * d; }
  std::size_t column(std::size_t i, std::size_t j) const noexcept { return i * d + j; }
};

/// Row span of a full-rank (k+1) x rd matrix B; column ij carries the coordinate x_ij.
class KPlane {
 public:
  KPlane(HypersurfaceParams params, Matrix B) : params_(params), B_(std::move(B)) {
    if (B_.cols() != params_.columns())
      throw ArityMismatch("plane matrix needs r*d = " + std::to_string(params_.columns()) + " columns");
    if (B_.rows() == 0) throw InvalidArgument("plane matrix has no rows");
    if (B_.rank() != B_.rows()) throw InvalidArgument("plane matrix is not of full row rank");
    for (std::size_t i = 0; i < params_.r; ++i) {
      for (std::size_t j = 0; j < params_.d; ++j) {
        Vector c;
        for (std::size_t a = 0; a < B_.rows(); ++a) c.push_back(B_(a, params_.column(i, j)));
        y_.emplace_back(std::move(c));
      }
    }
  }

  const HypersurfaceParams& params() const noexcept { return params_; }
  const Matrix& matrix() const noexcept { return B_; }
  const Field& field() const noexcept { return B_.field(); }
  std::size_t k() const noexcept { return B_.rows() - 1; }
  std::size_t r() const noexcept { return params_.r; }
  std::size_t d() const noexcept { return params_.d; }

  /// y_ij as a linear form in z_0..z_k (0-based i, j).
  const LinearForm& y(std::size_t i, std::size_t j) const { return y_.at(params_.column(i, j)); }

  /// Product of the forms of row i.
  MultiPoly row_product(std::size_t i) const {
    MultiPoly p = MultiPoly::constant(field(), k() + 1, field().one());
    for (std::size_t j = 0; j < params_.d; ++j) p *= y(i, j).to_poly();
    return p;
  }

  /// Whether some factor of row i is the zero form.
  bool row_vanishes(std::size_t i) const {
    for (std::size_t j = 0; j < params_.d; ++j)
      if (y(i, j).is_zero()) return true;
    return false;
  }

 private:
  HypersurfaceParams params_;
  Matrix B_;
  std::vector<LinearForm> y_;
};

/// L lies in X_{r,d} iff the row products sum to zero.
inline bool membership(const KPlane& L) {
  MultiPoly s = MultiPoly::zero(L.field(), L.k() + 1);
  for (std::size_t i = 0; i < L.r(); ++i)
    if (!L.row_vanishes(i)) s += L.row_product(i);
  return s.is_zero();
}

/// Index subsets S (0-based, |S| <= lambda_max) whose row products sum to zero,
/// in lexicographic order of the sorted index lists, shorter prefixes first.
inline std::vector<std::vector<std::size_t>> splitting_subsets(const KPlane& L, std::size_t lambda_max) {
  if (!membership(L)) throw NotMember("plane is not contained in X_{r,d}");
  const std::size_t r = L.r();
  std::vector<MultiPoly> ys;
  for (std::size_t i = 0; i < r; ++i)
    ys.push_back(L.row_vanishes(i) ? MultiPoly::zero(L.field(), L.k() + 1) : L.row_product(i));
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start, const MultiPoly& sum) -> void {
    for (std::size_t i = start; i < r; ++i) {
      cur.push_back(i);
      MultiPoly s = sum + ys[i];
      if (s.is_zero()) out.push_back(cur);
      if (cur.size() < lambda_max) self(self, i + 1, s);
      cur.pop_back();
    }
  };
  rec(rec, 0, MultiPoly::zero(L.field(), L.k() + 1));
  return out;
}

/// Size of the smallest splitting subset.
inline std::size_t min_splitting(const KPlane& L) {
  if (!membership(L)) throw NotMember("plane is not contained in X_{r,d}");
  for (std::size_t i = 0; i < L.r(); ++i)
    if (L.row_vanishes(i)) return 1;
  for (std::size_t lam = 2; lam <= L.r(); ++lam) {
    for (const auto& s : splitting_subsets(L, lam))
      if (s.size() == lam) return lam;
  }
  return L.r();
}

inline bool is_one_split(const KPlane& L) {
  for (std::size_t i = 0; i < L.r(); ++i)
    if (L.row_vanishes(i)) return true;
  return false;
}

inline bool is_two_split(const KPlane& L) { return is_one_split(L) || !splitting_subsets(L, 2).empty(); }

struct LambdaProfile {
  std::vector<std::size_t> ordering;            // 0-based row indices in greedy order
  std::vector<std::size_t> lambdas;             // lambda_1 >= ... >= lambda_r
  std::vector<std::vector<LinearForm>> basis;   // z_ij, grouped by greedy step
};

enum class TieBreak : std::uint8_t { smallest_index, largest_index };

/// Greedy reduction: at each step pick the row whose factors enlarge the span the most,
/// ties to the smallest row index; the new basis forms are the row's factors, in factor
/// order, that extend independence.
inline LambdaProfile lambda_profile(const KPlane& L, TieBreak tie = TieBreak::smallest_index) {
  if (!membership(L)) throw NotMember("plane is not contained in X_{r,d}");
  for (std::size_t i = 0; i < L.r(); ++i)
    if (L.row_vanishes(i)) throw OneSplitDetected(i);
  const Field f = L.field();
  const std::size_t n = L.k() + 1;
  std::vector<Vector> span;
  std::vector<bool> used(L.r(), false);
  LambdaProfile prof;
  auto rank_with = [&](std::size_t i) {
    std::vector<Vector> rows = span;
    for (std::size_t j = 0; j < L.d(); ++j) rows.push_back(L.y(i, j).coeffs());
    return span_dim(f, rows, n);
  };
  std::size_t current = 0;
  for (std::size_t step = 0; step < L.r(); ++step) {
    std::size_t best = L.r(), best_rank = 0;
    for (std::size_t i = 0; i < L.r(); ++i) {
      if (used[i]) continue;
      const std::size_t rk = rank_with(i);
      if (best == L.r() || rk > best_rank || (rk == best_rank && tie == TieBreak::largest_index)) {
        best = i;
        best_rank = rk;
      }
    }
    used[best] = true;
    prof.ordering.push_back(best);
    prof.lambdas.push_back(best_rank - current);
    std::vector<LinearForm> zs;
    for (std::size_t j = 0; j < L.d() && span.size() < best_rank; ++j) {
      std::vector<Vector> trial = span;
      trial.push_back(L.y(best, j).coeffs());
      if (span_dim(f, trial, n) > span.size()) {
        span.push_back(L.y(best, j).coeffs());
        zs.push_back(L.y(best, j));
      }
    }
    prof.basis.push_back(std::move(zs));
    current = best_rank;
  }
  return prof;
}

/// The plane spanned by the given forms y_ij (one vector per column, length k+1).
inline KPlane plane_from_forms(HypersurfaceParams params, Field f, const std::vector<Vector>& cols) {
  if (cols.size() != params.columns()) throw ArityMismatch("need one form per coordinate");
  const std::size_t n = cols.front().size();
  Matrix B(f, n, params.columns());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t a = 0; a < n; ++a) B(a, c) = cols[c][a];
  return KPlane(params, std::move(B));
}

/// Planes showing the one-split threshold is sharp. Mirrored rows carry a sign on their
/// first factor so that the row products cancel in every characteristic.
///   r = 2m:   k = md - 1, rows i <= m independent, row i+m = row i with -y_i1.
///   r = 2m+1: k = md, rows i <= m and y_r1 independent, row i+m mirrors row i for i < m,
///             y_rj = y_(2m)j = y_mj for j > 1, y_(2m)1 = -y_m1 - y_r1.
inline KPlane sharp_witness(std::size_t r, std::size_t d, Field f = Field::prime(7)) {
  if (r < 2 || d < 3) throw InvalidArgument("sharp witness needs r >= 2 and d >= 3");
  HypersurfaceParams params(r, d);
  const std::size_t m = r / 2;
  const std::size_t n = (r % 2 == 0) ? m * d : m * d + 1;
  auto unit = [&](std::size_t a) {
    Vector v(n, f.zero());
    v[a] = f.one();
    return v;
  };
  auto neg = [&](Vector v) {
    for (auto& x : v) x = -x;
    return v;
  };
  std::vector<Vector> cols(r * d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) cols[params.column(i, j)] = unit(i * d + j);
  const std::size_t mirrored = (r % 2 == 0) ? m : m - 1;
  for (std::size_t i = 0; i < mirrored; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Vector v = cols[params.column(i, j)];
      cols[params.column(i + m, j)] = j == 0 ? neg(v) : v;
    }
  }
  if (r % 2 == 1) {
    const std::size_t im = m - 1, i2m = 2 * m - 1, ir = r - 1;
    const Vector yr1 = unit(m * d);
    cols[params.column(ir, 0)] = yr1;
    Vector y2m1 = neg(cols[params.column(im, 0)]);
    for (std::size_t a = 0; a < n; ++a) y2m1[a] -= yr1[a];
    cols[params.column(i2m, 0)] = y2m1;
    for (std::size_t j = 1; j < d; ++j) {
      cols[params.column(ir, j)] = cols[params.column(im, j)];
      cols[params.column(i2m, j)] = cols[params.column(im, j)];
    }
  }
  return plane_from_forms(params, f, cols);
}

/// One-split threshold of the splitting conjecture: rd/2 (r even), (r-1)d/2 + 1 (r odd).
inline std::size_t one_split_threshold(std::size_t r, std::size_t d) {
  return r % 2 == 0 ? r / 2 * d : (r - 1) / 2 * d + 1;
}

/// Two-split threshold rd/2 - 1 (r even).
inline std::size_t two_split_threshold(std::size_t r, std::size_t d) { return r / 2 * d - 1; }

/// k bound assumed throughout the profile reduction.
inline std::size_t profile_k_bound(std::size_t r, std::size_t d) {
  return r % 2 == 0 ? r / 2 * d - 1 : (r - 1) / 2 * d + 1;
}

struct AuditFlags {
  bool lambda_zero;   // lambda_{r-s} = 0
  bool parity_case;   // d even, or r even and d >= r-2s, or r odd and r-2s <= 6
  bool k_bound;       // k at least the reduction bound
  friend bool operator==(const AuditFlags&, const AuditFlags&) = default;
};

enum class AuditOutcome : std::uint8_t { consistent, inconsistent_with_lemma };

struct AuditReport {
  std::size_t s;
  AuditFlags flags;
  bool hypotheses_hold;
  std::size_t pair_sum;  // lambda_{s+1} + lambda_{s+2}
  bool conclusion_holds;
  AuditOutcome outcome;
};

inline AuditFlags audit_flags(const LambdaProfile& p, std::size_t r, std::size_t d, std::size_t k, std::size_t s) {
  AuditFlags fl{};
  fl.lambda_zero = s < r && p.lambdas[r - s - 1] == 0;
  const long rem = static_cast<long>(r) - 2 * static_cast<long>(s);
  fl.parity_case = d % 2 == 0 || (r % 2 == 0 && static_cast<long>(d) >= rem) || (r % 2 == 1 && rem <= 6);
  fl.k_bound = k >= profile_k_bound(r, d);
  return fl;
}

/// Checks lambda_{s+1} + lambda_{s+2} >= d + 2 whenever the lemma's hypotheses hold.
/// Claimed flags that disagree with the profile raise HypothesisMismatch.
inline AuditReport audit_profile(const LambdaProfile& p, std::size_t r, std::size_t d, std::size_t k, std::size_t s,
                                 const std::optional<AuditFlags>& claimed = {}) {
  if (p.lambdas.size() != r) throw ArityMismatch("profile length differs from r");
  if (s + 2 > r) throw InvalidArgument("profile audit needs s + 2 <= r");
  AuditReport rep{};
  rep.s = s;
  rep.flags = audit_flags(p, r, d, k, s);
  if (claimed && !(*claimed == rep.flags)) throw HypothesisMismatch("claimed hypothesis flags disagree with the profile");
  rep.hypotheses_hold = rep.flags.lambda_zero && rep.flags.parity_case && rep.flags.k_bound;
  rep.pair_sum = p.lambdas[s] + p.lambdas[s + 1];
  rep.conclusion_holds = rep.pair_sum >= d + 2;
  rep.outcome = rep.hypotheses_hold && !rep.conclusion_holds ? AuditOutcome::inconsistent_with_lemma
                                                             : AuditOutcome::consistent;
  return rep;
}

inline AuditReport profile_audit(const KPlane& L, std::size_t s, const std::optional<AuditFlags>& claimed = {}) {
  return audit_profile(lambda_profile(L), L.r(), L.d(), L.k(), s, claimed);
}

/// Member planes built from row groups: a group of size 1 has a zero factor; a larger group
/// shares d-1 factors and its first factors sum to zero. Torus scaling and row/factor
/// permutations are applied afterwards. Rank-deficient draws are rejected and counted.
class MemberPlaneSampler {
 public:
  MemberPlaneSampler(std::size_t r, std::size_t d, std::size_t k, Field f, std::uint64_t seed)
      : params_(r, d), k_(k), field_(f), rng_(seed) {
    if (!f.is_prime_field()) throw InvalidField("sampling needs a prime field");
    enumerate_group_shapes();
  }

  /// Group size lists whose free-form count can reach k+1.
  const std::vector<std::vector<std::size_t>>& shapes() const noexcept { return shapes_; }
  std::size_t rejections() const noexcept { return rejections_; }

  /// A member plane, or nullopt after max_attempts rank-deficient draws.
  std::optional<KPlane> sample(std::size_t max_attempts = 1000) {
    if (shapes_.empty()) return std::nullopt;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
      const auto& shape = shapes_[rng_() % shapes_.size()];
      auto plane = draw(shape);
      if (plane) return plane;
      ++rejections_;
    }
    return std::nullopt;
  }

 private:
  static std::size_t free_forms(const std::vector<std::size_t>& shape, std::size_t d) {
    std::size_t n = 0;
    for (auto g : shape) n += g == 1 ? d - 1 : (g - 1) + (d - 1);
    return n;
  }

  void enumerate_group_shapes() {
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t left, std::size_t maxpart) -> void {
      if (left == 0) {
        if (free_forms(cur, params_.d) >= k_ + 1) shapes_.push_back(cur);
        return;
      }
      for (std::size_t g = std::min(left, maxpart); g >= 1; --g) {
        cur.push_back(g);
        self(self, left - g, g);
        cur.pop_back();
      }
    };
    rec(rec, params_.r, params_.r);
  }

  Vector random_vector(std::size_t n) {
    Vector v;
    for (std::size_t a = 0; a < n; ++a) v.push_back(field_.residue(rng_() % field_.characteristic()));
    return v;
  }

  FieldElement random_unit() { return field_.residue(1 + rng_() % (field_.characteristic() - 1)); }

  std::optional<KPlane> draw(const std::vector<std::size_t>& shape) {
    const std::size_t n = k_ + 1, d = params_.d, r = params_.r;
    std::vector<std::vector<Vector>> rows;
    for (auto g : shape) {
      if (g == 1) {
        std::vector<Vector> row{Vector(n, field_.zero())};
        for (std::size_t j = 1; j < d; ++j) row.push_back(random_vector(n));
        rows.push_back(std::move(row));
        continue;
      }
      std::vector<Vector> shared;
      for (std::size_t j = 1; j < d; ++j) shared.push_back(random_vector(n));
      Vector total(n, field_.zero());
      for (std::size_t t = 0; t < g; ++t) {
        Vector first(n, field_.zero());
        if (t + 1 < g) {
          first = random_vector(n);
          for (std::size_t a = 0; a < n; ++a) total[a] += first[a];
        } else {
          for (std::size_t a = 0; a < n; ++a) first[a] = -total[a];
        }
        std::vector<Vector> row{first};
        row.insert(row.end(), shared.begin(), shared.end());
        rows.push_back(std::move(row));
      }
    }
    // Torus element: scale row i's factors by t_ij with prod_j t_ij = c for every row.
    const FieldElement c = random_unit();
    for (auto& row : rows) {
      FieldElement prod = field_.one();
      for (std::size_t j = 0; j + 1 < d; ++j) {
        const FieldElement t = random_unit();
        for (auto& x : row[j]) x *= t;
        prod *= t;
      }
      const FieldElement last = c / prod;
      for (auto& x : row[d - 1]) x *= last;
    }
    for (auto& row : rows) std::shuffle(row.begin(), row.end(), rng_);
    std::shuffle(rows.begin(), rows.end(), rng_);
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < d; ++j) cols.push_back(rows[i][j]);
    Matrix B(field_, n, r * d);
    for (std::size_t col = 0; col < cols.size(); ++col)
      for (std::size_t a = 0; a < n; ++a) B(a, col) = cols[col][a];
    if (B.rank() != n) return std::nullopt;
    return KPlane(params_, std::move(B));
  }

  HypersurfaceParams params_;
  std::size_t k_;
  Field field_;
  std::mt19937_64 rng_;
  std::vector<std::vector<std::size_t>> shapes_;
  std::size_t rejections_ = 0;
};

}  // namespace fanosplit
