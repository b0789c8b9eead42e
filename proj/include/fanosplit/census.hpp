#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fanosplit/field.hpp"
#include "fanosplit/plane.hpp"

namespace fanosplit {

enum class Provenance : std::uint8_t { proven, conjectural, witness, unknown };

enum class Answer : std::uint8_t { yes, no, unknown };

struct SplitClaim {
  Answer answer;
  Provenance provenance;
  std::string note;
};

struct SplittingStatus {
  std::size_t r, d, k;
  SplitClaim one_split;
  SplitClaim two_split;
};

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::proven: return "Proven";
    case Provenance::conjectural: return "Conjectural";
    case Provenance::witness: return "WitnessAvailable";
    case Provenance::unknown: return "Unknown";
  }
  return "?";
}

inline std::string to_string(const SplitClaim& c) {
  switch (c.answer) {
    case Answer::yes: return "Yes(" + to_string(c.provenance) + ")";
    case Answer::no: return "No(" + to_string(c.provenance) + ")";
    case Answer::unknown: return "Unknown";
  }
  return "?";
}

/// Conjectured one- and two-split status with provenance. Proven cases: r <= 6 or d = 4,
/// and for r >= 7 the one-split bound k >= d(r-3). Below the one-split threshold a
/// non-one-split plane is constructed from the sharp witness.
inline SplittingStatus splitting_status(std::size_t r, std::size_t d, std::size_t k) {
  if (r < 2 || d < 3) throw InvalidArgument("splitting status needs r >= 2 and d >= 3");
  SplittingStatus st{r, d, k, {}, {}};
  const bool theorem_case = r <= 6 || d == 4;
  if (k >= one_split_threshold(r, d)) {
    if (theorem_case) {
      st.one_split = {Answer::yes, Provenance::proven, "r <= 6 or d = 4"};
    } else if (k >= d * (r - 3)) {
      st.one_split = {Answer::yes, Provenance::proven, "k >= d(r-3) with r >= 7"};
    } else {
      st.one_split = {Answer::yes, Provenance::conjectural, "one-split threshold met"};
    }
  } else {
    st.one_split = {Answer::no, Provenance::witness, "subplane of sharp_witness(" + std::to_string(r) + "," +
                                                         std::to_string(d) + ")"};
  }
  if (r == 2) {
    st.two_split = {Answer::yes, Provenance::proven, "two rows always cancel"};
  } else if (st.one_split.answer == Answer::yes) {
    st.two_split = {Answer::yes, st.one_split.provenance, "implied by one-split"};
  } else if (r % 2 == 0 && k >= two_split_threshold(r, d)) {
    st.two_split = theorem_case ? SplitClaim{Answer::yes, Provenance::proven, "r <= 6 or d = 4"}
                                : SplitClaim{Answer::yes, Provenance::conjectural, "two-split threshold met"};
  } else if (r == 3) {
    st.two_split = {Answer::no, Provenance::witness, "subplane of sharp_witness(3," + std::to_string(d) + ")"};
  } else {
    st.two_split = {Answer::unknown, Provenance::unknown, "no statement available"};
  }
  return st;
}

/// A k-subplane of sharp_witness(r, d) with every y_ij still nonzero (k below the threshold).
inline KPlane witness_subplane(std::size_t r, std::size_t d, std::size_t k, Field f = Field::prime(101),
                               std::uint64_t seed = 1) {
  const KPlane W = sharp_witness(r, d, f);
  if (k > W.k()) throw InvalidArgument("subplane dimension exceeds the witness");
  if (k == W.k()) return W;
  if (!f.is_prime_field()) throw InvalidField("subplanes are drawn over a prime field");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix C(f, k + 1, W.k() + 1);
    for (std::size_t a = 0; a <= k; ++a)
      for (std::size_t b = 0; b <= W.k(); ++b) C(a, b) = f.residue(rng() % f.characteristic());
    const Matrix B = C * W.matrix();
    if (B.rank() != k + 1) continue;
    KPlane L(W.params(), B);
    bool ok = true;
    for (std::size_t i = 0; i < r; ++i) ok = ok && !L.row_vanishes(i);
    if (ok) return L;
  }
  throw CeilingExceeded("no generic subplane found");
}

inline bool fano_nonempty(std::size_t r, std::size_t d, std::size_t k) { return k < r * (d - 1); }

inline bool fano_connected(std::size_t r, std::size_t d, std::size_t k) { return k + 1 < r * (d - 1); }

/// A coordinate k-plane, given by the zero set Z of coordinates (column indices i*d+j).
struct CoordinatePlane {
  std::size_t r, d;
  std::vector<std::size_t> zeros;

  std::size_t k() const { return r * d - zeros.size() - 1; }

  KPlane to_plane(Field f) const {
    std::vector<bool> z(r * d, false);
    for (auto c : zeros) z[c] = true;
    Matrix B(f, r * d - zeros.size(), r * d);
    std::size_t row = 0;
    for (std::size_t c = 0; c < r * d; ++c)
      if (!z[c]) B(row++, c) = f.one();
    return KPlane(HypersurfaceParams(r, d), std::move(B));
  }
};

/// Number of coordinate k-planes in X_{r,d}: zero sets of size rd-k-1 meeting every row.
inline Integer torus_fixed_count(std::size_t r, std::size_t d, std::size_t k) {
  if (k + 1 > r * d) return 0;
  const std::size_t s = r * d - k - 1;
  auto binom = [](std::size_t n, std::size_t m) {
    if (m > n) return Integer(0);
    Integer b = 1;
    for (std::size_t i = 0; i < m; ++i) b = b * (n - i) / (i + 1);
    return b;
  };
  Integer total = 0;
  for (std::size_t t = 0; t <= r; ++t) {
    const Integer term = binom(r, t) * binom((r - t) * d, s);
    total += (t % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

/// All coordinate k-planes contained in X_{r,d}, zero sets in lexicographic order.
inline std::vector<CoordinatePlane> torus_fixed_planes(std::size_t r, std::size_t d, std::size_t k,
                                                       std::size_t ceiling = 1'000'000) {
  std::vector<CoordinatePlane> out;
  if (k + 1 > r * d) return out;
  if (torus_fixed_count(r, d, k) > ceiling) throw CeilingExceeded("too many torus fixed planes to list");
  const std::size_t s = r * d - k - 1;
  std::vector<std::size_t> cur;
  std::vector<std::size_t> hits(r, 0);
  auto rec = [&](auto&& self, std::size_t start) -> void {
    std::size_t unhit = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (hits[i] != 0) continue;
      if ((i + 1) * d <= start) return;
      ++unhit;
    }
    if (cur.size() == s) {
      if (unhit == 0) out.push_back({r, d, cur});
      return;
    }
    if (unhit > s - cur.size()) return;
    for (std::size_t c = start; c < r * d; ++c) {
      cur.push_back(c);
      ++hits[c / d];
      self(self, c + 1);
      --hits[c / d];
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

enum class ComponentType : std::uint8_t { A, B, C, D, Toric };

inline std::string to_string(ComponentType t) {
  switch (t) {
    case ComponentType::A: return "A";
    case ComponentType::B: return "B";
    case ComponentType::C: return "C";
    case ComponentType::D: return "D";
    case ComponentType::Toric: return "Toric";
  }
  return "?";
}

struct ComponentRow {
  ComponentType type;
  Integer count;
  Integer dimension;
  std::string note;
};

enum class TableStatus : std::uint8_t { validated, conjectural, out_of_validated_range };

inline std::string to_string(TableStatus s) {
  switch (s) {
    case TableStatus::validated: return "Validated";
    case TableStatus::conjectural: return "Conjectural";
    case TableStatus::out_of_validated_range: return "OutOfValidatedRange";
  }
  return "?";
}

struct ComponentTable {
  std::size_t r, d, k;
  TableStatus status;
  std::vector<ComponentRow> rows;
};

namespace detail {

inline Integer factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Integer binomial(std::size_t n, std::size_t m) {
  if (m > n) return 0;
  return factorial(n) / (factorial(m) * factorial(n - m));
}

inline Integer ipow(std::size_t b, std::size_t e) {
  Integer p = 1;
  for (std::size_t i = 0; i < e; ++i) p *= b;
  return p;
}

}  // namespace detail

/// Count and dimension of the special components of F_d(X_{3,d}).
inline std::pair<Integer, Integer> special_f_d_x3d(std::size_t d) {
  if (d < 2) throw InvalidArgument("special components need d >= 2");
  const Integer c = detail::binomial(d, 2);
  const Integer f = detail::factorial(d - 2);
  return {2 * c * c * c * f * f, Integer(2 * d - 1)};
}

/// Whether the splitting statements behind the component table are known to hold.
inline bool census_gate(std::size_t r, std::size_t d, std::size_t k) {
  const std::size_t base = (r - 2) * (d - 1);
  return r <= 6 || d == 4 || (k >= base + 2 && r <= d + 2) || (k == base + 1 && r <= d + 1);
}

/// Irreducible components of F_k(X_{r,d}) for k >= (r-2)(d-1)+1, r >= 3.
inline ComponentTable component_census(std::size_t r, std::size_t d, std::size_t k) {
  if (r < 2 || d < 3) throw InvalidArgument("census needs r >= 2 and d >= 3");
  ComponentTable t{r, d, k, TableStatus::out_of_validated_range, {}};
  const std::size_t base = (r - 2) * (d - 1);
  if (r < 3 || k < base + 1) return t;
  t.status = census_gate(r, d, k) ? TableStatus::validated : TableStatus::conjectural;
  if (!fano_nonempty(r, d, k)) return t;
  using detail::binomial;
  using detail::factorial;
  using detail::ipow;
  const Integer K1 = k + 1;
  t.rows.push_back({ComponentType::A, ipow(d, r), K1 * (Integer(r * (d - 1)) - K1),
                    "contained in " + std::to_string(r) + " coordinate hyperplanes"});
  if (k <= (r - 1) * (d - 1)) {
    t.rows.push_back({ComponentType::B, binomial(r, 2) * ipow(d, r - 2) * factorial(d),
                      Integer(d - 1) + K1 * (Integer((r - 1) * (d - 1)) - Integer(k)),
                      "contained in " + std::to_string(r - 2) + " coordinate hyperplanes"});
  }
  if (k == base + 1) {
    const auto [special, sdim] = special_f_d_x3d(d);
    t.rows.push_back({ComponentType::C, binomial(r, 3) * ipow(d, r - 3) * special, sdim,
                      "contained in " + std::to_string(r - 3) + " coordinate hyperplanes"});
    if (r >= 4) {
      const Integer multinomial = factorial(r) / (factorial(r - 4) * 4);
      t.rows.push_back({ComponentType::D, multinomial * ipow(d, r - 4) * factorial(d) * factorial(d),
                        Integer(2 * (d - 1)), "contained in " + std::to_string(r - 4) + " coordinate hyperplanes"});
    }
  }
  return t;
}

/// CSV with columns type,count,dimension,status.
inline std::string census_csv(const ComponentTable& t) {
  std::string s = "type,count,dimension,status\n";
  for (const auto& row : t.rows)
    s += to_string(row.type) + "," + row.count.str() + "," + row.dimension.str() + "," + to_string(t.status) + "\n";
  return s;
}

}  // namespace fanosplit
