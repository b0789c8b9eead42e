#include <gtest/gtest.h>

#include "fanosplit/census.hpp"

using namespace fanosplit;

namespace {

struct Row {
  std::string type;
  long count;
  long dim;
  friend bool operator==(const Row&, const Row&) = default;
};

std::vector<Row> rows(const ComponentTable& t) {
  std::vector<Row> out;
  for (const auto& r : t.rows)
    out.push_back({to_string(r.type), r.count.convert_to<long>(), r.dimension.convert_to<long>()});
  return out;
}

}  // namespace

TEST(Census, FanoFiveOfX43) {
  const auto t = component_census(4, 3, 5);
  EXPECT_EQ(t.status, TableStatus::validated);
  EXPECT_EQ(rows(t), (std::vector<Row>{{"A", 81, 12}, {"B", 324, 8}, {"C", 648, 5}, {"D", 216, 4}}));
  EXPECT_EQ(census_csv(t),
            "type,count,dimension,status\nA,81,12,Validated\nB,324,8,Validated\nC,648,5,Validated\nD,216,4,Validated\n");
}

TEST(Census, TypesAAndBOnly) {
  const auto t = component_census(3, 4, 5);
  EXPECT_EQ(rows(t), (std::vector<Row>{{"A", 64, 18}, {"B", 288, 9}}));
  // B disappears above (r-1)(d-1).
  const auto t2 = component_census(3, 4, 7);
  EXPECT_EQ(rows(t2), (std::vector<Row>{{"A", 64, 8 * 1}}));
}

TEST(Census, OutOfRange) {
  EXPECT_EQ(component_census(2, 3, 3).status, TableStatus::out_of_validated_range);
  EXPECT_TRUE(component_census(2, 3, 3).rows.empty());
  EXPECT_EQ(component_census(4, 3, 4).status, TableStatus::out_of_validated_range);
  // r = 9, d = 3: outside every caveat, still tabulated.
  const auto t = component_census(9, 3, 15);
  EXPECT_EQ(t.status, TableStatus::conjectural);
  EXPECT_FALSE(t.rows.empty());
  EXPECT_EQ(component_census(7, 5, 25).status, TableStatus::validated);
}

TEST(Census, SpecialComponents) {
  EXPECT_EQ(special_f_d_x3d(3), (std::pair<Integer, Integer>{54, 5}));
  EXPECT_EQ(special_f_d_x3d(2), (std::pair<Integer, Integer>{2, 3}));
  EXPECT_EQ(special_f_d_x3d(4), (std::pair<Integer, Integer>{2 * 216 * 4, 7}));
  // Type C at (4,3) from the special count.
  EXPECT_EQ(Integer(4 * 3) * special_f_d_x3d(3).first, 648);
  // At r = 3 Type C is exactly the special family.
  const auto t = component_census(3, 5, 5);
  EXPECT_EQ(t.rows.at(2).count, special_f_d_x3d(5).first);
}

TEST(Census, DimensionIdentity) {
  for (std::size_t r = 3; r <= 8; ++r)
    for (std::size_t d = 3; d <= 8; ++d) {
      const std::size_t k = (r - 2) * (d - 1) + 1;
      const long special = 2 * long((r - 2) * (d - 1) + 2) * long(d - 2);
      const long grass = long(k + 1) * (long(r * (d - 1)) - long(k + 1));
      EXPECT_EQ(special, grass);
      EXPECT_EQ(component_census(r, d, k).rows.at(0).dimension, grass);
    }
}

TEST(Census, NonemptyConnected) {
  EXPECT_TRUE(fano_nonempty(2, 3, 3));
  EXPECT_FALSE(fano_nonempty(2, 3, 4));
  EXPECT_TRUE(fano_nonempty(4, 3, 7));
  EXPECT_FALSE(fano_connected(4, 3, 7));
  EXPECT_TRUE(fano_connected(4, 3, 5));
  EXPECT_TRUE(fano_connected(4, 3, 6));
  EXPECT_FALSE(fano_connected(2, 3, 3));
}

TEST(Census, TorusFixedPlanes) {
  EXPECT_EQ(torus_fixed_planes(2, 3, 3).size(), 9u);
  EXPECT_EQ(torus_fixed_planes(4, 3, 7).size(), 81u);
  EXPECT_TRUE(torus_fixed_planes(2, 3, 4).empty());
  for (std::size_t r = 2; r <= 4; ++r)
    for (std::size_t d = 3; d <= 4; ++d) {
      const std::size_t k = r * (d - 1) - 1;
      const auto planes = torus_fixed_planes(r, d, k);
      std::size_t expect = 1;
      for (std::size_t i = 0; i < r; ++i) expect *= d;
      EXPECT_EQ(planes.size(), expect);
      EXPECT_EQ(torus_fixed_count(r, d, k), expect);
    }
}

TEST(Census, TorusPlanesAreMembersAndMatchNonemptiness) {
  const Field f = Field::prime(3);
  for (std::size_t r = 2; r <= 3; ++r)
    for (std::size_t d = 3; d <= 4; ++d)
      for (std::size_t k = 0; k < r * d; ++k) {
        const auto planes = torus_fixed_planes(r, d, k);
        EXPECT_EQ(!planes.empty(), fano_nonempty(r, d, k)) << r << d << k;
        EXPECT_EQ(Integer(planes.size()), torus_fixed_count(r, d, k));
        for (const auto& p : planes) {
          EXPECT_EQ(p.k(), k);
          if (k <= 4) {
            EXPECT_TRUE(membership(p.to_plane(f)));
          }
        }
      }
  for (const auto& p : torus_fixed_planes(4, 3, 7)) EXPECT_TRUE(membership(p.to_plane(f)));
}

TEST(Census, SplittingStatus) {
  auto s = splitting_status(4, 3, 6);
  EXPECT_EQ(to_string(s.one_split), "Yes(Proven)");
  EXPECT_EQ(to_string(s.two_split), "Yes(Proven)");
  s = splitting_status(4, 3, 5);
  EXPECT_EQ(to_string(s.one_split), "No(WitnessAvailable)");
  EXPECT_EQ(to_string(s.two_split), "Yes(Proven)");
  s = splitting_status(8, 5, 25);
  EXPECT_EQ(to_string(s.one_split), "Yes(Proven)");
  s = splitting_status(8, 5, 21);
  EXPECT_EQ(to_string(s.one_split), "Yes(Conjectural)");
  s = splitting_status(8, 5, 19);
  EXPECT_EQ(to_string(s.one_split), "No(WitnessAvailable)");
  EXPECT_EQ(to_string(s.two_split), "Yes(Conjectural)");
  s = splitting_status(3, 3, 3);
  EXPECT_EQ(to_string(s.two_split), "No(WitnessAvailable)");
  s = splitting_status(5, 3, 5);
  EXPECT_EQ(to_string(s.two_split), "Unknown");
  EXPECT_THROW(splitting_status(4, 2, 1), InvalidArgument);
}

TEST(Census, WitnessSubplanesBelowThreshold) {
  for (std::size_t r : {2, 3, 4, 5})
    for (std::size_t k = 0; k < one_split_threshold(r, 3); ++k) {
      const KPlane L = witness_subplane(r, 3, k);
      EXPECT_EQ(L.k(), k);
      EXPECT_TRUE(membership(L));
      EXPECT_FALSE(is_one_split(L));
      if (r == 3) {
        EXPECT_FALSE(is_two_split(L));
      }
    }
}
