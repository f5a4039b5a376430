#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "polyjoin/mask.hpp"

using namespace polyjoin;

namespace {

template <class Mask>
Mask from_indices(const std::vector<std::size_t>& idx, std::size_t width) {
  Mask m = MaskTraits<Mask>::zero(width);
  for (auto i : idx) set_bit(m, i);
  return m;
}

template <class Mask>
class MaskTest : public ::testing::Test {};

using MaskTypes = ::testing::Types<WordMask, DenseMask>;
TYPED_TEST_SUITE(MaskTest, MaskTypes);

}  // namespace

TYPED_TEST(MaskTest, LexOrderMatchesSortedLists) {
  const std::size_t width = std::is_same_v<TypeParam, WordMask> ? 12 : 140;
  std::mt19937_64 gen(3);
  for (int round = 0; round < 400; ++round) {
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < width; ++i) {
      if (gen() % 5 == 0) a.push_back(i);
      if (gen() % 5 == 0) b.push_back(i);
    }
    if (round % 7 == 0) b = a;
    if (round % 11 == 0 && !a.empty()) b.assign(a.begin(), a.end() - 1);
    const auto ma = from_indices<TypeParam>(a, width);
    const auto mb = from_indices<TypeParam>(b, width);
    EXPECT_EQ(lex_less(ma, mb), a < b);
    EXPECT_EQ(bit_indices(ma), a);
    EXPECT_EQ(popcount(ma), a.size());
    EXPECT_EQ(is_subset(ma & mb, ma), true);
  }
}

TYPED_TEST(MaskTest, BitPrimitives) {
  const std::size_t width = std::is_same_v<TypeParam, WordMask> ? 64 : 200;
  auto m = MaskTraits<TypeParam>::zero(width);
  EXPECT_TRUE(is_empty(m));
  set_bit(m, 0);
  set_bit(m, width - 1);
  EXPECT_EQ(popcount(m), 2u);
  EXPECT_EQ(lowest_bit(m), 0u);
  EXPECT_TRUE(any_above(m, 0));
  EXPECT_FALSE(any_above(m, width - 1));
  reset_bit(m, 0);
  EXPECT_EQ(lowest_bit(m), width - 1);
  EXPECT_TRUE(is_empty(minus(m, m)));
}

TEST(DenseMask, ComparesAcrossWidths) {
  DenseMask a(10);
  DenseMask b(130);
  set_bit(a, 3);
  set_bit(b, 3);
  EXPECT_TRUE(a == b);
  set_bit(b, 129);
  EXPECT_FALSE(a == b);
  EXPECT_TRUE(is_subset(a, b));
  EXPECT_FALSE(is_subset(b, a));
}
