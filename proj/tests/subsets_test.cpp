// Copyright 2026 The dstgap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "dstgap/subsets.hpp"
#include "oracles.hpp"

namespace dstgap {
namespace {

TEST(Binomial, MatchesPascal) {
  for (int n = 0; n <= 62; ++n) {
    for (int r = 0; r <= n; ++r) {
      EXPECT_EQ(BigInt(std::to_string(binomial_u64(n, r))), oracle::binom(n, r)) << n << " " << r;
    }
  }
  EXPECT_EQ(binomial_u64(5, 7), 0u);
  EXPECT_EQ(binomial_u64(5, -1), 0u);
}

TEST(Binomial, OverflowIsReported) {
  EXPECT_NO_THROW(binomial_u64(67, 33));
  EXPECT_THROW(binomial_u64(70, 35), CapExceeded);
}

TEST(Masks, RoundTrip) {
  const Subset s{1, 3, 8};
  EXPECT_EQ(mask_of(s), SubsetMask{0b10000101});
  EXPECT_EQ(subset_of(mask_of(s)), s);
  EXPECT_EQ(render_subset(s), "{1,3,8}");
  EXPECT_EQ(render_mask(0), "{}");
  EXPECT_THROW(mask_of({0}), ParamError);
  EXPECT_THROW(mask_of({64}), ParamError);
}

// Colex: compare sorted subsets by their largest differing element.
bool colex_less(const Subset& x, const Subset& y) {
  return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
}

TEST(Ranking, ColexOrderAgainstSorting) {
  for (int m = 1; m <= 9; ++m) {
    for (int r = 0; r <= m; ++r) {
      auto all = oracle::subsets(m, r);
      std::sort(all.begin(), all.end(), colex_less);
      for (std::size_t i = 0; i < all.size(); ++i) {
        ASSERT_EQ(rank_subset(all[i], m), i);
        ASSERT_EQ(rank_mask(mask_of(all[i])), i);
        ASSERT_EQ(unrank_subset(i, m, r), all[i]);
      }
    }
  }
}

TEST(Ranking, Errors) {
  EXPECT_THROW(rank_subset({2, 1}, 5), ParamError);
  EXPECT_THROW(rank_subset({1, 6}, 5), ParamError);
  EXPECT_THROW(unrank_subset(10, 5, 2), ParamError);
  EXPECT_THROW(unrank_subset(0, 5, 6), ParamError);
}

TEST(Ranking, LargeGroundSet) {
  const Subset top{60, 61, 62, 63};
  EXPECT_EQ(rank_subset(top, 63), binomial_u64(63, 4) - 1);
  EXPECT_EQ(unrank_subset(binomial_u64(63, 4) - 1, 63, 4), top);
}

TEST(Enumeration, ForEachSubsetIsColexAndComplete) {
  for (int m = 0; m <= 10; ++m) {
    for (int r = 0; r <= m; ++r) {
      std::vector<SubsetMask> seen;
      for_each_subset(m, r, [&](SubsetMask mask) { seen.push_back(mask); });
      ASSERT_EQ(seen.size(), binomial_u64(m, r));
      for (std::size_t i = 0; i < seen.size(); ++i) {
        ASSERT_EQ(std::popcount(seen[i]), r);
        ASSERT_EQ(rank_mask(seen[i]), i);
      }
    }
  }
}

TEST(Enumeration, SubmasksOfAMask) {
  const SubsetMask base = mask_of({2, 4, 5, 9});
  for (int r = 0; r <= 4; ++r) {
    std::set<SubsetMask> seen;
    for_each_submask(base, r, [&](SubsetMask mask) {
      EXPECT_EQ(mask & ~base, 0u);
      EXPECT_EQ(std::popcount(mask), r);
      seen.insert(mask);
    });
    EXPECT_EQ(seen.size(), binomial_u64(4, r));
  }
}

}  // namespace
}  // namespace dstgap
