// Copyright 2026 The bosonsamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <set>

#include "error.hpp"
#include "oracles.hpp"
#include "pattern.hpp"

namespace bosonsamp {
namespace {

TEST(Binomial, ValuesAndOverflow) {
  EXPECT_EQ(binomial(6, 3), 20u);
  EXPECT_EQ(binomial(4, 0), 1u);
  EXPECT_EQ(binomial(3, 4), 0u);
  EXPECT_FALSE(binomial(225, 15).has_value());
  EXPECT_EQ(binomial(62, 31), 465428353255261088u);
  EXPECT_FALSE(binomial(2500, 50).has_value());
  EXPECT_DOUBLE_EQ(binomial_real(6, 3), 20.0);
}

TEST(OutputPattern, Basics) {
  const auto p = OutputPattern::from_modes(6, std::vector<int>{0, 3, 5});
  EXPECT_EQ(p.photons(), 3);
  EXPECT_EQ(p.modes(), 6);
  EXPECT_TRUE(p.collision_free());
  EXPECT_EQ(p.to_string(), "(1,0,0,1,0,1)");
  EXPECT_EQ(p.occupied_modes(), (std::vector<int>{0, 3, 5}));
  const auto b = OutputPattern::from_modes(3, std::vector<int>{1, 1});
  EXPECT_FALSE(b.collision_free());
  EXPECT_EQ(b.occupied_modes(), (std::vector<int>{1, 1}));
  EXPECT_EQ(OutputPattern::standard_input(2, 4), OutputPattern({1, 1, 0, 0}));
}

TEST(CanonicalOrder, ThreePhotonsSixModes) {
  const auto all = enumerate_collision_free(3, 6);
  ASSERT_EQ(all.size(), 20u);
  EXPECT_EQ(all.front(), OutputPattern({0, 0, 0, 1, 1, 1}));
  EXPECT_EQ(all.back(), OutputPattern({1, 1, 1, 0, 0, 0}));
}

TEST(CanonicalOrder, OnePhotonTwoModes) {
  const auto all = enumerate_collision_free(1, 2);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0], OutputPattern({0, 1}));
  EXPECT_EQ(all[1], OutputPattern({1, 0}));
}

TEST(CanonicalOrder, AscendingBitValueMatchesReference) {
  for (int m = 1; m <= 9; ++m) {
    for (int n = 1; n <= m; ++n) {
      const auto all = enumerate_collision_free(n, m);
      auto ref = testing::subsets(n, m);
      std::sort(ref.begin(), ref.end(), [m](const auto& a, const auto& b) {
        return testing::bit_value(a, m) < testing::bit_value(b, m);
      });
      ASSERT_EQ(all.size(), ref.size()) << n << "," << m;
      for (std::size_t r = 0; r < ref.size(); ++r) {
        EXPECT_EQ(all[r].occupied_modes(), ref[r]);
        EXPECT_EQ(rank_collision_free(ref[r], m), r);
        std::vector<int> back(static_cast<std::size_t>(n));
        unrank_collision_free(r, n, m, back);
        EXPECT_EQ(back, ref[r]);
      }
    }
  }
}

TEST(CanonicalOrder, RankRoundTripLargeSpace) {
  std::mt19937_64 gen(3);
  const std::uint64_t total = *binomial(100, 10);
  std::vector<int> modes(10);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t r = gen() % total;
    unrank_collision_free(r, 10, 100, modes);
    EXPECT_TRUE(std::is_sorted(modes.begin(), modes.end()));
    EXPECT_EQ(rank_collision_free(modes, 100), r);
    EXPECT_DOUBLE_EQ(rank_collision_free_real(modes, 100), static_cast<double>(r));
  }
}

TEST(CanonicalOrder, RealRankBeyond64Bits) {
  std::vector<int> first(15);
  std::vector<int> last(15);
  for (int i = 0; i < 15; ++i) {
    first[static_cast<std::size_t>(i)] = 210 + i;
    last[static_cast<std::size_t>(i)] = i;
  }
  EXPECT_EQ(rank_collision_free_real(first, 225), 0.0);
  EXPECT_NEAR(rank_collision_free_real(last, 225) / 9.1005567811177478e22, 1.0, 1e-12);
}

TEST(Enumerate, TwoPhotonsFourModes) {
  const auto all = enumerate_collision_free(2, 4);
  ASSERT_EQ(all.size(), 6u);
  std::set<OutputPattern> uniq(all.begin(), all.end());
  EXPECT_EQ(uniq.size(), 6u);
  for (const auto& p : all) {
    EXPECT_EQ(p.photons(), 2);
    EXPECT_TRUE(p.collision_free());
  }
}

TEST(Enumerate, AllPatternsIncludingBunched) {
  const auto a = enumerate_all(2, 2);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0], OutputPattern({2, 0}));
  EXPECT_EQ(a[1], OutputPattern({1, 1}));
  EXPECT_EQ(a[2], OutputPattern({0, 2}));
  EXPECT_EQ(enumerate_all(2, 3).size(), 6u);
  EXPECT_EQ(enumerate_all(3, 2).size(), 4u);
  for (int n = 1; n <= 4; ++n) {
    for (int m = 1; m <= 5; ++m) {
      const auto all = enumerate_all(n, m);
      EXPECT_EQ(all.size(), *binomial(static_cast<std::uint64_t>(m + n - 1), static_cast<std::uint64_t>(n)));
      std::set<OutputPattern> uniq(all.begin(), all.end());
      EXPECT_EQ(uniq.size(), all.size());
    }
  }
}

TEST(Enumerate, CapIsEnforced) {
  const std::uint64_t saved = enumeration_cap();
  set_enumeration_cap(10);
  try {
    enumerate_collision_free(3, 6);
    ADD_FAILURE() << "expected cap error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
    EXPECT_NE(std::string(e.what()).find("10"), std::string::npos);
  }
  EXPECT_THROW(enumerate_all(3, 4), Error);
  EXPECT_EQ(enumerate_collision_free(2, 5).size(), 10u);
  set_enumeration_cap(saved);
}

}  // namespace
}  // namespace bosonsamp
