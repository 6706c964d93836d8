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

#include <filesystem>
#include <fstream>

#include "bosonic.hpp"
#include "error.hpp"
#include "oracles.hpp"
#include "parallel.hpp"
#include "pattern.hpp"
#include "rng.hpp"

namespace bosonsamp {
namespace {

using testing::C;

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bosonsamp_test_" + name);
}

TEST(Rng, StreamsAreDeterministicAndDistinct) {
  Rng a(42, Stream::kProposal);
  Rng b(42, Stream::kProposal);
  Rng c(42, Stream::kAccept);
  int same = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    same += x == c.next_u64();
  }
  EXPECT_LT(same, 3);
}

TEST(Rng, UniformBelowStaysInRangeAndCoversIt) {
  Rng r(7);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = r.uniform_below(7);
    ASSERT_LT(v, 7u);
    ++hits[v];
  }
  for (int h : hits) EXPECT_NEAR(h, 10000, 500);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, NormalMoments) {
  Rng r(9);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(Haar, Unitary) {
  for (int m : {1, 2, 4, 9, 25}) {
    const ComplexMatrix u = haar_random_unitary(m, 42);
    EXPECT_LE(u.unitarity_residual(), 1e-12) << m;
  }
  EXPECT_NEAR(std::abs(haar_random_unitary(1, 5)(0, 0)), 1.0, 1e-14);
}

TEST(Haar, DeterministicPerSeed) {
  EXPECT_EQ(haar_random_unitary(5, 3), haar_random_unitary(5, 3));
  const ComplexMatrix a = haar_random_unitary(3, 1);
  const ComplexMatrix b = haar_random_unitary(3, 2);
  double diff = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) diff = std::max(diff, std::abs(a(r, c) - b(r, c)));
  }
  EXPECT_GT(diff, 1e-6);
}

TEST(Haar, MarginalOfTwoByTwo) {
  double s = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) s += std::norm(haar_random_unitary(2, seed)(0, 0));
  EXPECT_NEAR(s / 1000.0, 0.5, 0.02);
}

TEST(Submatrix, SelectsRowsAndColumns) {
  const ComplexMatrix id = ComplexMatrix::identity(4);
  const OutputPattern in({1, 1, 0, 0});
  EXPECT_EQ(submatrix(id, in, OutputPattern({1, 1, 0, 0})), ComplexMatrix::identity(2));
  EXPECT_EQ(submatrix(id, in, OutputPattern({0, 0, 1, 1})), ComplexMatrix(2));

  const ComplexMatrix u = haar_random_unitary(6, 8);
  const ComplexMatrix s = submatrix(u, OutputPattern::standard_input(3, 6), OutputPattern({0, 1, 1, 1, 0, 0}));
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) EXPECT_EQ(s(r, c), u(r + 1, c));
  }
  const ComplexMatrix bunched = submatrix(u, OutputPattern::standard_input(2, 6), OutputPattern({0, 2, 0, 0, 0, 0}));
  EXPECT_EQ(bunched(0, 1), u(1, 1));
  EXPECT_EQ(bunched(1, 0), u(1, 0));

  EXPECT_THROW(submatrix(u, OutputPattern::standard_input(3, 6), OutputPattern({1, 1, 0, 0, 0, 0})), Error);
  EXPECT_THROW(submatrix(u, OutputPattern::standard_input(2, 6), OutputPattern({1, 1, 0, 0})), Error);
}

TEST(Probability, IdentityRouting) {
  const ProblemInstance inst(ComplexMatrix::identity(4), 2);
  EXPECT_DOUBLE_EQ(pattern_probability(inst, OutputPattern({1, 1, 0, 0})), 1.0);
  EXPECT_DOUBLE_EQ(pattern_probability(inst, OutputPattern({0, 1, 1, 0})), 0.0);
  EXPECT_DOUBLE_EQ(pattern_probability(inst, OutputPattern({2, 0, 0, 0})), 0.0);
  const DistributionTable t = full_distribution(inst);
  EXPECT_DOUBLE_EQ(t.collision_free_mass, 1.0);
  EXPECT_DOUBLE_EQ(t.raw[rank_collision_free(std::vector<int>{0, 1}, 4)], 1.0);
}

TEST(Probability, BeamSplitterInterference) {
  const double h = std::sqrt(0.5);
  const ProblemInstance inst(testing::from_rows({{h, h}, {h, -h}}), 2);
  EXPECT_NEAR(pattern_probability(inst, OutputPattern({1, 1})), 0.0, 1e-15);
  EXPECT_NEAR(pattern_probability(inst, OutputPattern({2, 0})), 0.5, 1e-15);
  EXPECT_NEAR(pattern_probability(inst, OutputPattern({0, 2})), 0.5, 1e-15);
}

TEST(Probability, BunchedInclusiveSumIsOne) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ProblemInstance inst(haar_random_unitary(3, seed), 2);
    double total = 0.0;
    const auto all = enumerate_all(2, 3);
    ASSERT_EQ(all.size(), 6u);
    for (const auto& p : all) total += pattern_probability(inst, p);
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(Distribution, MatchesPermutationSumOracle) {
  const ComplexMatrix u = haar_random_unitary(4, 12);
  const ProblemInstance inst(u, 2);
  const DistributionTable t = full_distribution(inst);
  ASSERT_EQ(t.size(), 6u);
  auto ref = testing::subsets(2, 4);
  std::sort(ref.begin(), ref.end(),
            [](const auto& a, const auto& b) { return testing::bit_value(a, 4) < testing::bit_value(b, 4); });
  for (std::size_t r = 0; r < 6; ++r) {
    EXPECT_NEAR(t.raw[r], testing::output_probability(u, ref[r]), 1e-14);
    EXPECT_EQ(t.pattern(r).occupied_modes(), ref[r]);
  }
}

TEST(Distribution, NormalizedSumsToOne) {
  const ProblemInstance inst(haar_random_unitary(9, 4), 3);
  const DistributionTable t = full_distribution(inst);
  EXPECT_EQ(t.size(), 84u);
  EXPECT_GT(t.collision_free_mass, 0.0);
  EXPECT_LE(t.collision_free_mass, 1.0);
  const auto norm = t.normalized();
  EXPECT_NEAR(std::accumulate(norm.begin(), norm.end(), 0.0), 1.0, 1e-12);
}

TEST(Distribution, IndependentOfThreadCount) {
  const ProblemInstance inst(haar_random_unitary(16, 2), 4);
  set_max_threads(1);
  const auto one = full_distribution(inst).raw;
  set_max_threads(4);
  const auto four = full_distribution(inst).raw;
  set_max_threads(0);
  EXPECT_EQ(one, four);
}

TEST(AssignValue, Strategies) {
  EXPECT_EQ(assign_value(OutputPattern({0, 0, 0, 1, 1, 1}), ValueStrategy::kBinaryDecimal), 7.0);
  EXPECT_EQ(assign_value(OutputPattern({1, 1, 1, 0, 0, 0}), ValueStrategy::kBinaryDecimal), 56.0);
  EXPECT_EQ(assign_value(OutputPattern({1, 1, 1, 0, 0, 0}), ValueStrategy::kSortOrder), 20.0);
  EXPECT_EQ(assign_value(OutputPattern({0, 0, 0, 1, 1, 1}), ValueStrategy::kSortOrder), 1.0);
  EXPECT_NEAR(-std::log10(6.24e-2), 1.204, 1e-3);

  const ComplexMatrix u = haar_random_unitary(6, 77);
  const ProblemInstance inst(u, 3);
  const OutputPattern p({0, 1, 0, 1, 1, 0});
  EXPECT_NEAR(assign_value(p, ValueStrategy::kNegLogP, &inst),
              -std::log10(testing::output_probability(u, {1, 3, 4})), 1e-12);
  EXPECT_THROW(assign_value(p, ValueStrategy::kNegLogP), Error);

  std::vector<int> wide(54, 0);
  wide[0] = 1;
  try {
    assign_value(OutputPattern(wide), ValueStrategy::kBinaryDecimal);
    ADD_FAILURE() << "expected word-length error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWordLength);
  }
}

TEST(AssignValue, SortOrderIsBijection) {
  const auto all = enumerate_collision_free(4, 8);
  std::vector<double> v;
  for (const auto& p : all) v.push_back(assign_value(p, ValueStrategy::kSortOrder));
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<double>(i + 1));
}

TEST(MatrixFile, RoundTripIsBitExact) {
  const ComplexMatrix u = haar_random_unitary(7, 99);
  const auto path = temp_path("u7.txt");
  write_matrix(path, u);
  EXPECT_EQ(read_unitary(path), u);
  EXPECT_EQ(read_matrix(path), u);
  std::filesystem::remove(path);
}

TEST(MatrixFile, Errors) {
  const auto path = temp_path("bad.txt");
  {
    std::ofstream f(path);
    f << "2\n1 0 1 0\n0 0 1 0\n";
  }
  EXPECT_NO_THROW(read_matrix(path));
  try {
    read_unitary(path);
    ADD_FAILURE() << "expected not-unitary";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotUnitary);
  }
  {
    std::ofstream f(path);
    f << "2\n1 0 0 0\n0 0 x 0\n";
  }
  try {
    read_matrix(path);
    ADD_FAILURE() << "expected parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
  {
    std::ofstream f(path);
    f << "2\n1 0 0 0\n";
  }
  EXPECT_THROW(read_matrix(path), Error);
  std::filesystem::remove(path);
  EXPECT_THROW(read_matrix(path), Error);
}

}  // namespace
}  // namespace bosonsamp
