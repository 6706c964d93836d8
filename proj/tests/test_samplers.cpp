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

#include <map>
#include <set>

#include "bosonic.hpp"
#include "error.hpp"
#include "oracles.hpp"
#include "parallel.hpp"
#include "pattern.hpp"
#include "rng.hpp"
#include "samplers.hpp"

namespace bosonsamp {
namespace {

std::vector<std::vector<int>> rows(const std::vector<int>& flat, int n) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < flat.size(); i += static_cast<std::size_t>(n)) {
    out.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i), flat.begin() + static_cast<std::ptrdiff_t>(i) + n);
  }
  return out;
}

std::vector<double> frequencies(const SampleRun& run) {
  std::vector<double> f(*binomial(static_cast<std::uint64_t>(run.modes), static_cast<std::uint64_t>(run.photons)), 0.0);
  for (std::size_t i = 0; i < run.sample_count(); ++i) f[rank_collision_free(run.sample(i), run.modes)] += 1.0;
  for (double& x : f) x /= static_cast<double>(run.sample_count());
  return f;
}

SamplerOptions options(SamplerKind kind, std::uint64_t count, std::uint64_t seed) {
  SamplerOptions o;
  o.kind = kind;
  o.count = count;
  o.seed = seed;
  return o;
}

TEST(Names, RoundTrip) {
  for (auto k : {SamplerKind::kBruteForce, SamplerKind::kRejection, SamplerKind::kMcmc, SamplerKind::kMis,
                 SamplerKind::kScMcmc, SamplerKind::kImprovedScMcmc}) {
    EXPECT_EQ(parse_sampler(to_string(k)), k);
  }
  for (auto k : {ProposalKind::kUniform, ProposalKind::kMov1p, ProposalKind::kDistinguishable}) {
    EXPECT_EQ(parse_proposal(to_string(k)), k);
  }
  EXPECT_EQ(to_string(SamplerKind::kImprovedScMcmc), "scmcmc-improved");
  EXPECT_FALSE(parse_sampler("gibbs").has_value());
}

TEST(Acceptance, ThresholdSemantics) {
  EXPECT_EQ(acceptance_probability(0.1, 0.2, 1.0, 1.0), 1.0);
  EXPECT_EQ(acceptance_probability(0.1, 0.1, 1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(acceptance_probability(0.4, 0.1, 1.0, 1.0), 0.25);
  EXPECT_FALSE(metropolis_accept(0.4, 0.1, 1.0, 1.0, 0.3));
  EXPECT_TRUE(metropolis_accept(0.4, 0.1, 1.0, 1.0, 0.2));
  EXPECT_FALSE(metropolis_accept(0.4, 0.1, 1.0, 1.0, 0.25));
  EXPECT_EQ(acceptance_probability(0.0, 0.0, 1.0, 1.0), 1.0);
  EXPECT_EQ(acceptance_probability(0.0, 0.3, 0.5, 0.1), 1.0);
  // Asymmetric proposal: min(1, p' g_b / (p g_f)).
  EXPECT_DOUBLE_EQ(acceptance_probability(0.5, 0.5, 0.4, 0.1), 0.25);
}

TEST(Proposal, Mov1pNeighbours) {
  Proposer prop(ProposalKind::kMov1p, 2, 4);
  Rng rng(1);
  const std::vector<int> cur{0, 1};
  std::set<std::vector<int>> seen;
  for (int i = 0; i < 400; ++i) {
    const ProposalDraw d = prop.propose(cur, rng);
    EXPECT_DOUBLE_EQ(d.g_forward, 0.25);
    EXPECT_DOUBLE_EQ(d.g_backward, 0.25);
    seen.insert(d.candidate);
  }
  EXPECT_EQ(seen, (std::set<std::vector<int>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}}));
  EXPECT_GT(prop.density(cur, std::vector<int>{0, 2}), 0.0);
  EXPECT_EQ(prop.density(cur, std::vector<int>{2, 3}), 0.0);
  EXPECT_EQ(prop.density(cur, cur), 0.0);
}

TEST(Proposal, UniformFrequencies) {
  Proposer prop(ProposalKind::kUniform, 2, 4);
  Rng rng(2);
  std::vector<int> counts(6, 0);
  const std::vector<int> cur{0, 1};
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const ProposalDraw d = prop.propose(cur, rng);
    EXPECT_DOUBLE_EQ(d.g_forward, 1.0 / 6.0);
    ++counts[rank_collision_free(d.candidate, 4)];
  }
  const double sigma = std::sqrt(draws * (1.0 / 6.0) * (5.0 / 6.0));
  for (int c : counts) EXPECT_NEAR(c, draws / 6.0, 4.0 * sigma);
}

TEST(Proposal, UniformBeyond64Bits) {
  Proposer prop(ProposalKind::kUniform, 15, 225);
  Rng rng(3);
  const std::vector<int> cur(15, 0);
  for (int i = 0; i < 100; ++i) {
    const ProposalDraw d = prop.propose(cur, rng);
    ASSERT_EQ(d.candidate.size(), 15u);
    EXPECT_TRUE(std::adjacent_find(d.candidate.begin(), d.candidate.end(), std::greater_equal<>()) ==
                d.candidate.end());
    EXPECT_LT(d.candidate.back(), 225);
  }
}

TEST(Proposal, DistinguishableWithIdentity) {
  const ComplexMatrix id = ComplexMatrix::identity(5);
  Proposer prop(ProposalKind::kDistinguishable, 3, 5, &id);
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const ProposalDraw d = prop.propose(std::vector<int>{0, 1, 2}, rng, 1.0);
    EXPECT_EQ(d.candidate, (std::vector<int>{0, 1, 2}));
  }
  EXPECT_EQ(prop.real_permanent_evals(), 50u);
}

TEST(Proposal, DistinguishableFollowsPerOfSquaredModuli) {
  // Collision-free draw frequencies are proportional to Per(|U_sub|^2).
  const ComplexMatrix u = haar_random_unitary(4, 5);
  Proposer prop(ProposalKind::kDistinguishable, 2, 4, &u);
  Rng rng(6);
  std::vector<double> counts(6, 0.0);
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    ++counts[rank_collision_free(prop.propose(std::vector<int>{0, 1}, rng).candidate, 4)];
  }
  std::vector<double> want(6);
  for (std::uint64_t r = 0; r < 6; ++r) {
    std::vector<int> occ(2);
    unrank_collision_free(r, 2, 4, occ);
    const int a = occ[0], b = occ[1];
    want[r] = std::norm(u(a, 0)) * std::norm(u(b, 1)) + std::norm(u(a, 1)) * std::norm(u(b, 0));
    EXPECT_NEAR(prop.density(std::vector<int>{0, 1}, occ), want[r], 1e-12);
  }
  const double total = std::accumulate(want.begin(), want.end(), 0.0);
  for (std::size_t r = 0; r < 6; ++r) EXPECT_NEAR(counts[r] / draws, want[r] / total, 0.01);
}

TEST(Chain, MarkovStepCountsOnePermanentPerCandidate) {
  const ProblemInstance inst(haar_random_unitary(6, 1), 3);
  Target target = Target::boson(inst);
  Proposer prop(ProposalKind::kUniform, 3, 6);
  ChainState chain = initial_chain(target, prop);
  EXPECT_EQ(chain.current, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(target.evaluations(), 1u);
  Rng pr(1, Stream::kProposal), ar(1, Stream::kAccept);
  for (int i = 0; i < 100; ++i) mcmc_step(chain, prop, target, pr, ar);
  EXPECT_EQ(target.evaluations(), 101u);
  EXPECT_EQ(chain.step_count, 100u);
  EXPECT_NEAR(chain.current_prob, testing::output_probability(inst.unitary(), chain.current), 1e-15);
}

TEST(CacheFillPoint, Formula) {
  EXPECT_EQ(cache_fill_point(4000, 200), 4021u);
  EXPECT_EQ(cache_fill_point(1, 2), 2u);
  EXPECT_THROW(cache_fill_point(10, 1), Error);
  std::mt19937_64 gen(8);
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t l = 1 + gen() % 5000;
    const std::uint64_t k = 2 + gen() % 500;
    EXPECT_EQ(cache_fill_point(l, k),
              static_cast<std::uint64_t>(std::ceil(static_cast<double>(l) / static_cast<double>(k - 1))) + l);
  }
}

TEST(SampleCacheTest, PhasesAndPermutation) {
  SampleCache cache(3, 1);
  EXPECT_EQ(cache.phase(), SampleCache::Phase::kFilling);
  for (int i = 0; i < 3; ++i) cache.add(std::vector<int>{i}, static_cast<std::uint64_t>(i));
  EXPECT_TRUE(cache.full());
  EXPECT_EQ(cache.phase(), SampleCache::Phase::kWorking);
  EXPECT_THROW(cache.add(std::vector<int>{9}, 9), Error);
  Rng rng(1);
  std::vector<std::uint64_t> out;
  auto emit = [&](std::span<const int> m, std::uint64_t src) {
    EXPECT_EQ(static_cast<std::uint64_t>(m[0]), src);
    out.push_back(src);
  };
  for (int i = 3; i < 10; ++i) cache.exchange(std::vector<int>{i}, static_cast<std::uint64_t>(i), rng, emit);
  cache.drain(rng, emit);
  EXPECT_EQ(cache.phase(), SampleCache::Phase::kCleaning);
  EXPECT_EQ(cache.size(), 0u);
  std::sort(out.begin(), out.end());
  for (std::uint64_t i = 0; i < 10; ++i) EXPECT_EQ(out[i], i);
  EXPECT_THROW(SampleCache(0, 1), Error);
}

TEST(BruteForce, PointMassAndUniform) {
  DistributionTable t;
  t.photons = 3;
  t.modes = 6;
  t.raw.assign(20, 0.0);
  t.raw[7] = 1.0;
  const SampleRun point = brute_force_sample(t, t.raw, 100, 1);
  for (std::size_t i = 0; i < point.sample_count(); ++i) EXPECT_EQ(rank_collision_free(point.sample(i), 6), 7u);

  const std::vector<double> flat(20, 0.05);
  const SampleRun uni = brute_force_sample(t, flat, 200000, 2);
  for (double f : frequencies(uni)) EXPECT_NEAR(f, 0.05, 0.003);
  EXPECT_THROW(brute_force_sample(t, std::vector<double>{}, 1, 1), Error);
  EXPECT_THROW(brute_force_sample(t, std::vector<double>(20, 0.1), 1, 1), Error);
}

TEST(BruteForce, MatchesTable) {
  const ProblemInstance inst(haar_random_unitary(6, 21), 3);
  const SampleRun run = run_sampler(inst, options(SamplerKind::kBruteForce, 2000, 3));
  EXPECT_EQ(run.sample_count(), 2000u);
  const auto table = full_distribution(inst).normalized();
  EXPECT_GE(testing::bhattacharyya_similarity(frequencies(run), table), 0.99);
}

TEST(Rejection, UniformTargetAcceptsEverything) {
  Target uniform(2, 4, [](std::span<const int>) { return 1.0 / 6.0; });
  const SampleRun run = rejection_sample(uniform, 1.0, 1000, 5);
  EXPECT_EQ(run.sample_count(), 1000u);
  EXPECT_EQ(run.candidate_count, 1000u);
}

TEST(Rejection, PointMassAcceptanceRate) {
  Target point(2, 4, [](std::span<const int> s) { return s[0] == 1 && s[1] == 3 ? 1.0 : 0.0; });
  const SampleRun run = rejection_sample(point, 6.0, 2000, 6);
  const double rate = 2000.0 / static_cast<double>(run.candidate_count);
  EXPECT_NEAR(rate, 1.0 / 6.0, 0.02);
  for (std::size_t i = 0; i < run.sample_count(); ++i) EXPECT_EQ(run.sample(i)[0], 1);
}

TEST(Rejection, LambdaTooSmall) {
  Target point(2, 4, [](std::span<const int> s) { return s[0] == 1 && s[1] == 3 ? 1.0 : 0.0; });
  try {
    rejection_sample(point, 2.0, 100, 1);
    ADD_FAILURE() << "expected lambda error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLambdaTooSmall);
  }
  const ProblemInstance inst(haar_random_unitary(4, 9), 2);
  SamplerOptions o = options(SamplerKind::kRejection, 1000, 1);
  o.lambda = 1.0;
  EXPECT_THROW(run_sampler(inst, o), Error);
}

TEST(Rejection, ExactLambdaAcceptanceRate) {
  const ProblemInstance inst(haar_random_unitary(4, 13), 2);
  const auto table = full_distribution(inst).normalized();
  const double lambda = 6.0 * *std::max_element(table.begin(), table.end());
  const SampleRun run = run_sampler(inst, options(SamplerKind::kRejection, 20000, 2));
  EXPECT_NEAR(run.options.lambda, lambda, 1e-12);
  const double trials = static_cast<double>(run.candidate_count);
  const double p = 1.0 / lambda;
  EXPECT_NEAR(20000.0 / trials, p, 3.0 * std::sqrt(p * (1 - p) / trials) + 1e-3);
}

TEST(Mis, JumpOneEqualsPlainChain) {
  const ProblemInstance inst(haar_random_unitary(6, 2), 3);
  SamplerOptions mis = options(SamplerKind::kMis, 500, 4);
  mis.jump = 1;
  const SampleRun a = run_sampler(inst, mis);
  const SampleRun b = run_sampler(inst, options(SamplerKind::kMcmc, 500, 4));
  EXPECT_EQ(a.samples, b.samples);
}

TEST(Mis, CostPerSample) {
  const ProblemInstance inst(haar_random_unitary(6, 2), 3);
  SamplerOptions o = options(SamplerKind::kMis, 300, 5);
  o.jump = 100;
  const SampleRun run = run_sampler(inst, o);
  EXPECT_EQ(run.sample_count(), 300u);
  EXPECT_NEAR(static_cast<double>(run.permanent_evals), 100.0 * 300.0, 100.0);
  EXPECT_EQ(run.warmup_evals, 101u);
}

class ScMcmcPermutation : public ::testing::TestWithParam<int> {};

TEST_P(ScMcmcPermutation, OutputIsReorderedCandidates) {
  std::mt19937_64 gen(static_cast<std::uint64_t>(GetParam()));
  const int m = 4 + static_cast<int>(gen() % 4);
  const int n = 1 + static_cast<int>(gen() % 3);
  const ProblemInstance inst(haar_random_unitary(m, gen()), n);
  SamplerOptions o = options(gen() % 2 ? SamplerKind::kScMcmc : SamplerKind::kImprovedScMcmc, 50 + gen() % 3000, gen());
  o.cache_size = 1 + gen() % 400;
  o.jump = 2 + gen() % 50;
  o.retain_candidates = true;
  const SampleRun run = run_sampler(inst, o);
  EXPECT_EQ(run.sample_count(), o.count);
  auto out = rows(run.samples, n);
  auto cand = rows(run.candidates, n);
  std::sort(out.begin(), out.end());
  std::sort(cand.begin(), cand.end());
  EXPECT_EQ(out, cand);
  std::vector<std::uint64_t> src = run.sources;
  std::sort(src.begin(), src.end());
  for (std::size_t i = 0; i < src.size(); ++i) EXPECT_EQ(src[i], i);
  EXPECT_EQ(run.permanent_evals, o.count);
}

INSTANTIATE_TEST_SUITE_P(Randomized, ScMcmcPermutation, ::testing::Range(0, 20));

TEST(ScMcmc, SingleSlotCacheKeepsOrder) {
  const ProblemInstance inst(haar_random_unitary(6, 3), 2);
  SamplerOptions o = options(SamplerKind::kScMcmc, 1000, 8);
  o.cache_size = 1;
  o.retain_candidates = true;
  const SampleRun run = run_sampler(inst, o);
  EXPECT_EQ(run.samples, run.candidates);
}

TEST(ScMcmc, DiscardCacheDropsResidue) {
  const ProblemInstance inst(haar_random_unitary(6, 3), 2);
  SamplerOptions o = options(SamplerKind::kScMcmc, 1000, 8);
  o.cache_size = 100;
  o.discard_cache = true;
  EXPECT_EQ(run_sampler(inst, o).sample_count(), 900u);
}

TEST(ImprovedScMcmc, FillPointMatchesFormula) {
  std::mt19937_64 gen(99);
  const ProblemInstance inst(haar_random_unitary(5, 1), 2);
  for (int i = 0; i < 10; ++i) {
    SamplerOptions o = options(SamplerKind::kImprovedScMcmc, 0, gen());
    o.cache_size = 1 + gen() % 300;
    o.jump = 2 + gen() % 40;
    const std::uint64_t fill = cache_fill_point(o.cache_size, o.jump);
    o.count = fill + 10;
    EXPECT_EQ(run_sampler(inst, o).cache_full_after, fill);
    o.count = fill - 1;
    EXPECT_EQ(run_sampler(inst, o).cache_full_after, 0u);
  }
}

TEST(ImprovedScMcmc, StoppingWhileFillingIsThinningPlusDrain) {
  const ProblemInstance inst(haar_random_unitary(6, 4), 3);
  SamplerOptions o = options(SamplerKind::kImprovedScMcmc, 3000, 12);
  o.cache_size = 4000;
  o.jump = 200;
  o.retain_candidates = true;
  const SampleRun imp = run_sampler(inst, o);
  SamplerOptions mis = options(SamplerKind::kMis, 15, 12);
  mis.jump = 200;
  const SampleRun thin = run_sampler(inst, mis);
  ASSERT_EQ(imp.sample_count(), 3000u);
  const std::vector<int> head(imp.samples.begin(), imp.samples.begin() + 15 * 3);
  EXPECT_EQ(head, thin.samples);
  for (std::size_t i = 15; i < imp.sources.size(); ++i) EXPECT_NE(imp.sources[i] % 200, 0u);
}

TEST(Samplers, Deterministic) {
  const ProblemInstance inst(haar_random_unitary(8, 6), 3);
  for (auto kind : {SamplerKind::kBruteForce, SamplerKind::kRejection, SamplerKind::kMcmc, SamplerKind::kMis,
                    SamplerKind::kScMcmc, SamplerKind::kImprovedScMcmc}) {
    SamplerOptions o = options(kind, 500, 77);
    o.cache_size = 50;
    o.jump = 5;
    set_max_threads(1);
    const SampleRun a = run_sampler(inst, o);
    set_max_threads(3);
    const SampleRun b = run_sampler(inst, o);
    set_max_threads(0);
    EXPECT_EQ(a.samples, b.samples) << to_string(kind);
    EXPECT_EQ(a.permanent_evals, b.permanent_evals);
  }
}

TEST(Samplers, ChainMatchesTableSmallInstance) {
  const ProblemInstance inst(haar_random_unitary(4, 31), 2);
  const auto table = full_distribution(inst).normalized();
  for (auto prop : {ProposalKind::kUniform, ProposalKind::kMov1p, ProposalKind::kDistinguishable}) {
    SamplerOptions o = options(SamplerKind::kMcmc, 200000, 5);
    o.proposal = prop;
    const SampleRun run = run_sampler(inst, o);
    EXPECT_GE(testing::bhattacharyya_similarity(frequencies(run), table), 0.998) << to_string(prop);
    if (prop == ProposalKind::kDistinguishable) EXPECT_EQ(run.real_permanent_evals, 200000u);
  }
}

TEST(Samplers, InvalidParameters) {
  const ProblemInstance inst(haar_random_unitary(4, 1), 2);
  SamplerOptions o = options(SamplerKind::kImprovedScMcmc, 10, 1);
  o.jump = 1;
  EXPECT_THROW(run_sampler(inst, o), Error);
  o = options(SamplerKind::kScMcmc, 10, 1);
  o.cache_size = 0;
  EXPECT_THROW(run_sampler(inst, o), Error);
  o = options(SamplerKind::kMis, 10, 1);
  o.jump = 0;
  EXPECT_THROW(run_sampler(inst, o), Error);
  EXPECT_THROW(ProblemInstance(haar_random_unitary(3, 1), 4), Error);
}

}  // namespace
}  // namespace bosonsamp
