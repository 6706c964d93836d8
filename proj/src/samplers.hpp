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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bosonic.hpp"
#include "rng.hpp"

namespace bosonsamp {

enum class ProposalKind { kUniform, kMov1p, kDistinguishable };
enum class SamplerKind { kBruteForce, kRejection, kMcmc, kMis, kScMcmc, kImprovedScMcmc };

std::string_view to_string(ProposalKind kind) noexcept;
std::string_view to_string(SamplerKind kind) noexcept;
std::optional<ProposalKind> parse_proposal(std::string_view name) noexcept;
std::optional<SamplerKind> parse_sampler(std::string_view name) noexcept;

/// Probability oracle over collision-free patterns (ascending occupied
/// modes). Counts evaluations and the time spent in them.
class Target {
 public:
  using ProbabilityFn = std::function<double(std::span<const int>)>;

  Target(int photons, int modes, ProbabilityFn fn, const ComplexMatrix* unitary = nullptr);

  /// Raw output probabilities |Per|^2 of a boson-sampling instance.
  static Target boson(const ProblemInstance& inst);

  int photons() const noexcept { return photons_; }
  int modes() const noexcept { return modes_; }
  const ComplexMatrix* unitary() const noexcept { return unitary_; }

  double evaluate(std::span<const int> occupied);

  std::uint64_t evaluations() const noexcept { return evaluations_; }
  double seconds() const noexcept { return seconds_; }

 private:
  int photons_;
  int modes_;
  ProbabilityFn fn_;
  const ComplexMatrix* unitary_;
  std::uint64_t evaluations_ = 0;
  double seconds_ = 0.0;
};

struct ProposalDraw {
  std::vector<int> candidate;
  double g_forward = 0.0;   ///< g(candidate | current)
  double g_backward = 0.0;  ///< g(current | candidate)
};

/// Candidate generator for the Metropolis-Hastings chain.
///
/// uniform: unranks a uniform integer in [0, C(m,n)) (Floyd's subset draw
/// when C(m,n) exceeds 64 bits); g = 1/C(m,n).
/// mov1p: moves one photon to one empty mode; g = 1/(n(m-n)).
/// distinguishable: photon j lands in mode i with probability |u_ij|^2,
/// redrawn until collision-free; g is proportional to Per(|U_sub|^2) and
/// costs one real permanent per draw.
class Proposer {
 public:
  Proposer(ProposalKind kind, int photons, int modes, const ComplexMatrix* unitary = nullptr);

  ProposalKind kind() const noexcept { return kind_; }

  /// `current_weight` is g(current) for the distinguishable proposal
  /// (ignored otherwise); pass nullopt to have it recomputed.
  ProposalDraw propose(std::span<const int> current, Rng& rng,
                       std::optional<double> current_weight = std::nullopt);

  /// g(to | from) up to a constant common to all pairs. Used to build
  /// explicit transition matrices.
  double density(std::span<const int> from, std::span<const int> to) const;

  std::uint64_t real_permanent_evals() const noexcept { return real_evals_; }

 private:
  ProposalKind kind_;
  int photons_;
  int modes_;
  const ComplexMatrix* unitary_;
  std::vector<std::vector<double>> column_cdf_;
  std::uint64_t real_evals_ = 0;
};

/// Metropolis-Hastings acceptance: P = min(1, p' g_b / (p g_f)), with P = 1
/// when p = 0. Accept iff u < P.
double acceptance_probability(double p_current, double p_candidate, double g_forward,
                              double g_backward) noexcept;
bool metropolis_accept(double p_current, double p_candidate, double g_forward,
                       double g_backward, double u) noexcept;

struct ChainState {
  std::vector<int> current;
  double current_prob = 0.0;
  double current_weight = 0.0;  ///< distinguishable proposal weight of `current`
  std::uint64_t step_count = 0;
  std::uint64_t permanent_evals = 0;
  std::uint64_t accepted = 0;
};

/// Chain at the standard input pattern with its probability evaluated.
ChainState initial_chain(Target& target, Proposer& proposer);

/// One MH step: one target evaluation, one accept draw. Returns true on
/// acceptance; on rejection the current state repeats.
bool mcmc_step(ChainState& chain, Proposer& proposer, Target& target, Rng& proposal_rng,
               Rng& accept_rng);

/// Fixed-capacity sample cache of the sample-caching sampler.
class SampleCache {
 public:
  enum class Phase { kFilling, kWorking, kCleaning };

  SampleCache(std::size_t capacity, int stride);

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return sources_.size(); }
  bool full() const noexcept { return size() == capacity_; }
  Phase phase() const noexcept { return phase_; }

  /// Stores a sample during filling; switches to working once full.
  void add(std::span<const int> modes, std::uint64_t source);

  /// Working phase: outputs a uniformly chosen slot through `emit`, then
  /// stores the new sample in that slot.
  template <typename Emit>
  void exchange(std::span<const int> modes, std::uint64_t source, Rng& rng, Emit&& emit) {
    const auto slot = static_cast<std::size_t>(rng.uniform_below(capacity_));
    emit(slot_modes(slot), sources_[slot]);
    store(slot, modes, source);
  }

  /// Cleaning phase: outputs everything in uniformly random order.
  template <typename Emit>
  void drain(Rng& rng, Emit&& emit) {
    phase_ = Phase::kCleaning;
    std::vector<int> tmp(static_cast<std::size_t>(stride_));
    while (!sources_.empty()) {
      const auto slot = static_cast<std::size_t>(rng.uniform_below(sources_.size()));
      const std::size_t last = sources_.size() - 1;
      emit(slot_modes(slot), sources_[slot]);
      if (slot != last) {
        auto src = slot_modes(last);
        std::copy(src.begin(), src.end(), tmp.begin());
        store(slot, tmp, sources_[last]);
      }
      sources_.pop_back();
      modes_.resize(sources_.size() * static_cast<std::size_t>(stride_));
    }
  }

  /// Cleaning phase without output.
  void discard();

 private:
  std::span<const int> slot_modes(std::size_t slot) const {
    return {modes_.data() + slot * static_cast<std::size_t>(stride_), static_cast<std::size_t>(stride_)};
  }
  void store(std::size_t slot, std::span<const int> modes, std::uint64_t source);

  std::size_t capacity_;
  int stride_;
  Phase phase_ = Phase::kFilling;
  std::vector<int> modes_;
  std::vector<std::uint64_t> sources_;
};

struct SamplerOptions {
  SamplerKind kind = SamplerKind::kImprovedScMcmc;
  ProposalKind proposal = ProposalKind::kUniform;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  std::uint64_t cache_size = 4000;  ///< L
  std::uint64_t jump = 200;         ///< K
  double lambda = 0.0;              ///< rejection bound; <= 0 means exact
  std::uint64_t burn_in = 100;
  bool retain_candidates = false;
  bool discard_cache = false;
};

/// Output of one sampling run. Samples are stored flat with stride n.
struct SampleRun {
  SamplerOptions options;
  int photons = 0;
  int modes = 0;

  std::vector<int> samples;
  /// Candidate index each output sample came from (chain samplers with
  /// retention only).
  std::vector<std::uint64_t> sources;
  /// Full post-burn-in candidate sequence (retention only).
  std::vector<int> candidates;
  bool candidates_retained = false;

  /// Target evaluations while producing candidates (or trials, or table
  /// entries). Excludes warm-up.
  std::uint64_t permanent_evals = 0;
  /// Initial-state evaluation plus burn-in steps.
  std::uint64_t warmup_evals = 0;
  std::uint64_t real_permanent_evals = 0;
  std::uint64_t acceptance_count = 0;
  std::uint64_t candidate_count = 0;
  /// Candidates consumed when the improved sampler's cache became full
  /// (0 if the run ended while filling).
  std::uint64_t cache_full_after = 0;

  double wall_seconds = 0.0;
  double permanent_seconds = 0.0;

  std::size_t sample_count() const noexcept {
    return photons == 0 ? 0 : samples.size() / static_cast<std::size_t>(photons);
  }
  std::span<const int> sample(std::size_t i) const {
    return {samples.data() + i * static_cast<std::size_t>(photons), static_cast<std::size_t>(photons)};
  }
  std::size_t candidate_sample_count() const noexcept {
    return photons == 0 ? 0 : candidates.size() / static_cast<std::size_t>(photons);
  }
  std::span<const int> candidate(std::size_t i) const {
    return {candidates.data() + i * static_cast<std::size_t>(photons), static_cast<std::size_t>(photons)};
  }
};

/// Number of candidates after which the improved sampler's cache is full:
/// ceil(L / (K - 1)) + L.
std::uint64_t cache_fill_point(std::uint64_t cache_size, std::uint64_t jump);

/// Inverse-CDF draws over a normalized table in canonical order.
SampleRun brute_force_sample(const DistributionTable& table, std::span<const double> normalized,
                             std::uint64_t count, std::uint64_t seed);

/// Rejection sampling with the uniform proposal against `target`, whose
/// probabilities must satisfy f(x) <= lambda / C(m,n).
SampleRun rejection_sample(Target& target, double lambda, std::uint64_t count, std::uint64_t seed);

/// Plain chain: every post-burn-in candidate is emitted.
SampleRun mcmc_sample(Target& target, const SamplerOptions& options);

/// Thinning: emits candidates 0, K, 2K, ... until `count` samples.
SampleRun mis_sample(Target& target, const SamplerOptions& options);

/// Sample caching with a cache of L; `count` candidates, `count` outputs.
SampleRun sc_mcmc_sample(Target& target, const SamplerOptions& options);

/// Sample caching that thins while the cache fills.
SampleRun improved_sc_mcmc_sample(Target& target, const SamplerOptions& options);

/// Dispatches on options.kind. Brute force and rejection work on the
/// collision-free-normalized distribution; the chain samplers use raw
/// probabilities.
SampleRun run_sampler(const ProblemInstance& inst, const SamplerOptions& options);

}  // namespace bosonsamp
