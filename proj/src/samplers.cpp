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

#include "samplers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "error.hpp"

namespace bosonsamp {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kMaxDistinguishableRedraws = 10'000'000;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_target_shape(const Target& target) {
  if (target.photons() < 1 || target.photons() > target.modes()) {
    throw Error(ErrorCode::kInvalidArgument, "target needs 1 <= n <= m");
  }
}

// Collects output samples and, with retention, their candidate indices and
// the candidate sequence itself.
class Recorder {
 public:
  Recorder(SampleRun& run, Target& target, bool retain)
      : run_(run), target_(target), retain_(retain), start_(Clock::now()),
        evals_before_(target.evaluations()), seconds_before_(target.seconds()) {
    run_.candidates_retained = retain;
  }

  void mark_warmup_done() { warmup_done_ = target_.evaluations(); }

  void candidate(std::span<const int> modes) {
    ++run_.candidate_count;
    if (retain_) run_.candidates.insert(run_.candidates.end(), modes.begin(), modes.end());
  }

  void emit(std::span<const int> modes, std::uint64_t source) {
    run_.samples.insert(run_.samples.end(), modes.begin(), modes.end());
    if (retain_) run_.sources.push_back(source);
  }

  void finish() {
    run_.warmup_evals = warmup_done_ - evals_before_;
    run_.permanent_evals = target_.evaluations() - warmup_done_;
    run_.permanent_seconds = target_.seconds() - seconds_before_;
    run_.wall_seconds = seconds_since(start_);
  }

 private:
  SampleRun& run_;
  Target& target_;
  bool retain_;
  Clock::time_point start_;
  std::uint64_t evals_before_;
  std::uint64_t warmup_done_ = 0;
  double seconds_before_;
};

// Post-burn-in candidate source for the chain samplers.
class Chain {
 public:
  Chain(Target& target, const SamplerOptions& options, Recorder& recorder)
      : target_(target),
        proposer_(options.proposal, target.photons(), target.modes(), target.unitary()),
        proposal_rng_(options.seed, Stream::kProposal),
        accept_rng_(options.seed, Stream::kAccept) {
    state_ = initial_chain(target_, proposer_);
    for (std::uint64_t i = 0; i < options.burn_in; ++i) {
      mcmc_step(state_, proposer_, target_, proposal_rng_, accept_rng_);
    }
    accepted_after_burn_in_ = state_.accepted;
    real_evals_after_burn_in_ = proposer_.real_permanent_evals();
    recorder.mark_warmup_done();
  }

  std::span<const int> next() {
    mcmc_step(state_, proposer_, target_, proposal_rng_, accept_rng_);
    return state_.current;
  }

  void finish(SampleRun& run) const {
    run.acceptance_count = state_.accepted - accepted_after_burn_in_;
    run.real_permanent_evals = proposer_.real_permanent_evals() - real_evals_after_burn_in_;
  }

 private:
  Target& target_;
  Proposer proposer_;
  Rng proposal_rng_;
  Rng accept_rng_;
  ChainState state_;
  std::uint64_t accepted_after_burn_in_ = 0;
  std::uint64_t real_evals_after_burn_in_ = 0;
};

SampleRun start_run(const Target& target, const SamplerOptions& options) {
  check_target_shape(target);
  SampleRun run;
  run.options = options;
  run.photons = target.photons();
  run.modes = target.modes();
  return run;
}

}  // namespace

std::string_view to_string(ProposalKind kind) noexcept {
  switch (kind) {
    case ProposalKind::kUniform: return "uniform";
    case ProposalKind::kMov1p: return "mov1p";
    case ProposalKind::kDistinguishable: return "distinguishable";
  }
  return "unknown";
}

std::string_view to_string(SamplerKind kind) noexcept {
  switch (kind) {
    case SamplerKind::kBruteForce: return "brute";
    case SamplerKind::kRejection: return "rejection";
    case SamplerKind::kMcmc: return "mcmc";
    case SamplerKind::kMis: return "mis";
    case SamplerKind::kScMcmc: return "scmcmc";
    case SamplerKind::kImprovedScMcmc: return "scmcmc-improved";
  }
  return "unknown";
}

std::optional<ProposalKind> parse_proposal(std::string_view name) noexcept {
  for (auto k : {ProposalKind::kUniform, ProposalKind::kMov1p, ProposalKind::kDistinguishable}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::optional<SamplerKind> parse_sampler(std::string_view name) noexcept {
  for (auto k : {SamplerKind::kBruteForce, SamplerKind::kRejection, SamplerKind::kMcmc,
                 SamplerKind::kMis, SamplerKind::kScMcmc, SamplerKind::kImprovedScMcmc}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

Target::Target(int photons, int modes, ProbabilityFn fn, const ComplexMatrix* unitary)
    : photons_(photons), modes_(modes), fn_(std::move(fn)), unitary_(unitary) {}

Target Target::boson(const ProblemInstance& inst) {
  const ComplexMatrix* u = &inst.unitary();
  return Target(inst.photons(), inst.modes(),
                [u](std::span<const int> occupied) { return collision_free_probability(*u, occupied); },
                u);
}

double Target::evaluate(std::span<const int> occupied) {
  const auto start = Clock::now();
  const double p = fn_(occupied);
  seconds_ += seconds_since(start);
  ++evaluations_;
  return p;
}

Proposer::Proposer(ProposalKind kind, int photons, int modes, const ComplexMatrix* unitary)
    : kind_(kind), photons_(photons), modes_(modes), unitary_(unitary) {
  if (kind_ != ProposalKind::kDistinguishable) return;
  if (unitary_ == nullptr || unitary_->dim() != modes) {
    throw Error(ErrorCode::kInvalidArgument, "distinguishable proposal needs the m x m unitary");
  }
  column_cdf_.resize(static_cast<std::size_t>(photons));
  for (int j = 0; j < photons; ++j) {
    auto& cdf = column_cdf_[static_cast<std::size_t>(j)];
    cdf.resize(static_cast<std::size_t>(modes));
    double acc = 0.0;
    for (int i = 0; i < modes; ++i) {
      acc += std::norm((*unitary_)(i, j));
      cdf[static_cast<std::size_t>(i)] = acc;
    }
  }
}

ProposalDraw Proposer::propose(std::span<const int> current, Rng& rng,
                               std::optional<double> current_weight) {
  ProposalDraw draw;
  draw.candidate.resize(static_cast<std::size_t>(photons_));
  auto& cand = draw.candidate;

  switch (kind_) {
    case ProposalKind::kUniform: {
      const auto total = binomial(static_cast<std::uint64_t>(modes_), static_cast<std::uint64_t>(photons_));
      if (total) {
        unrank_collision_free(rng.uniform_below(*total), photons_, modes_, cand);
      } else {
        // Floyd's algorithm: uniform n-subset of [0, m).
        std::vector<int> chosen;
        chosen.reserve(static_cast<std::size_t>(photons_));
        for (int j = modes_ - photons_; j < modes_; ++j) {
          const auto t = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(j) + 1));
          if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
            chosen.push_back(t);
          } else {
            chosen.push_back(j);
          }
        }
        std::sort(chosen.begin(), chosen.end());
        std::copy(chosen.begin(), chosen.end(), cand.begin());
      }
      draw.g_forward = draw.g_backward =
          1.0 / binomial_real(static_cast<std::uint64_t>(modes_), static_cast<std::uint64_t>(photons_));
      return draw;
    }
    case ProposalKind::kMov1p: {
      std::copy(current.begin(), current.end(), cand.begin());
      const int empty = modes_ - photons_;
      if (empty == 0) {
        draw.g_forward = draw.g_backward = 1.0;
        return draw;
      }
      const auto which = static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(photons_)));
      auto target_rank = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(empty)));
      // target_rank-th unoccupied mode, walking the sorted occupied list.
      int dest = target_rank;
      for (int mode : current) {
        if (mode <= dest) ++dest;
        else break;
      }
      cand[which] = dest;
      std::sort(cand.begin(), cand.end());
      draw.g_forward = draw.g_backward = 1.0 / (static_cast<double>(photons_) * empty);
      return draw;
    }
    case ProposalKind::kDistinguishable: {
      std::vector<char> used(static_cast<std::size_t>(modes_));
      for (std::uint64_t attempt = 0;; ++attempt) {
        if (attempt == kMaxDistinguishableRedraws) {
          throw Error(ErrorCode::kInvalidArgument,
                      "distinguishable proposal found no collision-free draw");
        }
        std::fill(used.begin(), used.end(), 0);
        bool collision = false;
        for (int j = 0; j < photons_; ++j) {
          const auto& cdf = column_cdf_[static_cast<std::size_t>(j)];
          const double u = rng.uniform01() * cdf.back();
          auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
          if (it == cdf.end()) --it;
          const auto mode = static_cast<std::size_t>(it - cdf.begin());
          if (used[mode]) collision = true;
          used[mode] = 1;
          cand[static_cast<std::size_t>(j)] = static_cast<int>(mode);
        }
        if (!collision) break;
      }
      std::sort(cand.begin(), cand.end());
      draw.g_forward = distinguishable_weight(*unitary_, cand);
      ++real_evals_;
      if (current_weight) {
        draw.g_backward = *current_weight;
      } else {
        draw.g_backward = distinguishable_weight(*unitary_, current);
        ++real_evals_;
      }
      return draw;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown proposal kind");
}

double Proposer::density(std::span<const int> from, std::span<const int> to) const {
  switch (kind_) {
    case ProposalKind::kUniform:
      return 1.0 / binomial_real(static_cast<std::uint64_t>(modes_), static_cast<std::uint64_t>(photons_));
    case ProposalKind::kMov1p: {
      std::size_t shared = 0;
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < from.size() && j < to.size()) {
        if (from[i] == to[j]) {
          ++shared, ++i, ++j;
        } else if (from[i] < to[j]) {
          ++i;
        } else {
          ++j;
        }
      }
      if (shared + 1 != from.size()) return 0.0;
      return 1.0 / (static_cast<double>(photons_) * (modes_ - photons_));
    }
    case ProposalKind::kDistinguishable:
      return distinguishable_weight(*unitary_, to);
  }
  return 0.0;
}

double acceptance_probability(double p_current, double p_candidate, double g_forward,
                              double g_backward) noexcept {
  if (p_current <= 0.0 || g_forward <= 0.0) return 1.0;
  return std::min(1.0, (p_candidate * g_backward) / (p_current * g_forward));
}

bool metropolis_accept(double p_current, double p_candidate, double g_forward, double g_backward,
                       double u) noexcept {
  return u < acceptance_probability(p_current, p_candidate, g_forward, g_backward);
}

ChainState initial_chain(Target& target, Proposer& proposer) {
  ChainState chain;
  chain.current.resize(static_cast<std::size_t>(target.photons()));
  for (int i = 0; i < target.photons(); ++i) chain.current[static_cast<std::size_t>(i)] = i;
  chain.current_prob = target.evaluate(chain.current);
  if (proposer.kind() == ProposalKind::kDistinguishable) {
    chain.current_weight = proposer.density(chain.current, chain.current);
  }
  return chain;
}

bool mcmc_step(ChainState& chain, Proposer& proposer, Target& target, Rng& proposal_rng,
               Rng& accept_rng) {
  std::optional<double> weight;
  if (proposer.kind() == ProposalKind::kDistinguishable) weight = chain.current_weight;
  ProposalDraw draw = proposer.propose(chain.current, proposal_rng, weight);
  const double p_candidate = target.evaluate(draw.candidate);
  ++chain.permanent_evals;
  ++chain.step_count;
  const double u = accept_rng.uniform01();
  if (!metropolis_accept(chain.current_prob, p_candidate, draw.g_forward, draw.g_backward, u)) {
    return false;
  }
  chain.current = std::move(draw.candidate);
  chain.current_prob = p_candidate;
  chain.current_weight = draw.g_forward;
  ++chain.accepted;
  return true;
}

SampleCache::SampleCache(std::size_t capacity, int stride) : capacity_(capacity), stride_(stride) {
  if (capacity_ == 0) throw Error(ErrorCode::kInvalidArgument, "cache size L must be >= 1");
  modes_.reserve(capacity_ * static_cast<std::size_t>(stride_));
  sources_.reserve(capacity_);
}

void SampleCache::add(std::span<const int> modes, std::uint64_t source) {
  if (full()) throw Error(ErrorCode::kInvalidArgument, "add() on a full cache");
  modes_.insert(modes_.end(), modes.begin(), modes.end());
  sources_.push_back(source);
  if (full()) phase_ = Phase::kWorking;
}

void SampleCache::store(std::size_t slot, std::span<const int> modes, std::uint64_t source) {
  std::copy(modes.begin(), modes.end(), modes_.begin() + static_cast<std::ptrdiff_t>(slot * static_cast<std::size_t>(stride_)));
  sources_[slot] = source;
}

void SampleCache::discard() {
  phase_ = Phase::kCleaning;
  modes_.clear();
  sources_.clear();
}

std::uint64_t cache_fill_point(std::uint64_t cache_size, std::uint64_t jump) {
  if (jump < 2) throw Error(ErrorCode::kInvalidArgument, "jump K must be >= 2");
  return (cache_size + jump - 2) / (jump - 1) + cache_size;
}

SampleRun brute_force_sample(const DistributionTable& table, std::span<const double> normalized,
                             std::uint64_t count, std::uint64_t seed) {
  if (normalized.empty()) throw Error(ErrorCode::kInvalidArgument, "empty distribution table");
  double total = 0.0;
  std::vector<double> cdf(normalized.size());
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    total += normalized[i];
    cdf[i] = total;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "table is not normalized (sum " + std::to_string(total) + ")");
  }

  const auto start = Clock::now();
  SampleRun run;
  run.options.kind = SamplerKind::kBruteForce;
  run.options.count = count;
  run.options.seed = seed;
  run.photons = table.photons;
  run.modes = table.modes;
  run.permanent_evals = table.size();
  run.candidate_count = count;
  run.acceptance_count = count;
  run.samples.reserve(count * static_cast<std::size_t>(table.photons));

  Rng rng(seed, Stream::kDraw);
  std::vector<int> occupied(static_cast<std::size_t>(table.photons));
  for (std::uint64_t s = 0; s < count; ++s) {
    const double u = rng.uniform01() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Never land on a zero-probability tail entry.
    while (it != cdf.begin() && (it == cdf.end() || normalized[static_cast<std::size_t>(it - cdf.begin())] == 0.0)) --it;
    unrank_collision_free(static_cast<std::uint64_t>(it - cdf.begin()), table.photons, table.modes, occupied);
    run.samples.insert(run.samples.end(), occupied.begin(), occupied.end());
  }
  run.wall_seconds = seconds_since(start);
  return run;
}

SampleRun rejection_sample(Target& target, double lambda, std::uint64_t count, std::uint64_t seed) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::kInvalidArgument, "lambda must be positive");
  SamplerOptions options;
  options.kind = SamplerKind::kRejection;
  options.count = count;
  options.seed = seed;
  options.lambda = lambda;
  options.burn_in = 0;
  SampleRun run = start_run(target, options);
  Recorder rec(run, target, false);
  rec.mark_warmup_done();

  Proposer proposer(ProposalKind::kUniform, target.photons(), target.modes());
  Rng proposal_rng(seed, Stream::kProposal);
  Rng accept_rng(seed, Stream::kAccept);
  const std::vector<int> dummy;
  while (run.acceptance_count < count) {
    const ProposalDraw draw = proposer.propose(dummy, proposal_rng);
    const double f = target.evaluate(draw.candidate);
    ++run.candidate_count;
    const double p_accept = f / (lambda * draw.g_forward);
    if (p_accept > 1.0 + 1e-12) {
      throw Error(ErrorCode::kLambdaTooSmall,
                  "lambda too small: f(x) = " + std::to_string(f) + " exceeds lambda * g(x) = " +
                      std::to_string(lambda * draw.g_forward));
    }
    if (accept_rng.uniform01() < p_accept) {
      ++run.acceptance_count;
      rec.emit(draw.candidate, 0);
    }
  }
  rec.finish();
  return run;
}

SampleRun mcmc_sample(Target& target, const SamplerOptions& options) {
  SampleRun run = start_run(target, options);
  Recorder rec(run, target, options.retain_candidates);
  Chain chain(target, options, rec);
  for (std::uint64_t c = 0; c < options.count; ++c) {
    auto s = chain.next();
    rec.candidate(s);
    rec.emit(s, c);
  }
  chain.finish(run);
  rec.finish();
  return run;
}

SampleRun mis_sample(Target& target, const SamplerOptions& options) {
  if (options.jump < 1) throw Error(ErrorCode::kInvalidArgument, "jump K must be >= 1");
  SampleRun run = start_run(target, options);
  Recorder rec(run, target, options.retain_candidates);
  Chain chain(target, options, rec);
  std::uint64_t emitted = 0;
  for (std::uint64_t c = 0; emitted < options.count; ++c) {
    auto s = chain.next();
    rec.candidate(s);
    if (c % options.jump == 0) {
      rec.emit(s, c);
      ++emitted;
    }
  }
  chain.finish(run);
  rec.finish();
  return run;
}

SampleRun sc_mcmc_sample(Target& target, const SamplerOptions& options) {
  SampleRun run = start_run(target, options);
  SampleCache cache(options.cache_size, target.photons());
  Recorder rec(run, target, options.retain_candidates);
  Chain chain(target, options, rec);
  Rng cache_rng(options.seed, Stream::kCache);
  auto emit = [&](std::span<const int> s, std::uint64_t source) { rec.emit(s, source); };
  for (std::uint64_t c = 0; c < options.count; ++c) {
    auto s = chain.next();
    rec.candidate(s);
    if (!cache.full()) {
      cache.add(s, c);
    } else {
      cache.exchange(s, c, cache_rng, emit);
    }
  }
  if (options.discard_cache) {
    cache.discard();
  } else {
    cache.drain(cache_rng, emit);
  }
  chain.finish(run);
  rec.finish();
  return run;
}

SampleRun improved_sc_mcmc_sample(Target& target, const SamplerOptions& options) {
  if (options.jump < 2) throw Error(ErrorCode::kInvalidArgument, "jump K must be >= 2");
  SampleRun run = start_run(target, options);
  SampleCache cache(options.cache_size, target.photons());
  Recorder rec(run, target, options.retain_candidates);
  Chain chain(target, options, rec);
  Rng cache_rng(options.seed, Stream::kCache);
  auto emit = [&](std::span<const int> s, std::uint64_t source) { rec.emit(s, source); };
  for (std::uint64_t c = 0; c < options.count; ++c) {
    auto s = chain.next();
    rec.candidate(s);
    if (!cache.full()) {
      if (c % options.jump == 0) {
        rec.emit(s, c);
      } else {
        cache.add(s, c);
        if (cache.full()) run.cache_full_after = c + 1;
      }
    } else {
      cache.exchange(s, c, cache_rng, emit);
    }
  }
  if (options.discard_cache) {
    cache.discard();
  } else {
    cache.drain(cache_rng, emit);
  }
  chain.finish(run);
  rec.finish();
  return run;
}

SampleRun run_sampler(const ProblemInstance& inst, const SamplerOptions& options) {
  const bool needs_table =
      options.kind == SamplerKind::kBruteForce ||
      (options.kind == SamplerKind::kRejection &&
       binomial(static_cast<std::uint64_t>(inst.modes()), static_cast<std::uint64_t>(inst.photons()))
               .value_or(UINT64_MAX) <= enumeration_cap());

  switch (options.kind) {
    case SamplerKind::kBruteForce: {
      const auto start = Clock::now();
      const DistributionTable table = full_distribution(inst);
      const double table_seconds = seconds_since(start);
      const std::vector<double> normalized = table.normalized();
      SampleRun run = brute_force_sample(table, normalized, options.count, options.seed);
      run.options = options;
      run.permanent_seconds = table_seconds;
      run.wall_seconds += table_seconds;
      return run;
    }
    case SamplerKind::kRejection: {
      if (!needs_table) {
        if (!(options.lambda > 0.0)) {
          throw Error(ErrorCode::kInvalidArgument,
                      "state space above the enumeration cap: --lambda must be supplied");
        }
        Target target = Target::boson(inst);
        SampleRun run = rejection_sample(target, options.lambda, options.count, options.seed);
        run.options = options;
        return run;
      }
      const DistributionTable table = full_distribution(inst);
      const double mass = table.collision_free_mass;
      const double max_f = *std::max_element(table.raw.begin(), table.raw.end()) / mass;
      const double lambda =
          options.lambda > 0.0 ? options.lambda : static_cast<double>(table.size()) * max_f;
      const ComplexMatrix* u = &inst.unitary();
      Target target(inst.photons(), inst.modes(),
                    [u, mass](std::span<const int> occ) { return collision_free_probability(*u, occ) / mass; },
                    u);
      SampleRun run = rejection_sample(target, lambda, options.count, options.seed);
      run.options = options;
      run.options.lambda = lambda;
      return run;
    }
    default:
      break;
  }

  Target target = Target::boson(inst);
  switch (options.kind) {
    case SamplerKind::kMcmc: return mcmc_sample(target, options);
    case SamplerKind::kMis: return mis_sample(target, options);
    case SamplerKind::kScMcmc: return sc_mcmc_sample(target, options);
    case SamplerKind::kImprovedScMcmc: return improved_sc_mcmc_sample(target, options);
    default: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown sampler kind");
}

}  // namespace bosonsamp
