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

#include "diagnostics.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "error.hpp"

namespace bosonsamp {

Autocorrelation autocorrelation(std::span<const double> x, std::size_t lag) {
  if (lag == 0) return {1.0, false};
  if (x.size() < 2 || lag >= x.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "autocorrelation needs 1 <= lag < length (lag " + std::to_string(lag) +
                    ", length " + std::to_string(x.size()) + ")");
  }
  return autocorrelations(x, lag).back();
}

std::vector<Autocorrelation> autocorrelations(std::span<const double> x, std::size_t max_lag) {
  if (x.size() < 2 || max_lag >= x.size()) {
    throw Error(ErrorCode::kInvalidArgument, "autocorrelation needs 1 <= lag < length");
  }
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  std::vector<double> c(x.size());
  double denom = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    c[t] = x[t] - mean;
    denom += c[t] * c[t];
  }
  std::vector<Autocorrelation> out(max_lag);
  if (denom == 0.0) {
    for (auto& r : out) r.zero_variance = true;
    return out;
  }
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double num = 0.0;
    for (std::size_t t = 0; t + k < c.size(); ++t) num += c[t] * c[t + k];
    out[k - 1].value = num / denom;
  }
  return out;
}

DurbinWatson durbin_watson(std::span<const double> x) {
  if (x.size() < 2) throw Error(ErrorCode::kInvalidArgument, "Durbin-Watson needs length >= 2");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    den += x[t] * x[t];
    if (t + 1 < x.size()) {
      const double d = x[t] - x[t + 1];
      num += d * d;
    }
  }
  if (den == 0.0) throw Error(ErrorCode::kZeroVariance, "Durbin-Watson on an all-zero sequence");
  DurbinWatson dw;
  dw.d = num / den;
  dw.r1_estimate = 1.0 - dw.d / 2.0;
  return dw;
}

double similarity(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kInvalidArgument, "similarity of misaligned distributions (" +
                                                 std::to_string(p.size()) + " vs " +
                                                 std::to_string(q.size()) + ")");
  }
  double overlap = 0.0;
  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) throw Error(ErrorCode::kInvalidArgument, "negative probability");
    overlap += std::sqrt(p[i] * q[i]);
    sp += p[i];
    sq += q[i];
  }
  if (sp <= 0.0 || sq <= 0.0) throw Error(ErrorCode::kInvalidArgument, "similarity of an all-zero distribution");
  return overlap * overlap / (sp * sq);
}

std::vector<double> frequency_histogram(std::span<const int> samples, int photons, int modes) {
  const std::uint64_t states = collision_free_count_checked(photons, modes);
  const auto stride = static_cast<std::size_t>(photons);
  const std::size_t count = samples.size() / stride;
  if (count == 0) throw Error(ErrorCode::kInvalidArgument, "frequency histogram of no samples");
  std::vector<double> freq(states, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    auto s = samples.subspan(i * stride, stride);
    for (std::size_t k = 0; k < stride; ++k) {
      if (s[k] < 0 || s[k] >= modes || (k > 0 && s[k] <= s[k - 1])) {
        throw Error(ErrorCode::kInvalidArgument,
                    "sample " + std::to_string(i) + " is outside the collision-free space");
      }
    }
    freq[rank_collision_free(s, modes)] += 1.0;
  }
  for (double& f : freq) f /= static_cast<double>(count);
  return freq;
}

std::vector<double> sequence_values(std::span<const int> samples, int photons, int modes,
                                    ValueStrategy strategy, const ProblemInstance* inst) {
  const auto stride = static_cast<std::size_t>(photons);
  const std::size_t count = samples.size() / stride;
  std::vector<double> values(count);
  if (strategy == ValueStrategy::kSortOrder) {
    for (std::size_t i = 0; i < count; ++i) {
      values[i] = rank_collision_free_real(samples.subspan(i * stride, stride), modes) + 1.0;
    }
    return values;
  }
  // Per-pattern memo: -log10 P costs a permanent per distinct pattern.
  std::unordered_map<std::string, double> memo;
  for (std::size_t i = 0; i < count; ++i) {
    auto s = samples.subspan(i * stride, stride);
    std::string key(reinterpret_cast<const char*>(s.data()), s.size_bytes());
    auto it = memo.find(key);
    if (it == memo.end()) {
      const OutputPattern pat = OutputPattern::from_modes(modes, s);
      it = memo.emplace(std::move(key), assign_value(pat, strategy, inst)).first;
    }
    values[i] = it->second;
  }
  return values;
}

Eigen::MatrixXd transition_matrix(std::span<const double> probabilities, int photons, int modes,
                                  Proposer& proposer) {
  const std::uint64_t states = collision_free_count_checked(photons, modes);
  if (states > kTransitionMatrixMaxStates) {
    throw Error(ErrorCode::kCapExceeded, "transition matrix limited to " +
                                             std::to_string(kTransitionMatrixMaxStates) + " states, got " +
                                             std::to_string(states));
  }
  if (probabilities.size() != states) {
    throw Error(ErrorCode::kInvalidArgument, "probability table does not match C(m,n)");
  }
  const auto n = static_cast<Eigen::Index>(states);
  std::vector<std::vector<int>> patterns(states, std::vector<int>(static_cast<std::size_t>(photons)));
  for (std::uint64_t r = 0; r < states; ++r) unrank_collision_free(r, photons, modes, patterns[r]);

  // Proposal densities, row-normalized.
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = proposer.density(patterns[static_cast<std::size_t>(i)], patterns[static_cast<std::size_t>(j)]);
    }
    const double row = g.row(i).sum();
    if (row > 0.0) g.row(i) /= row;
  }

  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double off = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || g(i, j) == 0.0) continue;
      const double a = acceptance_probability(probabilities[static_cast<std::size_t>(i)],
                                              probabilities[static_cast<std::size_t>(j)], g(i, j), g(j, i));
      p(i, j) = g(i, j) * a;
      off += p(i, j);
    }
    p(i, i) = 1.0 - off;
  }
  return p;
}

Eigen::MatrixXd transition_matrix(const ProblemInstance& inst, ProposalKind proposal) {
  const DistributionTable table = full_distribution(inst);
  Proposer proposer(proposal, inst.photons(), inst.modes(), &inst.unitary());
  return transition_matrix(table.raw, inst.photons(), inst.modes(), proposer);
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& p, double tolerance, int max_iterations) {
  const Eigen::Index n = p.rows();
  Eigen::RowVectorXd pi = Eigen::RowVectorXd::Constant(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::RowVectorXd next = pi * p;
    next /= next.sum();
    const double change = (next - pi).cwiseAbs().maxCoeff();
    pi = next;
    if (change <= tolerance) break;
  }
  return pi.transpose();
}

double averaged_tvd(const Eigen::MatrixXd& p_power, std::span<const double> stationary) {
  const Eigen::Index n = p_power.rows();
  if (static_cast<std::size_t>(n) != stationary.size()) {
    throw Error(ErrorCode::kInvalidArgument, "stationary vector does not match the matrix");
  }
  double total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double col = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) col += std::abs(p_power(i, j) - stationary[static_cast<std::size_t>(j)]);
    total += col / static_cast<double>(n);
  }
  return total;
}

std::vector<double> averaged_tvd_curve(const Eigen::MatrixXd& p, std::span<const double> stationary, int max_k) {
  if (max_k < 1) throw Error(ErrorCode::kInvalidArgument, "averaged TVD needs k >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(max_k));
  Eigen::MatrixXd power = p;
  for (int k = 1; k <= max_k; ++k) {
    if (k > 1) power = power * p;
    out.push_back(averaged_tvd(power, stationary));
  }
  return out;
}

CacheDistanceStats cache_distance_stats(std::span<const std::uint64_t> sources, std::uint64_t jump) {
  if (sources.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "cache distance statistics need retained candidate indices");
  }
  CacheDistanceStats st;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < sources.size(); ++i) {
    const std::uint64_t a = sources[i];
    const std::uint64_t b = sources[i + 1];
    const std::uint64_t k = a > b ? a - b : b - a;
    if (k >= st.histogram.size()) st.histogram.resize(k + 1, 0);
    ++st.histogram[k];
    ++st.pairs;
    sum += static_cast<double>(k);
    if (k == 1) ++st.adjacent;
    if (k <= jump) ++st.within_jump;
  }
  st.mean = sum / static_cast<double>(st.pairs);
  st.adjacent_ratio = static_cast<double>(st.adjacent) / static_cast<double>(st.pairs);
  st.epsilon = static_cast<double>(st.within_jump) / static_cast<double>(st.pairs);
  return st;
}

double cache_distance_probability(std::uint64_t k, std::uint64_t cache_size) {
  if (k == 0 || cache_size == 0) return 0.0;
  const double l = static_cast<double>(cache_size);
  return std::exp(static_cast<double>(k - 1) * std::log1p(-1.0 / l)) / l;
}

double correlated_pair_probability(std::uint64_t jump, std::uint64_t cache_size) {
  if (cache_size == 0) throw Error(ErrorCode::kInvalidArgument, "cache size L must be >= 1");
  if (cache_size == 1) return 1.0;
  return -std::expm1(static_cast<double>(jump) * std::log1p(-1.0 / static_cast<double>(cache_size)));
}

CacheSize cache_size_for(std::uint64_t jump, double epsilon) {
  if (jump < 1) throw Error(ErrorCode::kInvalidArgument, "jump K must be >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in (0, 1]");
  }
  CacheSize out;
  out.approx = static_cast<double>(jump) / epsilon;
  // P_cr is decreasing in L: find the first L with P_cr <= epsilon.
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
  while (correlated_pair_probability(jump, hi) > epsilon) hi *= 2;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (correlated_pair_probability(jump, mid) <= epsilon) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  out.exact = lo;
  return out;
}

GoodnessOfFit geometric_fit(const CacheDistanceStats& stats, std::uint64_t cache_size) {
  const double total = static_cast<double>(stats.pairs);
  std::vector<double> observed;
  std::vector<double> expected;
  double cdf = 0.0;
  std::uint64_t k = 1;
  for (;; ++k) {
    const double e = total * cache_distance_probability(k, cache_size);
    const double tail_after = total * (1.0 - (cdf + cache_distance_probability(k, cache_size)));
    if (e < 5.0 || tail_after < 5.0) break;
    observed.push_back(k < stats.histogram.size() ? static_cast<double>(stats.histogram[k]) : 0.0);
    expected.push_back(e);
    cdf += cache_distance_probability(k, cache_size);
  }
  // Everything from k on forms the tail bin.
  double tail_obs = 0.0;
  for (std::uint64_t j = k; j < stats.histogram.size(); ++j) tail_obs += static_cast<double>(stats.histogram[j]);
  const double tail_exp = total * (1.0 - cdf);
  if (tail_exp < 5.0 && !expected.empty()) {
    observed.back() += tail_obs;
    expected.back() += tail_exp;
  } else {
    observed.push_back(tail_obs);
    expected.push_back(tail_exp);
  }

  GoodnessOfFit fit;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - expected[i];
    fit.chi_square += d * d / expected[i];
  }
  fit.dof = static_cast<int>(observed.size()) - 1;
  if (fit.dof < 1) {
    fit.p_value = 1.0;
    return fit;
  }
  boost::math::chi_squared dist(fit.dof);
  fit.p_value = boost::math::cdf(boost::math::complement(dist, fit.chi_square));
  return fit;
}

}  // namespace bosonsamp
