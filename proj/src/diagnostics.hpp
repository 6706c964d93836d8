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

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "bosonic.hpp"
#include "samplers.hpp"

namespace bosonsamp {

/// Lag-k autocorrelation estimate, or a zero-variance marker.
struct Autocorrelation {
  double value = 0.0;
  bool zero_variance = false;
};

/// r_k = sum_{t<T-k} (x_t - mean)(x_{t+k} - mean) / sum_t (x_t - mean)^2.
/// Numerator over T-k terms, denominator over all T, no bias correction.
Autocorrelation autocorrelation(std::span<const double> x, std::size_t lag);

/// r_1..r_max_lag sharing one mean/variance pass.
std::vector<Autocorrelation> autocorrelations(std::span<const double> x, std::size_t max_lag);

struct DurbinWatson {
  double d = 0.0;
  double r1_estimate = 0.0;  ///< 1 - d/2
};

/// d = sum (x_t - x_{t+1})^2 / sum x_t^2 on the raw (uncentred) values.
DurbinWatson durbin_watson(std::span<const double> x);

/// S = (sum sqrt(P_i Q_i))^2 / (sum P_i * sum Q_i).
double similarity(std::span<const double> p, std::span<const double> q);

/// Empirical frequencies aligned to canonical rank order.
std::vector<double> frequency_histogram(std::span<const int> samples, int photons, int modes);

/// Values of a flat sample sequence under a value-assignment strategy.
std::vector<double> sequence_values(std::span<const int> samples, int photons, int modes,
                                    ValueStrategy strategy, const ProblemInstance* inst = nullptr);

/// Largest state space for which explicit transition matrices are built.
inline constexpr std::uint64_t kTransitionMatrixMaxStates = 3000;

/// One-step Metropolis-Hastings kernel over all collision-free patterns in
/// canonical order: p_ij = g(j|i) min(1, p_j g(i|j) / (p_i g(j|i))) off the
/// diagonal, diagonal = row complement. `probabilities` may be raw.
Eigen::MatrixXd transition_matrix(std::span<const double> probabilities, int photons, int modes,
                                  Proposer& proposer);
Eigen::MatrixXd transition_matrix(const ProblemInstance& inst, ProposalKind proposal);

/// Left fixed point of a row-stochastic matrix by power iteration.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& p, double tolerance = 1e-15,
                                        int max_iterations = 1'000'000);

/// d_A(k) = sum_j (1/N) sum_i |P^k_ij - pi_j| for a given power P^k.
double averaged_tvd(const Eigen::MatrixXd& p_power, std::span<const double> stationary);

/// d_A(1..max_k) by repeated multiplication.
std::vector<double> averaged_tvd_curve(const Eigen::MatrixXd& p, std::span<const double> stationary,
                                       int max_k);

/// Adjacent-output distances in the candidate sequence.
struct CacheDistanceStats {
  std::vector<std::uint64_t> histogram;  ///< histogram[k] = pairs at distance k
  std::uint64_t pairs = 0;
  double mean = 0.0;             ///< k-bar
  std::uint64_t adjacent = 0;    ///< N_1
  double adjacent_ratio = 0.0;   ///< R_1, ~ 1/L
  std::uint64_t within_jump = 0; ///< F_K, distance <= K
  double epsilon = 0.0;          ///< F_K / pairs
};

/// `sources[i]` is the candidate index of output sample i.
CacheDistanceStats cache_distance_stats(std::span<const std::uint64_t> sources, std::uint64_t jump);

/// p(k, L) = ((L-1)/L)^(k-1) / L.
double cache_distance_probability(std::uint64_t k, std::uint64_t cache_size);

/// P_cr = 1 - ((L-1)/L)^K.
double correlated_pair_probability(std::uint64_t jump, std::uint64_t cache_size);

struct CacheSize {
  std::uint64_t exact = 0;  ///< smallest L with P_cr <= epsilon
  double approx = 0.0;      ///< K / epsilon
};

/// epsilon in (0, 1]; epsilon = 1 admits L = 1.
CacheSize cache_size_for(std::uint64_t jump, double epsilon);

struct GoodnessOfFit {
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 0.0;
};

/// Chi-square fit of a distance histogram to p(k, L); bins with expected
/// count below 5 are merged into the tail.
GoodnessOfFit geometric_fit(const CacheDistanceStats& stats, std::uint64_t cache_size);

}  // namespace bosonsamp
