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

#include <optional>
#include <string>

namespace bosonsamp {

enum class Network { kSquare, kLinear };  ///< m = n^2, m = 4n

/// n-photon repetition rate: constant c, or scaled c/n.
struct RepetitionRate {
  enum class Form { kConstant, kScaled };
  Form form = Form::kConstant;
  double hz = 1e10;

  double at(int photons) const;
};

/// t_c = a n^b 2^n.
struct ClassicalModel {
  double a = 1.9925e-15;
  double b = 2.0;

  static ClassicalModel scmcmc() { return {1.9925e-15, 2.0}; }
  static ClassicalModel mis() { return {3e-13, 2.0}; }
};

struct QAParams {
  RepetitionRate rate;
  double eta = 1.0;
  Network network = Network::kSquare;
  ClassicalModel classical;

  /// Throws kInvalidArgument unless a > 0, 1 <= b <= 2, 0 < eta <= 1, rate > 0.
  void validate() const;
};

std::string to_string(Network network);
Network parse_network(const std::string& s);
/// "const:<Hz>" or "scaled:<Hz>".
RepetitionRate parse_rate(const std::string& s);
std::string to_string(const RepetitionRate& rate);
/// "scmcmc" or "mis".
ClassicalModel parse_classical_preset(const std::string& s);

double classical_time(int photons, const ClassicalModel& model);

/// Fixed n = 59 scaling over p compute nodes: 1.9675e10 / p^0.8782.
double classical_time_nodes(double nodes);

/// square: e / (R eta^n); linear: (5 / (4 eta))^n / R.
double quantum_time(int photons, const QAParams& params);

/// log10(t_c / t_q), evaluated in the log domain so large n stays finite.
double qa(int photons, const QAParams& params);

inline constexpr int kDefaultThresholdCap = 10'000;

struct Threshold {
  std::optional<int> photons;  ///< nullopt: unreachable
  bool below_limit = false;    ///< eta <= eta_limit, so no n ever works
};

/// Smallest n with qa(n) >= 0, by linear scan up to `cap`.
Threshold threshold_photons(const QAParams& params, int cap = kDefaultThresholdCap);

/// n-th root expression: the eta with qa(n, eta) = 0.
double eta_at(int photons, const QAParams& params);

/// lim eta_at(n) as n -> infinity: 0.5 (square), 0.625 (linear).
double eta_limit(Network network);

/// Minimum eta that brings the threshold down to `cap`: the root of
/// qa(cap, eta) = 0.
double min_eta_at_cap(const QAParams& params, int cap = 100);

}  // namespace bosonsamp
