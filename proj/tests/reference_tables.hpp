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

// Published photon thresholds and minimum transmission probabilities.

#include <vector>

#include "perfmodel.hpp"

namespace bosonsamp::testing {

struct ThresholdRow {
  Network network;
  RepetitionRate rate;
  std::vector<double> eta;
  std::vector<int> mis;
  std::vector<int> scmcmc;
};

inline const RepetitionRate kTenGhz{RepetitionRate::Form::kConstant, 1e10};
inline const RepetitionRate kScaled76Mhz{RepetitionRate::Form::kScaled, 76e6};

inline std::vector<ThresholdRow> threshold_rows() {
  return {
      {Network::kSquare, kTenGhz,
       {0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 1.0},
       {15, 12, 10, 8, 8, 7, 7, 6, 6, 6},
       {45, 29, 22, 18, 16, 14, 13, 12, 11, 11}},
      {Network::kSquare, kScaled76Mhz,
       {0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 1.0},
       {44, 32, 26, 22, 19, 17, 16, 15, 14},
       {69, 49, 39, 33, 29, 26, 24, 22, 20}},
      {Network::kLinear, kTenGhz,
       {0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 1.0},
       {11, 9, 8, 7, 7, 6, 6},
       {34, 25, 20, 17, 15, 14, 13}},
      {Network::kLinear, kScaled76Mhz,
       {0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 1.0},
       {59, 39, 30, 25, 21, 19, 17},
       {99, 64, 48, 40, 34, 30, 27}},
  };
}

struct MinEtaEntry {
  Network network;
  RepetitionRate rate;
  double mis_percent;
  double scmcmc_percent;
};

inline std::vector<MinEtaEntry> min_eta_entries() {
  return {
      {Network::kSquare, kTenGhz, 48.81, 51.32},
      {Network::kSquare, kScaled76Mhz, 53.67, 56.43},
      {Network::kLinear, kTenGhz, 60.41, 63.52},
      {Network::kLinear, kScaled76Mhz, 66.42, 69.83},
  };
}

}  // namespace bosonsamp::testing
