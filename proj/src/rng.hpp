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
#include <random>

namespace bosonsamp {

/// Independent sub-streams derived from a single run seed. A stream's
/// engine is seeded with splitmix64(seed ^ (tag * 0x9E3779B97F4A7C15)), so
/// adding or reordering consumers of one stream never shifts another.
enum class Stream : std::uint64_t {
  kUnitary = 1,
  kProposal = 2,
  kAccept = 3,
  kCache = 4,
  kDraw = 5,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// mt19937_64 plus hand-rolled transforms; the std distributions are not
/// specified bit-for-bit across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, Stream stream);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Standard normal via Box-Muller (one draw per call).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace bosonsamp
