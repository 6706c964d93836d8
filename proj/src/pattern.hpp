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

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bosonsamp {

/// Occupation vector of n photons over m modes.
class OutputPattern {
 public:
  OutputPattern() = default;
  explicit OutputPattern(std::vector<int> occupation);

  /// Builds a pattern from mode indices; repeated indices mean bunching.
  static OutputPattern from_modes(int modes, std::span<const int> occupied);

  /// |1..1 0..0> with the first `photons` modes occupied.
  static OutputPattern standard_input(int photons, int modes);

  int modes() const noexcept { return static_cast<int>(occupation_.size()); }
  int photons() const noexcept { return photons_; }
  int operator[](int mode) const { return occupation_[static_cast<std::size_t>(mode)]; }
  std::span<const int> occupation() const noexcept { return occupation_; }

  bool collision_free() const noexcept;

  /// Ascending mode indices, each repeated by its occupancy.
  std::vector<int> occupied_modes() const;

  /// e.g. "(0,1,1,0)".
  std::string to_string() const;

  bool operator==(const OutputPattern&) const = default;
  auto operator<=>(const OutputPattern&) const = default;

 private:
  std::vector<int> occupation_;
  int photons_ = 0;
};

/// C(n, k), or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k);

/// C(n, k) in floating point (exact while below 2^53).
double binomial_real(std::uint64_t n, std::uint64_t k);

// Canonical collision-free order: ascending value of the occupation vector
// read as an m-bit binary number with mode 0 as the most significant bit.
// For 3 photons in 6 modes this puts (0,0,0,1,1,1) first and (1,1,1,0,0,0)
// last.

/// 0-based canonical rank. `occupied` is ascending and duplicate-free; the
/// state-space size C(m, n) must fit in 64 bits.
std::uint64_t rank_collision_free(std::span<const int> occupied, int modes);

/// Inverse of rank_collision_free; writes n ascending indices into `out`.
void unrank_collision_free(std::uint64_t rank, int photons, int modes, std::span<int> out);

/// Canonical rank as a real number; falls back to floating-point binomials
/// when C(m, n) exceeds 64 bits.
double rank_collision_free_real(std::span<const int> occupied, int modes);

/// Enumeration cap in patterns (default 5e6, BOSONSAMP_ENUM_CAP overrides).
std::uint64_t enumeration_cap();
void set_enumeration_cap(std::uint64_t cap);

/// C(m, n) checked against the enumeration cap.
std::uint64_t collision_free_count_checked(int photons, int modes);

std::vector<OutputPattern> enumerate_collision_free(int photons, int modes);

/// All multisets of n photons over m modes, in descending lexicographic
/// order of the occupation vector ((n,0,..) first).
std::vector<OutputPattern> enumerate_all(int photons, int modes);

}  // namespace bosonsamp
