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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "matrix.hpp"
#include "pattern.hpp"

namespace bosonsamp {

/// Haar-distributed m x m unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal folded back into Q. Deterministic per seed.
ComplexMatrix haar_random_unitary(int modes, std::uint64_t seed);

/// n photons injected in the standard input |1..1 0..0> of an m-mode
/// interferometer U.
class ProblemInstance {
 public:
  ProblemInstance(ComplexMatrix unitary, int photons, std::uint64_t seed = 0);

  int photons() const noexcept { return photons_; }
  int modes() const noexcept { return unitary_.dim(); }
  const ComplexMatrix& unitary() const noexcept { return unitary_; }
  const OutputPattern& input() const noexcept { return input_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  ComplexMatrix unitary_;
  int photons_;
  OutputPattern input_;
  std::uint64_t seed_;
};

/// Rows from occupied output modes, columns from occupied input modes, both
/// ascending; a mode with occupancy k contributes k copies.
ComplexMatrix submatrix(const ComplexMatrix& u, const OutputPattern& input,
                        const OutputPattern& output);

/// |Per(U^{(S,T)})|^2 / (prod s_i! prod t_j!). Bunched outputs allowed.
double pattern_probability(const ProblemInstance& inst, const OutputPattern& out);

/// Fast path for the samplers: collision-free output given as ascending
/// occupied modes, standard input.
double collision_free_probability(const ComplexMatrix& u, std::span<const int> occupied);

/// Per(|U^{(S,T)}|^2) for a collision-free output: the distinguishable-particle
/// probability, computed with the complex kernel on a real matrix.
double distinguishable_weight(const ComplexMatrix& u, std::span<const int> occupied);

/// Raw collision-free output probabilities in canonical order.
struct DistributionTable {
  int photons = 0;
  int modes = 0;
  std::vector<double> raw;  ///< indexed by canonical rank
  double collision_free_mass = 0.0;

  std::size_t size() const noexcept { return raw.size(); }
  /// raw / P_CF, the post-selected distribution.
  std::vector<double> normalized() const;
  OutputPattern pattern(std::size_t rank) const;
};

DistributionTable full_distribution(const ProblemInstance& inst);

enum class ValueStrategy { kBinaryDecimal, kSortOrder, kNegLogP };

/// Scalar label of a collision-free pattern used by the autocorrelation
/// estimators. kSortOrder is the 1-based canonical rank; kNegLogP is
/// -log10 of the output probability and needs `inst`.
double assign_value(const OutputPattern& pattern, ValueStrategy strategy,
                    const ProblemInstance* inst = nullptr);

/// Text format: line 1 holds m, then m lines of 2m numbers (re im re im ...)
/// printed with 17 significant digits.
void write_matrix(const std::filesystem::path& path, const ComplexMatrix& a);
void write_matrix(std::ostream& out, const ComplexMatrix& a);

/// Reads the text matrix format without any unitarity check.
ComplexMatrix read_matrix(const std::filesystem::path& path);

/// read_matrix plus a unitarity check at `tolerance`.
ComplexMatrix read_unitary(const std::filesystem::path& path, double tolerance = 1e-8);

}  // namespace bosonsamp
