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

#include "matrix.hpp"

namespace bosonsamp {

enum class PermanentMethod { kGlynn, kRyser, kNaive };

/// Largest dimension accepted by the factorial-cost oracle.
inline constexpr int kNaivePermanentMaxDim = 12;

/// Sum over all dim! permutations. Testing oracle only.
Complex permanent_naive(const ComplexMatrix& a);

/// Glynn's formula, reflected Gray code over the 2^(n-1) sign vectors.
///
/// The Gray-code range is split into a number of chunks that depends only
/// on the dimension; chunk partial sums are combined in ascending order, so
/// the result is bit-identical for any thread count. Accumulation is plain
/// double precision and its relative error grows with the 2^n term count.
Complex permanent_glynn(const ComplexMatrix& a);

/// Ryser's inclusion-exclusion formula over the 2^n - 1 nonempty column
/// subsets, with the same Gray-code order and chunking rule as Glynn.
Complex permanent_ryser(const ComplexMatrix& a);

Complex permanent(const ComplexMatrix& a, PermanentMethod method = PermanentMethod::kGlynn);

}  // namespace bosonsamp
