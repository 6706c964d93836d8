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

#include "matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace bosonsamp {

ComplexMatrix::ComplexMatrix(int dim) {
  if (dim < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "matrix dimension must be >= 1, got " + std::to_string(dim));
  }
  dim_ = dim;
  entries_.assign(static_cast<std::size_t>(dim) * dim, Complex{});
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<Complex> entries)
    : ComplexMatrix(dim) {
  if (entries.size() != entries_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "matrix entry count " + std::to_string(entries.size()) +
                    " does not match dim^2 = " +
                    std::to_string(entries_.size()));
  }
  entries_ = std::move(entries);
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix out(dim);
  for (int i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

double ComplexMatrix::unitarity_residual() const {
  double worst = 0.0;
  for (int j = 0; j < dim_; ++j) {
    for (int k = 0; k < dim_; ++k) {
      Complex acc{};
      for (int l = 0; l < dim_; ++l) acc += (*this)(j, l) * std::conj((*this)(k, l));
      if (j == k) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

}  // namespace bosonsamp
