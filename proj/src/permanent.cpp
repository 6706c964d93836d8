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

#include "permanent.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"

namespace bosonsamp {
namespace {

// Below this dimension a single chunk is cheaper than any fan-out.
constexpr int kChunkedMinDim = 15;
constexpr std::uint64_t kMaxChunks = 64;

std::uint64_t chunk_count(int dim, std::uint64_t range) {
  if (dim < kChunkedMinDim) return 1;
  return std::min(kMaxChunks, range);
}

std::uint64_t gray(std::uint64_t g) { return g ^ (g >> 1); }

// Splits [0, range) into `chunks` contiguous pieces, evaluates each and sums
// the partials in ascending chunk order.
template <typename ChunkFn>
Complex chunked_sum(std::uint64_t range, std::uint64_t chunks, ChunkFn&& fn) {
  std::vector<Complex> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t begin = range / chunks * c + std::min<std::uint64_t>(c, range % chunks);
    const std::uint64_t len = range / chunks + (c < range % chunks ? 1 : 0);
    partial[c] = fn(begin, begin + len);
  });
  Complex total{};
  for (const Complex& p : partial) total += p;
  return total;
}

void require_nonempty(const ComplexMatrix& a) {
  if (a.dim() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "permanent of an empty matrix");
  }
}

}  // namespace

Complex permanent_naive(const ComplexMatrix& a) {
  require_nonempty(a);
  const int n = a.dim();
  if (n > kNaivePermanentMaxDim) {
    throw Error(ErrorCode::kOracleSizeExceeded,
                "oracle size exceeded: naive permanent limited to dim <= " +
                    std::to_string(kNaivePermanentMaxDim) + ", got " + std::to_string(n));
  }
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  Complex total{};
  do {
    Complex term = 1.0;
    for (int i = 0; i < n; ++i) term *= a(i, sigma[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

Complex permanent_glynn(const ComplexMatrix& a) {
  require_nonempty(a);
  const int n = a.dim();
  if (n == 1) return a(0, 0);

  // Bit b of the Gray code word flips the sign of row b + 1; row 0 is fixed +1.
  const std::uint64_t range = std::uint64_t{1} << (n - 1);
  auto chunk = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Complex> colsum(static_cast<std::size_t>(n));
    std::uint64_t code = gray(begin);
    for (int j = 0; j < n; ++j) {
      Complex s{};
      for (int i = 0; i < n; ++i) {
        const bool neg = i > 0 && ((code >> (i - 1)) & 1u);
        s += neg ? -a(i, j) : a(i, j);
      }
      colsum[static_cast<std::size_t>(j)] = s;
    }
    Complex acc{};
    for (std::uint64_t g = begin;;) {
      Complex prod = colsum[0];
      for (int j = 1; j < n; ++j) prod *= colsum[static_cast<std::size_t>(j)];
      acc += (std::popcount(code) & 1) ? -prod : prod;

      if (++g == end) break;
      const int bit = std::countr_zero(g);
      code ^= std::uint64_t{1} << bit;
      const int row = bit + 1;
      const double delta = ((code >> bit) & 1u) ? -2.0 : 2.0;
      for (int j = 0; j < n; ++j) colsum[static_cast<std::size_t>(j)] += delta * a(row, j);
    }
    return acc;
  };

  const Complex total = chunked_sum(range, chunk_count(n, range), chunk);
  return total / static_cast<double>(range);
}

Complex permanent_ryser(const ComplexMatrix& a) {
  require_nonempty(a);
  const int n = a.dim();
  if (n == 1) return a(0, 0);

  // Bit j of the Gray code word includes column j in the subset.
  const std::uint64_t range = std::uint64_t{1} << n;
  auto chunk = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Complex> rowsum(static_cast<std::size_t>(n));
    std::uint64_t code = gray(begin);
    for (int i = 0; i < n; ++i) {
      Complex s{};
      for (int j = 0; j < n; ++j) {
        if ((code >> j) & 1u) s += a(i, j);
      }
      rowsum[static_cast<std::size_t>(i)] = s;
    }
    Complex acc{};
    for (std::uint64_t g = begin;;) {
      if (code != 0) {
        Complex prod = rowsum[0];
        for (int i = 1; i < n; ++i) prod *= rowsum[static_cast<std::size_t>(i)];
        acc += (std::popcount(code) & 1) ? -prod : prod;
      }

      if (++g == end) break;
      const int col = std::countr_zero(g);
      code ^= std::uint64_t{1} << col;
      const bool added = (code >> col) & 1u;
      for (int i = 0; i < n; ++i) {
        if (added) {
          rowsum[static_cast<std::size_t>(i)] += a(i, col);
        } else {
          rowsum[static_cast<std::size_t>(i)] -= a(i, col);
        }
      }
    }
    return acc;
  };

  const Complex total = chunked_sum(range, chunk_count(n, range), chunk);
  return (n % 2 == 0) ? total : -total;
}

Complex permanent(const ComplexMatrix& a, PermanentMethod method) {
  switch (method) {
    case PermanentMethod::kGlynn: return permanent_glynn(a);
    case PermanentMethod::kRyser: return permanent_ryser(a);
    case PermanentMethod::kNaive: return permanent_naive(a);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown permanent method");
}

}  // namespace bosonsamp
