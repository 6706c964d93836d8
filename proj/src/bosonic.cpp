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

#include "bosonic.hpp"

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "error.hpp"
#include "parallel.hpp"
#include "permanent.hpp"
#include "rng.hpp"

namespace bosonsamp {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void require_collision_free(const OutputPattern& p) {
  if (!p.collision_free()) {
    throw Error(ErrorCode::kInvalidArgument, "pattern " + p.to_string() + " is not collision-free");
  }
}

}  // namespace

ComplexMatrix haar_random_unitary(int modes, std::uint64_t seed) {
  if (modes < 1) {
    throw Error(ErrorCode::kInvalidArgument, "mode count must be >= 1, got " + std::to_string(modes));
  }
  Rng rng(seed, Stream::kUnitary);
  Eigen::MatrixXcd z(modes, modes);
  for (int i = 0; i < modes; ++i) {
    for (int j = 0; j < modes; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      z(i, j) = Complex(re, im) * M_SQRT1_2;
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& packed = qr.matrixQR();
  for (int j = 0; j < modes; ++j) {
    const Complex d = packed(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }

  ComplexMatrix u(modes);
  for (int i = 0; i < modes; ++i) {
    for (int j = 0; j < modes; ++j) u(i, j) = q(i, j);
  }
  return u;
}

ProblemInstance::ProblemInstance(ComplexMatrix unitary, int photons, std::uint64_t seed)
    : unitary_(std::move(unitary)),
      photons_(photons),
      input_(OutputPattern::standard_input(photons, unitary_.dim())),
      seed_(seed) {}

ComplexMatrix submatrix(const ComplexMatrix& u, const OutputPattern& input,
                        const OutputPattern& output) {
  if (input.modes() != u.dim() || output.modes() != u.dim()) {
    throw Error(ErrorCode::kInvalidArgument,
                "pattern length does not match the unitary dimension " + std::to_string(u.dim()));
  }
  if (input.photons() != output.photons()) {
    throw Error(ErrorCode::kInvalidArgument,
                "photon-count mismatch: input has " + std::to_string(input.photons()) +
                    ", output has " + std::to_string(output.photons()));
  }
  const std::vector<int> rows = output.occupied_modes();
  const std::vector<int> cols = input.occupied_modes();
  const int n = static_cast<int>(rows.size());
  ComplexMatrix sub(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      sub(i, j) = u(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    }
  }
  return sub;
}

double pattern_probability(const ProblemInstance& inst, const OutputPattern& out) {
  const ComplexMatrix sub = submatrix(inst.unitary(), inst.input(), out);
  double denom = 1.0;
  for (int c : inst.input().occupation()) denom *= factorial(c);
  for (int c : out.occupation()) denom *= factorial(c);
  return std::norm(permanent_glynn(sub)) / denom;
}

double collision_free_probability(const ComplexMatrix& u, std::span<const int> occupied) {
  const int n = static_cast<int>(occupied.size());
  ComplexMatrix sub(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) sub(i, j) = u(occupied[static_cast<std::size_t>(i)], j);
  }
  return std::norm(permanent_glynn(sub));
}

double distinguishable_weight(const ComplexMatrix& u, std::span<const int> occupied) {
  const int n = static_cast<int>(occupied.size());
  ComplexMatrix sub(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) sub(i, j) = std::norm(u(occupied[static_cast<std::size_t>(i)], j));
  }
  return permanent_glynn(sub).real();
}

std::vector<double> DistributionTable::normalized() const {
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out[i] = raw[i] / collision_free_mass;
  return out;
}

OutputPattern DistributionTable::pattern(std::size_t rank) const {
  std::vector<int> occupied(static_cast<std::size_t>(photons));
  unrank_collision_free(rank, photons, modes, occupied);
  return OutputPattern::from_modes(modes, occupied);
}

DistributionTable full_distribution(const ProblemInstance& inst) {
  const int n = inst.photons();
  const int m = inst.modes();
  const std::uint64_t count = collision_free_count_checked(n, m);

  DistributionTable table;
  table.photons = n;
  table.modes = m;
  table.raw.resize(count);

  constexpr std::uint64_t kBlock = 1024;
  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    std::vector<int> occupied(static_cast<std::size_t>(n));
    const std::uint64_t end = std::min<std::uint64_t>(count, (b + 1) * kBlock);
    for (std::uint64_t r = b * kBlock; r < end; ++r) {
      unrank_collision_free(r, n, m, occupied);
      table.raw[r] = collision_free_probability(inst.unitary(), occupied);
    }
  });
  for (double p : table.raw) table.collision_free_mass += p;
  return table;
}

double assign_value(const OutputPattern& pattern, ValueStrategy strategy, const ProblemInstance* inst) {
  switch (strategy) {
    case ValueStrategy::kBinaryDecimal: {
      require_collision_free(pattern);
      if (pattern.modes() > 53) {
        throw Error(ErrorCode::kWordLength,
                    "word-length limit: binary_decimal needs m <= 53, got m=" +
                        std::to_string(pattern.modes()));
      }
      std::uint64_t v = 0;
      for (int c : pattern.occupation()) v = (v << 1) | static_cast<std::uint64_t>(c);
      return static_cast<double>(v);
    }
    case ValueStrategy::kSortOrder: {
      require_collision_free(pattern);
      const std::vector<int> occupied = pattern.occupied_modes();
      return rank_collision_free_real(occupied, pattern.modes()) + 1.0;
    }
    case ValueStrategy::kNegLogP: {
      if (inst == nullptr) {
        throw Error(ErrorCode::kInvalidArgument, "neg_log_p needs a problem instance");
      }
      return -std::log10(pattern_probability(*inst, pattern));
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown value strategy");
}

void write_matrix(std::ostream& out, const ComplexMatrix& a) {
  out << a.dim() << '\n';
  char buf[64];
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      if (j > 0) out << ' ';
      auto res = std::to_chars(buf, buf + sizeof buf, a(i, j).real(), std::chars_format::general, 17);
      out.write(buf, res.ptr - buf);
      out << ' ';
      res = std::to_chars(buf, buf + sizeof buf, a(i, j).imag(), std::chars_format::general, 17);
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

void write_matrix(const std::filesystem::path& path, const ComplexMatrix& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  write_matrix(out, a);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  std::vector<double> numbers;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  int dim = 0;
  {
    auto res = std::from_chars(text.data() + pos, text.data() + text.size(), dim);
    if (res.ec != std::errc() || dim < 1) {
      throw Error(ErrorCode::kParse, path.string() + ": line 1 must hold a positive dimension");
    }
    pos = static_cast<std::size_t>(res.ptr - text.data());
  }
  for (;;) {
    skip_ws();
    if (pos >= text.size()) break;
    double v = 0.0;
    auto res = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (res.ec != std::errc()) {
      throw Error(ErrorCode::kParse, path.string() + ": malformed number near byte " + std::to_string(pos));
    }
    numbers.push_back(v);
    pos = static_cast<std::size_t>(res.ptr - text.data());
  }
  const auto expected = static_cast<std::size_t>(2) * dim * dim;
  if (numbers.size() != expected) {
    throw Error(ErrorCode::kParse, path.string() + ": expected " + std::to_string(expected) +
                                       " numbers, found " + std::to_string(numbers.size()));
  }
  std::vector<Complex> entries(static_cast<std::size_t>(dim) * dim);
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = Complex(numbers[2 * k], numbers[2 * k + 1]);
  return ComplexMatrix(dim, std::move(entries));
}

ComplexMatrix read_unitary(const std::filesystem::path& path, double tolerance) {
  ComplexMatrix u = read_matrix(path);
  const double residual = u.unitarity_residual();
  if (!(residual <= tolerance)) {
    throw Error(ErrorCode::kNotUnitary, path.string() + ": unitarity residual " +
                                            std::to_string(residual) + " exceeds " +
                                            std::to_string(tolerance));
  }
  return u;
}

}  // namespace bosonsamp
