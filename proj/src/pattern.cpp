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

#include "pattern.hpp"

#include <algorithm>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "error.hpp"

namespace bosonsamp {
namespace {

constexpr std::uint64_t kDefaultEnumerationCap = 5'000'000;

std::uint64_t initial_cap() {
  if (const char* env = std::getenv("BOSONSAMP_ENUM_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultEnumerationCap;
}

std::atomic<std::uint64_t>& cap_storage() {
  static std::atomic<std::uint64_t> cap{initial_cap()};
  return cap;
}

void check_shape(int photons, int modes) {
  if (photons < 1 || modes < 1 || photons > modes) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid shape: need 1 <= n <= m, got n=" + std::to_string(photons) +
                    " m=" + std::to_string(modes));
  }
}

}  // namespace

OutputPattern::OutputPattern(std::vector<int> occupation) : occupation_(std::move(occupation)) {
  for (int c : occupation_) {
    if (c < 0) throw Error(ErrorCode::kInvalidArgument, "negative occupation count");
    photons_ += c;
  }
}

OutputPattern OutputPattern::from_modes(int modes, std::span<const int> occupied) {
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  for (int mode : occupied) {
    if (mode < 0 || mode >= modes) {
      throw Error(ErrorCode::kInvalidArgument,
                  "mode index " + std::to_string(mode) + " outside [0, " +
                      std::to_string(modes) + ")");
    }
    ++occ[static_cast<std::size_t>(mode)];
  }
  return OutputPattern(std::move(occ));
}

OutputPattern OutputPattern::standard_input(int photons, int modes) {
  check_shape(photons, modes);
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  std::fill_n(occ.begin(), photons, 1);
  return OutputPattern(std::move(occ));
}

bool OutputPattern::collision_free() const noexcept {
  return std::all_of(occupation_.begin(), occupation_.end(), [](int c) { return c <= 1; });
}

std::vector<int> OutputPattern::occupied_modes() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(photons_));
  for (int i = 0; i < modes(); ++i) {
    for (int c = 0; c < occupation_[static_cast<std::size_t>(i)]; ++c) out.push_back(i);
  }
  return out;
}

std::string OutputPattern::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < occupation_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(occupation_[i]);
  }
  return s + ")";
}

std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays integral at every step.
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

double binomial_real(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  if (auto exact = binomial(n, k)) return static_cast<double>(*exact);
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return std::exp(std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1));
}

std::uint64_t rank_collision_free(std::span<const int> occupied, int modes) {
  const auto n = static_cast<std::uint64_t>(occupied.size());
  if (!binomial(static_cast<std::uint64_t>(modes), n)) {
    throw Error(ErrorCode::kCapExceeded, "state space C(m,n) exceeds 64 bits");
  }
  std::uint64_t rank = 0;
  std::uint64_t remaining = n;
  for (int mode : occupied) {
    rank += *binomial(static_cast<std::uint64_t>(modes - 1 - mode), remaining);
    --remaining;
  }
  return rank;
}

double rank_collision_free_real(std::span<const int> occupied, int modes) {
  const auto n = static_cast<std::uint64_t>(occupied.size());
  if (binomial(static_cast<std::uint64_t>(modes), n)) {
    return static_cast<double>(rank_collision_free(occupied, modes));
  }
  double rank = 0.0;
  std::uint64_t remaining = n;
  for (int mode : occupied) {
    rank += binomial_real(static_cast<std::uint64_t>(modes - 1 - mode), remaining);
    --remaining;
  }
  return rank;
}

void unrank_collision_free(std::uint64_t rank, int photons, int modes, std::span<int> out) {
  auto remaining = static_cast<std::uint64_t>(photons);
  std::size_t filled = 0;
  for (int mode = 0; mode < modes && remaining > 0; ++mode) {
    const std::uint64_t below = *binomial(static_cast<std::uint64_t>(modes - 1 - mode), remaining);
    if (rank >= below) {
      rank -= below;
      out[filled++] = mode;
      --remaining;
    }
  }
}

std::uint64_t enumeration_cap() { return cap_storage().load(); }

void set_enumeration_cap(std::uint64_t cap) { cap_storage().store(cap == 0 ? kDefaultEnumerationCap : cap); }

std::uint64_t collision_free_count_checked(int photons, int modes) {
  check_shape(photons, modes);
  const auto count = binomial(static_cast<std::uint64_t>(modes), static_cast<std::uint64_t>(photons));
  if (!count || *count > enumeration_cap()) {
    throw Error(ErrorCode::kCapExceeded,
                "C(" + std::to_string(modes) + "," + std::to_string(photons) +
                    ") exceeds the enumeration cap of " + std::to_string(enumeration_cap()) +
                    " patterns");
  }
  return *count;
}

std::vector<OutputPattern> enumerate_collision_free(int photons, int modes) {
  const std::uint64_t count = collision_free_count_checked(photons, modes);
  std::vector<OutputPattern> out;
  out.reserve(count);
  std::vector<int> occupied(static_cast<std::size_t>(photons));
  for (std::uint64_t r = 0; r < count; ++r) {
    unrank_collision_free(r, photons, modes, occupied);
    out.push_back(OutputPattern::from_modes(modes, occupied));
  }
  return out;
}

std::vector<OutputPattern> enumerate_all(int photons, int modes) {
  // Bunched patterns exist for n > m too.
  if (modes < 1) check_shape(photons, modes);
  check_shape(photons, std::max(photons, modes));
  const auto count = binomial(static_cast<std::uint64_t>(modes + photons - 1),
                              static_cast<std::uint64_t>(photons));
  if (!count || *count > enumeration_cap()) {
    throw Error(ErrorCode::kCapExceeded,
                "C(m+n-1,n) exceeds the enumeration cap of " + std::to_string(enumeration_cap()) +
                    " patterns");
  }
  std::vector<OutputPattern> out;
  out.reserve(*count);
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  // Depth-first: give mode i as many photons as possible first.
  auto fill = [&](auto&& self, int mode, int left) -> void {
    if (mode == modes - 1) {
      occ[static_cast<std::size_t>(mode)] = left;
      out.emplace_back(occ);
      return;
    }
    for (int c = left; c >= 0; --c) {
      occ[static_cast<std::size_t>(mode)] = c;
      self(self, mode + 1, left - c);
    }
    occ[static_cast<std::size_t>(mode)] = 0;
  };
  fill(fill, 0, photons);
  return out;
}

}  // namespace bosonsamp
