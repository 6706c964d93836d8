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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "samplers.hpp"

namespace bosonsamp {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Header lines ("# key=value") describing a run; timing is left out so the
/// file is byte-identical across reruns.
Metadata run_metadata(const SampleRun& run);

/// One sample per line: comma-separated ascending occupied-mode indices.
void write_samples(std::ostream& out, const Metadata& metadata, int photons,
                   std::span<const int> samples);

struct SampleFile {
  Metadata metadata;
  int photons = 0;
  int modes = 0;  ///< from the "m" header, else 1 + largest index seen
  std::vector<int> samples;

  std::size_t size() const noexcept {
    return photons == 0 ? 0 : samples.size() / static_cast<std::size_t>(photons);
  }
  std::span<const int> sample(std::size_t i) const {
    return {samples.data() + i * static_cast<std::size_t>(photons), static_cast<std::size_t>(photons)};
  }
  std::optional<std::string> get(const std::string& key) const;
};

/// Parses the sample format; malformed lines are reported with their line
/// number.
SampleFile read_samples(std::istream& in, const std::string& name = "<input>");
SampleFile read_samples(const std::filesystem::path& path);

/// Candidate index of each output sample, one integer per line.
void write_sources(std::ostream& out, std::span<const std::uint64_t> sources);
std::vector<std::uint64_t> read_sources(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace bosonsamp
