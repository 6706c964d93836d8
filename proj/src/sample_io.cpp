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

#include "sample_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "error.hpp"

namespace bosonsamp {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Metadata run_metadata(const SampleRun& run) {
  const SamplerOptions& o = run.options;
  Metadata md;
  md.emplace_back("sampler", std::string(to_string(o.kind)));
  const bool chain = o.kind != SamplerKind::kBruteForce && o.kind != SamplerKind::kRejection;
  if (chain) md.emplace_back("proposal", std::string(to_string(o.proposal)));
  md.emplace_back("n", std::to_string(run.photons));
  md.emplace_back("m", std::to_string(run.modes));
  md.emplace_back("count", std::to_string(o.count));
  md.emplace_back("seed", std::to_string(o.seed));
  if (o.kind == SamplerKind::kScMcmc || o.kind == SamplerKind::kImprovedScMcmc) {
    md.emplace_back("L", std::to_string(o.cache_size));
  }
  if (o.kind == SamplerKind::kMis || o.kind == SamplerKind::kImprovedScMcmc) {
    md.emplace_back("K", std::to_string(o.jump));
  }
  if (chain) md.emplace_back("burn_in", std::to_string(o.burn_in));
  if (o.kind == SamplerKind::kRejection) md.emplace_back("lambda", format_double(o.lambda));
  md.emplace_back("samples", std::to_string(run.sample_count()));
  md.emplace_back("candidates", std::to_string(run.candidate_count));
  md.emplace_back("permanent_evals", std::to_string(run.permanent_evals));
  md.emplace_back("warmup_evals", std::to_string(run.warmup_evals));
  if (o.proposal == ProposalKind::kDistinguishable && chain) {
    md.emplace_back("real_permanent_evals", std::to_string(run.real_permanent_evals));
  }
  md.emplace_back("acceptance_count", std::to_string(run.acceptance_count));
  if (o.kind == SamplerKind::kImprovedScMcmc) {
    md.emplace_back("cache_full_after", std::to_string(run.cache_full_after));
  }
  return md;
}

void write_samples(std::ostream& out, const Metadata& metadata, int photons,
                   std::span<const int> samples) {
  for (const auto& [key, value] : metadata) out << "# " << key << '=' << value << '\n';
  std::string line;
  const auto stride = static_cast<std::size_t>(photons);
  for (std::size_t base = 0; base + stride <= samples.size(); base += stride) {
    line.clear();
    for (std::size_t k = 0; k < stride; ++k) {
      if (k) line += ',';
      line += std::to_string(samples[base + k]);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing samples");
}

std::optional<std::string> SampleFile::get(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return std::nullopt;
}

SampleFile read_samples(std::istream& in, const std::string& name) {
  SampleFile file;
  std::string line;
  std::size_t lineno = 0;
  int max_mode = -1;
  int declared_n = 0;
  int declared_m = 0;
  std::vector<int> row;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kParse, name + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      const auto first = body.find_first_not_of(' ');
      body = first == std::string::npos ? "" : body.substr(first);
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      std::string key = body.substr(0, eq);
      std::string value = body.substr(eq + 1);
      if (key == "n" || key == "m") {
        int v = 0;
        auto res = std::from_chars(value.data(), value.data() + value.size(), v);
        if (res.ec != std::errc() || res.ptr != value.data() + value.size() || v < 1) {
          fail("header " + key + "='" + value + "' is not a positive integer");
        }
        (key == "n" ? declared_n : declared_m) = v;
      }
      file.metadata.emplace_back(std::move(key), std::move(value));
      continue;
    }
    row.clear();
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      int v = 0;
      auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc() || v < 0) fail("malformed mode index in '" + line + "'");
      if (declared_m > 0 && v >= declared_m) {
        fail("mode index " + std::to_string(v) + " outside header m=" + std::to_string(declared_m));
      }
      row.push_back(v);
      p = res.ptr;
      if (p < end) {
        if (*p != ',') fail("expected ',' in '" + line + "'");
        ++p;
        if (p == end) fail("trailing ',' in '" + line + "'");
      }
    }
    if (!std::is_sorted(row.begin(), row.end()) ||
        std::adjacent_find(row.begin(), row.end()) != row.end()) {
      fail("mode indices must be strictly ascending");
    }
    if (declared_n > 0 && static_cast<int>(row.size()) != declared_n) {
      fail("expected " + std::to_string(declared_n) + " modes per header n, found " + std::to_string(row.size()));
    }
    if (file.photons == 0) {
      file.photons = static_cast<int>(row.size());
    } else if (static_cast<int>(row.size()) != file.photons) {
      fail("expected " + std::to_string(file.photons) + " modes, found " + std::to_string(row.size()));
    }
    max_mode = std::max(max_mode, row.back());
    file.samples.insert(file.samples.end(), row.begin(), row.end());
  }

  if (file.photons == 0 && declared_n > 0) file.photons = declared_n;
  file.modes = declared_m > 0 ? declared_m : max_mode + 1;
  return file;
}

SampleFile read_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_samples(in, path.string());
}

void write_sources(std::ostream& out, std::span<const std::uint64_t> sources) {
  for (std::uint64_t s : sources) out << s << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing sources");
}

std::vector<std::uint64_t> read_sources(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint64_t> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::uint64_t v = 0;
    auto res = std::from_chars(line.data(), line.data() + line.size(), v);
    if (res.ec != std::errc() || res.ptr != line.data() + line.size()) {
      throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(lineno) + ": malformed index");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace bosonsamp
