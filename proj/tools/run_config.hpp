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

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bosonsamp::cli {

/// Flat "key=value" run configuration. Keys are the long flag names without
/// the leading dashes; '#' starts a comment line.
using RunConfig = std::vector<std::pair<std::string, std::string>>;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunConfig parse_config(std::istream& in, const std::string& name = "<config>");
RunConfig read_config(const std::string& path);

/// Inverse of parse_config: one "key=value" line per entry, in order.
std::string format_config(const RunConfig& config);

}  // namespace bosonsamp::cli
