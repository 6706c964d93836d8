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

#include <cstddef>
#include <functional>

namespace bosonsamp {

/// Caps the number of worker threads used by internal parallel loops.
/// Results never depend on this value. 0 restores the hardware default.
void set_max_threads(int threads) noexcept;
int max_threads() noexcept;

/// Runs body(i) for i in [0, count). Work items are independent; callers
/// reduce per-item results in index order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace bosonsamp
