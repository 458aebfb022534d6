// Copyright 2026 The compat Authors
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

#ifndef COMPAT_PARALLEL_H
#define COMPAT_PARALLEL_H

#include <cstddef>
#include <functional>

namespace compat {

/// Calls fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Callers write results into slot i so that output order is
/// input order. The first exception thrown by any call is rethrown after all
/// workers have stopped.
void parallel_for(size_t n, size_t threads, const std::function<void(size_t)> &fn);

}  // namespace compat

#endif
