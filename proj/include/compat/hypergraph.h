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

#ifndef COMPAT_HYPERGRAPH_H
#define COMPAT_HYPERGRAPH_H

#include <stdexcept>
#include <string>
#include <vector>

#include "compat/compat_engine.h"

namespace compat {

/// Largest family compatibility_hypergraph will enumerate (2^6 subsets).
inline constexpr size_t kMaxHypergraphVertices = 6;

struct SubsetVerdict {
    std::vector<size_t> members;  // sorted vertex indices
    Verdict verdict = Verdict::kUndecided;
    double residual = 0;
    double gap = 0;
    size_t iterations = 0;
};

struct CompatibilityHypergraph {
    std::vector<std::string> vertices;
    /// Maximal jointly measurable subsets (singletons included when maximal),
    /// each sorted, listed in lexicographic order.
    std::vector<std::vector<size_t>> maximal;
    /// Solver verdict of every subset of size >= 2, by size then lexicographic.
    std::vector<SubsetVerdict> subsets;
    /// Every subset of a compatible subset was itself found compatible.
    bool downward_closed = true;
};

/// Raised when some subset could not be decided within the iteration budget.
class UndecidedSubsetError : public std::runtime_error {
   public:
    UndecidedSubsetError(const std::string &message, std::vector<std::vector<size_t>> subsets)
        : std::runtime_error(message), subsets_(std::move(subsets)) {
    }
    const std::vector<std::vector<size_t>> &subsets() const {
        return subsets_;
    }

   private:
    std::vector<std::vector<size_t>> subsets_;
};

/// Decides every subset of size >= 2 in singles mode (singletons are
/// compatible by themselves), then records the maximal compatible subsets
/// and checks downward closure. Subsets are solved on `threads` workers
/// (0 = hardware concurrency); the result does not depend on the count.
CompatibilityHypergraph compatibility_hypergraph(const std::vector<Povm> &observables,
                                                 std::vector<std::string> ids = {}, const SolverOptions &opts = {},
                                                 size_t threads = 1);

/// Whether `subset` (any order) is compatible according to the hypergraph.
bool is_compatible(const CompatibilityHypergraph &h, std::vector<size_t> subset);

}  // namespace compat

#endif
