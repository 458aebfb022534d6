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

#include "compat/hypergraph.h"

#include <algorithm>
#include <sstream>

#include "compat/parallel.h"

namespace compat {

namespace {

std::vector<size_t> members_of(unsigned mask) {
    std::vector<size_t> out;
    for (size_t i = 0; mask >> i; i++) {
        if ((mask >> i) & 1u) {
            out.push_back(i);
        }
    }
    return out;
}

std::string format_subset(const std::vector<size_t> &members, const std::vector<std::string> &ids) {
    std::string s = "{";
    for (size_t k = 0; k < members.size(); k++) {
        s += (k ? ", " : "") + ids[members[k]];
    }
    return s + "}";
}

}  // namespace

CompatibilityHypergraph compatibility_hypergraph(const std::vector<Povm> &observables, std::vector<std::string> ids,
                                                 const SolverOptions &opts, size_t threads) {
    size_t n = observables.size();
    if (n == 0) {
        throw std::invalid_argument("compatibility_hypergraph: no observables");
    }
    if (n > kMaxHypergraphVertices) {
        throw std::invalid_argument("compatibility_hypergraph: at most " + std::to_string(kMaxHypergraphVertices) +
                                    " observables are supported, got " + std::to_string(n));
    }
    if (ids.empty()) {
        ids = default_component_ids(n);
    }
    // Builds the full problem once so dimension and id errors surface before any solve.
    FeasibilityProblem::singles(observables, ids);

    std::vector<unsigned> masks;
    for (unsigned m = 1; m < (1u << n); m++) {
        if (__builtin_popcount(m) >= 2) {
            masks.push_back(m);
        }
    }
    std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : members_of(a) < members_of(b);
    });

    CompatibilityHypergraph h;
    h.vertices = ids;
    h.subsets.resize(masks.size());
    parallel_for(masks.size(), threads, [&](size_t k) {
        std::vector<size_t> members = members_of(masks[k]);
        std::vector<Povm> povms;
        std::vector<std::string> sub_ids;
        for (size_t i : members) {
            povms.push_back(observables[i]);
            sub_ids.push_back(ids[i]);
        }
        FeasibilityReport r = decide_joint(FeasibilityProblem::singles(std::move(povms), std::move(sub_ids)), opts);
        h.subsets[k] = SubsetVerdict{members, r.verdict, r.residual, r.gap_lower_bound, r.iterations};
    });

    std::vector<std::vector<size_t>> undecided;
    for (const auto &s : h.subsets) {
        if (s.verdict == Verdict::kUndecided) {
            undecided.push_back(s.members);
        }
    }
    if (!undecided.empty()) {
        std::ostringstream msg;
        msg << "compatibility_hypergraph: undecided subsets (raise the iteration budget):";
        for (const auto &u : undecided) {
            msg << " " << format_subset(u, ids);
        }
        throw UndecidedSubsetError(msg.str(), std::move(undecided));
    }

    std::vector<bool> compatible(1u << n, false);
    for (size_t i = 0; i < n; i++) {
        compatible[1u << i] = true;
    }
    for (size_t k = 0; k < masks.size(); k++) {
        compatible[masks[k]] = h.subsets[k].verdict == Verdict::kFeasible;
    }
    for (unsigned m : masks) {
        if (!compatible[m]) {
            continue;
        }
        for (unsigned sub = (m - 1) & m; sub; sub = (sub - 1) & m) {
            if (!compatible[sub]) {
                h.downward_closed = false;
            }
        }
    }
    for (unsigned m = 1; m < (1u << n); m++) {
        if (!compatible[m]) {
            continue;
        }
        bool maximal = true;
        for (unsigned bigger = 1; bigger < (1u << n) && maximal; bigger++) {
            if (bigger != m && (bigger & m) == m && compatible[bigger]) {
                maximal = false;
            }
        }
        if (maximal) {
            h.maximal.push_back(members_of(m));
        }
    }
    std::sort(h.maximal.begin(), h.maximal.end());
    return h;
}

bool is_compatible(const CompatibilityHypergraph &h, std::vector<size_t> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    for (size_t i : subset) {
        if (i >= h.vertices.size()) {
            throw std::out_of_range("is_compatible: vertex index out of range");
        }
    }
    if (subset.size() <= 1) {
        return true;
    }
    for (const auto &s : h.subsets) {
        if (s.members == subset) {
            return s.verdict == Verdict::kFeasible;
        }
    }
    return false;
}

}  // namespace compat
