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

#include <gtest/gtest.h>

using namespace compat;

namespace {

std::vector<Povm> trine_observables(double eta) {
    std::vector<Povm> out;
    for (const Vec3 &n : trine_directions()) {
        out.push_back(noisy_qubit(n, eta));
    }
    return out;
}

using Sets = std::vector<std::vector<size_t>>;

}  // namespace

TEST(hypergraph, trine_above_triple_threshold_gives_three_pairs) {
    CompatibilityHypergraph h = compatibility_hypergraph(trine_observables(0.70), {"A", "B", "C"});
    EXPECT_EQ(h.maximal, (Sets{{0, 1}, {0, 2}, {1, 2}}));
    EXPECT_TRUE(h.downward_closed);
    EXPECT_EQ(h.subsets.size(), 4u);
    EXPECT_TRUE(is_compatible(h, {1, 0}));
    EXPECT_FALSE(is_compatible(h, {0, 1, 2}));
    EXPECT_TRUE(is_compatible(h, {2}));
    EXPECT_EQ(h.vertices, (std::vector<std::string>{"A", "B", "C"}));
}

TEST(hypergraph, trine_below_triple_threshold_gives_full_set) {
    CompatibilityHypergraph h = compatibility_hypergraph(trine_observables(0.60));
    EXPECT_EQ(h.maximal, (Sets{{0, 1, 2}}));
    EXPECT_TRUE(h.downward_closed);
}

TEST(hypergraph, mutually_noncommuting_projective_measurements_are_isolated) {
    std::vector<Povm> zxy{noisy_qubit({0, 0, 1}, 1.0), noisy_qubit({1, 0, 0}, 1.0), noisy_qubit({0, 1, 0}, 1.0)};
    CompatibilityHypergraph h = compatibility_hypergraph(zxy, {"Z", "X", "Y"});
    EXPECT_EQ(h.maximal, (Sets{{0}, {1}, {2}}));
    EXPECT_TRUE(h.downward_closed);
}

TEST(hypergraph, result_does_not_depend_on_thread_count) {
    std::vector<Povm> family = trine_observables(0.70);
    family.push_back(noisy_qubit({0, 1, 0}, 0.5));
    CompatibilityHypergraph one = compatibility_hypergraph(family, {}, {}, 1);
    CompatibilityHypergraph four = compatibility_hypergraph(family, {}, {}, 4);
    EXPECT_EQ(one.maximal, four.maximal);
    ASSERT_EQ(one.subsets.size(), four.subsets.size());
    for (size_t i = 0; i < one.subsets.size(); i++) {
        EXPECT_EQ(one.subsets[i].members, four.subsets[i].members);
        EXPECT_EQ(one.subsets[i].verdict, four.subsets[i].verdict);
        EXPECT_EQ(one.subsets[i].iterations, four.subsets[i].iterations);
    }
}

TEST(hypergraph, undecided_subsets_are_reported) {
    SolverOptions opts;
    opts.max_iters = 2;
    try {
        compatibility_hypergraph(trine_observables(0.68), {}, opts);
        FAIL() << "expected an undecided subset";
    } catch (const UndecidedSubsetError &e) {
        EXPECT_FALSE(e.subsets().empty());
    }
}

TEST(hypergraph, input_limits) {
    EXPECT_THROW(compatibility_hypergraph({}), std::invalid_argument);
    std::vector<Povm> seven(kMaxHypergraphVertices + 1, noisy_qubit({0, 0, 1}, 0.5));
    EXPECT_THROW(compatibility_hypergraph(seven), std::invalid_argument);
    CompatibilityHypergraph single = compatibility_hypergraph({noisy_qubit({0, 0, 1}, 0.5)});
    EXPECT_EQ(single.maximal, (Sets{{0}}));
    EXPECT_THROW(is_compatible(single, {3}), std::out_of_range);
}
