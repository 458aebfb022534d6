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

#include "compat/povm.h"

#include <gtest/gtest.h>

#include <cmath>

#include "compat/random_povm.h"
#include "test_support.h"

using namespace compat;

TEST(povm, noisy_qubit_effects) {
    Povm p = noisy_qubit({0, 0, 1}, 0.5);
    EXPECT_EQ(p.labels(), (std::vector<std::string>{"+", "-"}));
    EXPECT_NEAR(p.effect("+")(0, 0).real(), 0.75, 1e-15);
    EXPECT_NEAR(p.effect("+")(1, 1).real(), 0.25, 1e-15);
    EXPECT_TRUE(validate(p).passed);
    EXPECT_FALSE(is_pvm(p));
    EXPECT_TRUE(is_pvm(noisy_qubit({1, 0, 0}, 1.0)));
}

TEST(povm, noisy_qubit_rejects_bad_input) {
    EXPECT_THROW(noisy_qubit({0, 0, 2}, 0.5), std::invalid_argument);
    EXPECT_THROW(noisy_qubit({0, 0, 1}, 1.5), std::invalid_argument);
    EXPECT_THROW(noisy_qubit({0, 0, 1}, -0.1), std::invalid_argument);
}

TEST(povm, structural_errors) {
    HermitianMatrix i2 = HermitianMatrix::identity(2);
    EXPECT_THROW(Povm({"a"}, {i2}), std::invalid_argument);
    EXPECT_THROW(Povm({"a", "a"}, {i2, i2}), std::invalid_argument);
    EXPECT_THROW(Povm({"a", ""}, {i2, i2}), std::invalid_argument);
    EXPECT_THROW(Povm({"a", "b"}, {i2, HermitianMatrix::identity(3)}), DimensionError);
    EXPECT_THROW(JointPovm({"A"}, {{"x|y", "z"}}, {i2, i2}), std::invalid_argument);
    EXPECT_THROW(JointPovm({"A", "B"}, {{"0", "1"}, {"0", "1"}}, {i2, i2}), std::invalid_argument);
}

TEST(povm, validate_reports_failures) {
    HermitianMatrix bad = HermitianMatrix::diagonal({1.2, -0.2});
    HermitianMatrix rest = HermitianMatrix::diagonal({-0.2, 1.2});
    ValidationReport r = validate(Povm({"a", "b"}, {bad, rest}));
    EXPECT_FALSE(r.passed);
    EXPECT_NEAR(r.min_eigenvalue, -0.2, 1e-15);
    EXPECT_EQ(r.worst_label, "a");

    HermitianMatrix half = 0.5 * HermitianMatrix::identity(2);
    r = validate(Povm({"a", "b"}, {half, 0.4 * HermitianMatrix::identity(2)}));
    EXPECT_FALSE(r.passed);
    EXPECT_NEAR(r.completeness_residual, 0.1 * std::sqrt(2.0), 1e-15);
}

TEST(povm, computational_basis_is_pvm) {
    for (size_t d = 1; d <= 4; d++) {
        if (d == 1) {
            EXPECT_THROW(computational_basis_pvm(d), std::invalid_argument);
            continue;
        }
        Povm p = computational_basis_pvm(d);
        EXPECT_TRUE(is_pvm(p));
        EXPECT_TRUE(validate(p).passed);
        EXPECT_EQ(p.labels().back(), std::to_string(d - 1));
    }
}

TEST(povm, qubit_state_density) {
    HermitianMatrix rho = QubitState({0, 1, 0}).density();
    EXPECT_NEAR(rho.trace(), 1.0, 1e-15);
    EXPECT_NEAR(rho(0, 1).imag(), -0.5, 1e-15);
    EXPECT_THROW(QubitState({1, 1, 0}), std::invalid_argument);
}

TEST(povm, tuple_indexing_row_major) {
    std::vector<HermitianMatrix> effects;
    for (int k = 0; k < 6; k++) {
        effects.push_back((k / 6.0) * HermitianMatrix::identity(2));
    }
    JointPovm j({"A", "B"}, {{"0", "1"}, {"x", "y", "z"}}, effects);
    EXPECT_EQ(j.tuple_index({1, 2}), 5u);
    EXPECT_EQ(j.tuple_outcomes(4), (std::vector<size_t>{1, 1}));
    EXPECT_EQ(j.tuple_key(3), "1|x");
    EXPECT_EQ(j.as_povm().labels()[2], "0|z");
}

TEST(povm, marginals_of_product_joint) {
    Rng rng(21);
    ComplexMatrix u = random_unitary(3, rng);
    Povm a = random_pvm(u, rng);
    Povm b = random_diagonal_povm(u, rng);
    std::vector<HermitianMatrix> effects;
    for (size_t x = 0; x < a.num_outcomes(); x++) {
        for (size_t y = 0; y < b.num_outcomes(); y++) {
            effects.emplace_back(a.effect(x) * b.effect(y));
        }
    }
    JointPovm j({"A", "B"}, {a.labels(), b.labels()}, effects);
    Povm ma = marginal(j, 0), mb = marginal(j, 1);
    for (size_t x = 0; x < a.num_outcomes(); x++) {
        EXPECT_LT(frobenius_distance(ma.effect(x), a.effect(x)), 1e-13);
    }
    for (size_t y = 0; y < b.num_outcomes(); y++) {
        EXPECT_LT(frobenius_distance(mb.effect(y), b.effect(y)), 1e-13);
    }
    JointPovm kept = marginalize(j, {0, 1});
    EXPECT_EQ(kept.num_tuples(), j.num_tuples());
    EXPECT_THROW(marginalize(j, {}), std::invalid_argument);
    EXPECT_THROW(marginalize(j, {1, 0}), std::invalid_argument);
    EXPECT_THROW(marginalize(j, {2}), std::out_of_range);
}

TEST(povm, trine_directions_geometry) {
    auto t = trine_directions();
    for (size_t i = 0; i < 3; i++) {
        EXPECT_NEAR(norm(t[i]), 1.0, 1e-15);
        EXPECT_NEAR(t[i][1], 0.0, 0.0);
        for (size_t j = i + 1; j < 3; j++) {
            EXPECT_NEAR(dot(t[i], t[j]), -0.5, 1e-15);
        }
    }
}

TEST(povm, random_generators_produce_valid_povms) {
    Rng rng(4);
    for (int rep = 0; rep < 50; rep++) {
        size_t d = 2 + rep % 3;
        ComplexMatrix u = random_unitary(d, rng);
        EXPECT_TRUE(is_pvm(random_pvm(u, rng)));
        EXPECT_TRUE(validate(random_diagonal_povm(u, rng)).passed);
        Povm g = random_generic_povm(d, rng);
        ValidationReport r = validate(g);
        EXPECT_TRUE(r.passed);
        EXPECT_GT(r.min_eigenvalue, 0.0);
        EXPECT_NEAR(norm(random_unit_vector(rng)), 1.0, 1e-14);
    }
}

TEST(povm, block_rotated_instances_commute) {
    Rng rng(8);
    for (size_t idx = 0; idx < 40; idx++) {
        fixtures::SharpInstance inst = fixtures::make_sharp_instance(rng, idx);
        double worst = 0;
        for (size_t a = 0; a < inst.povms.size(); a++) {
            for (size_t b = a + 1; b < inst.povms.size(); b++) {
                for (const auto &e : inst.povms[a].effects()) {
                    for (const auto &f : inst.povms[b].effects()) {
                        worst = std::max(worst, commutator_norm(e, f));
                    }
                }
            }
        }
        if (inst.commuting) {
            EXPECT_LT(worst, 1e-12) << inst.kind;
        } else {
            EXPECT_GT(worst, 1e-6) << inst.kind;
        }
    }
}
