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

#include "compat/compat_engine.h"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "compat/random_povm.h"
#include "compat/sharp_joints.h"
#include "compat/specker_lsw.h"
#include "test_support.h"

using namespace compat;

namespace {

std::vector<Povm> trine_observables(double eta) {
    std::vector<Povm> out;
    for (const Vec3 &n : trine_directions()) {
        out.push_back(noisy_qubit(n, eta));
    }
    return out;
}

FeasibilityProblem trine_pair(double eta) {
    auto t = trine_observables(eta);
    return FeasibilityProblem::singles({t[0], t[1]});
}

FeasibilityProblem trine_triple(double eta) {
    return FeasibilityProblem::singles(trine_observables(eta));
}

// Soundness of a FEASIBLE verdict, checked without the solver's own residual.
void expect_sound_witness(const FeasibilityProblem &problem, const FeasibilityReport &r) {
    ASSERT_TRUE(r.witness.has_value());
    const JointPovm &w = *r.witness;
    for (const HermitianMatrix &e : w.effects()) {
        EXPECT_GE(min_eigenvalue(e), -1e-9);
    }
    for (size_t i = 0; i < problem.num_components(); i++) {
        Povm m = marginal(w, i);
        double sq = 0;
        for (size_t x = 0; x < m.num_outcomes(); x++) {
            double d = frobenius_distance(m.effect(x), problem.components()[i].effect(x));
            sq += d * d;
        }
        EXPECT_LE(std::sqrt(sq), 1e-7);
    }
}

// Anticorrelation objective for a pair of binary observables on state rho.
std::vector<HermitianMatrix> anticorrelation(const HermitianMatrix &rho) {
    HermitianMatrix zero(rho.dim());
    return {zero, rho, rho, zero};
}

}  // namespace

TEST(compat_engine, trine_examples) {
    auto t = trine_observables(0.70);
    for (size_t a = 0; a < 3; a++) {
        for (size_t b = a + 1; b < 3; b++) {
            FeasibilityProblem p = FeasibilityProblem::singles({t[a], t[b]});
            FeasibilityReport r = decide_joint(p);
            EXPECT_EQ(r.verdict, Verdict::kFeasible) << a << b;
            expect_sound_witness(p, r);
        }
    }
    FeasibilityReport triple = decide_joint(trine_triple(0.70));
    EXPECT_EQ(triple.verdict, Verdict::kInfeasible);
    EXPECT_GE(triple.gap_lower_bound, 1e-5);

    FeasibilityProblem low = trine_triple(0.60);
    FeasibilityReport r = decide_joint(low);
    EXPECT_EQ(r.verdict, Verdict::kFeasible);
    expect_sound_witness(low, r);
}

TEST(compat_engine, noncommuting_projective_pair_is_infeasible) {
    FeasibilityReport r =
        decide_joint(FeasibilityProblem::singles({computational_basis_pvm(2), noisy_qubit({1, 0, 0}, 1.0)}));
    EXPECT_EQ(r.verdict, Verdict::kInfeasible);
    EXPECT_EQ(to_string(r.verdict), "INFEASIBLE");
}

TEST(compat_engine, commutativity_is_stronger_than_compatibility) {
    auto t = trine_observables(0.5);
    EXPECT_GT(pairwise_commuting({t[0], t[1]}).max_norm, 0.1);
    EXPECT_EQ(decide_joint(trine_pair(0.5)).verdict, Verdict::kFeasible);
}

TEST(compat_engine, busch_criterion_examples) {
    auto dirs = trine_directions();
    double eta_u = std::sqrt(3.0) - 1;
    for (double eta : {0.1, 0.5, 0.7, 0.73, 0.7325, 0.75, 0.9}) {
        NoisyQubitObservable a{dirs[0], eta}, b{dirs[1], eta};
        EXPECT_EQ(busch_pair_criterion(a, b), eta <= eta_u) << eta;
        Vec3 va{eta * dirs[0][0], eta * dirs[0][1], eta * dirs[0][2]};
        Vec3 vb{eta * dirs[1][0], eta * dirs[1][1], eta * dirs[1][2]};
        EXPECT_NEAR(busch_margin(a, b), fixtures::busch_margin_oracle(va, vb), 1e-14);
    }
    EXPECT_FALSE(busch_pair_criterion({{0, 0, 1}, 1.0}, {{1, 0, 0}, 1.0}));
    Rng rng(5);
    for (int rep = 0; rep < 20; rep++) {
        EXPECT_TRUE(busch_pair_criterion({random_unit_vector(rng), 1.0}, {random_unit_vector(rng), 0.0}));
    }
}

TEST(compat_engine, solver_matches_busch_on_sample) {
    Rng rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int rep = 0; rep < 60; rep++) {
        NoisyQubitObservable a{random_unit_vector(rng), u(rng)}, b{random_unit_vector(rng), u(rng)};
        double margin = busch_margin(a, b);
        if (std::abs(margin) <= 5e-4) {
            continue;
        }
        FeasibilityReport r = decide_joint(FeasibilityProblem::singles({noisy_qubit(a), noisy_qubit(b)}));
        EXPECT_EQ(r.verdict, margin >= 0 ? Verdict::kFeasible : Verdict::kInfeasible) << "margin " << margin;
        checked++;
    }
    EXPECT_GT(checked, 50);
}

TEST(compat_engine, support_reduction_does_not_change_verdicts) {
    SolverOptions plain;
    plain.support_reduction = false;
    for (double eta : {0.3, 0.6, 0.7}) {
        EXPECT_EQ(decide_joint(trine_triple(eta)).verdict, decide_joint(trine_triple(eta), plain).verdict) << eta;
    }
    std::vector<Povm> zn{computational_basis_pvm(2), noisy_qubit({0, 0, 1}, 0.4)};
    FeasibilityReport with = decide_joint(FeasibilityProblem::singles(zn));
    FeasibilityReport without = decide_joint(FeasibilityProblem::singles(zn), plain);
    EXPECT_EQ(with.verdict, Verdict::kFeasible);
    EXPECT_EQ(without.verdict, Verdict::kFeasible);
}

TEST(compat_engine, multi_start_is_deterministic) {
    SolverOptions opts;
    opts.starts = 4;
    auto pts1 = starting_points(trine_triple(0.6), opts);
    auto pts2 = starting_points(trine_triple(0.6), opts);
    ASSERT_EQ(pts1.size(), 4u);
    for (size_t s = 0; s < pts1.size(); s++) {
        for (size_t t = 0; t < pts1[s].num_tuples(); t++) {
            EXPECT_EQ(max_abs_entry_distance(pts1[s].effect(t), pts2[s].effect(t)), 0.0);
        }
    }
    // The first start is the uniform joint; the others differ from it by the perturbation norm.
    JointPovm uniform = trine_triple(0.6).uniform_joint();
    double sq = 0;
    for (size_t t = 0; t < uniform.num_tuples(); t++) {
        EXPECT_EQ(max_abs_entry_distance(pts1[0].effect(t), uniform.effect(t)), 0.0);
        double d = frobenius_distance(pts1[1].effect(t), uniform.effect(t));
        sq += d * d;
    }
    EXPECT_NEAR(std::sqrt(sq), opts.perturbation, 1e-12);
    FeasibilityReport a = decide_joint(trine_triple(0.6), opts), b = decide_joint(trine_triple(0.6), opts);
    EXPECT_EQ(a.iterations, b.iterations);
    EXPECT_EQ(a.residual, b.residual);
}

TEST(compat_engine, tiny_budget_gives_undecided) {
    SolverOptions opts;
    opts.max_iters = 3;
    EXPECT_EQ(decide_joint(trine_triple(0.68), opts).verdict, Verdict::kUndecided);
}

TEST(compat_engine, maximize_linear_examples) {
    FeasibilityProblem p = trine_pair(0.5);
    std::vector<HermitianMatrix> zero(4, HermitianMatrix(2));
    LinearMaxResult r0 = maximize_linear(p, zero);
    EXPECT_NEAR(r0.value, 0.0, 1e-15);

    // The only joint of two identical projective measurements has no
    // weight on anticorrelated tuples.
    FeasibilityProblem zz = FeasibilityProblem::singles({computational_basis_pvm(2), computational_basis_pvm(2)});
    LinearMaxResult rz = maximize_linear(zz, anticorrelation(QubitState({0, 0, 1}).density()));
    EXPECT_NEAR(rz.value, 0.0, 1e-8);

    EXPECT_THROW(maximize_linear(trine_triple(0.7), std::vector<HermitianMatrix>(8, HermitianMatrix(2))),
                 std::invalid_argument);
    EXPECT_THROW(maximize_linear(p, std::vector<HermitianMatrix>(3, HermitianMatrix(2))), std::invalid_argument);
}

TEST(compat_engine, maximize_linear_returns_valid_argmax) {
    // On the state opposite to the pair's mean direction both observables
    // give "+" with probability (1 - eta/2)/2. Positivity of the (+,+) and
    // (-,-) effects caps the anticorrelation at 1 - eta/2, and the product
    // joint already reaches (1 - eta^2/4)/2.
    for (double eta : {0.3, 0.4566, 0.7}) {
        FeasibilityProblem p = trine_pair(eta);
        auto dirs = trine_directions();
        // State opposite to the sum of the pair's directions.
        Vec3 s{-(dirs[0][0] + dirs[1][0]), -(dirs[0][1] + dirs[1][1]), -(dirs[0][2] + dirs[1][2])};
        double n = norm(s);
        Vec3 bloch{s[0] / n, s[1] / n, s[2] / n};
        LinearMaxResult r = maximize_linear(p, anticorrelation(QubitState(bloch).density()));
        EXPECT_TRUE(validate(r.argmax).passed);
        EXPECT_LE(r.value, 1.0 - eta / 2 + 1e-9) << eta;
        EXPECT_GE(r.value, (1.0 - eta * eta / 4) / 2 - 1e-9) << eta;
    }
}

TEST(compat_engine, maximize_linear_argmax_keeps_exact_marginals_at_small_eta) {
    // Near-trivial observables make the optimal faces degenerate and slow the
    // inner projection. The pair optima must still share their singles so
    // that the three of them form a valid pairs-mode problem.
    double eta = 0.003;
    std::vector<Povm> obs;
    for (const Vec3 &n : trine_directions()) {
        obs.push_back(noisy_qubit(n, eta));
    }
    const std::vector<std::array<size_t, 2>> index{{0, 1}, {0, 2}, {1, 2}};
    const std::vector<std::string> ids{"M1", "M2", "M3"};
    for (const Vec3 &r : std::vector<Vec3>{{0, 1, 0}, {1, 0, 0}}) {
        std::vector<HermitianMatrix> objective = anticorrelation_objective(QubitState(r).density());
        std::vector<JointPovm> joints;
        for (const auto &[i, j] : index) {
            std::vector<Povm> pair{obs[i], obs[j]};
            LinearMaxResult m = maximize_linear(FeasibilityProblem::singles(pair, {ids[i], ids[j]}), objective);
            for (double res : marginal_residuals(m.argmax, pair)) {
                EXPECT_LE(res, 1e-8);
            }
            EXPECT_GE(validate(m.argmax).min_eigenvalue, -1e-9);
            // The symmetrized product joint attains (1 - eta^2 n_i.n_j) / 2.
            EXPECT_GE(m.value, 0.5 * (1 + 0.5 * eta * eta));
            EXPECT_LE(m.value, 1.0 + 1e-9);
            joints.push_back(std::move(m.argmax));
        }
        EXPECT_NO_THROW(FeasibilityProblem::pairs(joints));
    }
}

TEST(compat_engine, pairs_mode_and_three_joint_question) {
    // Product 2-joints of three commuting diagonal observables admit a 3-joint.
    Povm a = noisy_qubit({0, 0, 1}, 0.3), b = noisy_qubit({0, 0, 1}, 0.6), c = computational_basis_pvm(2);
    std::vector<JointPovm> pairs{product_joint({a, b}, {"A", "B"}), product_joint({a, c}, {"A", "C"}),
                                 product_joint({b, c}, {"B", "C"})};
    FeasibilityReport r = exists_3joint_given_2joints(pairs);
    EXPECT_EQ(r.verdict, Verdict::kFeasible);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->component_ids(), (std::vector<std::string>{"A", "B", "C"}));
    EXPECT_LE(r.residual, 1e-7);

    // Trivial observables: products of multiples of the identity.
    Povm t = noisy_qubit({1, 0, 0}, 0.0);
    std::vector<JointPovm> trivial{product_joint({t, t}, {"A", "B"}), product_joint({t, t}, {"A", "C"}),
                                   product_joint({t, t}, {"B", "C"})};
    EXPECT_EQ(exists_3joint_given_2joints(trivial).verdict, Verdict::kFeasible);

    FeasibilityProblem fp = FeasibilityProblem::pairs(pairs);
    EXPECT_EQ(fp.mode(), ConstraintMode::kMarginalsOfPairs);
    EXPECT_EQ(fp.num_components(), 3u);
    EXPECT_EQ(fp.num_tuples(), 8u);
}

TEST(compat_engine, pairs_mode_errors) {
    Povm a = noisy_qubit({0, 0, 1}, 0.3), b = noisy_qubit({0, 0, 1}, 0.6), c = computational_basis_pvm(2);
    Povm a2 = noisy_qubit({0, 0, 1}, 0.31);
    std::vector<JointPovm> inconsistent{product_joint({a, b}, {"A", "B"}), product_joint({a2, c}, {"A", "C"}),
                                        product_joint({b, c}, {"B", "C"})};
    try {
        FeasibilityProblem::pairs(inconsistent);
        FAIL() << "inconsistent pairs accepted";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("(A, C)"), std::string::npos) << e.what();
    }
    EXPECT_THROW(exists_3joint_given_2joints({product_joint({a, b}, {"A", "B"})}), std::invalid_argument);
    std::vector<JointPovm> four_ids{product_joint({a, b}, {"A", "B"}), product_joint({a, c}, {"A", "C"}),
                                    product_joint({b, c}, {"D", "C"})};
    EXPECT_THROW(exists_3joint_given_2joints(four_ids), std::invalid_argument);
}

TEST(compat_engine, singles_mode_errors) {
    EXPECT_THROW(FeasibilityProblem::singles({}), std::invalid_argument);
    EXPECT_THROW(FeasibilityProblem::singles({computational_basis_pvm(2), computational_basis_pvm(3)}),
                 DimensionError);
    EXPECT_THROW(FeasibilityProblem::singles({computational_basis_pvm(2)}, {"A", "B"}), std::invalid_argument);
    EXPECT_THROW(FeasibilityProblem::singles({computational_basis_pvm(2), computational_basis_pvm(2)}, {"A", "A"}),
                 std::invalid_argument);
}

TEST(compat_engine, bisection_recovers_known_thresholds) {
    BisectionResult pair = threshold_bisection(trine_pair, 0.5, 0.9);
    EXPECT_NEAR(pair.estimate, std::sqrt(3.0) - 1, 1e-3);
    EXPECT_FALSE(pair.stopped_undecided);
    EXPECT_LE(pair.hi - pair.lo, 1e-4);

    BisectionResult triple = threshold_bisection(trine_triple, 0.5, 0.9);
    EXPECT_NEAR(triple.estimate, 2.0 / 3.0, 1e-3);

    // Orthogonal pair: the analytic boundary is 1/sqrt(2).
    auto orthogonal = [](double eta) {
        return FeasibilityProblem::singles({noisy_qubit({0, 0, 1}, eta), noisy_qubit({1, 0, 0}, eta)});
    };
    EXPECT_NEAR(threshold_bisection(orthogonal, 0.5, 0.9).estimate, 1.0 / std::sqrt(2.0), 1e-3);

    EXPECT_THROW(threshold_bisection(trine_pair, 0.8, 0.9), std::invalid_argument);
    EXPECT_THROW(threshold_bisection(trine_pair, 0.9, 0.5), std::invalid_argument);
}

TEST(compat_engine, qutrit_problem_is_decided) {
    Rng rng(3);
    ComplexMatrix u = random_unitary(3, rng);
    Povm a = random_pvm(u, rng);
    Povm b = random_diagonal_povm(u, rng);
    FeasibilityProblem p = FeasibilityProblem::singles({a, b});
    FeasibilityReport r = decide_joint(p);
    EXPECT_EQ(r.verdict, Verdict::kFeasible);
    expect_sound_witness(p, r);
}
