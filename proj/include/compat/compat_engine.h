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

#ifndef COMPAT_COMPAT_ENGINE_H
#define COMPAT_COMPAT_ENGINE_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "compat/povm.h"

namespace compat {

enum class ConstraintMode {
    kMarginalsOfSingles,  // joint must reproduce each given single POVM
    kMarginalsOfPairs,    // joint must reproduce each given two-component joint
};

/// A two-component joint pinned to components (first, second), first < second.
struct PairTarget {
    size_t first = 0;
    size_t second = 0;
    JointPovm joint;  // components ordered (first, second)
};

/// Existence question for a joint POVM over an ordered component list.
class FeasibilityProblem {
   public:
    /// Joint of the given POVMs. ids default to "M1", "M2", ...
    static FeasibilityProblem singles(std::vector<Povm> povms, std::vector<std::string> ids = {});

    /// Joint over the union of the components named by the two-component
    /// joints, required to reproduce each of them. Components are identified
    /// by id and ordered by first appearance. Throws std::invalid_argument
    /// naming the first pair whose induced single marginals disagree with an
    /// earlier one beyond `consistency_tol` (Frobenius, per effect).
    static FeasibilityProblem pairs(const std::vector<JointPovm> &two_joints, double consistency_tol = 1e-8);

    ConstraintMode mode() const {
        return mode_;
    }
    size_t dim() const {
        return singles_.front().dim();
    }
    size_t num_components() const {
        return singles_.size();
    }
    const std::vector<std::string> &component_ids() const {
        return ids_;
    }
    /// Component POVMs: the targets in singles mode, the induced marginals in pairs mode.
    const std::vector<Povm> &components() const {
        return singles_;
    }
    const std::vector<PairTarget> &pair_targets() const {
        return pairs_;
    }
    std::vector<size_t> shape() const;
    size_t num_tuples() const;

    /// Empty joint shaped like this problem's solution (all effects zero).
    JointPovm zero_joint() const;
    /// Every effect I / #tuples.
    JointPovm uniform_joint() const;

   private:
    ConstraintMode mode_ = ConstraintMode::kMarginalsOfSingles;
    std::vector<std::string> ids_;
    std::vector<Povm> singles_;
    std::vector<PairTarget> pairs_;
};

enum class Verdict { kFeasible, kInfeasible, kUndecided };
std::string to_string(Verdict v);

struct SolverOptions {
    size_t max_iters = 50000;
    double feasible_tol = 1e-7;    // marginal residual accepted as feasible
    double infeasible_tol = 1e-5;  // converged set distance declared infeasible
    double witness_psd_tol = 1e-9;
    // Infeasibility is declared once the set distance decreases by less than
    // stall_rel_decrease over a window of max(stall_window, iteration / 10).
    size_t stall_window = 200;
    double stall_rel_decrease = 1e-3;
    // Extra starts are the uniform joint plus a seeded Hermitian perturbation.
    size_t starts = 1;
    uint64_t seed = 42;
    double perturbation = 1e-3;
    // Restrict each joint effect to the intersection of the ranges of the
    // marginal targets it sums into (a joint effect never exceeds them).
    bool support_reduction = true;
    double support_rank_tol = 1e-9;
};

struct FeasibilityReport {
    Verdict verdict = Verdict::kUndecided;
    std::optional<JointPovm> witness;  // last PSD iterate; set for every verdict
    double residual = 0;               // marginal residual of the witness (Frobenius)
    double gap_lower_bound = 0;        // converged distance estimate between the two sets
    double min_eigenvalue = 0;         // over witness effects
    size_t iterations = 0;
    size_t start_index = 0;
};

/// Dykstra alternating projections between the affine set of tuple-indexed
/// Hermitian families with the prescribed marginals and the product of PSD
/// cones. Runs opts.starts starts; FEASIBLE if any start is, INFEASIBLE only
/// if every start is.
FeasibilityReport decide_joint(const FeasibilityProblem &problem, const SolverOptions &opts = {});

/// Single run from an explicit starting family. With a nonempty intersection
/// the iterates converge to the projection of `start` onto it.
FeasibilityReport decide_joint_from(const FeasibilityProblem &problem, const JointPovm &start,
                                    const SolverOptions &opts = {});

/// Starting points used by decide_joint: index 0 is the uniform joint, the
/// rest are perturbed by seeded Hermitian noise of Frobenius norm `opts.perturbation`.
std::vector<JointPovm> starting_points(const FeasibilityProblem &problem, const SolverOptions &opts);

/// Nearest point (Frobenius) of the feasible set to `point`, via Dykstra.
struct ProjectionResult {
    JointPovm point;
    double residual = 0;
    size_t iterations = 0;
    bool converged = false;
};
ProjectionResult project_onto_joints(const FeasibilityProblem &problem, const JointPovm &point, double tol = 1e-10,
                                     size_t max_iters = 20000, const SolverOptions &opts = {});

struct LinearMaxOptions {
    SolverOptions solver;
    double step_scale = 2.0;  // initial gradient step, halved when a projection misses its budget
    size_t max_steps = 5000;
    size_t patience = 50;               // stop when the best value improves by
    double rel_improvement = 1e-9;      // less than this (relative) over `patience` steps
    double projection_tol = 1e-10;
    size_t projection_max_iters = 20000;
};

struct LinearMaxResult {
    double value = 0;
    JointPovm argmax;
    size_t steps = 0;
};

/// Maximizes sum_t Re Tr(objective[t] M[t]) over joints for the problem by
/// projected gradient ascent. `objective` must have the problem's tuple
/// shape. Throws std::invalid_argument when the problem is not FEASIBLE.
LinearMaxResult maximize_linear(const FeasibilityProblem &problem, const std::vector<HermitianMatrix> &objective,
                                const LinearMaxOptions &opts = {});

/// Does some joint over the three components reproduce all three given
/// two-component joints?
FeasibilityReport exists_3joint_given_2joints(const std::vector<JointPovm> &two_joints,
                                              const SolverOptions &opts = {});

struct BisectionResult {
    double estimate = 0;  // midpoint of the final bracket
    double lo = 0;        // last parameter seen feasible
    double hi = 0;        // last parameter seen infeasible
    size_t evaluations = 0;
    bool stopped_undecided = false;  // an UNDECIDED verdict ended the search early
};

/// Bisection on a parameter family that is feasible at `lo` and infeasible at
/// `hi`. Throws std::invalid_argument if the endpoints do not have those verdicts.
BisectionResult threshold_bisection(const std::function<FeasibilityProblem(double)> &family, double lo, double hi,
                                    double tol = 1e-4, const SolverOptions &opts = {});

/// ||eta_a a + eta_b b|| + ||eta_a a - eta_b b|| <= 2: necessary and
/// sufficient for two noisy qubit observables to be jointly measurable.
bool busch_pair_criterion(const NoisyQubitObservable &a, const NoisyQubitObservable &b);
/// 2 - (||eta_a a + eta_b b|| + ||eta_a a - eta_b b||); positive inside.
double busch_margin(const NoisyQubitObservable &a, const NoisyQubitObservable &b);

}  // namespace compat

#endif
