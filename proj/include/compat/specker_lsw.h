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

#ifndef COMPAT_SPECKER_LSW_H
#define COMPAT_SPECKER_LSW_H

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "compat/compat_engine.h"
#include "compat/linalg.h"

namespace compat {

using Directions = std::array<Vec3, 3>;

/// Anticorrelation bound for models with a global joint distribution.
inline constexpr double kKsBound = 2.0 / 3.0;
/// Scalar triple product magnitude below which directions count as coplanar.
inline constexpr double kCoplanarTol = 1e-10;
/// Negative radicands down to this value are clamped to zero.
inline constexpr double kRadicandTol = 1e-12;

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Three binary noisy spin observables sharing one visibility.
struct SpeckerScenario {
    Directions directions;
    double eta = 0;

    bool coplanar() const;
    std::vector<Povm> observables() const;
};

double scalar_triple_product(const Directions &d);
/// Unit, coplanar, pairwise dot products -1/2 (within tol).
bool is_trine(const Directions &d, double tol = 1e-9);

/// Trine visibility thresholds: 3-joints exist iff eta <= 2/3, 2-joints iff eta <= sqrt(3) - 1.
double trine_eta_lower();
double trine_eta_upper();

/// Largest eta at which every pair radicand of c_max is nonnegative:
/// min over pairs of 1 / sqrt(1 + sqrt(1 - c^2)), c = n_i . n_j.
double closed_form_eta_max(const Directions &d);

/// Optimal anticorrelation term for coplanar directions:
///   2 eta + sum over pairs ( sqrt(1 + eta^4 c^2 - 2 eta^2) - (1 + eta^2 c) ),  c = n_i . n_j.
/// Throws PreconditionError for non-coplanar directions or eta outside
/// [0, 1], DomainError when a radicand is below -kRadicandTol.
double c_max(const Directions &d, double eta);
/// c_max / 6 + lsw_bound(eta).
double r3_quantum(const Directions &d, double eta);
/// 1 - eta / 3.
double lsw_bound(double eta);
/// r3_quantum - lsw_bound.
double violation(const Directions &d, double eta);
/// Trine specialization 1/2 + eta^2/4 + sqrt(1 - 2 eta^2 + eta^4 / 4) / 2.
double r3_trine_closed_form(double eta);

bool ks_check(double r3);
bool lsw_check(double r3, double eta);

enum class Regime { kStrong, kWeakOnlyEligible, kNo2Joints };
std::string to_string(Regime r);

struct Thresholds {
    double eta_lower = 0;  // 3-joint threshold
    double eta_upper = 0;  // 2-joint threshold (all three pairs)
    bool analytic = false;
};

/// Analytic values for a trine; solver bisection otherwise.
Thresholds regime_thresholds(const Directions &d, const SolverOptions &opts = {}, double tol = 1e-4);

/// STRONG for eta_lower < eta <= eta_upper, NO_2JOINTS above eta_upper,
/// WEAK_ONLY_ELIGIBLE at or below eta_lower (eta = 0 included).
Regime classify_regime(double eta, const Thresholds &t);
Regime classify_regime(const SpeckerScenario &s, const SolverOptions &opts = {});

struct LswAnalysis {
    double eta = 0;
    double c_max = 0;
    double r3_quantum = 0;
    double lsw_bound = 0;
    double ks_bound = kKsBound;
    double violation = 0;
    Regime regime = Regime::kWeakOnlyEligible;
};
LswAnalysis analyze(const Directions &d, double eta, const Thresholds &t);

struct EtaRange {
    double lo = 0;
    double hi = 0;
    bool lo_open = false;
    bool hi_open = false;
};

struct ArgmaxResult {
    double eta = 0;
    double violation = 0;
    double r3_quantum = 0;
    /// False when the maximum is a supremum approached at an open end of the
    /// range; `eta` is then that end and the values are evaluated there.
    bool attained = true;
};

/// Grid scan (`grid` points, endpoints included) followed by golden-section
/// refinement to `tol` around the best grid point; ties go to the smaller eta.
ArgmaxResult argmax_violation(const Directions &d, const EtaRange &range, size_t grid = 256, double tol = 1e-4);

struct SweepRecord {
    std::vector<LswAnalysis> rows;  // strictly increasing eta
    ArgmaxResult argmax;
};

/// Uniform `grid`-point sweep over [eta_min, eta_max] (which must lie in
/// [0, thresholds.eta_upper]).
SweepRecord lsw_sweep(const Directions &d, double eta_min, double eta_max, size_t grid, const Thresholds &t);

/// CSV with header `eta,c_max,r3_quantum,lsw_bound,violation,regime`.
std::string sweep_csv(const SweepRecord &s);

// ---- numerical cross-validation --------------------------------------------

struct StateSearchOptions {
    size_t coarse_states = 32;  // Fibonacci states tried before coordinate ascent
    size_t grid_states = 2000;  // Fibonacci grid for each state update
    size_t max_rounds = 30;
    double round_tol = 1e-9;  // stop when a round improves R3 by less than this
    LinearMaxOptions linear;
    bool check_3joint = true;
    size_t threads = 1;  // workers for the coarse scan
};

struct CrossValidation {
    double eta = 0;
    double numerical_r3 = 0;
    double closed_form_r3 = 0;
    double abs_error = 0;
    Vec3 state{0, 0, 1};                // Bloch vector of the best pure state found
    std::vector<JointPovm> pair_joints;  // achieving 2-joints for pairs (1,2), (1,3), (2,3)
    std::vector<double> pair_values;     // anticorrelation probability per pair
    std::optional<FeasibilityReport> three_joint;
    size_t rounds = 0;
};

/// Pair anticorrelation objective on a state: weight rho on tuples (+,-) and (-,+).
std::vector<HermitianMatrix> anticorrelation_objective(const HermitianMatrix &rho);

/// `count` nearly uniform points on the unit sphere (golden-angle spiral).
std::vector<Vec3> fibonacci_sphere(size_t count);

/// Coordinate ascent between the three 2-joints (linear maximization per
/// pair for a fixed state) and the pure state (grid plus Nelder-Mead for
/// fixed joints), compared with r3_quantum; optionally asks whether the
/// achieving 2-joints admit a 3-joint. Requires eta <= the 2-joint threshold.
CrossValidation cross_validate(const SpeckerScenario &s, const StateSearchOptions &opts = {});

}  // namespace compat

#endif
