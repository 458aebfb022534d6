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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "compat/nelder_mead.h"
#include "compat/parallel.h"
#include "compat/specker_lsw.h"

namespace compat {

namespace {

constexpr std::array<std::array<size_t, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

struct JointChoice {
    std::vector<JointPovm> joints;
    std::vector<double> values;
    double r3 = 0;
};

Vec3 spherical(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Tr[rho A] for the pure state with Bloch vector r.
double expectation(const HermitianMatrix &a, const Vec3 &r) {
    return frob_inner(QubitState(r).density(), a);
}

}  // namespace

std::vector<HermitianMatrix> anticorrelation_objective(const HermitianMatrix &rho) {
    HermitianMatrix zero(rho.dim());
    return {zero, rho, rho, zero};
}

std::vector<Vec3> fibonacci_sphere(size_t count) {
    std::vector<Vec3> out;
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (size_t i = 0; i < count; i++) {
        double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = golden_angle * static_cast<double>(i);
        out.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return out;
}

CrossValidation cross_validate(const SpeckerScenario &s, const StateSearchOptions &opts) {
    if (!s.coplanar()) {
        throw PreconditionError("cross_validate: directions are not coplanar");
    }
    CrossValidation out;
    out.eta = s.eta;
    out.closed_form_r3 = r3_quantum(s.directions, s.eta);

    std::vector<Povm> obs = s.observables();
    std::vector<std::string> ids = default_component_ids(3);
    std::vector<FeasibilityProblem> problems;
    for (const auto &[i, j] : kPairs) {
        problems.push_back(FeasibilityProblem::singles({obs[i], obs[j]}, {ids[i], ids[j]}));
    }

    auto best_joints = [&](const Vec3 &r) {
        std::vector<HermitianMatrix> objective = anticorrelation_objective(QubitState(r).density());
        JointChoice c;
        for (const auto &p : problems) {
            LinearMaxResult m = maximize_linear(p, objective, opts.linear);
            c.values.push_back(m.value);
            c.joints.push_back(std::move(m.argmax));
        }
        c.r3 = (c.values[0] + c.values[1] + c.values[2]) / 3.0;
        return c;
    };

    // Coarse scan: the in-plane states are local optima of the alternation, so
    // the ascent starts from the best of a spread of states.
    std::vector<Vec3> coarse = fibonacci_sphere(std::max<size_t>(opts.coarse_states, 1));
    std::vector<JointChoice> coarse_choices(coarse.size());
    parallel_for(coarse.size(), opts.threads, [&](size_t k) { coarse_choices[k] = best_joints(coarse[k]); });
    size_t start = 0;
    for (size_t k = 1; k < coarse.size(); k++) {
        if (coarse_choices[k].r3 > coarse_choices[start].r3) {
            start = k;
        }
    }
    Vec3 state = coarse[start];
    JointChoice current = std::move(coarse_choices[start]);
    std::vector<Vec3> grid = fibonacci_sphere(std::max<size_t>(opts.grid_states, 1));

    for (size_t round = 1; round <= opts.max_rounds; round++) {
        out.rounds = round;
        // State update: A = sum over pairs of the anticorrelated effects / 3.
        HermitianMatrix a(2);
        for (const auto &j : current.joints) {
            a += (1.0 / 3.0) * (j.effect({0, 1}) + j.effect({1, 0}));
        }
        Vec3 best_r = state;
        double best_v = expectation(a, state);
        for (const auto &r : grid) {
            double v = expectation(a, r);
            if (v > best_v) {
                best_v = v;
                best_r = r;
            }
        }
        double theta = std::acos(std::clamp(best_r[2], -1.0, 1.0));
        double phi = std::atan2(best_r[1], best_r[0]);
        NelderMeadResult nm = nelder_mead_minimize(
            [&](const std::vector<double> &x) { return -expectation(a, spherical(x[0], x[1])); }, {theta, phi});
        if (-nm.value > best_v) {
            best_r = spherical(nm.x[0], nm.x[1]);
        }

        JointChoice next = best_joints(best_r);
        double gain = next.r3 - current.r3;
        if (gain > 0) {
            state = best_r;
            current = std::move(next);
        }
        if (gain < opts.round_tol) {
            break;
        }
    }

    out.state = state;
    out.numerical_r3 = current.r3;
    out.abs_error = std::abs(out.numerical_r3 - out.closed_form_r3);
    out.pair_values = current.values;
    out.pair_joints = std::move(current.joints);
    if (opts.check_3joint) {
        out.three_joint = exists_3joint_given_2joints(out.pair_joints, opts.linear.solver);
    }
    return out;
}

}  // namespace compat
