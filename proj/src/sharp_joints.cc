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

#include "compat/sharp_joints.h"

#include <algorithm>

namespace compat {

namespace {

void check_family(const std::vector<Povm> &povms, const char *what) {
    if (povms.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty measurement list");
    }
    size_t d = povms.front().dim();
    for (const auto &p : povms) {
        if (p.dim() != d) {
            throw DimensionError(std::string(what) + ": measurements act on different dimensions");
        }
    }
}

// Visits every outcome tuple in row-major order.
template <typename F>
void for_each_tuple(const std::vector<Povm> &povms, F &&f) {
    std::vector<size_t> outcomes(povms.size(), 0);
    while (true) {
        f(outcomes);
        size_t i = povms.size();
        while (i > 0) {
            i--;
            if (++outcomes[i] < povms[i].num_outcomes()) {
                break;
            }
            outcomes[i] = 0;
            if (i == 0) {
                return;
            }
        }
    }
}

ComplexMatrix ordered_product(const std::vector<Povm> &povms, const std::vector<size_t> &outcomes, bool reversed) {
    size_t n = povms.size();
    ComplexMatrix acc = povms[reversed ? n - 1 : 0].effect(outcomes[reversed ? n - 1 : 0]).matrix();
    for (size_t k = 1; k < n; k++) {
        size_t i = reversed ? n - 1 - k : k;
        acc = acc * povms[i].effect(outcomes[i]).matrix();
    }
    return acc;
}

}  // namespace

CommutativityReport pairwise_commuting(const std::vector<Povm> &povms, const Tolerances &tol) {
    check_family(povms, "pairwise_commuting");
    CommutativityReport report;
    for (size_t a = 0; a < povms.size(); a++) {
        for (size_t b = a + 1; b < povms.size(); b++) {
            for (size_t x = 0; x < povms[a].num_outcomes(); x++) {
                for (size_t y = 0; y < povms[b].num_outcomes(); y++) {
                    double n = commutator_norm(povms[a].effect(x), povms[b].effect(y));
                    if (!report.witness || n > report.witness->norm) {
                        report.witness = CommutatorWitness{a, x, b, y, n};
                    }
                }
            }
        }
    }
    report.max_norm = report.witness ? report.witness->norm : 0;
    report.commuting = report.max_norm <= tol.commute;
    return report;
}

JointPovm product_joint(const std::vector<Povm> &povms, std::vector<std::string> ids, const Tolerances &tol) {
    check_family(povms, "product_joint");
    CommutativityReport c = pairwise_commuting(povms, tol);
    if (!c.commuting) {
        throw std::invalid_argument("product_joint: measurements do not commute pairwise (max commutator norm " +
                                    std::to_string(c.max_norm) + ")");
    }
    if (ids.empty()) {
        ids = default_component_ids(povms.size());
    }
    std::vector<std::vector<std::string>> labels;
    for (const auto &p : povms) {
        labels.push_back(p.labels());
    }
    std::vector<HermitianMatrix> effects;
    for_each_tuple(povms, [&](const std::vector<size_t> &outcomes) {
        effects.emplace_back(ordered_product(povms, outcomes, false));
    });
    return JointPovm(std::move(ids), std::move(labels), std::move(effects));
}

SharpDecision decide_sharp(const std::vector<Povm> &povms, std::vector<std::string> ids, const Tolerances &tol) {
    check_family(povms, "decide_sharp");
    size_t unsharp = std::count_if(povms.begin(), povms.end(), [&](const Povm &p) { return !is_pvm(p, tol.pvm); });
    if (unsharp > 1) {
        throw HypothesisError("decide_sharp: " + std::to_string(unsharp) +
                              " members are not projective; at most one non-projective measurement is allowed");
    }
    SharpDecision d;
    CommutativityReport c = pairwise_commuting(povms, tol);
    d.jointly_measurable = c.commuting;
    if (c.commuting) {
        d.joint = product_joint(povms, std::move(ids), tol);
    } else {
        d.witness = c.witness;
    }
    return d;
}

std::vector<double> marginal_residuals(const JointPovm &joint, const std::vector<Povm> &targets) {
    if (joint.num_components() != targets.size()) {
        throw std::invalid_argument("marginal_residuals: component count mismatch");
    }
    std::vector<double> out;
    for (size_t i = 0; i < targets.size(); i++) {
        Povm m = marginal(joint, i);
        if (m.num_outcomes() != targets[i].num_outcomes() || m.dim() != targets[i].dim()) {
            throw std::invalid_argument("marginal_residuals: component " + std::to_string(i) +
                                        " has a different outcome set than its target");
        }
        double s = 0;
        for (size_t x = 0; x < m.num_outcomes(); x++) {
            double d = frobenius_distance(m.effect(x), targets[i].effect(x));
            s += d * d;
        }
        out.push_back(std::sqrt(s));
    }
    return out;
}

bool verify_uniqueness(const std::vector<Povm> &povms, const JointPovm &candidate, double entry_tol,
                       double marginal_tol) {
    SharpDecision d = decide_sharp(povms);
    if (!d.jointly_measurable) {
        throw std::invalid_argument("verify_uniqueness: the measurements are not jointly measurable");
    }
    for (double r : marginal_residuals(candidate, povms)) {
        if (r > marginal_tol) {
            throw std::invalid_argument("verify_uniqueness: candidate marginals do not reproduce the measurements");
        }
    }
    const JointPovm &product = *d.joint;
    for (size_t t = 0; t < product.num_tuples(); t++) {
        if (max_abs_entry_distance(product.effect(t), candidate.effect(t)) > entry_tol) {
            return false;
        }
    }
    return true;
}

double product_order_defect(const std::vector<Povm> &povms) {
    check_family(povms, "product_order_defect");
    double worst = 0;
    for_each_tuple(povms, [&](const std::vector<size_t> &outcomes) {
        ComplexMatrix fwd = ordered_product(povms, outcomes, false);
        ComplexMatrix rev = ordered_product(povms, outcomes, true);
        worst = std::max(worst, (fwd - rev).frobenius_norm());
    });
    return worst;
}

}  // namespace compat
