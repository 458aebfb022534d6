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

#ifndef COMPAT_SHARP_JOINTS_H
#define COMPAT_SHARP_JOINTS_H

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "compat/povm.h"
#include "compat/tolerances.h"

namespace compat {

/// Raised when a set of measurements falls outside what the commutativity
/// criterion can decide (two or more non-projective members).
struct HypothesisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Pair of effects (povm index, outcome index) with the largest commutator.
struct CommutatorWitness {
    size_t povm_a = 0;
    size_t outcome_a = 0;
    size_t povm_b = 0;
    size_t outcome_b = 0;
    double norm = 0;
};

struct CommutativityReport {
    bool commuting = true;
    double max_norm = 0;
    std::optional<CommutatorWitness> witness;  // set when at least two povms were compared
};

/// Max ||[E, F]||_F over effects of distinct members.
CommutativityReport pairwise_commuting(const std::vector<Povm> &povms, const Tolerances &tol = {});

/// Joint whose effects are the ordered products M1(x1) M2(x2) ... MN(xN).
/// Requires pairwise commutativity (throws std::invalid_argument otherwise);
/// any commuting family is accepted, projective or not.
JointPovm product_joint(const std::vector<Povm> &povms, std::vector<std::string> ids = {},
                        const Tolerances &tol = {});

struct SharpDecision {
    bool jointly_measurable = false;
    std::optional<JointPovm> joint;              // the unique joint when measurable
    std::optional<CommutatorWitness> witness;    // worst non-commuting pair otherwise
};

/// Decides joint measurability of a family in which every member except at
/// most one is projective: measurable iff the members commute pairwise, and
/// the joint is then the product joint. Throws HypothesisError when two or
/// more members are not projective.
SharpDecision decide_sharp(const std::vector<Povm> &povms, std::vector<std::string> ids = {},
                           const Tolerances &tol = {});

/// For a family accepted by decide_sharp as measurable, checks that the
/// candidate coincides with the product joint (max-abs entry within
/// `entry_tol`). Throws std::invalid_argument when the candidate's marginals
/// do not reproduce the family within `marginal_tol` (not a joint at all).
bool verify_uniqueness(const std::vector<Povm> &povms, const JointPovm &candidate, double entry_tol = 1e-8,
                       double marginal_tol = 1e-7);

/// Frobenius residual of each single-component marginal against its target.
std::vector<double> marginal_residuals(const JointPovm &joint, const std::vector<Povm> &targets);

/// Max over tuples of ||product in given order - product in reversed order||_F.
double product_order_defect(const std::vector<Povm> &povms);

}  // namespace compat

#endif
