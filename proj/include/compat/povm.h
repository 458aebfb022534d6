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

#ifndef COMPAT_POVM_H
#define COMPAT_POVM_H

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "compat/linalg.h"
#include "compat/tolerances.h"

namespace compat {

/// Finite-outcome measurement: ordered outcome labels with one effect each.
/// Construction checks structure (dims, labels, count). Numerical invariants
/// (PSD, completeness) are checked by validate() and by the deserializer, so
/// solver output carrying round-off can still be represented.
class Povm {
   public:
    Povm() = default;
    Povm(std::vector<std::string> labels, std::vector<HermitianMatrix> effects);

    size_t dim() const {
        return dim_;
    }
    size_t num_outcomes() const {
        return effects_.size();
    }
    const std::vector<std::string> &labels() const {
        return labels_;
    }
    const std::vector<HermitianMatrix> &effects() const {
        return effects_;
    }
    const HermitianMatrix &effect(size_t k) const {
        return effects_[k];
    }
    /// Throws std::out_of_range for an unknown label.
    const HermitianMatrix &effect(const std::string &label) const;
    std::optional<size_t> index_of(const std::string &label) const;

   private:
    size_t dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<HermitianMatrix> effects_;
};

/// Joint measurement over an ordered list of components. Effects are indexed
/// by outcome tuples in row-major order (last component varies fastest) and
/// cover the full Cartesian product of the component label sets.
class JointPovm {
   public:
    JointPovm() = default;
    JointPovm(std::vector<std::string> component_ids, std::vector<std::vector<std::string>> component_labels,
              std::vector<HermitianMatrix> effects);

    size_t dim() const {
        return dim_;
    }
    size_t num_components() const {
        return component_ids_.size();
    }
    size_t num_tuples() const {
        return effects_.size();
    }
    const std::vector<std::string> &component_ids() const {
        return component_ids_;
    }
    const std::vector<std::vector<std::string>> &component_labels() const {
        return component_labels_;
    }
    const std::vector<HermitianMatrix> &effects() const {
        return effects_;
    }
    const HermitianMatrix &effect(size_t tuple_index) const {
        return effects_[tuple_index];
    }
    const HermitianMatrix &effect(const std::vector<size_t> &outcomes) const;

    std::vector<size_t> shape() const;
    size_t tuple_index(const std::vector<size_t> &outcomes) const;
    std::vector<size_t> tuple_outcomes(size_t tuple_index) const;
    /// Labels of a tuple joined by '|', the key used in the JSON format.
    std::string tuple_key(size_t tuple_index) const;

    /// The same family viewed as a single POVM over tuple keys.
    Povm as_povm() const;

   private:
    size_t dim_ = 0;
    std::vector<std::string> component_ids_;
    std::vector<std::vector<std::string>> component_labels_;
    std::vector<HermitianMatrix> effects_;
};

struct ValidationReport {
    bool passed = false;
    /// Most negative eigenvalue over all effects (positive when all are PD).
    double min_eigenvalue = 0;
    /// ||sum of effects - I||_F.
    double completeness_residual = 0;
    /// Outcome with the most negative eigenvalue.
    std::string worst_label;
};

ValidationReport validate(const Povm &p, const Tolerances &tol = {});
ValidationReport validate(const JointPovm &j, const Tolerances &tol = {});

/// True iff ||E^2 - E||_F <= tol for every effect.
bool is_pvm(const Povm &p, double tol = Tolerances{}.pvm);

/// Visibility-reduced spin measurement along a unit direction.
struct NoisyQubitObservable {
    Vec3 direction{0, 0, 1};
    double eta = 1;
};

/// Binary POVM with outcomes "+", "-" and effects (I +- eta n.sigma) / 2.
/// Throws std::invalid_argument when |n| != 1 (within 1e-12) or eta is outside [0, 1].
Povm noisy_qubit(const Vec3 &direction, double eta);
Povm noisy_qubit(const NoisyQubitObservable &obs);

/// Projective measurement onto the computational basis of C^dim; labels "0".."dim-1".
Povm computational_basis_pvm(size_t dim);

/// Pure or mixed qubit state with Bloch vector |r| <= 1.
class QubitState {
   public:
    explicit QubitState(const Vec3 &bloch);
    const Vec3 &bloch() const {
        return bloch_;
    }
    HermitianMatrix density() const;

   private:
    Vec3 bloch_;
};

/// Sums effects over every component not listed in `keep`. `keep` is sorted
/// and must be nonempty with valid, distinct indices.
JointPovm marginalize(const JointPovm &j, const std::vector<size_t> &keep);
/// Single-component marginal as a plain POVM.
Povm marginal(const JointPovm &j, size_t component);

/// Three coplanar (xz-plane) unit vectors with pairwise dot product -1/2.
std::array<Vec3, 3> trine_directions();

/// Default component ids "M1", "M2", ...
std::vector<std::string> default_component_ids(size_t n);

}  // namespace compat

#endif
