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

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace compat {

namespace {

void check_labels(const std::vector<std::string> &labels, const std::string &what) {
    std::set<std::string> seen;
    for (const auto &l : labels) {
        if (l.empty()) {
            throw std::invalid_argument(what + ": outcome labels must be nonempty");
        }
        if (!seen.insert(l).second) {
            throw std::invalid_argument(what + ": duplicate outcome label '" + l + "'");
        }
    }
}

size_t common_dim(const std::vector<HermitianMatrix> &effects, const std::string &what) {
    if (effects.empty()) {
        throw std::invalid_argument(what + ": no effects");
    }
    size_t d = effects.front().dim();
    for (const auto &e : effects) {
        if (e.dim() != d) {
            throw DimensionError(what + ": effects have mismatched dimensions " + std::to_string(d) + " and " +
                                 std::to_string(e.dim()));
        }
    }
    return d;
}

ValidationReport validate_effects(const std::vector<std::string> &labels, const std::vector<HermitianMatrix> &effects,
                                  const Tolerances &tol) {
    ValidationReport r;
    size_t d = effects.front().dim();
    HermitianMatrix sum(d);
    r.min_eigenvalue = INFINITY;
    for (size_t k = 0; k < effects.size(); k++) {
        double m = min_eigenvalue(effects[k]);
        if (m < r.min_eigenvalue) {
            r.min_eigenvalue = m;
            r.worst_label = labels[k];
        }
        sum += effects[k];
    }
    r.completeness_residual = frobenius_distance(sum, HermitianMatrix::identity(d));
    r.passed = r.min_eigenvalue >= -tol.psd && r.completeness_residual <= tol.complete;
    return r;
}

}  // namespace

Povm::Povm(std::vector<std::string> labels, std::vector<HermitianMatrix> effects)
    : labels_(std::move(labels)), effects_(std::move(effects)) {
    if (labels_.size() != effects_.size()) {
        throw std::invalid_argument("povm: " + std::to_string(labels_.size()) + " labels for " +
                                    std::to_string(effects_.size()) + " effects");
    }
    if (effects_.size() < 2) {
        throw std::invalid_argument("povm: at least 2 outcomes required");
    }
    check_labels(labels_, "povm");
    dim_ = common_dim(effects_, "povm");
}

const HermitianMatrix &Povm::effect(const std::string &label) const {
    auto k = index_of(label);
    if (!k) {
        throw std::out_of_range("povm: unknown outcome label '" + label + "'");
    }
    return effects_[*k];
}

std::optional<size_t> Povm::index_of(const std::string &label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<size_t>(it - labels_.begin());
}

JointPovm::JointPovm(std::vector<std::string> component_ids, std::vector<std::vector<std::string>> component_labels,
                     std::vector<HermitianMatrix> effects)
    : component_ids_(std::move(component_ids)),
      component_labels_(std::move(component_labels)),
      effects_(std::move(effects)) {
    if (component_ids_.empty()) {
        throw std::invalid_argument("joint povm: no components");
    }
    if (component_ids_.size() != component_labels_.size()) {
        throw std::invalid_argument("joint povm: component id and label lists differ in length");
    }
    check_labels(component_ids_, "joint povm components");
    size_t expected = 1;
    for (const auto &labels : component_labels_) {
        if (labels.empty()) {
            throw std::invalid_argument("joint povm: component with no outcomes");
        }
        check_labels(labels, "joint povm");
        for (const auto &l : labels) {
            if (l.find('|') != std::string::npos) {
                throw std::invalid_argument("joint povm: outcome label '" + l + "' contains the tuple separator '|'");
            }
        }
        expected *= labels.size();
    }
    if (effects_.size() != expected) {
        throw std::invalid_argument("joint povm: expected " + std::to_string(expected) + " effects, got " +
                                    std::to_string(effects_.size()));
    }
    dim_ = common_dim(effects_, "joint povm");
}

std::vector<size_t> JointPovm::shape() const {
    std::vector<size_t> s;
    for (const auto &labels : component_labels_) {
        s.push_back(labels.size());
    }
    return s;
}

size_t JointPovm::tuple_index(const std::vector<size_t> &outcomes) const {
    if (outcomes.size() != component_labels_.size()) {
        throw std::invalid_argument("joint povm: tuple arity mismatch");
    }
    size_t index = 0;
    for (size_t i = 0; i < outcomes.size(); i++) {
        if (outcomes[i] >= component_labels_[i].size()) {
            throw std::out_of_range("joint povm: outcome index out of range");
        }
        index = index * component_labels_[i].size() + outcomes[i];
    }
    return index;
}

std::vector<size_t> JointPovm::tuple_outcomes(size_t tuple_index) const {
    std::vector<size_t> out(component_labels_.size());
    for (size_t i = component_labels_.size(); i-- > 0;) {
        size_t n = component_labels_[i].size();
        out[i] = tuple_index % n;
        tuple_index /= n;
    }
    return out;
}

const HermitianMatrix &JointPovm::effect(const std::vector<size_t> &outcomes) const {
    return effects_[tuple_index(outcomes)];
}

std::string JointPovm::tuple_key(size_t index) const {
    auto outcomes = tuple_outcomes(index);
    std::string key;
    for (size_t i = 0; i < outcomes.size(); i++) {
        if (i) {
            key += '|';
        }
        key += component_labels_[i][outcomes[i]];
    }
    return key;
}

Povm JointPovm::as_povm() const {
    std::vector<std::string> keys;
    for (size_t t = 0; t < effects_.size(); t++) {
        keys.push_back(tuple_key(t));
    }
    return Povm(std::move(keys), effects_);
}

ValidationReport validate(const Povm &p, const Tolerances &tol) {
    return validate_effects(p.labels(), p.effects(), tol);
}

ValidationReport validate(const JointPovm &j, const Tolerances &tol) {
    std::vector<std::string> keys;
    for (size_t t = 0; t < j.num_tuples(); t++) {
        keys.push_back(j.tuple_key(t));
    }
    return validate_effects(keys, j.effects(), tol);
}

bool is_pvm(const Povm &p, double tol) {
    for (const auto &e : p.effects()) {
        ComplexMatrix sq = e * e;
        if ((sq - e.matrix()).frobenius_norm() > tol) {
            return false;
        }
    }
    return true;
}

Povm noisy_qubit(const Vec3 &direction, double eta) {
    if (std::abs(norm(direction) - 1) > 1e-12) {
        throw std::invalid_argument("noisy_qubit: direction must be a unit vector");
    }
    if (!(eta >= 0 && eta <= 1)) {
        throw std::invalid_argument("noisy_qubit: eta must lie in [0, 1]");
    }
    HermitianMatrix id = HermitianMatrix::identity(2);
    HermitianMatrix n = bloch_operator(direction);
    return Povm({"+", "-"}, {0.5 * (id + eta * n), 0.5 * (id - eta * n)});
}

Povm noisy_qubit(const NoisyQubitObservable &obs) {
    return noisy_qubit(obs.direction, obs.eta);
}

Povm computational_basis_pvm(size_t dim) {
    std::vector<std::string> labels;
    std::vector<HermitianMatrix> effects;
    for (size_t k = 0; k < dim; k++) {
        std::vector<double> diag(dim, 0.0);
        diag[k] = 1;
        labels.push_back(std::to_string(k));
        effects.push_back(HermitianMatrix::diagonal(diag));
    }
    return Povm(std::move(labels), std::move(effects));
}

QubitState::QubitState(const Vec3 &bloch) : bloch_(bloch) {
    if (norm(bloch) > 1 + 1e-12) {
        throw std::invalid_argument("qubit state: Bloch vector longer than 1");
    }
}

HermitianMatrix QubitState::density() const {
    return 0.5 * (HermitianMatrix::identity(2) + bloch_operator(bloch_));
}

JointPovm marginalize(const JointPovm &j, const std::vector<size_t> &keep) {
    if (keep.empty()) {
        throw std::invalid_argument("marginalize: keep set is empty");
    }
    for (size_t k = 0; k < keep.size(); k++) {
        if (keep[k] >= j.num_components()) {
            throw std::out_of_range("marginalize: component index " + std::to_string(keep[k]) + " out of range");
        }
        if (k && keep[k] <= keep[k - 1]) {
            throw std::invalid_argument("marginalize: keep indices must be sorted and distinct");
        }
    }
    std::vector<std::string> ids;
    std::vector<std::vector<std::string>> labels;
    std::vector<size_t> sub_shape;
    for (size_t k : keep) {
        ids.push_back(j.component_ids()[k]);
        labels.push_back(j.component_labels()[k]);
        sub_shape.push_back(j.component_labels()[k].size());
    }
    size_t sub_tuples = 1;
    for (size_t n : sub_shape) {
        sub_tuples *= n;
    }
    std::vector<HermitianMatrix> effects(sub_tuples, HermitianMatrix(j.dim()));
    for (size_t t = 0; t < j.num_tuples(); t++) {
        auto outcomes = j.tuple_outcomes(t);
        size_t index = 0;
        for (size_t k = 0; k < keep.size(); k++) {
            index = index * sub_shape[k] + outcomes[keep[k]];
        }
        effects[index] += j.effect(t);
    }
    return JointPovm(std::move(ids), std::move(labels), std::move(effects));
}

Povm marginal(const JointPovm &j, size_t component) {
    JointPovm m = marginalize(j, {component});
    return Povm(m.component_labels()[0], m.effects());
}

std::array<Vec3, 3> trine_directions() {
    double s = std::sqrt(3.0) / 2;
    return {Vec3{0, 0, 1}, Vec3{s, 0, -0.5}, Vec3{-s, 0, -0.5}};
}

std::vector<std::string> default_component_ids(size_t n) {
    std::vector<std::string> ids;
    for (size_t i = 0; i < n; i++) {
        ids.push_back("M" + std::to_string(i + 1));
    }
    return ids;
}

}  // namespace compat
