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

#include "joint_geometry.h"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace compat::detail {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kConsistencyTol = 1e-8;

// Orthogonal projector onto the span of eigenvectors with eigenvalue > tol.
ComplexMatrix range_projector(const HermitianMatrix &m, double tol) {
    Eigendecomposition e = eig(m);
    size_t d = m.dim();
    ComplexMatrix p(d);
    for (size_t k = 0; k < d; k++) {
        if (e.eigenvalues[k] <= tol) {
            continue;
        }
        for (size_t i = 0; i < d; i++) {
            for (size_t j = 0; j < d; j++) {
                p(i, j) += e.eigenvectors(i, k) * std::conj(e.eigenvectors(j, k));
            }
        }
    }
    return p;
}

}  // namespace

void to_coords(const HermitianMatrix &m, double *out, size_t stride) {
    size_t d = m.dim();
    size_t k = 0;
    for (size_t i = 0; i < d; i++) {
        out[(k++) * stride] = m(i, i).real();
    }
    for (size_t i = 0; i < d; i++) {
        for (size_t j = i + 1; j < d; j++) {
            out[(k++) * stride] = kSqrt2 * m(i, j).real();
            out[(k++) * stride] = kSqrt2 * m(i, j).imag();
        }
    }
}

HermitianMatrix from_coords(const double *in, size_t stride, size_t dim) {
    ComplexMatrix m(dim);
    size_t k = 0;
    for (size_t i = 0; i < dim; i++) {
        m(i, i) = in[(k++) * stride];
    }
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = i + 1; j < dim; j++) {
            double re = in[(k++) * stride] / kSqrt2;
            double im = in[(k++) * stride] / kSqrt2;
            m(i, j) = Complex(re, im);
            m(j, i) = Complex(re, -im);
        }
    }
    return HermitianMatrix(m);
}

Family Family::from_effects(const std::vector<HermitianMatrix> &effects) {
    Family f(effects.front().dim(), effects.size());
    for (size_t t = 0; t < effects.size(); t++) {
        f.set_effect(t, effects[t]);
    }
    return f;
}

std::vector<HermitianMatrix> Family::effects() const {
    std::vector<HermitianMatrix> out;
    out.reserve(tuples);
    for (size_t t = 0; t < tuples; t++) {
        out.push_back(effect(t));
    }
    return out;
}

JointGeometry::JointGeometry(std::vector<size_t> shape, size_t dim, std::vector<MarginalConstraint> constraints,
                             const SupportOptions &support, const kernels::KernelTable &k)
    : shape_(std::move(shape)), dim_(dim), tuples_(1), k_(k) {
    for (size_t n : shape_) {
        tuples_ *= n;
    }
    size_t coords = coord_count(dim_);

    // Outcome tuple of every joint tuple, row-major with the last component fastest.
    std::vector<std::vector<size_t>> outcomes(tuples_, std::vector<size_t>(shape_.size()));
    for (size_t t = 0; t < tuples_; t++) {
        size_t rest = t;
        for (size_t i = shape_.size(); i-- > 0;) {
            outcomes[t][i] = rest % shape_[i];
            rest /= shape_[i];
        }
    }

    // Constraint rows: one per (constraint, kept sub-tuple).
    std::vector<const HermitianMatrix *> row_target;
    std::vector<std::vector<size_t>> tuple_rows(tuples_);
    for (const auto &con : constraints) {
        size_t rows = 1;
        for (size_t i : con.components) {
            if (i >= shape_.size()) {
                throw std::invalid_argument("joint geometry: constraint names a missing component");
            }
            rows *= shape_[i];
        }
        if (con.targets.size() != rows) {
            throw std::invalid_argument("joint geometry: constraint has " + std::to_string(con.targets.size()) +
                                        " targets, expected " + std::to_string(rows));
        }
        size_t base = row_members_.size();
        row_members_.resize(base + rows);
        for (const auto &target : con.targets) {
            if (target.dim() != dim_) {
                throw DimensionError("joint geometry: target dimension mismatch");
            }
            row_target.push_back(&target);
        }
        for (size_t t = 0; t < tuples_; t++) {
            size_t r = 0;
            for (size_t i : con.components) {
                r = r * shape_[i] + outcomes[t][i];
            }
            row_members_[base + r].push_back(t);
            tuple_rows[t].push_back(base + r);
        }
    }
    size_t m = row_members_.size();

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(tuples_));
    for (size_t r = 0; r < m; r++) {
        for (size_t t : row_members_[r]) {
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t)) = 1.0;
        }
    }
    Eigen::MatrixXd b(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(coords));
    row_targets_.assign(coords * m, 0.0);
    for (size_t r = 0; r < m; r++) {
        to_coords(*row_target[r], row_targets_.data() + r, m);
        for (size_t c = 0; c < coords; c++) {
            b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row_targets_[c * m + r];
        }
    }

    Eigen::MatrixXd pinv = a.completeOrthogonalDecomposition().pseudoInverse();
    Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(a.cols(), a.cols()) - pinv * a;
    Eigen::MatrixXd offset = pinv * b;  // tuples x coords
    double inconsistency = (a * offset - b).norm();
    if (inconsistency > kConsistencyTol * std::max(1.0, b.norm())) {
        throw std::invalid_argument("joint geometry: marginal targets are inconsistent (least-squares residual " +
                                    std::to_string(inconsistency) + ")");
    }
    proj_.resize(tuples_ * tuples_);
    for (size_t s = 0; s < tuples_; s++) {
        for (size_t t = 0; t < tuples_; t++) {
            proj_[s * tuples_ + t] = proj(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s));
        }
    }
    offset_.resize(coords * tuples_);
    for (size_t c = 0; c < coords; c++) {
        for (size_t t = 0; t < tuples_; t++) {
            offset_[c * tuples_ + t] = offset(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(c));
        }
    }

    // A joint effect is dominated by every target it sums into, so its range
    // lies in the intersection of their ranges: the kernel of sum (I - P_r).
    support_basis_.assign(tuples_, ComplexMatrix::identity(dim_));
    support_rank_.assign(tuples_, dim_);
    if (!support.enabled || m == 0) {
        return;
    }
    std::vector<ComplexMatrix> row_proj;
    row_proj.reserve(m);
    for (size_t r = 0; r < m; r++) {
        row_proj.push_back(range_projector(*row_target[r], support.rank_tol));
    }
    for (size_t t = 0; t < tuples_; t++) {
        ComplexMatrix s(dim_);
        for (size_t r : tuple_rows[t]) {
            s += ComplexMatrix::identity(dim_) - row_proj[r];
        }
        Eigendecomposition e = eig(HermitianMatrix(s));
        size_t rank = 0;
        ComplexMatrix basis(dim_);
        for (size_t k = 0; k < dim_; k++) {
            if (e.eigenvalues[k] > support.rank_tol) {
                break;
            }
            for (size_t i = 0; i < dim_; i++) {
                basis(i, rank) = e.eigenvectors(i, k);
            }
            rank++;
        }
        if (rank < dim_) {
            support_basis_[t] = basis;
            support_rank_[t] = rank;
            all_full_ = false;
        }
    }
}

void JointGeometry::project_affine(const Family &in, Family &out) const {
    k_.affine_apply(proj_.data(), offset_.data(), in.data.data(), out.data.data(), tuples_, coords());
}

void JointGeometry::project_general(const double *in, double *out, size_t t) const {
    HermitianMatrix h = from_coords(in + t, tuples_, dim_);
    size_t rank = support_rank_[t];
    if (rank == dim_) {
        to_coords(psd_project(h), out + t, tuples_);
        return;
    }
    ComplexMatrix z(dim_);
    if (rank > 0) {
        const ComplexMatrix &v = support_basis_[t];
        // y = V^dagger H V on the support, clipped, then lifted back.
        ComplexMatrix y(rank);
        for (size_t a = 0; a < rank; a++) {
            for (size_t b = 0; b < rank; b++) {
                Complex acc = 0;
                for (size_t i = 0; i < dim_; i++) {
                    for (size_t j = 0; j < dim_; j++) {
                        acc += std::conj(v(i, a)) * h(i, j) * v(j, b);
                    }
                }
                y(a, b) = acc;
            }
        }
        HermitianMatrix yp = psd_project(HermitianMatrix(y));
        for (size_t i = 0; i < dim_; i++) {
            for (size_t j = 0; j < dim_; j++) {
                Complex acc = 0;
                for (size_t a = 0; a < rank; a++) {
                    for (size_t b = 0; b < rank; b++) {
                        acc += v(i, a) * yp(a, b) * std::conj(v(j, b));
                    }
                }
                z(i, j) = acc;
            }
        }
    }
    to_coords(HermitianMatrix(z), out + t, tuples_);
}

void JointGeometry::project_cone(const Family &in, Family &out) const {
    if (dim_ == 2) {
        out.data = in.data;
        double *base = out.data.data();
        k_.psd_project_2x2(base, base + tuples_, base + 2 * tuples_, base + 3 * tuples_, tuples_);
        if (all_full_) {
            return;
        }
        for (size_t t = 0; t < tuples_; t++) {
            if (support_rank_[t] < dim_) {
                project_general(in.data.data(), out.data.data(), t);
            }
        }
        return;
    }
    for (size_t t = 0; t < tuples_; t++) {
        project_general(in.data.data(), out.data.data(), t);
    }
}

double JointGeometry::marginal_residual(const Family &f) const {
    size_t m = row_members_.size();
    double total = 0;
    for (size_t c = 0; c < coords(); c++) {
        const double *col = f.data.data() + c * tuples_;
        for (size_t r = 0; r < m; r++) {
            double s = -row_targets_[c * m + r];
            for (size_t t : row_members_[r]) {
                s += col[t];
            }
            total += s * s;
        }
    }
    return std::sqrt(total);
}

}  // namespace compat::detail
