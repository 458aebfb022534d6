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

#ifndef COMPAT_JOINT_GEOMETRY_H
#define COMPAT_JOINT_GEOMETRY_H

#include <cstddef>
#include <vector>

#include "compat/kernels.h"
#include "compat/linalg.h"

namespace compat::detail {

// Real coordinates of a d x d Hermitian matrix, d^2 of them: the diagonal,
// then sqrt(2) Re and sqrt(2) Im of each entry above the diagonal in row-major
// order. With this scaling the Euclidean dot product of coordinate vectors is
// the Frobenius inner product of the matrices.
inline size_t coord_count(size_t dim) {
    return dim * dim;
}
void to_coords(const HermitianMatrix &m, double *out, size_t stride);
HermitianMatrix from_coords(const double *in, size_t stride, size_t dim);

// Tuple-indexed family of Hermitian matrices, coordinate-major.
struct Family {
    size_t dim = 0;
    size_t tuples = 0;
    std::vector<double> data;

    Family() = default;
    Family(size_t dim, size_t tuples) : dim(dim), tuples(tuples), data(coord_count(dim) * tuples, 0.0) {
    }
    size_t coords() const {
        return coord_count(dim);
    }
    HermitianMatrix effect(size_t t) const {
        return from_coords(data.data() + t, tuples, dim);
    }
    void set_effect(size_t t, const HermitianMatrix &m) {
        to_coords(m, data.data() + t, tuples);
    }
    static Family from_effects(const std::vector<HermitianMatrix> &effects);
    std::vector<HermitianMatrix> effects() const;
};

// One marginal requirement: summing the joint over every component outside
// `components` (sorted) must give `targets`, indexed row-major over the kept
// components' outcomes.
struct MarginalConstraint {
    std::vector<size_t> components;
    std::vector<HermitianMatrix> targets;
};

struct SupportOptions {
    bool enabled = true;
    double rank_tol = 1e-9;
};

// The two convex sets of the feasibility problem and their projections:
//   affine: families whose marginals equal the targets,
//   cone:   families whose every member is PSD (with support restricted to
//           the common range of the targets the member sums into).
class JointGeometry {
   public:
    // Throws std::invalid_argument when the targets admit no common family
    // (inconsistent marginals).
    JointGeometry(std::vector<size_t> shape, size_t dim, std::vector<MarginalConstraint> constraints,
                  const SupportOptions &support, const kernels::KernelTable &k);

    size_t dim() const {
        return dim_;
    }
    size_t tuples() const {
        return tuples_;
    }
    size_t coords() const {
        return coord_count(dim_);
    }
    const kernels::KernelTable &kernels() const {
        return k_;
    }

    void project_affine(const Family &in, Family &out) const;
    void project_cone(const Family &in, Family &out) const;
    // sqrt(sum over constraints and rows of ||marginal - target||_F^2).
    double marginal_residual(const Family &f) const;

    // Rank of the subspace each tuple is confined to (dim when unrestricted).
    const std::vector<size_t> &support_ranks() const {
        return support_rank_;
    }

   private:
    void project_general(const double *in, double *out, size_t t) const;

    std::vector<size_t> shape_;
    size_t dim_;
    size_t tuples_;
    const kernels::KernelTable &k_;
    std::vector<double> proj_;    // tuples x tuples, I - pinv(A) A
    std::vector<double> offset_;  // coords x tuples, pinv(A) b
    std::vector<std::vector<size_t>> row_members_;  // tuples summed by each constraint row
    std::vector<double> row_targets_;               // coords x rows
    std::vector<ComplexMatrix> support_basis_;      // orthonormal columns [0, rank)
    std::vector<size_t> support_rank_;
    bool all_full_ = true;
};

}  // namespace compat::detail

#endif
