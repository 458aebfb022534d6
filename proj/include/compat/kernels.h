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

#ifndef COMPAT_KERNELS_H
#define COMPAT_KERNELS_H

#include <cstddef>
#include <string_view>

namespace compat::kernels {

// Inner loops of the projection solver. Families of Hermitian matrices are
// stored coordinate-major: coordinate c of tuple t lives at data[c * tuples + t].
// Every variant in this table must agree with the scalar reference to within
// floating-point reassociation (FMA contraction); see kernels_test.cc.
struct KernelTable {
    std::string_view name;

    // out[c][t] = offset[c][t] + sum_s proj[s * tuples + t] * in[c][s]  for c < coords.
    // `proj` is a column-major tuples x tuples matrix. `in` and `out` must not alias.
    void (*affine_apply)(const double *proj, const double *offset, const double *in, double *out, size_t tuples,
                         size_t coords);

    // In-place PSD projection of n 2x2 Hermitian matrices [[a, z], [conj(z), b]]
    // given as a, b, x = sqrt(2) Re z, y = sqrt(2) Im z.
    void (*psd_project_2x2)(double *a, double *b, double *x, double *y, size_t n);

    // out = lhs + rhs
    void (*add)(const double *lhs, const double *rhs, double *out, size_t n);
    // out = lhs - rhs
    void (*sub)(const double *lhs, const double *rhs, double *out, size_t n);
    // sum_i (lhs[i] - rhs[i])^2
    double (*squared_distance)(const double *lhs, const double *rhs, size_t n);
    // sum_i lhs[i] * rhs[i]
    double (*dot)(const double *lhs, const double *rhs, size_t n);
    // y += alpha * x
    void (*axpy)(double alpha, const double *x, double *y, size_t n);
};

const KernelTable &scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable *avx2_kernels();

/// Best available table. COMPAT_KERNELS=scalar in the environment forces the
/// scalar reference. Resolved once per process.
const KernelTable &active_kernels();

}  // namespace compat::kernels

#endif
