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

#include <cmath>

#include "compat/kernels.h"
#include "kernels_internal.h"

namespace compat::kernels {

namespace {

void affine_apply(const double *proj, const double *offset, const double *in, double *out, size_t tuples,
                  size_t coords) {
    for (size_t c = 0; c < coords; c++) {
        const double *src = in + c * tuples;
        double *dst = out + c * tuples;
        const double *off = offset + c * tuples;
        for (size_t t = 0; t < tuples; t++) {
            dst[t] = off[t];
        }
        for (size_t s = 0; s < tuples; s++) {
            double v = src[s];
            const double *col = proj + s * tuples;
            for (size_t t = 0; t < tuples; t++) {
                dst[t] += col[t] * v;
            }
        }
    }
}

void psd_project_2x2(double *a, double *b, double *x, double *y, size_t n) {
    for (size_t i = 0; i < n; i++) {
        double mean = 0.5 * (a[i] + b[i]);
        double half = 0.5 * (a[i] - b[i]);
        double r = std::sqrt(half * half + 0.5 * (x[i] * x[i] + y[i] * y[i]));
        if (mean - r >= 0) {
            continue;
        }
        if (mean + r <= 0) {
            a[i] = b[i] = x[i] = y[i] = 0;
            continue;
        }
        // Keep only the positive eigenpair: (mean + r) |v><v|.
        double f = (mean + r) / (2 * r);
        a[i] = f * (r + half);
        b[i] = f * (r - half);
        x[i] *= f;
        y[i] *= f;
    }
}

void add(const double *lhs, const double *rhs, double *out, size_t n) {
    for (size_t i = 0; i < n; i++) {
        out[i] = lhs[i] + rhs[i];
    }
}

void sub(const double *lhs, const double *rhs, double *out, size_t n) {
    for (size_t i = 0; i < n; i++) {
        out[i] = lhs[i] - rhs[i];
    }
}

double squared_distance(const double *lhs, const double *rhs, size_t n) {
    double s = 0;
    for (size_t i = 0; i < n; i++) {
        double d = lhs[i] - rhs[i];
        s += d * d;
    }
    return s;
}

double dot(const double *lhs, const double *rhs, size_t n) {
    double s = 0;
    for (size_t i = 0; i < n; i++) {
        s += lhs[i] * rhs[i];
    }
    return s;
}

void axpy(double alpha, const double *x, double *y, size_t n) {
    for (size_t i = 0; i < n; i++) {
        y[i] += alpha * x[i];
    }
}

const KernelTable kScalar{
    "scalar", affine_apply, psd_project_2x2, add, sub, squared_distance, dot, axpy,
};

}  // namespace

const KernelTable &scalar_kernels() {
    return kScalar;
}

}  // namespace compat::kernels
