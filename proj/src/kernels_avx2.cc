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

#include <immintrin.h>

#include <cmath>

#include "compat/kernels.h"
#include "kernels_internal.h"

namespace compat::kernels::detail {

namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void affine_apply(const double *proj, const double *offset, const double *in, double *out, size_t tuples,
                  size_t coords) {
    size_t vec_end = tuples & ~size_t{3};
    for (size_t c = 0; c < coords; c++) {
        const double *src = in + c * tuples;
        double *dst = out + c * tuples;
        const double *off = offset + c * tuples;
        for (size_t t = 0; t < vec_end; t += 4) {
            __m256d acc = _mm256_loadu_pd(off + t);
            for (size_t s = 0; s < tuples; s++) {
                acc = _mm256_fmadd_pd(_mm256_loadu_pd(proj + s * tuples + t), _mm256_set1_pd(src[s]), acc);
            }
            _mm256_storeu_pd(dst + t, acc);
        }
        for (size_t t = vec_end; t < tuples; t++) {
            double acc = off[t];
            for (size_t s = 0; s < tuples; s++) {
                acc = std::fma(proj[s * tuples + t], src[s], acc);
            }
            dst[t] = acc;
        }
    }
}

void psd_project_2x2_tail(double *a, double *b, double *x, double *y, size_t n) {
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
        double f = (mean + r) / (2 * r);
        a[i] = f * (r + half);
        b[i] = f * (r - half);
        x[i] *= f;
        y[i] *= f;
    }
}

void psd_project_2x2(double *a, double *b, double *x, double *y, size_t n) {
    const __m256d half_v = _mm256_set1_pd(0.5);
    const __m256d zero = _mm256_setzero_pd();
    size_t vec_end = n & ~size_t{3};
    for (size_t i = 0; i < vec_end; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d mean = _mm256_mul_pd(half_v, _mm256_add_pd(va, vb));
        __m256d half = _mm256_mul_pd(half_v, _mm256_sub_pd(va, vb));
        __m256d off2 = _mm256_mul_pd(half_v, _mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy)));
        __m256d r = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(half, half), off2));
        __m256d lo = _mm256_sub_pd(mean, r);
        __m256d hi = _mm256_add_pd(mean, r);

        // Lanes with r == 0 never reach the clipped branch; their NaNs are blended out.
        __m256d f = _mm256_div_pd(hi, _mm256_add_pd(r, r));
        __m256d na = _mm256_mul_pd(f, _mm256_add_pd(r, half));
        __m256d nb = _mm256_mul_pd(f, _mm256_sub_pd(r, half));
        __m256d nx = _mm256_mul_pd(f, vx);
        __m256d ny = _mm256_mul_pd(f, vy);

        __m256d keep = _mm256_cmp_pd(lo, zero, _CMP_GE_OQ);
        __m256d kill = _mm256_cmp_pd(hi, zero, _CMP_LE_OQ);
        na = _mm256_blendv_pd(_mm256_blendv_pd(na, zero, kill), va, keep);
        nb = _mm256_blendv_pd(_mm256_blendv_pd(nb, zero, kill), vb, keep);
        nx = _mm256_blendv_pd(_mm256_blendv_pd(nx, zero, kill), vx, keep);
        ny = _mm256_blendv_pd(_mm256_blendv_pd(ny, zero, kill), vy, keep);

        _mm256_storeu_pd(a + i, na);
        _mm256_storeu_pd(b + i, nb);
        _mm256_storeu_pd(x + i, nx);
        _mm256_storeu_pd(y + i, ny);
    }
    psd_project_2x2_tail(a + vec_end, b + vec_end, x + vec_end, y + vec_end, n - vec_end);
}

void add(const double *lhs, const double *rhs, double *out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(lhs + i), _mm256_loadu_pd(rhs + i)));
    }
    for (; i < n; i++) {
        out[i] = lhs[i] + rhs[i];
    }
}

void sub(const double *lhs, const double *rhs, double *out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(lhs + i), _mm256_loadu_pd(rhs + i)));
    }
    for (; i < n; i++) {
        out[i] = lhs[i] - rhs[i];
    }
}

double squared_distance(const double *lhs, const double *rhs, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(lhs + i), _mm256_loadu_pd(rhs + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; i++) {
        double d = lhs[i] - rhs[i];
        s += d * d;
    }
    return s;
}

double dot(const double *lhs, const double *rhs, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(lhs + i), _mm256_loadu_pd(rhs + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; i++) {
        s += lhs[i] * rhs[i];
    }
    return s;
}

void axpy(double alpha, const double *x, double *y, size_t n) {
    __m256d va = _mm256_set1_pd(alpha);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; i++) {
        y[i] += alpha * x[i];
    }
}

const KernelTable kAvx2{
    "avx2", affine_apply, psd_project_2x2, add, sub, squared_distance, dot, axpy,
};

}  // namespace

const KernelTable &avx2_table() {
    return kAvx2;
}

}  // namespace compat::kernels::detail
