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

#include "compat/kernels.h"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "compat/linalg.h"

using namespace compat;
using kernels::KernelTable;

namespace {

std::vector<double> random_vector(size_t n, std::mt19937_64 &rng, double scale = 1.0) {
    std::normal_distribution<double> g(0, scale);
    std::vector<double> v(n);
    for (auto &x : v) {
        x = g(rng);
    }
    return v;
}

// Reference 2x2 projection through the dense eigensolver.
void psd_project_2x2_reference(double &a, double &b, double &x, double &y) {
    const double s = std::sqrt(2.0);
    HermitianMatrix h{{a, Complex(x / s, y / s)}, {Complex(x / s, -y / s), b}};
    HermitianMatrix p = psd_project(h);
    a = p(0, 0).real();
    b = p(1, 1).real();
    x = s * p(0, 1).real();
    y = s * p(0, 1).imag();
}

std::vector<const KernelTable *> variants() {
    std::vector<const KernelTable *> out{&kernels::scalar_kernels()};
    if (const KernelTable *avx = kernels::avx2_kernels()) {
        out.push_back(avx);
    }
    return out;
}

}  // namespace

TEST(kernels, active_table_is_known_variant) {
    std::string_view name = kernels::active_kernels().name;
    EXPECT_TRUE(name == "scalar" || name == "avx2") << name;
}

TEST(kernels, psd_project_2x2_matches_dense_reference) {
    std::mt19937_64 rng(5);
    for (const KernelTable *k : variants()) {
        for (size_t n : {1, 3, 4, 7, 16, 33}) {
            auto a = random_vector(n, rng), b = random_vector(n, rng), x = random_vector(n, rng),
                 y = random_vector(n, rng);
            // Include a PSD member, an NSD member and an exact zero.
            a[0] = 2.0, b[0] = 1.0, x[0] = 0.1, y[0] = 0.0;
            if (n > 1) {
                a[1] = -2.0, b[1] = -1.0, x[1] = 0.1, y[1] = 0.2;
            }
            if (n > 2) {
                a[2] = b[2] = x[2] = y[2] = 0.0;
            }
            auto ra = a, rb = b, rx = x, ry = y;
            for (size_t i = 0; i < n; i++) {
                psd_project_2x2_reference(ra[i], rb[i], rx[i], ry[i]);
            }
            k->psd_project_2x2(a.data(), b.data(), x.data(), y.data(), n);
            for (size_t i = 0; i < n; i++) {
                EXPECT_NEAR(a[i], ra[i], 1e-13) << k->name << " n=" << n << " i=" << i;
                EXPECT_NEAR(b[i], rb[i], 1e-13) << k->name;
                EXPECT_NEAR(x[i], rx[i], 1e-13) << k->name;
                EXPECT_NEAR(y[i], ry[i], 1e-13) << k->name;
            }
        }
    }
}

TEST(kernels, avx2_matches_scalar_reference) {
    const KernelTable *avx = kernels::avx2_kernels();
    if (avx == nullptr) {
        GTEST_SKIP() << "AVX2 variant not available on this machine";
    }
    const KernelTable &ref = kernels::scalar_kernels();
    std::mt19937_64 rng(99);
    for (size_t n = 0; n <= 37; n++) {
        auto l = random_vector(n, rng), r = random_vector(n, rng);
        std::vector<double> o1(n), o2(n);
        ref.add(l.data(), r.data(), o1.data(), n);
        avx->add(l.data(), r.data(), o2.data(), n);
        EXPECT_EQ(o1, o2);
        ref.sub(l.data(), r.data(), o1.data(), n);
        avx->sub(l.data(), r.data(), o2.data(), n);
        EXPECT_EQ(o1, o2);
        EXPECT_NEAR(ref.squared_distance(l.data(), r.data(), n), avx->squared_distance(l.data(), r.data(), n),
                    1e-13 * (1.0 + n));
        EXPECT_NEAR(ref.dot(l.data(), r.data(), n), avx->dot(l.data(), r.data(), n), 1e-13 * (1.0 + n));
        auto y1 = r, y2 = r;
        ref.axpy(0.37, l.data(), y1.data(), n);
        avx->axpy(0.37, l.data(), y2.data(), n);
        for (size_t i = 0; i < n; i++) {
            EXPECT_NEAR(y1[i], y2[i], 1e-15);
        }

        auto a1 = random_vector(n, rng), b1 = random_vector(n, rng), x1 = random_vector(n, rng),
             z1 = random_vector(n, rng);
        auto a2 = a1, b2 = b1, x2 = x1, z2 = z1;
        ref.psd_project_2x2(a1.data(), b1.data(), x1.data(), z1.data(), n);
        avx->psd_project_2x2(a2.data(), b2.data(), x2.data(), z2.data(), n);
        for (size_t i = 0; i < n; i++) {
            EXPECT_NEAR(a1[i], a2[i], 1e-14);
            EXPECT_NEAR(b1[i], b2[i], 1e-14);
            EXPECT_NEAR(x1[i], x2[i], 1e-14);
            EXPECT_NEAR(z1[i], z2[i], 1e-14);
        }
    }
}

TEST(kernels, affine_apply_variants_agree) {
    std::mt19937_64 rng(17);
    std::vector<const KernelTable *> ks = variants();
    for (size_t tuples : {1, 2, 4, 5, 8, 13, 27}) {
        for (size_t coords : {1, 4, 9}) {
            auto proj = random_vector(tuples * tuples, rng);
            auto offset = random_vector(tuples * coords, rng);
            auto in = random_vector(tuples * coords, rng);
            // Plain triple loop as the oracle.
            std::vector<double> expect(tuples * coords);
            for (size_t c = 0; c < coords; c++) {
                for (size_t t = 0; t < tuples; t++) {
                    double s = offset[c * tuples + t];
                    for (size_t u = 0; u < tuples; u++) {
                        s += proj[u * tuples + t] * in[c * tuples + u];
                    }
                    expect[c * tuples + t] = s;
                }
            }
            for (const KernelTable *k : ks) {
                std::vector<double> out(tuples * coords);
                k->affine_apply(proj.data(), offset.data(), in.data(), out.data(), tuples, coords);
                for (size_t i = 0; i < out.size(); i++) {
                    EXPECT_NEAR(out[i], expect[i], 1e-12 * (1.0 + tuples)) << k->name;
                }
            }
        }
    }
}
