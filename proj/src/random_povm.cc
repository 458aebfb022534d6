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

#include "compat/random_povm.h"

#include <algorithm>
#include <cmath>

namespace compat {

namespace {

Complex gaussian_complex(Rng &rng) {
    std::normal_distribution<double> n(0, 1);
    double re = n(rng);
    double im = n(rng);
    return {re, im};
}

HermitianMatrix projector_onto_columns(const ComplexMatrix &basis, const std::vector<size_t> &cols) {
    size_t d = basis.dim();
    ComplexMatrix p(d);
    for (size_t c : cols) {
        for (size_t i = 0; i < d; i++) {
            for (size_t j = 0; j < d; j++) {
                p(i, j) += basis(i, c) * std::conj(basis(j, c));
            }
        }
    }
    return HermitianMatrix(p);
}

std::vector<std::string> numbered_labels(size_t n) {
    std::vector<std::string> labels;
    for (size_t k = 0; k < n; k++) {
        labels.push_back(std::to_string(k));
    }
    return labels;
}

}  // namespace

ComplexMatrix random_unitary(size_t dim, Rng &rng) {
    ComplexMatrix u(dim);
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            u(i, j) = gaussian_complex(rng);
        }
    }
    // Modified Gram-Schmidt over columns.
    for (size_t c = 0; c < dim; c++) {
        for (size_t p = 0; p < c; p++) {
            Complex proj = 0;
            for (size_t i = 0; i < dim; i++) {
                proj += std::conj(u(i, p)) * u(i, c);
            }
            for (size_t i = 0; i < dim; i++) {
                u(i, c) -= proj * u(i, p);
            }
        }
        double n = 0;
        for (size_t i = 0; i < dim; i++) {
            n += std::norm(u(i, c));
        }
        n = std::sqrt(n);
        for (size_t i = 0; i < dim; i++) {
            u(i, c) /= n;
        }
    }
    return u;
}

HermitianMatrix random_hermitian(size_t dim, Rng &rng, double scale) {
    ComplexMatrix g(dim);
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            g(i, j) = gaussian_complex(rng);
        }
    }
    HermitianMatrix h(0.5 * (g + g.adjoint()));
    double n = h.frobenius_norm();
    return (scale / n) * h;
}

Povm random_pvm(const ComplexMatrix &basis, Rng &rng) {
    size_t d = basis.dim();
    size_t blocks = std::uniform_int_distribution<size_t>(2, std::max<size_t>(2, d))(rng);
    std::vector<size_t> owner(d);
    for (size_t i = 0; i < d; i++) {
        owner[i] = i < blocks ? i : std::uniform_int_distribution<size_t>(0, blocks - 1)(rng);
    }
    std::shuffle(owner.begin(), owner.end(), rng);
    std::vector<HermitianMatrix> effects;
    for (size_t b = 0; b < blocks; b++) {
        std::vector<size_t> cols;
        for (size_t i = 0; i < d; i++) {
            if (owner[i] == b) {
                cols.push_back(i);
            }
        }
        effects.push_back(projector_onto_columns(basis, cols));
    }
    return Povm(numbered_labels(blocks), std::move(effects));
}

Povm random_diagonal_povm(const ComplexMatrix &basis, Rng &rng) {
    size_t d = basis.dim();
    size_t outcomes = std::uniform_int_distribution<size_t>(2, 3)(rng);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<std::vector<double>> weights(outcomes, std::vector<double>(d));
    for (size_t i = 0; i < d; i++) {
        double total = 0;
        for (size_t k = 0; k < outcomes; k++) {
            weights[k][i] = u(rng);
            total += weights[k][i];
        }
        for (size_t k = 0; k < outcomes; k++) {
            weights[k][i] /= total;
        }
    }
    std::vector<HermitianMatrix> effects;
    for (size_t k = 0; k < outcomes; k++) {
        ComplexMatrix e(d);
        for (size_t c = 0; c < d; c++) {
            for (size_t i = 0; i < d; i++) {
                for (size_t j = 0; j < d; j++) {
                    e(i, j) += weights[k][c] * basis(i, c) * std::conj(basis(j, c));
                }
            }
        }
        effects.emplace_back(e);
    }
    return Povm(numbered_labels(outcomes), std::move(effects));
}

Povm random_generic_povm(size_t dim, Rng &rng) {
    size_t outcomes = std::uniform_int_distribution<size_t>(2, 3)(rng);
    std::vector<HermitianMatrix> raw;
    HermitianMatrix total(dim);
    for (size_t k = 0; k < outcomes; k++) {
        ComplexMatrix g(dim);
        for (size_t i = 0; i < dim; i++) {
            for (size_t j = 0; j < dim; j++) {
                g(i, j) = gaussian_complex(rng);
            }
        }
        raw.emplace_back(g * g.adjoint());
        total += raw.back();
    }
    // E_k <- S^{-1/2} E_k S^{-1/2} with S = sum_k E_k.
    Eigendecomposition e = eig(total);
    ComplexMatrix inv_sqrt(dim);
    for (size_t k = 0; k < dim; k++) {
        double w = 1 / std::sqrt(e.eigenvalues[k]);
        for (size_t i = 0; i < dim; i++) {
            for (size_t j = 0; j < dim; j++) {
                inv_sqrt(i, j) += w * e.eigenvectors(i, k) * std::conj(e.eigenvectors(j, k));
            }
        }
    }
    std::vector<HermitianMatrix> effects;
    for (const auto &r : raw) {
        effects.emplace_back(inv_sqrt * r.matrix() * inv_sqrt);
    }
    return Povm(numbered_labels(outcomes), std::move(effects));
}

Vec3 random_unit_vector(Rng &rng) {
    std::normal_distribution<double> n(0, 1);
    while (true) {
        Vec3 v{n(rng), n(rng), n(rng)};
        double len = norm(v);
        if (len > 1e-6) {
            return {v[0] / len, v[1] / len, v[2] / len};
        }
    }
}

}  // namespace compat
