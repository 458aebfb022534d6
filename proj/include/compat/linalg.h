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

#ifndef COMPAT_LINALG_H
#define COMPAT_LINALG_H

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace compat {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// Largest Hilbert-space dimension handled by the dense kernels.
inline constexpr size_t kMaxDim = 8;

/// Raised on shape errors (dimension mismatch, dim > kMaxDim, ...).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dense square complex matrix of dimension <= kMaxDim, stored inline.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(size_t dim);

    static ComplexMatrix identity(size_t dim);

    size_t dim() const {
        return dim_;
    }
    Complex &operator()(size_t row, size_t col) {
        return data_[row * kMaxDim + col];
    }
    const Complex &operator()(size_t row, size_t col) const {
        return data_[row * kMaxDim + col];
    }

    ComplexMatrix adjoint() const;
    double frobenius_norm() const;
    Complex trace() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

   private:
    size_t dim_ = 0;
    std::array<Complex, kMaxDim * kMaxDim> data_{};
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);

/// Hermitian matrix. Construction from arbitrary entries symmetrizes
/// (A + A^dagger) / 2 and rejects inputs whose asymmetry exceeds
/// kHermitianRejectTol in max-abs entry.
class HermitianMatrix {
   public:
    static constexpr double kHermitianRejectTol = 1e-8;

    HermitianMatrix() = default;
    /// Zero matrix.
    explicit HermitianMatrix(size_t dim);
    /// Symmetrizes; throws std::invalid_argument when too far from Hermitian.
    explicit HermitianMatrix(const ComplexMatrix &m);
    HermitianMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static HermitianMatrix identity(size_t dim);
    static HermitianMatrix diagonal(std::span<const double> values);
    static HermitianMatrix diagonal(std::initializer_list<double> values);
    /// |v><v| for a (not necessarily normalized) column vector.
    static HermitianMatrix outer(std::span<const Complex> v);

    size_t dim() const {
        return m_.dim();
    }
    const Complex &operator()(size_t row, size_t col) const {
        return m_(row, col);
    }
    const ComplexMatrix &matrix() const {
        return m_;
    }

    double trace() const;
    double frobenius_norm() const;

    HermitianMatrix &operator+=(const HermitianMatrix &other);
    HermitianMatrix &operator-=(const HermitianMatrix &other);
    HermitianMatrix &operator*=(double scale);

   private:
    ComplexMatrix m_;
};

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix &b);
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix &b);
HermitianMatrix operator*(double scale, HermitianMatrix a);
/// Plain matrix product; the result is generally not Hermitian.
ComplexMatrix operator*(const HermitianMatrix &a, const HermitianMatrix &b);

struct Eigendecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

/// Closed form for dim 2, cyclic complex Jacobi sweeps otherwise.
Eigendecomposition eig(const HermitianMatrix &a);
double min_eigenvalue(const HermitianMatrix &a);
bool is_psd(const HermitianMatrix &a, double tol);
/// Frobenius-nearest positive semidefinite matrix (negative eigenvalues clipped).
HermitianMatrix psd_project(const HermitianMatrix &a);

/// Re Tr(A^dagger B).
double frob_inner(const HermitianMatrix &a, const HermitianMatrix &b);
/// ||AB - BA||_F.
double commutator_norm(const HermitianMatrix &a, const HermitianMatrix &b);
double frobenius_distance(const HermitianMatrix &a, const HermitianMatrix &b);
double max_abs_entry_distance(const HermitianMatrix &a, const HermitianMatrix &b);

HermitianMatrix pauli_x();
HermitianMatrix pauli_y();
HermitianMatrix pauli_z();
/// n . sigma for a real 3-vector n.
HermitianMatrix bloch_operator(const Vec3 &n);

double dot(const Vec3 &a, const Vec3 &b);
double norm(const Vec3 &a);
Vec3 cross(const Vec3 &a, const Vec3 &b);

}  // namespace compat

#endif
