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

#include "compat/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace compat {

namespace {

void check_dim(size_t dim) {
    if (dim == 0 || dim > kMaxDim) {
        throw DimensionError("matrix dimension must be in [1, " + std::to_string(kMaxDim) + "], got " +
                             std::to_string(dim));
    }
}

void check_same(size_t a, size_t b) {
    if (a != b) {
        throw DimensionError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

constexpr double kJacobiOffTol = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0;
    for (size_t i = 0; i < a.dim(); i++) {
        for (size_t j = 0; j < a.dim(); j++) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

Eigendecomposition eig_2x2(const HermitianMatrix &m) {
    double a = m(0, 0).real();
    double b = m(1, 1).real();
    Complex c = m(0, 1);
    double mean = 0.5 * (a + b);
    double half = 0.5 * (a - b);
    double r = std::hypot(half, std::abs(c));

    Eigendecomposition out;
    out.eigenvalues = {mean - r, mean + r};
    out.eigenvectors = ComplexMatrix(2);
    if (std::abs(c) == 0) {
        // Already diagonal; order the standard basis by eigenvalue.
        size_t lo = a <= b ? 0 : 1;
        out.eigenvectors(lo, 0) = 1;
        out.eigenvectors(1 - lo, 1) = 1;
        out.eigenvalues = {std::min(a, b), std::max(a, b)};
        return out;
    }
    auto set_column = [&](size_t k, Complex v0, Complex v1) {
        double n = std::sqrt(std::norm(v0) + std::norm(v1));
        out.eigenvectors(0, k) = v0 / n;
        out.eigenvectors(1, k) = v1 / n;
    };
    // Each eigenvector has two algebraically equivalent forms; pick the one
    // that avoids cancellation.
    if (half >= 0) {
        set_column(0, c, Complex(-r - half));
        set_column(1, Complex(r + half), std::conj(c));
    } else {
        set_column(0, Complex(half - r), std::conj(c));
        set_column(1, c, Complex(r - half));
    }
    return out;
}

Eigendecomposition eig_jacobi(const HermitianMatrix &m) {
    size_t n = m.dim();
    ComplexMatrix a = m.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);
    double scale = std::max(1.0, a.frobenius_norm());

    for (int sweep = 0; sweep < kJacobiMaxSweeps; sweep++) {
        if (off_diagonal_norm(a) <= kJacobiOffTol * scale) {
            break;
        }
        for (size_t p = 0; p + 1 < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                double mag = std::abs(a(p, q));
                if (mag == 0) {
                    continue;
                }
                Complex phase = a(p, q) / mag;
                double tau = (a(q, q).real() - a(p, p).real()) / (2 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1 / std::sqrt(1 + t * t);
                double s = t * c;
                // U restricted to (p, q): diag(1, conj(phase)) * [[c, s], [-s, c]].
                Complex u_pp = c;
                Complex u_pq = s;
                Complex u_qp = -s * std::conj(phase);
                Complex u_qq = c * std::conj(phase);

                for (size_t k = 0; k < n; k++) {
                    Complex akp = a(k, p);
                    Complex akq = a(k, q);
                    a(k, p) = akp * u_pp + akq * u_qp;
                    a(k, q) = akp * u_pq + akq * u_qq;
                }
                for (size_t k = 0; k < n; k++) {
                    Complex apk = a(p, k);
                    Complex aqk = a(q, k);
                    a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
                    a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (size_t k = 0; k < n; k++) {
                    Complex vkp = v(k, p);
                    Complex vkq = v(k, q);
                    v(k, p) = vkp * u_pp + vkq * u_qp;
                    v(k, q) = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t i, size_t j) { return a(i, i).real() < a(j, j).real(); });
    Eigendecomposition out;
    out.eigenvectors = ComplexMatrix(n);
    for (size_t k = 0; k < n; k++) {
        out.eigenvalues.push_back(a(order[k], order[k]).real());
        for (size_t r = 0; r < n; r++) {
            out.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

}  // namespace

ComplexMatrix::ComplexMatrix(size_t dim) : dim_(dim) {
    check_dim(dim);
}

ComplexMatrix ComplexMatrix::identity(size_t dim) {
    ComplexMatrix m(dim);
    for (size_t i = 0; i < dim; i++) {
        m(i, i) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            m(i, j) = std::conj((*this)(j, i));
        }
    }
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            s += std::norm((*this)(i, j));
        }
    }
    return std::sqrt(s);
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (size_t i = 0; i < dim_; i++) {
        t += (*this)(i, i);
    }
    return t;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    check_same(dim_, other.dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            (*this)(i, j) += other(i, j);
        }
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    check_same(dim_, other.dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            (*this)(i, j) -= other(i, j);
        }
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            (*this)(i, j) *= scale;
        }
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    check_same(a.dim(), b.dim());
    size_t n = a.dim();
    ComplexMatrix c(n);
    for (size_t i = 0; i < n; i++) {
        for (size_t k = 0; k < n; k++) {
            Complex aik = a(i, k);
            for (size_t j = 0; j < n; j++) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix a) {
    a *= scale;
    return a;
}

HermitianMatrix::HermitianMatrix(size_t dim) : m_(dim) {
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix &m) : m_(m.dim()) {
    size_t n = m.dim();
    check_dim(n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i; j < n; j++) {
            Complex upper = m(i, j);
            Complex lower_conj = std::conj(m(j, i));
            if (std::abs(upper - lower_conj) > kHermitianRejectTol) {
                throw std::invalid_argument("matrix is not Hermitian: entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") differs from its conjugate transpose");
            }
            Complex avg = 0.5 * (upper + lower_conj);
            if (i == j) {
                avg = avg.real();
            }
            m_(i, j) = avg;
            m_(j, i) = std::conj(avg);
        }
    }
}

HermitianMatrix::HermitianMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : HermitianMatrix([&] {
          ComplexMatrix m(rows.size());
          size_t i = 0;
          for (const auto &row : rows) {
              if (row.size() != rows.size()) {
                  throw DimensionError("Hermitian matrix rows must be square");
              }
              size_t j = 0;
              for (const auto &v : row) {
                  m(i, j++) = v;
              }
              i++;
          }
          return m;
      }()) {
}

HermitianMatrix HermitianMatrix::identity(size_t dim) {
    return HermitianMatrix(ComplexMatrix::identity(dim));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (size_t i = 0; i < values.size(); i++) {
        m(i, i) = values[i];
    }
    return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

HermitianMatrix HermitianMatrix::outer(std::span<const Complex> v) {
    ComplexMatrix m(v.size());
    for (size_t i = 0; i < v.size(); i++) {
        for (size_t j = 0; j < v.size(); j++) {
            m(i, j) = v[i] * std::conj(v[j]);
        }
    }
    return HermitianMatrix(m);
}

double HermitianMatrix::trace() const {
    return m_.trace().real();
}

double HermitianMatrix::frobenius_norm() const {
    return m_.frobenius_norm();
}

HermitianMatrix &HermitianMatrix::operator+=(const HermitianMatrix &other) {
    m_ += other.m_;
    return *this;
}

HermitianMatrix &HermitianMatrix::operator-=(const HermitianMatrix &other) {
    m_ -= other.m_;
    return *this;
}

HermitianMatrix &HermitianMatrix::operator*=(double scale) {
    m_ *= scale;
    return *this;
}

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix &b) {
    a += b;
    return a;
}

HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix &b) {
    a -= b;
    return a;
}

HermitianMatrix operator*(double scale, HermitianMatrix a) {
    a *= scale;
    return a;
}

ComplexMatrix operator*(const HermitianMatrix &a, const HermitianMatrix &b) {
    return a.matrix() * b.matrix();
}

Eigendecomposition eig(const HermitianMatrix &a) {
    check_dim(a.dim());
    if (a.dim() == 1) {
        Eigendecomposition out;
        out.eigenvalues = {a(0, 0).real()};
        out.eigenvectors = ComplexMatrix::identity(1);
        return out;
    }
    if (a.dim() == 2) {
        return eig_2x2(a);
    }
    return eig_jacobi(a);
}

double min_eigenvalue(const HermitianMatrix &a) {
    return eig(a).eigenvalues.front();
}

bool is_psd(const HermitianMatrix &a, double tol) {
    return min_eigenvalue(a) >= -tol;
}

HermitianMatrix psd_project(const HermitianMatrix &a) {
    Eigendecomposition e = eig(a);
    size_t n = a.dim();
    if (e.eigenvalues.front() >= 0) {
        return a;
    }
    ComplexMatrix out(n);
    for (size_t k = 0; k < n; k++) {
        double lambda = e.eigenvalues[k];
        if (lambda <= 0) {
            continue;
        }
        for (size_t i = 0; i < n; i++) {
            Complex vi = lambda * e.eigenvectors(i, k);
            for (size_t j = 0; j < n; j++) {
                out(i, j) += vi * std::conj(e.eigenvectors(j, k));
            }
        }
    }
    return HermitianMatrix(out);
}

double frob_inner(const HermitianMatrix &a, const HermitianMatrix &b) {
    check_same(a.dim(), b.dim());
    double s = 0;
    for (size_t i = 0; i < a.dim(); i++) {
        for (size_t j = 0; j < a.dim(); j++) {
            s += (std::conj(a(i, j)) * b(i, j)).real();
        }
    }
    return s;
}

double commutator_norm(const HermitianMatrix &a, const HermitianMatrix &b) {
    check_same(a.dim(), b.dim());
    return (a * b - b * a).frobenius_norm();
}

double frobenius_distance(const HermitianMatrix &a, const HermitianMatrix &b) {
    check_same(a.dim(), b.dim());
    return (a.matrix() - b.matrix()).frobenius_norm();
}

double max_abs_entry_distance(const HermitianMatrix &a, const HermitianMatrix &b) {
    check_same(a.dim(), b.dim());
    double m = 0;
    for (size_t i = 0; i < a.dim(); i++) {
        for (size_t j = 0; j < a.dim(); j++) {
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
        }
    }
    return m;
}

HermitianMatrix pauli_x() {
    return HermitianMatrix{{0, 1}, {1, 0}};
}

HermitianMatrix pauli_y() {
    return HermitianMatrix{{0, Complex(0, -1)}, {Complex(0, 1), 0}};
}

HermitianMatrix pauli_z() {
    return HermitianMatrix{{1, 0}, {0, -1}};
}

HermitianMatrix bloch_operator(const Vec3 &n) {
    return n[0] * pauli_x() + n[1] * pauli_y() + n[2] * pauli_z();
}

double dot(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Vec3 &a) {
    return std::sqrt(dot(a, a));
}

Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace compat
