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

#ifndef COMPAT_RANDOM_POVM_H
#define COMPAT_RANDOM_POVM_H

#include <random>

#include "compat/linalg.h"
#include "compat/povm.h"

namespace compat {

using Rng = std::mt19937_64;

/// Haar-ish unitary: Gram-Schmidt on a complex Gaussian matrix. Columns are the basis.
ComplexMatrix random_unitary(size_t dim, Rng &rng);

/// Random Hermitian matrix with Gaussian entries, scaled to Frobenius norm `scale`.
HermitianMatrix random_hermitian(size_t dim, Rng &rng, double scale = 1);

/// PVM whose projectors are spanned by a random partition of the basis
/// columns into between 2 and dim nonempty rank blocks.
Povm random_pvm(const ComplexMatrix &basis, Rng &rng);

/// POVM diagonal in `basis` with random spectral weights; commutes with any
/// PVM built on the same basis. 2 or 3 outcomes.
Povm random_diagonal_povm(const ComplexMatrix &basis, Rng &rng);

/// Generic full-rank POVM (normalized Wishart effects). 2 or 3 outcomes.
Povm random_generic_povm(size_t dim, Rng &rng);

/// Uniformly random point on the unit sphere.
Vec3 random_unit_vector(Rng &rng);

}  // namespace compat

#endif
