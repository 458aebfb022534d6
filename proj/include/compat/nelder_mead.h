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

#ifndef COMPAT_NELDER_MEAD_H
#define COMPAT_NELDER_MEAD_H

#include <cstddef>
#include <functional>
#include <vector>

namespace compat {

struct NelderMeadOptions {
    double initial_step = 0.05;
    double f_tol = 1e-12;  // stop when the simplex values span less than this
    double x_tol = 1e-9;   // ... and the simplex fits in a box of this size
    size_t max_evals = 2000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0;
    size_t evals = 0;
};

/// Derivative-free local minimization (standard reflection / expansion /
/// contraction / shrink coefficients 1, 2, 1/2, 1/2).
NelderMeadResult nelder_mead_minimize(const std::function<double(const std::vector<double> &)> &f,
                                      std::vector<double> start, const NelderMeadOptions &opts = {});

}  // namespace compat

#endif
