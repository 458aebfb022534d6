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

#include "compat/nelder_mead.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace compat {

NelderMeadResult nelder_mead_minimize(const std::function<double(const std::vector<double> &)> &f,
                                      std::vector<double> start, const NelderMeadOptions &opts) {
    size_t n = start.size();
    if (n == 0) {
        throw std::invalid_argument("nelder_mead_minimize: empty starting point");
    }
    size_t evals = 0;
    auto eval = [&](const std::vector<double> &x) {
        evals++;
        return f(x);
    };

    std::vector<std::vector<double>> pts(n + 1, start);
    for (size_t i = 0; i < n; i++) {
        pts[i + 1][i] += opts.initial_step;
    }
    std::vector<double> vals(n + 1);
    for (size_t i = 0; i <= n; i++) {
        vals[i] = eval(pts[i]);
    }
    std::vector<size_t> order(n + 1);

    while (evals < opts.max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        size_t best = order.front(), worst = order.back(), second = order[n - 1];

        double size = 0;
        for (size_t i = 0; i <= n; i++) {
            for (size_t k = 0; k < n; k++) {
                size = std::max(size, std::abs(pts[i][k] - pts[best][k]));
            }
        }
        if (vals[worst] - vals[best] <= opts.f_tol && size <= opts.x_tol) {
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i <= n; i++) {
            if (i == worst) {
                continue;
            }
            for (size_t k = 0; k < n; k++) {
                centroid[k] += pts[i][k] / static_cast<double>(n);
            }
        }
        auto along = [&](double t) {
            std::vector<double> x(n);
            for (size_t k = 0; k < n; k++) {
                x[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
            }
            return x;
        };

        std::vector<double> reflected = along(-1.0);
        double fr = eval(reflected);
        if (fr < vals[best]) {
            std::vector<double> expanded = along(-2.0);
            double fe = eval(expanded);
            if (fe < fr) {
                pts[worst] = std::move(expanded);
                vals[worst] = fe;
            } else {
                pts[worst] = std::move(reflected);
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = std::move(reflected);
            vals[worst] = fr;
            continue;
        }
        bool outside = fr < vals[worst];
        std::vector<double> contracted = along(outside ? -0.5 : 0.5);
        double fc = eval(contracted);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = std::move(contracted);
            vals[worst] = fc;
            continue;
        }
        for (size_t i = 0; i <= n; i++) {
            if (i == best) {
                continue;
            }
            for (size_t k = 0; k < n; k++) {
                pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
            }
            vals[i] = eval(pts[i]);
        }
    }

    size_t best = static_cast<size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    return NelderMeadResult{pts[best], vals[best], evals};
}

}  // namespace compat
