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

#include "compat/specker_lsw.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace compat {

namespace {

constexpr std::array<std::array<size_t, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

void check_directions(const Directions &d) {
    for (const auto &n : d) {
        if (std::abs(norm(n) - 1.0) > 1e-9) {
            throw PreconditionError("directions must be unit vectors");
        }
    }
}

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw PreconditionError("eta must lie in [0, 1]");
    }
}

double solver_threshold(const std::function<FeasibilityProblem(double)> &family, const SolverOptions &opts,
                        double tol) {
    if (decide_joint(family(1.0), opts).verdict == Verdict::kFeasible) {
        return 1.0;
    }
    return threshold_bisection(family, 0.0, 1.0, tol, opts).estimate;
}

}  // namespace

bool SpeckerScenario::coplanar() const {
    return std::abs(scalar_triple_product(directions)) <= kCoplanarTol;
}

std::vector<Povm> SpeckerScenario::observables() const {
    std::vector<Povm> out;
    for (const auto &n : directions) {
        out.push_back(noisy_qubit(n, eta));
    }
    return out;
}

double scalar_triple_product(const Directions &d) {
    return dot(d[0], cross(d[1], d[2]));
}

bool is_trine(const Directions &d, double tol) {
    for (const auto &n : d) {
        if (std::abs(norm(n) - 1.0) > tol) {
            return false;
        }
    }
    if (std::abs(scalar_triple_product(d)) > tol) {
        return false;
    }
    for (const auto &[i, j] : kPairs) {
        if (std::abs(dot(d[i], d[j]) + 0.5) > tol) {
            return false;
        }
    }
    return true;
}

double trine_eta_lower() {
    return 2.0 / 3.0;
}

double trine_eta_upper() {
    return std::numbers::sqrt3 - 1.0;
}

double closed_form_eta_max(const Directions &d) {
    check_directions(d);
    double out = 1.0;
    for (const auto &[i, j] : kPairs) {
        double c = std::clamp(dot(d[i], d[j]), -1.0, 1.0);
        out = std::min(out, 1.0 / std::sqrt(1.0 + std::sqrt(1.0 - c * c)));
    }
    return out;
}

double c_max(const Directions &d, double eta) {
    check_eta(eta);
    check_directions(d);
    double triple = scalar_triple_product(d);
    if (std::abs(triple) > kCoplanarTol) {
        std::ostringstream msg;
        msg << "c_max: directions are not coplanar (scalar triple product " << triple << ")";
        throw PreconditionError(msg.str());
    }
    double eta2 = eta * eta;
    double total = 2.0 * eta;
    for (const auto &[i, j] : kPairs) {
        double c = dot(d[i], d[j]);
        double radicand = 1.0 + eta2 * eta2 * c * c - 2.0 * eta2;
        if (radicand < -kRadicandTol) {
            std::ostringstream msg;
            msg << "c_max: eta " << eta << " is beyond the pair threshold (radicand " << radicand << ")";
            throw DomainError(msg.str());
        }
        total += std::sqrt(std::max(radicand, 0.0)) - (1.0 + eta2 * c);
    }
    return total;
}

double lsw_bound(double eta) {
    return 1.0 - eta / 3.0;
}

double r3_quantum(const Directions &d, double eta) {
    return c_max(d, eta) / 6.0 + lsw_bound(eta);
}

double violation(const Directions &d, double eta) {
    return r3_quantum(d, eta) - lsw_bound(eta);
}

double r3_trine_closed_form(double eta) {
    double eta2 = eta * eta;
    double radicand = 1.0 - 2.0 * eta2 + eta2 * eta2 / 4.0;
    if (radicand < -kRadicandTol) {
        throw DomainError("r3_trine_closed_form: eta beyond the pair threshold");
    }
    return 0.5 + eta2 / 4.0 + 0.5 * std::sqrt(std::max(radicand, 0.0));
}

bool ks_check(double r3) {
    return r3 > kKsBound;
}

bool lsw_check(double r3, double eta) {
    return r3 > lsw_bound(eta);
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::kStrong:
            return "STRONG";
        case Regime::kWeakOnlyEligible:
            return "WEAK_ONLY_ELIGIBLE";
        case Regime::kNo2Joints:
            return "NO_2JOINTS";
    }
    return "NO_2JOINTS";
}

Thresholds regime_thresholds(const Directions &d, const SolverOptions &opts, double tol) {
    check_directions(d);
    if (is_trine(d)) {
        return Thresholds{trine_eta_lower(), trine_eta_upper(), true};
    }
    Thresholds t;
    t.eta_upper = 1.0;
    for (const auto &[i, j] : kPairs) {
        Vec3 a = d[i], b = d[j];
        t.eta_upper = std::min(t.eta_upper, solver_threshold(
                                                [&](double eta) {
                                                    return FeasibilityProblem::singles(
                                                        {noisy_qubit(a, eta), noisy_qubit(b, eta)});
                                                },
                                                opts, tol));
    }
    t.eta_lower = solver_threshold(
        [&](double eta) {
            return FeasibilityProblem::singles({noisy_qubit(d[0], eta), noisy_qubit(d[1], eta), noisy_qubit(d[2], eta)});
        },
        opts, tol);
    return t;
}

Regime classify_regime(double eta, const Thresholds &t) {
    if (eta > t.eta_upper) {
        return Regime::kNo2Joints;
    }
    if (eta > t.eta_lower) {
        return Regime::kStrong;
    }
    return Regime::kWeakOnlyEligible;
}

Regime classify_regime(const SpeckerScenario &s, const SolverOptions &opts) {
    check_eta(s.eta);
    return classify_regime(s.eta, regime_thresholds(s.directions, opts));
}

LswAnalysis analyze(const Directions &d, double eta, const Thresholds &t) {
    LswAnalysis a;
    a.eta = eta;
    a.c_max = c_max(d, eta);
    a.lsw_bound = lsw_bound(eta);
    a.r3_quantum = a.c_max / 6.0 + a.lsw_bound;
    a.violation = a.r3_quantum - a.lsw_bound;
    a.regime = classify_regime(eta, t);
    return a;
}

ArgmaxResult argmax_violation(const Directions &d, const EtaRange &range, size_t grid, double tol) {
    if (!(range.lo <= range.hi) || (range.lo == range.hi && (range.lo_open || range.hi_open))) {
        throw std::invalid_argument("argmax_violation: empty eta range");
    }
    if (range.lo < 0.0) {
        throw std::invalid_argument("argmax_violation: eta range starts below 0");
    }
    auto f = [&](double eta) { return violation(d, eta); };
    if (range.lo == range.hi) {
        double v = f(range.lo);
        return ArgmaxResult{range.lo, v, r3_quantum(d, range.lo), true};
    }

    grid = std::max<size_t>(grid, 2);
    double step = (range.hi - range.lo) / static_cast<double>(grid - 1);
    size_t best = 0;
    double best_v = f(range.lo);
    for (size_t i = 1; i < grid; i++) {
        double eta = i + 1 == grid ? range.hi : range.lo + step * static_cast<double>(i);
        double v = f(eta);
        if (v > best_v) {
            best = i;
            best_v = v;
        }
    }
    auto grid_eta = [&](size_t i) { return i + 1 == grid ? range.hi : range.lo + step * static_cast<double>(i); };

    // Golden section on the cells adjacent to the best grid point; keeping the
    // left point on ties biases toward smaller eta.
    double a = grid_eta(best == 0 ? 0 : best - 1);
    double b = grid_eta(std::min(best + 1, grid - 1));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double e = a + inv_phi * (b - a);
    double fc = f(c), fe = f(e);
    while (b - a > tol) {
        if (fc >= fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + inv_phi * (b - a);
            fe = f(e);
        }
    }
    double eta = 0.5 * (a + b);
    double v = f(eta);
    if (best_v > v) {
        eta = grid_eta(best);
        v = best_v;
    }

    ArgmaxResult r{eta, v, 0.0, true};
    for (auto [end, open] : {std::pair{range.lo, range.lo_open}, std::pair{range.hi, range.hi_open}}) {
        if (std::abs(r.eta - end) <= tol) {
            double v_end = f(end);
            if (v_end >= r.violation) {
                r.eta = end;
                r.violation = v_end;
                r.attained = !open;
            }
        }
    }
    r.r3_quantum = r3_quantum(d, r.eta);
    return r;
}

SweepRecord lsw_sweep(const Directions &d, double eta_min, double eta_max, size_t grid, const Thresholds &t) {
    if (grid < 2) {
        throw std::invalid_argument("lsw_sweep: grid needs at least 2 points");
    }
    if (!(eta_min < eta_max)) {
        throw std::invalid_argument("lsw_sweep: eta_min must be below eta_max");
    }
    if (eta_min < 0.0 || eta_max > t.eta_upper + kRadicandTol) {
        std::ostringstream msg;
        msg << "lsw_sweep: eta range must lie in [0, " << t.eta_upper << "]";
        throw std::invalid_argument(msg.str());
    }
    SweepRecord s;
    double step = (eta_max - eta_min) / static_cast<double>(grid - 1);
    for (size_t i = 0; i < grid; i++) {
        double eta = i + 1 == grid ? eta_max : eta_min + step * static_cast<double>(i);
        s.rows.push_back(analyze(d, eta, t));
    }
    s.argmax = argmax_violation(d, EtaRange{eta_min, eta_max, false, false}, grid);
    return s;
}

std::string sweep_csv(const SweepRecord &s) {
    std::string out = "eta,c_max,r3_quantum,lsw_bound,violation,regime\n";
    char buf[256];
    for (const auto &r : s.rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", r.eta, r.c_max, r.r3_quantum,
                      r.lsw_bound, r.violation, to_string(r.regime).c_str());
        out += buf;
    }
    return out;
}

}  // namespace compat
