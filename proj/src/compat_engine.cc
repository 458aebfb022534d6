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

#include "compat/compat_engine.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "compat/kernels.h"
#include "compat/random_povm.h"
#include "joint_geometry.h"

namespace compat {

namespace {

using detail::Family;
using detail::JointGeometry;

void require_unique_ids(const std::vector<std::string> &ids) {
    for (size_t i = 0; i < ids.size(); i++) {
        for (size_t j = i + 1; j < ids.size(); j++) {
            if (ids[i] == ids[j]) {
                throw std::invalid_argument("feasibility problem: duplicate component id '" + ids[i] + "'");
            }
        }
    }
}

std::string pair_name(const JointPovm &j) {
    return "(" + j.component_ids()[0] + ", " + j.component_ids()[1] + ")";
}

// Single marginal of `j` at `component`, with outcomes listed in `labels` order.
Povm marginal_in_order(const JointPovm &j, size_t component, const std::vector<std::string> &labels) {
    Povm m = marginal(j, component);
    std::vector<HermitianMatrix> effects;
    for (const auto &l : labels) {
        effects.push_back(m.effect(l));
    }
    return Povm(labels, std::move(effects));
}

JointGeometry make_geometry(const FeasibilityProblem &problem, const SolverOptions &opts) {
    std::vector<detail::MarginalConstraint> constraints;
    if (problem.mode() == ConstraintMode::kMarginalsOfSingles) {
        for (size_t i = 0; i < problem.num_components(); i++) {
            constraints.push_back({{i}, problem.components()[i].effects()});
        }
    } else {
        for (const auto &p : problem.pair_targets()) {
            constraints.push_back({{p.first, p.second}, p.joint.effects()});
        }
    }
    detail::SupportOptions support{opts.support_reduction, opts.support_rank_tol};
    return JointGeometry(problem.shape(), problem.dim(), std::move(constraints), support, kernels::active_kernels());
}

JointPovm to_joint(const FeasibilityProblem &problem, const Family &f) {
    std::vector<std::vector<std::string>> labels;
    for (const auto &p : problem.components()) {
        labels.push_back(p.labels());
    }
    return JointPovm(problem.component_ids(), std::move(labels), f.effects());
}

Family to_family(const FeasibilityProblem &problem, const JointPovm &j) {
    if (j.shape() != problem.shape() || j.dim() != problem.dim()) {
        throw std::invalid_argument("feasibility problem: starting joint has the wrong shape");
    }
    return Family::from_effects(j.effects());
}

enum class Stop { kFeasible, kStalled, kConverged, kBudget };

struct DykstraRun {
    Family point;  // last cone iterate
    double residual = 0;
    double gap = 0;
    size_t iterations = 0;
    Stop stop = Stop::kBudget;
};

struct DykstraControl {
    size_t max_iters = 0;
    bool projection = false;  // run to convergence instead of stopping at feasibility
    double feasible_tol = 0;
    double infeasible_tol = 0;
    size_t stall_window = 0;
    double stall_rel_decrease = 0;
    double projection_tol = 0;
};

// Dykstra's algorithm for an affine set A and a convex cone product C. The
// correction term for A vanishes because the increments stay orthogonal to
// A's direction space, so only the cone correction q is tracked:
//   x = P_A(y),  z = P_C(x + q),  q <- x + q - z,  y <- z.
// The sum y + q differs from the start by a vector orthogonal to A's
// direction space at every step. A caller may pass the cone correction of an
// earlier run in `correction`; the run then starts from y = start - q, which
// keeps that invariant and still converges to the projection of `start`.
// The final correction is written back.
DykstraRun run_dykstra(const JointGeometry &g, Family start, const DykstraControl &ctl,
                       Family *correction = nullptr) {
    const kernels::KernelTable &k = g.kernels();
    size_t n = start.data.size();
    Family x(g.dim(), g.tuples());
    Family w(g.dim(), g.tuples());
    Family z(g.dim(), g.tuples());
    Family q(g.dim(), g.tuples());
    Family y = std::move(start);
    if (correction != nullptr) {
        q = *correction;
        k.sub(y.data.data(), q.data.data(), y.data.data(), n);
    }
    std::vector<double> gaps;
    gaps.reserve(std::min<size_t>(ctl.max_iters, 1 << 16));

    DykstraRun run;
    for (size_t it = 1; it <= ctl.max_iters; it++) {
        g.project_affine(y, x);
        k.add(x.data.data(), q.data.data(), w.data.data(), n);
        g.project_cone(w, z);
        k.sub(w.data.data(), z.data.data(), q.data.data(), n);
        double gap = std::sqrt(k.squared_distance(x.data.data(), z.data.data(), n));
        double step = std::sqrt(k.squared_distance(y.data.data(), z.data.data(), n));
        std::swap(y.data, z.data);  // y now holds the cone iterate
        gaps.push_back(gap);
        run.iterations = it;
        run.gap = gap;

        if (ctl.projection) {
            if (gap <= ctl.projection_tol && step <= ctl.projection_tol) {
                run.stop = Stop::kConverged;
                break;
            }
            continue;
        }
        run.residual = g.marginal_residual(y);
        if (run.residual <= ctl.feasible_tol) {
            run.stop = Stop::kFeasible;
            break;
        }
        size_t window = std::max(ctl.stall_window, it / 10);
        if (it > window && gap >= ctl.infeasible_tol) {
            double before = gaps[it - 1 - window];
            if (before - gap <= ctl.stall_rel_decrease * before) {
                run.stop = Stop::kStalled;
                break;
            }
        }
    }
    run.residual = g.marginal_residual(y);
    run.point = std::move(y);
    if (correction != nullptr) {
        *correction = std::move(q);
    }
    return run;
}

DykstraControl feasibility_control(const SolverOptions &opts) {
    DykstraControl ctl;
    ctl.max_iters = opts.max_iters;
    ctl.feasible_tol = opts.feasible_tol;
    ctl.infeasible_tol = opts.infeasible_tol;
    ctl.stall_window = opts.stall_window;
    ctl.stall_rel_decrease = opts.stall_rel_decrease;
    return ctl;
}

DykstraControl projection_control(size_t max_iters, double tol) {
    DykstraControl ctl;
    ctl.max_iters = max_iters;
    ctl.projection = true;
    ctl.projection_tol = tol;
    return ctl;
}

FeasibilityReport report_from_run(const FeasibilityProblem &problem, const DykstraRun &run,
                                  const SolverOptions &opts) {
    FeasibilityReport r;
    r.iterations = run.iterations;
    r.residual = run.residual;
    r.gap_lower_bound = run.gap;
    r.witness = to_joint(problem, run.point);
    r.min_eigenvalue = validate(*r.witness).min_eigenvalue;
    if (run.stop == Stop::kFeasible && r.min_eigenvalue >= -opts.witness_psd_tol) {
        r.verdict = Verdict::kFeasible;
    } else if (run.stop == Stop::kStalled) {
        r.verdict = Verdict::kInfeasible;
    } else {
        r.verdict = Verdict::kUndecided;
    }
    return r;
}

}  // namespace

FeasibilityProblem FeasibilityProblem::singles(std::vector<Povm> povms, std::vector<std::string> ids) {
    if (povms.empty()) {
        throw std::invalid_argument("feasibility problem: no measurements");
    }
    for (const auto &p : povms) {
        if (p.dim() != povms.front().dim()) {
            throw DimensionError("feasibility problem: measurements act on different dimensions");
        }
    }
    if (ids.empty()) {
        ids = default_component_ids(povms.size());
    }
    if (ids.size() != povms.size()) {
        throw std::invalid_argument("feasibility problem: id count does not match measurement count");
    }
    require_unique_ids(ids);
    FeasibilityProblem p;
    p.mode_ = ConstraintMode::kMarginalsOfSingles;
    p.ids_ = std::move(ids);
    p.singles_ = std::move(povms);
    return p;
}

FeasibilityProblem FeasibilityProblem::pairs(const std::vector<JointPovm> &two_joints, double consistency_tol) {
    if (two_joints.empty()) {
        throw std::invalid_argument("feasibility problem: no two-component joints");
    }
    FeasibilityProblem p;
    p.mode_ = ConstraintMode::kMarginalsOfPairs;
    std::map<std::string, size_t> index;
    std::vector<std::string> origin;  // pair that first introduced each component
    for (const auto &j : two_joints) {
        if (j.num_components() != 2) {
            throw std::invalid_argument("feasibility problem: joint over " + std::to_string(j.num_components()) +
                                        " components where a two-component joint is required");
        }
        if (j.dim() != two_joints.front().dim()) {
            throw DimensionError("feasibility problem: joints act on different dimensions");
        }
        for (size_t side = 0; side < 2; side++) {
            const std::string &id = j.component_ids()[side];
            const auto &labels = j.component_labels()[side];
            auto it = index.find(id);
            if (it == index.end()) {
                index.emplace(id, p.ids_.size());
                p.ids_.push_back(id);
                p.singles_.push_back(marginal_in_order(j, side, labels));
                origin.push_back(pair_name(j));
                continue;
            }
            const Povm &seen = p.singles_[it->second];
            std::vector<std::string> a = seen.labels(), b = labels;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) {
                throw std::invalid_argument("feasibility problem: pair " + pair_name(j) +
                                            " uses different outcome labels for component '" + id + "' than pair " +
                                            origin[it->second]);
            }
            Povm induced = marginal_in_order(j, side, seen.labels());
            for (size_t x = 0; x < seen.num_outcomes(); x++) {
                double dist = frobenius_distance(induced.effect(x), seen.effect(x));
                if (dist > consistency_tol) {
                    std::ostringstream msg;
                    msg << "feasibility problem: pair " << pair_name(j) << " induces a marginal for component '"
                        << id << "' that differs from pair " << origin[it->second] << " (outcome '"
                        << seen.labels()[x] << "', distance " << dist << ")";
                    throw std::invalid_argument(msg.str());
                }
            }
        }
    }

    for (const auto &j : two_joints) {
        size_t a = index.at(j.component_ids()[0]);
        size_t b = index.at(j.component_ids()[1]);
        bool swapped = a > b;
        PairTarget t;
        t.first = std::min(a, b);
        t.second = std::max(a, b);
        const Povm &pf = p.singles_[t.first];
        const Povm &ps = p.singles_[t.second];
        std::vector<HermitianMatrix> effects;
        for (size_t x = 0; x < pf.num_outcomes(); x++) {
            for (size_t y = 0; y < ps.num_outcomes(); y++) {
                // Outcome positions in the source joint's own label order.
                const auto &lf = j.component_labels()[swapped ? 1 : 0];
                const auto &ls = j.component_labels()[swapped ? 0 : 1];
                size_t ix = std::find(lf.begin(), lf.end(), pf.labels()[x]) - lf.begin();
                size_t iy = std::find(ls.begin(), ls.end(), ps.labels()[y]) - ls.begin();
                effects.push_back(swapped ? j.effect({iy, ix}) : j.effect({ix, iy}));
            }
        }
        t.joint = JointPovm({p.ids_[t.first], p.ids_[t.second]}, {pf.labels(), ps.labels()}, std::move(effects));
        p.pairs_.push_back(std::move(t));
    }
    return p;
}

std::vector<size_t> FeasibilityProblem::shape() const {
    std::vector<size_t> s;
    for (const auto &p : singles_) {
        s.push_back(p.num_outcomes());
    }
    return s;
}

size_t FeasibilityProblem::num_tuples() const {
    size_t n = 1;
    for (const auto &p : singles_) {
        n *= p.num_outcomes();
    }
    return n;
}

JointPovm FeasibilityProblem::zero_joint() const {
    std::vector<std::vector<std::string>> labels;
    for (const auto &p : singles_) {
        labels.push_back(p.labels());
    }
    return JointPovm(ids_, std::move(labels), std::vector<HermitianMatrix>(num_tuples(), HermitianMatrix(dim())));
}

JointPovm FeasibilityProblem::uniform_joint() const {
    std::vector<std::vector<std::string>> labels;
    for (const auto &p : singles_) {
        labels.push_back(p.labels());
    }
    HermitianMatrix each = (1.0 / static_cast<double>(num_tuples())) * HermitianMatrix::identity(dim());
    return JointPovm(ids_, std::move(labels), std::vector<HermitianMatrix>(num_tuples(), each));
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::kFeasible:
            return "FEASIBLE";
        case Verdict::kInfeasible:
            return "INFEASIBLE";
        case Verdict::kUndecided:
            return "UNDECIDED";
    }
    return "UNDECIDED";
}

std::vector<JointPovm> starting_points(const FeasibilityProblem &problem, const SolverOptions &opts) {
    std::vector<JointPovm> out;
    JointPovm uniform = problem.uniform_joint();
    out.push_back(uniform);
    Rng rng(opts.seed);
    for (size_t s = 1; s < std::max<size_t>(opts.starts, 1); s++) {
        std::vector<HermitianMatrix> noise;
        double norm2 = 0;
        for (size_t t = 0; t < problem.num_tuples(); t++) {
            noise.push_back(random_hermitian(problem.dim(), rng));
            double n = noise.back().frobenius_norm();
            norm2 += n * n;
        }
        double scale = norm2 > 0 ? opts.perturbation / std::sqrt(norm2) : 0;
        std::vector<HermitianMatrix> effects;
        for (size_t t = 0; t < problem.num_tuples(); t++) {
            effects.push_back(uniform.effect(t) + scale * noise[t]);
        }
        out.emplace_back(uniform.component_ids(), uniform.component_labels(), std::move(effects));
    }
    return out;
}

FeasibilityReport decide_joint_from(const FeasibilityProblem &problem, const JointPovm &start,
                                    const SolverOptions &opts) {
    JointGeometry g = make_geometry(problem, opts);
    DykstraRun run = run_dykstra(g, to_family(problem, start), feasibility_control(opts));
    return report_from_run(problem, run, opts);
}

FeasibilityReport decide_joint(const FeasibilityProblem &problem, const SolverOptions &opts) {
    JointGeometry g = make_geometry(problem, opts);
    std::vector<JointPovm> starts = starting_points(problem, opts);
    std::optional<FeasibilityReport> infeasible;
    std::optional<FeasibilityReport> undecided;
    for (size_t s = 0; s < starts.size(); s++) {
        DykstraRun run = run_dykstra(g, to_family(problem, starts[s]), feasibility_control(opts));
        FeasibilityReport r = report_from_run(problem, run, opts);
        r.start_index = s;
        if (r.verdict == Verdict::kFeasible) {
            return r;
        }
        if (r.verdict == Verdict::kInfeasible) {
            if (!infeasible || r.gap_lower_bound < infeasible->gap_lower_bound) {
                infeasible = std::move(r);
            }
        } else if (!undecided) {
            undecided = std::move(r);
        }
    }
    return undecided ? *undecided : *infeasible;
}

ProjectionResult project_onto_joints(const FeasibilityProblem &problem, const JointPovm &point, double tol,
                                     size_t max_iters, const SolverOptions &opts) {
    JointGeometry g = make_geometry(problem, opts);
    DykstraRun run = run_dykstra(g, to_family(problem, point), projection_control(max_iters, tol));
    ProjectionResult r;
    r.point = to_joint(problem, run.point);
    r.residual = run.residual;
    r.iterations = run.iterations;
    r.converged = run.stop == Stop::kConverged;
    return r;
}

LinearMaxResult maximize_linear(const FeasibilityProblem &problem, const std::vector<HermitianMatrix> &objective,
                                const LinearMaxOptions &opts) {
    if (objective.size() != problem.num_tuples()) {
        throw std::invalid_argument("maximize_linear: objective has " + std::to_string(objective.size()) +
                                    " members, expected one per outcome tuple (" +
                                    std::to_string(problem.num_tuples()) + ")");
    }
    for (const auto &c : objective) {
        if (c.dim() != problem.dim()) {
            throw DimensionError("maximize_linear: objective dimension mismatch");
        }
    }
    FeasibilityReport start = decide_joint(problem, opts.solver);
    if (start.verdict != Verdict::kFeasible) {
        throw std::invalid_argument("maximize_linear: problem is not feasible (verdict " + to_string(start.verdict) +
                                    ")");
    }

    JointGeometry g = make_geometry(problem, opts.solver);
    const kernels::KernelTable &k = g.kernels();
    DykstraControl ctl = projection_control(opts.projection_max_iters, opts.projection_tol);
    Family c = Family::from_effects(objective);
    size_t n = c.data.size();

    // Each step's projection is warm started from the last converged cone
    // correction. A projection that misses its budget halves the step and the
    // ascent resumes from the last converged point.
    Family q(g.dim(), g.tuples());
    double best = -std::numeric_limits<double>::infinity();
    double step = opts.step_scale;
    Family x = to_family(problem, *start.witness);
    Family best_x = x;
    std::vector<double> history;
    size_t steps = 0;
    for (size_t it = 0; it <= opts.max_steps; it++) {
        Family u = x;
        if (it > 0) {
            k.axpy(step, c.data.data(), u.data.data(), n);
        }
        Family q_next = q;
        DykstraRun run = run_dykstra(g, std::move(u), ctl, &q_next);
        if (run.stop == Stop::kConverged) {
            x = std::move(run.point);
            q = std::move(q_next);
            double value = k.dot(c.data.data(), x.data.data(), n);
            if (value > best) {
                best = value;
                best_x = x;
            }
        } else if (it == 0) {
            x = std::move(run.point);
            q = std::move(q_next);
        } else {
            step *= 0.5;
        }
        history.push_back(best);
        steps = it;
        if (it >= opts.patience && std::isfinite(best) &&
            history[it] - history[it - opts.patience] <= opts.rel_improvement * std::max(1.0, std::abs(best))) {
            break;
        }
    }
    if (!std::isfinite(best)) {
        throw std::runtime_error("maximize_linear: no projection converged within the iteration budget");
    }
    return LinearMaxResult{best, to_joint(problem, best_x), steps};
}

FeasibilityReport exists_3joint_given_2joints(const std::vector<JointPovm> &two_joints, const SolverOptions &opts) {
    if (two_joints.size() != 3) {
        throw std::invalid_argument("exists_3joint_given_2joints: expected three two-component joints, got " +
                                    std::to_string(two_joints.size()));
    }
    FeasibilityProblem p = FeasibilityProblem::pairs(two_joints);
    if (p.num_components() != 3) {
        throw std::invalid_argument("exists_3joint_given_2joints: the joints cover " +
                                    std::to_string(p.num_components()) + " components, expected 3");
    }
    return decide_joint(p, opts);
}

BisectionResult threshold_bisection(const std::function<FeasibilityProblem(double)> &family, double lo, double hi,
                                    double tol, const SolverOptions &opts) {
    if (!(lo < hi)) {
        throw std::invalid_argument("threshold_bisection: empty bracket");
    }
    BisectionResult r;
    Verdict at_lo = decide_joint(family(lo), opts).verdict;
    Verdict at_hi = decide_joint(family(hi), opts).verdict;
    r.evaluations = 2;
    if (at_lo != Verdict::kFeasible || at_hi != Verdict::kInfeasible) {
        throw std::invalid_argument("threshold_bisection: no sign change on the bracket (lo " + to_string(at_lo) +
                                    ", hi " + to_string(at_hi) + ")");
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        Verdict v = decide_joint(family(mid), opts).verdict;
        r.evaluations++;
        if (v == Verdict::kFeasible) {
            lo = mid;
        } else if (v == Verdict::kInfeasible) {
            hi = mid;
        } else {
            r.stopped_undecided = true;
            break;
        }
    }
    r.lo = lo;
    r.hi = hi;
    r.estimate = 0.5 * (lo + hi);
    return r;
}

double busch_margin(const NoisyQubitObservable &a, const NoisyQubitObservable &b) {
    Vec3 sum{}, diff{};
    for (size_t i = 0; i < 3; i++) {
        sum[i] = a.eta * a.direction[i] + b.eta * b.direction[i];
        diff[i] = a.eta * a.direction[i] - b.eta * b.direction[i];
    }
    return 2.0 - (norm(sum) + norm(diff));
}

bool busch_pair_criterion(const NoisyQubitObservable &a, const NoisyQubitObservable &b) {
    return busch_margin(a, b) >= 0;
}

}  // namespace compat
