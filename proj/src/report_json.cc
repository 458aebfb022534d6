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

#include "compat/report_json.h"

#include "compat/povm_json.h"

namespace compat {

namespace {

Json subset_ids(const std::vector<size_t> &members, const std::vector<std::string> &ids) {
    Json out = Json::array();
    for (size_t i : members) {
        out.push_back(ids[i]);
    }
    return out;
}

}  // namespace

Json povm_json(const Povm &p) {
    return Json::parse(serialize(p));
}

Json povm_json(const JointPovm &j) {
    return Json::parse(serialize(j));
}

Json report_json(const FeasibilityReport &r) {
    Json out;
    out["verdict"] = to_string(r.verdict);
    out["residual"] = r.residual;
    out["gap_lower_bound"] = r.gap_lower_bound;
    out["min_eigenvalue"] = r.min_eigenvalue;
    out["iterations"] = r.iterations;
    out["start_index"] = r.start_index;
    out["witness"] = r.witness ? povm_json(*r.witness) : Json(nullptr);
    return out;
}

Json sharp_json(const SharpDecision &d, const std::vector<std::string> &ids) {
    Json out;
    out["jointly_measurable"] = d.jointly_measurable;
    out["joint"] = d.joint ? povm_json(*d.joint) : Json(nullptr);
    if (d.witness) {
        Json w;
        w["first"] = ids[d.witness->povm_a];
        w["first_outcome"] = d.witness->outcome_a;
        w["second"] = ids[d.witness->povm_b];
        w["second_outcome"] = d.witness->outcome_b;
        w["commutator_norm"] = d.witness->norm;
        out["commutator_witness"] = w;
    } else {
        out["commutator_witness"] = nullptr;
    }
    return out;
}

Json hypergraph_json(const CompatibilityHypergraph &h) {
    Json out;
    out["vertices"] = h.vertices;
    Json maximal = Json::array();
    for (const auto &m : h.maximal) {
        maximal.push_back(subset_ids(m, h.vertices));
    }
    out["maximal"] = maximal;
    out["downward_closed"] = h.downward_closed;
    Json subsets = Json::array();
    for (const auto &s : h.subsets) {
        Json e;
        e["members"] = subset_ids(s.members, h.vertices);
        e["verdict"] = to_string(s.verdict);
        e["residual"] = s.residual;
        e["gap_lower_bound"] = s.gap;
        e["iterations"] = s.iterations;
        subsets.push_back(e);
    }
    out["subsets"] = subsets;
    return out;
}

Json analysis_json(const LswAnalysis &a) {
    Json out;
    out["eta"] = a.eta;
    out["c_max"] = a.c_max;
    out["r3_quantum"] = a.r3_quantum;
    out["lsw_bound"] = a.lsw_bound;
    out["ks_bound"] = a.ks_bound;
    out["violation"] = a.violation;
    out["regime"] = to_string(a.regime);
    return out;
}

Json argmax_json(const ArgmaxResult &a) {
    Json out;
    out["eta"] = a.eta;
    out["violation"] = a.violation;
    out["r3_quantum"] = a.r3_quantum;
    out["attained"] = a.attained;
    return out;
}

Json sweep_json(const SweepRecord &s) {
    Json rows = Json::array();
    for (const auto &r : s.rows) {
        rows.push_back(analysis_json(r));
    }
    Json out;
    out["rows"] = rows;
    out["argmax"] = argmax_json(s.argmax);
    return out;
}

Json cross_validation_json(const CrossValidation &c) {
    Json out;
    out["eta"] = c.eta;
    out["numerical_r3"] = c.numerical_r3;
    out["closed_form_r3"] = c.closed_form_r3;
    out["abs_error"] = c.abs_error;
    out["state"] = c.state;
    out["pair_values"] = c.pair_values;
    out["rounds"] = c.rounds;
    Json joints = Json::array();
    for (const auto &j : c.pair_joints) {
        joints.push_back(povm_json(j));
    }
    out["pair_joints"] = joints;
    out["three_joint"] = c.three_joint ? report_json(*c.three_joint) : Json(nullptr);
    return out;
}

}  // namespace compat
