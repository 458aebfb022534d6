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

#ifndef COMPAT_REPORT_JSON_H
#define COMPAT_REPORT_JSON_H

#include "compat/compat_engine.h"
#include "compat/hypergraph.h"
#include "compat/sharp_joints.h"
#include "compat/specker_lsw.h"
#include "json.hpp"

namespace compat {

using Json = nlohmann::ordered_json;

/// A POVM or joint embedded in a larger document, in the POVM file format.
Json povm_json(const Povm &p);
Json povm_json(const JointPovm &j);

/// {"verdict", "residual", "gap_lower_bound", "min_eigenvalue", "iterations",
///  "start_index", "witness"}; the witness uses the joint POVM format.
Json report_json(const FeasibilityReport &r);
Json sharp_json(const SharpDecision &d, const std::vector<std::string> &ids);
Json hypergraph_json(const CompatibilityHypergraph &h);
Json analysis_json(const LswAnalysis &a);
Json argmax_json(const ArgmaxResult &a);
Json sweep_json(const SweepRecord &s);
Json cross_validation_json(const CrossValidation &c);

}  // namespace compat

#endif
