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

#include "commands.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "cli_config.h"
#include "compat/hypergraph.h"
#include "compat/povm_json.h"
#include "compat/report_json.h"
#include "compat/sharp_joints.h"
#include "compat/specker_lsw.h"

namespace compat::cli {

namespace {

// Flags shared by every subcommand. Only flags given explicitly enter the
// flag layer, so config and environment values survive when a flag is absent.
struct CommonFlags {
    std::string config_path;
    uint64_t seed = 0;
    uint64_t max_iters = 0;
    uint64_t starts = 0;
    uint64_t threads = 0;
    CLI::Option *seed_opt = nullptr;
    CLI::Option *max_iters_opt = nullptr;
    CLI::Option *starts_opt = nullptr;
    CLI::Option *threads_opt = nullptr;

    void attach(CLI::App *sub) {
        sub->add_option("--config", config_path, "Key/value settings file");
        seed_opt = sub->add_option("--seed", seed, "Seed for randomized starts (default 42)");
        max_iters_opt = sub->add_option("--max-iters", max_iters, "Solver iteration budget");
        starts_opt = sub->add_option("--starts", starts, "Solver starting points");
        threads_opt = sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
    }

    Layer layer() const {
        Layer l;
        if (seed_opt->count()) {
            l["seed"] = std::to_string(seed);
        }
        if (max_iters_opt->count()) {
            l["max_iters"] = std::to_string(max_iters);
        }
        if (starts_opt->count()) {
            l["starts"] = std::to_string(starts);
        }
        if (threads_opt->count()) {
            l["threads"] = std::to_string(threads);
        }
        return l;
    }
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read '" + path + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Settings resolve_settings(const CommonFlags &flags) {
    Settings s;
    if (!flags.config_path.empty()) {
        s.apply(parse_config_text(read_file(flags.config_path)), "config");
    }
    s.apply(environment_layer(), "env");
    s.apply(flags.layer(), "flag");
    return s;
}

// Component ids from file stems, falling back to M1.. when stems collide.
std::vector<std::string> ids_from_files(const std::vector<std::string> &files) {
    std::vector<std::string> ids;
    std::set<std::string> seen;
    for (const auto &f : files) {
        std::string stem = std::filesystem::path(f).stem().string();
        if (stem.empty() || !seen.insert(stem).second) {
            return default_component_ids(files.size());
        }
        ids.push_back(stem);
    }
    return ids;
}

Povm load_povm(const std::string &path) {
    try {
        return deserialize_povm(read_file(path));
    } catch (const ParseError &e) {
        throw ParseError(e.field(), std::string(e.what()).substr(e.field().empty() ? 0 : e.field().size() + 2) +
                                        " (in " + path + ")");
    }
}

JointPovm load_joint(const std::string &path) {
    try {
        return deserialize_joint(read_file(path));
    } catch (const ParseError &e) {
        throw ParseError(e.field(), std::string(e.what()).substr(e.field().empty() ? 0 : e.field().size() + 2) +
                                        " (in " + path + ")");
    }
}

void emit_json(std::ostream &out, const Json &j) {
    out << j.dump(2) << "\n";
}

Directions load_directions(const std::string &source) {
    if (source == "trine") {
        return trine_directions();
    }
    Json root;
    try {
        root = Json::parse(read_file(source));
    } catch (const Json::parse_error &e) {
        throw ParseError("", std::string("malformed JSON: ") + e.what() + " (in " + source + ")");
    }
    if (!root.is_object() || !root.contains("directions") || !root["directions"].is_array() ||
        root["directions"].size() != 3) {
        throw ParseError("directions", "expected an array of three [x, y, z] vectors (in " + source + ")");
    }
    Directions d;
    for (size_t i = 0; i < 3; i++) {
        const Json &v = root["directions"][i];
        std::string field = "directions[" + std::to_string(i) + "]";
        if (!v.is_array() || v.size() != 3) {
            throw ParseError(field, "expected [x, y, z]");
        }
        for (size_t k = 0; k < 3; k++) {
            if (!v[k].is_number()) {
                throw ParseError(field + "[" + std::to_string(k) + "]", "expected a number");
            }
            d[i][k] = v[k].get<double>();
        }
    }
    return d;
}

int cmd_validate(const std::string &file, const Settings &settings, std::ostream &out, std::ostream &err) {
    Tolerances loose;
    loose.psd = std::numeric_limits<double>::infinity();
    loose.complete = std::numeric_limits<double>::infinity();
    std::string text = read_file(file);
    Json j;
    j["config"] = settings.to_json();
    j["file"] = file;
    ValidationReport r;
    if (looks_like_joint(text)) {
        JointPovm jp = deserialize_joint(text, loose);
        r = validate(jp);
        j["kind"] = "joint";
        j["dim"] = jp.dim();
        j["components"] = jp.component_ids();
        j["outcomes"] = jp.num_tuples();
        j["projective"] = is_pvm(jp.as_povm());
    } else {
        Povm p = deserialize_povm(text, loose);
        r = validate(p);
        j["kind"] = "povm";
        j["dim"] = p.dim();
        j["outcomes"] = p.num_outcomes();
        j["projective"] = is_pvm(p);
    }
    j["passed"] = r.passed;
    j["min_eigenvalue"] = r.min_eigenvalue;
    j["completeness_residual"] = r.completeness_residual;
    j["worst_label"] = r.worst_label;
    emit_json(out, j);
    if (!r.passed) {
        Tolerances tol;
        if (r.min_eigenvalue < -tol.psd) {
            err << "error: effects." << r.worst_label << ": effect is not positive semidefinite\n";
        } else {
            err << "error: effects: completeness residual exceeded\n";
        }
        return kExitError;
    }
    return kExitOk;
}

int cmd_sharp(const std::vector<std::string> &files, const Settings &settings, std::ostream &out) {
    std::vector<Povm> povms;
    for (const auto &f : files) {
        povms.push_back(load_povm(f));
    }
    std::vector<std::string> ids = ids_from_files(files);
    SharpDecision d = decide_sharp(povms, ids);
    Json j;
    j["config"] = settings.to_json();
    j["components"] = ids;
    j["decision"] = sharp_json(d, ids);
    emit_json(out, j);
    return kExitOk;
}

int cmd_joint(const std::vector<std::string> &files, const std::string &mode, const Settings &settings,
              std::ostream &out) {
    FeasibilityProblem problem = [&] {
        if (mode == "pairs") {
            std::vector<JointPovm> joints;
            for (const auto &f : files) {
                joints.push_back(load_joint(f));
            }
            return FeasibilityProblem::pairs(joints);
        }
        std::vector<Povm> povms;
        for (const auto &f : files) {
            povms.push_back(load_povm(f));
        }
        return FeasibilityProblem::singles(std::move(povms), ids_from_files(files));
    }();
    FeasibilityReport r = decide_joint(problem, settings.solver_options());
    Json j;
    j["config"] = settings.to_json();
    j["mode"] = mode;
    j["components"] = problem.component_ids();
    j["report"] = report_json(r);
    emit_json(out, j);
    return r.verdict == Verdict::kUndecided ? kExitUndecided : kExitOk;
}

int cmd_hypergraph(const std::vector<std::string> &files, const Settings &settings, std::ostream &out,
                   std::ostream &err) {
    std::vector<Povm> povms;
    for (const auto &f : files) {
        povms.push_back(load_povm(f));
    }
    try {
        CompatibilityHypergraph h = compatibility_hypergraph(povms, ids_from_files(files), settings.solver_options(),
                                                             settings.get_uint("threads"));
        Json j;
        j["config"] = settings.to_json();
        j["hypergraph"] = hypergraph_json(h);
        emit_json(out, j);
        return kExitOk;
    } catch (const UndecidedSubsetError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUndecided;
    }
}

struct SweepFlags {
    std::string directions = "trine";
    double eta_min = 0;
    std::optional<double> eta_max;
    size_t grid = 256;
    std::string out_path = "-";
    std::string format = "csv";
};

int cmd_lsw_sweep(const SweepFlags &f, const Settings &settings, std::ostream &out) {
    Directions d = load_directions(f.directions);
    Thresholds t = regime_thresholds(d, settings.solver_options());
    // A bisected threshold can land a little past the end of the closed-form domain.
    double eta_max = f.eta_max ? *f.eta_max : std::min(t.eta_upper, closed_form_eta_max(d));
    SweepRecord s = lsw_sweep(d, f.eta_min, eta_max, f.grid, t);
    std::string text;
    if (f.format == "json") {
        Json j;
        j["config"] = settings.to_json();
        j["directions"] = d;
        j["thresholds"] = {{"eta_lower", t.eta_lower}, {"eta_upper", t.eta_upper}, {"analytic", t.analytic}};
        j["sweep"] = sweep_json(s);
        text = j.dump(2) + "\n";
    } else {
        text = sweep_csv(s);
    }
    if (f.out_path == "-") {
        out << text;
    } else {
        std::ofstream file(f.out_path, std::ios::binary);
        if (!(file << text)) {
            throw std::runtime_error("cannot write '" + f.out_path + "'");
        }
    }
    return kExitOk;
}

int cmd_reproduce(const std::string &which, bool json, const Settings &settings, std::ostream &out) {
    Directions d = trine_directions();
    double eta_l = trine_eta_lower(), eta_u = trine_eta_upper();
    bool strong = which == "strong";
    ArgmaxResult a = strong ? argmax_violation(d, EtaRange{eta_l, eta_u, true, false})
                            : argmax_violation(d, EtaRange{0.0, eta_u, true, false});
    if (json) {
        Json j;
        j["config"] = settings.to_json();
        j["which"] = which;
        j["eta_lower"] = eta_l;
        j["eta_upper"] = eta_u;
        j["argmax"] = argmax_json(a);
        emit_json(out, j);
        return kExitOk;
    }
    char buf[512];
    if (strong) {
        std::snprintf(buf, sizeof(buf),
                      "strong regime (trine, eta in (eta_l, eta_u])\n"
                      "  eta_l          %.6f\n"
                      "  eta_u          %.6f\n"
                      "  sup violation  %.4f\n"
                      "  R3_quantum     %.4f\n"
                      "  attained       %s\n",
                      a.eta, eta_u, a.violation, a.r3_quantum, a.attained ? "true" : "false");
    } else {
        std::snprintf(buf, sizeof(buf),
                      "weak regime (trine, eta in (0, eta_u])\n"
                      "  eta*           %.4f\n"
                      "  violation      %.4f\n"
                      "  R3_quantum     %.4f\n"
                      "  attained       %s\n",
                      a.eta, a.violation, a.r3_quantum, a.attained ? "true" : "false");
    }
    out << buf;
    return kExitOk;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"compat: joint measurability of finite quantum measurements"};
    app.require_subcommand(1);

    CommonFlags common;

    std::string validate_file;
    CLI::App *validate = app.add_subcommand("validate", "Check a POVM or joint POVM file");
    validate->add_option("file", validate_file, "POVM JSON file")->required();
    common.attach(validate);

    std::vector<std::string> sharp_files;
    CLI::App *sharp = app.add_subcommand("sharp", "Decide measurability of a family with at most one unsharp member");
    sharp->add_option("files", sharp_files, "POVM JSON files")->required();

    std::vector<std::string> joint_files;
    std::string mode = "singles";
    CLI::App *joint = app.add_subcommand("joint", "Decide existence of a joint POVM");
    joint->add_option("files", joint_files, "POVM (singles) or two-component joint (pairs) files")->required();
    joint->add_option("--mode", mode, "singles | pairs")->check(CLI::IsMember({"singles", "pairs"}));

    std::vector<std::string> hyper_files;
    CLI::App *hyper = app.add_subcommand("hypergraph", "Maximal jointly measurable subsets");
    hyper->add_option("files", hyper_files, "POVM JSON files (at most 6)")->required();

    SweepFlags sweep_flags;
    double eta_max_value = 0;
    CLI::App *sweep = app.add_subcommand("lsw-sweep", "Closed-form anticorrelation sweep over eta");
    sweep->add_option("--directions", sweep_flags.directions, "'trine' or a JSON file with three directions");
    sweep->add_option("--eta-min", sweep_flags.eta_min, "Lower end of the eta grid")->check(CLI::Range(0.0, 1.0));
    CLI::Option *eta_max_opt = sweep->add_option("--eta-max", eta_max_value, "Upper end (default: 2-joint threshold)")
                                   ->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--grid", sweep_flags.grid, "Number of grid points")->check(CLI::Range(2, 1000000));
    sweep->add_option("--out", sweep_flags.out_path, "Output path ('-' for stdout)");
    sweep->add_option("--format", sweep_flags.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    std::string which;
    bool reproduce_json = false;
    CLI::App *reproduce = app.add_subcommand("reproduce", "Headline optimum of the strong or weak regime");
    reproduce->add_option("--which", which, "strong | weak")->required()->check(CLI::IsMember({"strong", "weak"}));
    reproduce->add_flag("--json", reproduce_json, "Emit JSON instead of a text table");

    CommonFlags sharp_common, joint_common, hyper_common, sweep_common, reproduce_common;
    sharp_common.attach(sharp);
    joint_common.attach(joint);
    hyper_common.attach(hyper);
    sweep_common.attach(sweep);
    reproduce_common.attach(reproduce);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate(validate_file, resolve_settings(common), out, err);
        }
        if (sharp->parsed()) {
            return cmd_sharp(sharp_files, resolve_settings(sharp_common), out);
        }
        if (joint->parsed()) {
            return cmd_joint(joint_files, mode, resolve_settings(joint_common), out);
        }
        if (hyper->parsed()) {
            return cmd_hypergraph(hyper_files, resolve_settings(hyper_common), out, err);
        }
        if (sweep->parsed()) {
            if (eta_max_opt->count()) {
                sweep_flags.eta_max = eta_max_value;
            }
            return cmd_lsw_sweep(sweep_flags, resolve_settings(sweep_common), out);
        }
        if (reproduce->parsed()) {
            return cmd_reproduce(which, reproduce_json, resolve_settings(reproduce_common), out);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace compat::cli
