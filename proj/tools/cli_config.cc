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

#include "cli_config.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace compat::cli {

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return "";
    }
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool parse_uint(const std::string &text, uint64_t &out) {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

bool parse_double(const std::string &text, double &out) {
    if (text.empty()) {
        return false;
    }
    char *end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size() && std::isfinite(out);
}

}  // namespace

Layer parse_config_text(std::string_view text) {
    Layer layer;
    std::istringstream in{std::string(text)};
    std::string line;
    size_t number = 0;
    while (std::getline(in, line)) {
        number++;
        size_t hash = line.find('#');
        std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty() || (body.front() == '[' && body.back() == ']')) {
            continue;
        }
        size_t eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
        }
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(number) + ": empty key");
        }
        layer[key] = value;
    }
    return layer;
}

Layer environment_layer() {
    Layer layer;
    if (const char *v = std::getenv("COMPAT_MAX_ITERS")) {
        layer["max_iters"] = v;
    }
    return layer;
}

Settings::Settings() {
    SolverOptions d;
    auto num = [](double v) {
        std::ostringstream s;
        s << v;
        return s.str();
    };
    entries_["seed"] = {Kind::kUint, std::to_string(d.seed), "default"};
    entries_["max_iters"] = {Kind::kUint, std::to_string(d.max_iters), "default"};
    entries_["starts"] = {Kind::kUint, std::to_string(d.starts), "default"};
    entries_["threads"] = {Kind::kUint, "1", "default"};
    entries_["feasible_tol"] = {Kind::kDouble, num(d.feasible_tol), "default"};
    entries_["infeasible_tol"] = {Kind::kDouble, num(d.infeasible_tol), "default"};
    entries_["perturbation"] = {Kind::kDouble, num(d.perturbation), "default"};
}

void Settings::apply(const Layer &layer, const std::string &source) {
    for (const auto &[key, text] : layer) {
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            throw ConfigError(source + ": unknown setting '" + key + "'");
        }
        bool ok;
        if (it->second.kind == Kind::kUint) {
            uint64_t v;
            ok = parse_uint(text, v);
        } else {
            double v;
            ok = parse_double(text, v);
        }
        if (!ok) {
            throw ConfigError(source + ": invalid value '" + text + "' for '" + key + "'");
        }
        it->second.text = text;
        it->second.source = source;
    }
}

uint64_t Settings::get_uint(const std::string &key) const {
    uint64_t v = 0;
    parse_uint(entries_.at(key).text, v);
    return v;
}

double Settings::get_double(const std::string &key) const {
    double v = 0;
    parse_double(entries_.at(key).text, v);
    return v;
}

const std::string &Settings::source(const std::string &key) const {
    return entries_.at(key).source;
}

SolverOptions Settings::solver_options() const {
    SolverOptions o;
    o.seed = get_uint("seed");
    o.max_iters = get_uint("max_iters");
    o.starts = get_uint("starts");
    o.feasible_tol = get_double("feasible_tol");
    o.infeasible_tol = get_double("infeasible_tol");
    o.perturbation = get_double("perturbation");
    return o;
}

Json Settings::to_json() const {
    Json out;
    for (const auto &[key, e] : entries_) {
        Json v;
        if (e.kind == Kind::kUint) {
            v["value"] = get_uint(key);
        } else {
            v["value"] = get_double(key);
        }
        v["source"] = e.source;
        out[key] = v;
    }
    return out;
}

}  // namespace compat::cli
