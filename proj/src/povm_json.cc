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

#include "compat/povm_json.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace compat {

namespace {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const HermitianMatrix &m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.dim(); i++) {
        Json row = Json::array();
        for (size_t j = 0; j < m.dim(); j++) {
            // Adding +0.0 maps -0.0 to 0.0 so equal matrices print identically.
            row.push_back(Json::array({m(i, j).real() + 0.0, m(i, j).imag() + 0.0}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string emit(size_t dim, const std::vector<std::string> *components, const std::vector<std::string> &keys,
                 const std::vector<HermitianMatrix> &effects) {
    std::ostringstream out;
    out << "{\n  \"dim\": " << dim << ",\n";
    if (components != nullptr) {
        out << "  \"components\": " << Json(*components).dump() << ",\n";
    }
    out << "  \"effects\": {\n";
    for (size_t k = 0; k < effects.size(); k++) {
        out << "    " << Json(keys[k]).dump() << ": " << matrix_to_json(effects[k]).dump();
        out << (k + 1 < effects.size() ? ",\n" : "\n");
    }
    out << "  }\n}\n";
    return out.str();
}

Json parse_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error &e) {
        throw ParseError("", std::string("malformed JSON: ") + e.what());
    }
}

size_t parse_dim(const Json &root) {
    if (!root.is_object()) {
        throw ParseError("", "top-level value must be an object");
    }
    if (!root.contains("dim")) {
        throw ParseError("dim", "missing");
    }
    const Json &d = root["dim"];
    if (!d.is_number_integer() || d.get<long long>() < 1 || d.get<long long>() > static_cast<long long>(kMaxDim)) {
        throw ParseError("dim", "must be an integer in [1, " + std::to_string(kMaxDim) + "]");
    }
    return d.get<size_t>();
}

HermitianMatrix parse_matrix(const Json &value, size_t dim, const std::string &field) {
    if (!value.is_array() || value.size() != dim) {
        throw ParseError(field, "expected " + std::to_string(dim) + " rows (dimension mismatch)");
    }
    ComplexMatrix m(dim);
    for (size_t i = 0; i < dim; i++) {
        const Json &row = value[i];
        std::string row_field = field + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != dim) {
            throw ParseError(row_field, "expected " + std::to_string(dim) + " entries (dimension mismatch)");
        }
        for (size_t j = 0; j < dim; j++) {
            const Json &entry = row[j];
            std::string entry_field = row_field + "[" + std::to_string(j) + "]";
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
                throw ParseError(entry_field, "expected an [re, im] pair of numbers");
            }
            double re = entry[0].get<double>();
            double im = entry[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im)) {
                throw ParseError(entry_field, "non-finite entry");
            }
            m(i, j) = Complex(re, im);
        }
    }
    try {
        return HermitianMatrix(m);
    } catch (const std::invalid_argument &e) {
        throw ParseError(field, e.what());
    }
}

void check_validation(const ValidationReport &r, const Tolerances &tol) {
    if (r.min_eigenvalue < -tol.psd) {
        throw ParseError("effects." + r.worst_label, "effect is not positive semidefinite (min eigenvalue " +
                                                         std::to_string(r.min_eigenvalue) + ")");
    }
    if (r.completeness_residual > tol.complete) {
        std::ostringstream msg;
        msg << "completeness residual exceeded (||sum E - I||_F = " << r.completeness_residual << ")";
        throw ParseError("effects", msg.str());
    }
}

const Json &effects_object(const Json &root) {
    if (!root.contains("effects")) {
        throw ParseError("effects", "missing");
    }
    const Json &e = root["effects"];
    if (!e.is_object()) {
        throw ParseError("effects", "must be an object mapping outcome labels to matrices");
    }
    return e;
}

std::vector<std::string> split_key(const std::string &key) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t bar = key.find('|', start);
        parts.push_back(key.substr(start, bar - start));
        if (bar == std::string::npos) {
            break;
        }
        start = bar + 1;
    }
    return parts;
}

}  // namespace

std::string serialize(const Povm &p) {
    return emit(p.dim(), nullptr, p.labels(), p.effects());
}

std::string serialize(const JointPovm &j) {
    std::vector<std::string> keys;
    for (size_t t = 0; t < j.num_tuples(); t++) {
        keys.push_back(j.tuple_key(t));
    }
    return emit(j.dim(), &j.component_ids(), keys, j.effects());
}

bool looks_like_joint(std::string_view text) {
    try {
        Json root = Json::parse(text.begin(), text.end());
        return root.is_object() && root.contains("components");
    } catch (const Json::parse_error &) {
        return false;
    }
}

Povm deserialize_povm(std::string_view text, const Tolerances &tol) {
    Json root = parse_text(text);
    size_t dim = parse_dim(root);
    const Json &effects = effects_object(root);
    std::vector<std::string> labels;
    std::vector<HermitianMatrix> mats;
    for (const auto &[label, value] : effects.items()) {
        labels.push_back(label);
        mats.push_back(parse_matrix(value, dim, "effects." + label));
    }
    Povm p;
    try {
        p = Povm(std::move(labels), std::move(mats));
    } catch (const std::invalid_argument &e) {
        throw ParseError("effects", e.what());
    }
    check_validation(validate(p, tol), tol);
    return p;
}

JointPovm deserialize_joint(std::string_view text, const Tolerances &tol) {
    Json root = parse_text(text);
    size_t dim = parse_dim(root);
    if (!root.contains("components")) {
        throw ParseError("components", "missing");
    }
    const Json &comp = root["components"];
    if (!comp.is_array() || comp.empty()) {
        throw ParseError("components", "must be a nonempty array of ids");
    }
    std::vector<std::string> ids;
    for (size_t i = 0; i < comp.size(); i++) {
        if (!comp[i].is_string()) {
            throw ParseError("components[" + std::to_string(i) + "]", "must be a string");
        }
        ids.push_back(comp[i].get<std::string>());
    }
    size_t arity = ids.size();

    const Json &effects = effects_object(root);
    std::vector<std::vector<std::string>> labels(arity);
    std::vector<std::pair<std::vector<std::string>, HermitianMatrix>> entries;
    for (const auto &[key, value] : effects.items()) {
        auto parts = split_key(key);
        if (parts.size() != arity) {
            throw ParseError("effects." + key, "tuple key has " + std::to_string(parts.size()) +
                                                   " labels, expected " + std::to_string(arity));
        }
        for (size_t i = 0; i < arity; i++) {
            if (std::find(labels[i].begin(), labels[i].end(), parts[i]) == labels[i].end()) {
                labels[i].push_back(parts[i]);
            }
        }
        entries.emplace_back(std::move(parts), parse_matrix(value, dim, "effects." + key));
    }

    size_t expected = 1;
    for (const auto &l : labels) {
        expected *= l.size();
    }
    std::vector<std::optional<HermitianMatrix>> slots(expected);
    for (auto &[parts, m] : entries) {
        size_t index = 0;
        for (size_t i = 0; i < arity; i++) {
            auto pos = std::find(labels[i].begin(), labels[i].end(), parts[i]) - labels[i].begin();
            index = index * labels[i].size() + static_cast<size_t>(pos);
        }
        slots[index] = std::move(m);
    }
    std::vector<HermitianMatrix> mats;
    for (size_t t = 0; t < expected; t++) {
        if (!slots[t]) {
            // Missing tuples are reported as a completeness failure after
            // treating them as zero, matching a missing effect in a plain POVM.
            mats.emplace_back(dim);
            continue;
        }
        mats.push_back(std::move(*slots[t]));
    }
    JointPovm j;
    try {
        j = JointPovm(std::move(ids), std::move(labels), std::move(mats));
    } catch (const std::invalid_argument &e) {
        throw ParseError("components", e.what());
    }
    check_validation(validate(j, tol), tol);
    return j;
}

}  // namespace compat
