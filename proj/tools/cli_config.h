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

#ifndef COMPAT_TOOLS_CLI_CONFIG_H
#define COMPAT_TOOLS_CLI_CONFIG_H

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "compat/compat_engine.h"
#include "compat/report_json.h"

namespace compat::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Layer = std::map<std::string, std::string>;

/// Key/value text: `key = value` per line, '#' starts a comment, values may
/// be double-quoted, `[section]` headers are ignored. Throws ConfigError with
/// the line number on malformed lines.
Layer parse_config_text(std::string_view text);

/// Settings taken from the environment (COMPAT_MAX_ITERS).
Layer environment_layer();

/// Typed settings resolved from layers applied in increasing precedence:
/// built-in defaults, config file, environment, command-line flags.
class Settings {
   public:
    Settings();

    /// Validates keys and value syntax; later calls override earlier ones.
    void apply(const Layer &layer, const std::string &source);

    uint64_t get_uint(const std::string &key) const;
    double get_double(const std::string &key) const;
    const std::string &source(const std::string &key) const;

    SolverOptions solver_options() const;

    /// {"key": {"value": ..., "source": ...}, ...} in key order.
    Json to_json() const;

   private:
    enum class Kind { kUint, kDouble };
    struct Entry {
        Kind kind;
        std::string text;
        std::string source;
    };
    std::map<std::string, Entry> entries_;
};

}  // namespace compat::cli

#endif
