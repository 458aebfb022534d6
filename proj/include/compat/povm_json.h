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

#ifndef COMPAT_POVM_JSON_H
#define COMPAT_POVM_JSON_H

#include <stdexcept>
#include <string>
#include <string_view>

#include "compat/povm.h"
#include "compat/tolerances.h"

namespace compat {

/// Malformed or invalid POVM text. `field()` names the offending JSON path.
class ParseError : public std::runtime_error {
   public:
    ParseError(std::string field, const std::string &message)
        : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {
    }
    const std::string &field() const {
        return field_;
    }

   private:
    std::string field_;
};

// Format:
//   {"dim": d, "effects": {"<label>": [[[re, im], ...], ...], ...}}
// rows are row-major, one [re, im] pair per entry. A joint adds
//   "components": ["<id>", ...]
// and keys its effects by outcome labels joined with '|', in component order.
// Canonical output is UTF-8 with LF line endings, one effect per line,
// effects in stored (row-major tuple) order.

std::string serialize(const Povm &p);
std::string serialize(const JointPovm &j);

/// Throws ParseError. Effects must pass validate() under `tol`.
Povm deserialize_povm(std::string_view text, const Tolerances &tol = {});
JointPovm deserialize_joint(std::string_view text, const Tolerances &tol = {});

/// True when the text has a "components" key.
bool looks_like_joint(std::string_view text);

}  // namespace compat

#endif
