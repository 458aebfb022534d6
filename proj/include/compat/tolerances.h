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

#ifndef COMPAT_TOLERANCES_H
#define COMPAT_TOLERANCES_H

namespace compat {

/// Default tolerances shared by every module.
struct Tolerances {
    double psd = 1e-9;       // effects are PSD when min eigenvalue >= -psd
    double complete = 1e-9;  // ||sum E - I||_F <= complete
    double pvm = 1e-9;       // ||E^2 - E||_F <= pvm
    double commute = 1e-10;  // ||[A, B]||_F <= commute
};

}  // namespace compat

#endif
