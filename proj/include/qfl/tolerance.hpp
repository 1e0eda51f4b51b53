// Copyright 2026 The qfl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QFL_TOLERANCE_HPP
#define QFL_TOLERANCE_HPP

namespace qfl {

/// Numerical thresholds shared by every module. Values returned by
/// `tolerances()` are already multiplied by the global scale.
struct Tolerances {
    double hermitian = 1e-10;
    double psd = 1e-9;
    double trace = 1e-10;
    double unitary = 1e-9;
    double completeness = 1e-9;
    double frame_value = 1e-12;
    double rank = 1e-8;
    double residual = 1e-6;
    double repair = 1e-6;
    double zero_probability = 1e-12;
    double entropy_zero = 1e-12;
    double impossible_outcome = 1e-15;
    double kraus_prune = 1e-12;
};

Tolerances tolerances();

/// Multiplies every tolerance. Intended to be called once at startup
/// (the CLI reads QFL_TOLERANCE_SCALE); reads are lock-free.
void set_tolerance_scale(double scale);
double tolerance_scale();

}  // namespace qfl

#endif
