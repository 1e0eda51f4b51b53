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

#include "qfl/tolerance.hpp"

#include <atomic>

#include "qfl/error.hpp"

namespace qfl {

namespace {
std::atomic<double> g_scale{1.0};
}

Tolerances tolerances() {
    const double s = g_scale.load(std::memory_order_relaxed);
    Tolerances t;
    if (s == 1.0) {
        return t;
    }
    for (double *v : {&t.hermitian, &t.psd, &t.trace, &t.unitary, &t.completeness, &t.frame_value, &t.rank,
                      &t.residual, &t.repair, &t.zero_probability, &t.entropy_zero, &t.impossible_outcome,
                      &t.kraus_prune}) {
        *v *= s;
    }
    return t;
}

void set_tolerance_scale(double scale) {
    if (!(scale > 0.0)) {
        throw QflError(ErrorCode::InvalidArgument, "tolerance scale must be positive");
    }
    g_scale.store(scale, std::memory_order_relaxed);
}

double tolerance_scale() { return g_scale.load(std::memory_order_relaxed); }

}  // namespace qfl
