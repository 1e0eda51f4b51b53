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

#ifndef QFL_FIXTURES_HPP
#define QFL_FIXTURES_HPP

#include "qfl/gleason.hpp"
#include "qfl/opcore.hpp"

namespace qfl::fixtures {

/// {|k><k|} for k = 0..d-1.
Povm computational_povm(int d);

/// Qubit trine: (2/3)|psi_k><psi_k| with real states 120 degrees apart on the
/// Bloch circle.
Povm trine_povm();

/// Four effects (I + n_k . sigma) / 4 with tetrahedral Bloch vectors n_k.
Povm tetrahedral_povm();

/// Nine orthonormal product states on C^3 (x) C^3 that cannot be
/// distinguished by local operations, as rank-1 projectors:
/// |1>|1>, |0>|0+-1>, |2>|1+-2>, |1+-2>|0>, |0+-1>|2>.
Povm nine_product_povm();

/// (|00> + |11>) / sqrt(2).
ComplexVector bell_phi_plus();

}  // namespace qfl::fixtures

#endif
