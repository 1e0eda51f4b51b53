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

#include "qfl/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace qfl::fixtures {

Povm computational_povm(int d) {
    std::vector<Effect> out;
    for (int k = 0; k < d; ++k) {
        out.push_back(Effect::projector(ComplexVector::Unit(d, k)));
    }
    return Povm(std::move(out));
}

Povm trine_povm() {
    std::vector<Effect> out;
    for (int k = 0; k < 3; ++k) {
        const double t = 2.0 * std::numbers::pi * k / 3.0;
        ComplexVector v(2);
        v << std::cos(t), std::sin(t);
        out.emplace_back(Effect::projector(v).op() * (2.0 / 3.0));
    }
    return Povm(std::move(out));
}

Povm tetrahedral_povm() {
    const double s = 1.0 / std::sqrt(3.0);
    const double n[4][3] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    std::vector<Effect> out;
    for (const auto &v : n) {
        const HermitianOperator h =
            HermitianOperator::identity(2) + pauli_x() * v[0] + pauli_y() * v[1] + pauli_z() * v[2];
        out.emplace_back(h * 0.25);
    }
    return Povm(std::move(out));
}

Povm nine_product_povm() {
    auto ket = [](int i) { return ComplexVector::Unit(3, i); };
    auto pm = [&](int i, int j, double sign) -> ComplexVector { return (ket(i) + sign * ket(j)) / std::sqrt(2.0); };
    const std::vector<std::pair<ComplexVector, ComplexVector>> states = {
        {ket(1), ket(1)},         {ket(0), pm(0, 1, 1)},    {ket(0), pm(0, 1, -1)},
        {ket(2), pm(1, 2, 1)},    {ket(2), pm(1, 2, -1)},   {pm(1, 2, 1), ket(0)},
        {pm(1, 2, -1), ket(0)},   {pm(0, 1, 1), ket(2)},    {pm(0, 1, -1), ket(2)},
    };
    std::vector<Effect> out;
    for (const auto &[a, b] : states) {
        out.push_back(Effect::projector(kron(a, b)));
    }
    return Povm(std::move(out));
}

ComplexVector bell_phi_plus() {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return v;
}

}  // namespace qfl::fixtures
