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

#ifndef QFL_IO_HPP
#define QFL_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfl/definetti.hpp"
#include "qfl/entropy.hpp"
#include "qfl/error.hpp"
#include "qfl/gleason.hpp"
#include "qfl/measure.hpp"
#include "qfl/opcore.hpp"

namespace qfl::io {

/// Keys are emitted in insertion order.
using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits; -0 becomes 0.
double round12(double x);

/// Structural problems (missing keys, wrong shapes, bad JSON) raise
/// ParseError. Mathematical validation errors keep their own codes.
Json parse_json(const std::string &text);
Json read_json_file(const std::string &path);
std::string dump(const Json &j);

/// {"dim": d, "re": [[...]], "im": [[...]]}, row-major.
ComplexMatrix matrix_from_json(const Json &j);
Json matrix_to_json(const ComplexMatrix &m);

HermitianOperator hermitian_from_json(const Json &j);
/// Also accepts a 1-D amplitude file ({"dim", "re": [..], "im": [..]}) as a pure state.
DensityOperator density_from_json(const Json &j);
Effect effect_from_json(const Json &j);
UnitaryOperator unitary_from_json(const Json &j);

/// Amplitude file {"dim", "re": [...], "im": [...]} or a rank-1 density
/// operator; returns a normalized vector.
ComplexVector pure_state_from_json(const Json &j);

Povm povm_from_json(const Json &j);
Json povm_to_json(const Povm &povm);

KrausChannelSet kraus_from_json(const Json &j);
Json kraus_to_json(const KrausChannelSet &channel);

/// {"system_dim", "ancilla_state", "unitary", "projectors"}.
Dilation dilation_from_json(const Json &j);
Json dilation_to_json(const Dilation &dilation);

Ensemble ensemble_from_json(const Json &j);
Json ensemble_to_json(const Ensemble &ensemble);

std::vector<FrameFunctionSample> samples_from_json(const Json &j);
Json samples_to_json(const std::vector<FrameFunctionSample> &samples);

struct BipartiteSampleSet {
    int dim_a;
    int dim_b;
    std::vector<BipartiteSample> samples;
};

BipartiteSampleSet bipartite_samples_from_json(const Json &j);
Json bipartite_samples_to_json(const BipartiteSampleSet &set);

Json reconstruction_to_json(const Reconstruction &r);
Json uncertainty_to_json(const UncertaintyReport &r);
Json outcomes_to_json(const std::vector<double> &probabilities, const std::vector<Outcome> &outcomes);
Json teleportation_to_json(const TeleportationTranscript &t);
Json counterexample_to_json(const RealCounterexampleReport &r);
Json field_counts_to_json(const FieldDimensionCounts &c);
Json error_to_json(const QflError &e);

/// Header "step,outcome,dist_ab,dist_a_true,dist_b_true"; step 0 carries the
/// prior distances and an empty outcome.
void write_trajectory_csv(std::ostream &out, const TomographyTrajectory &t);

}  // namespace qfl::io

#endif
