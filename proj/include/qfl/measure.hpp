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

#ifndef QFL_MEASURE_HPP
#define QFL_MEASURE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfl/gleason.hpp"
#include "qfl/opcore.hpp"

namespace qfl {

/// Outcome-indexed Kraus operators {A_bi}. The operators are general complex
/// matrices; completeness sum_{b,i} A_bi^dagger A_bi = I is checked at
/// construction and every per-outcome E_b must be an effect.
class KrausChannelSet {
   public:
    KrausChannelSet(int dim, std::vector<std::vector<ComplexMatrix>> outcomes);

    /// One Kraus operator per outcome.
    static KrausChannelSet efficient(const std::vector<ComplexMatrix> &kraus);
    /// A_b = E_b^{1/2}.
    static KrausChannelSet from_povm_sqrt(const Povm &povm);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return outcomes_.size(); }
    const std::vector<std::vector<ComplexMatrix>> &outcomes() const noexcept { return outcomes_; }
    const std::vector<ComplexMatrix> &operator[](std::size_t b) const { return outcomes_.at(b); }
    bool is_efficient() const;
    Povm povm() const;

   private:
    int dim_;
    std::vector<std::vector<ComplexMatrix>> outcomes_;
};

/// Ancilla model (rho_A, U, {Pi_b}) with U acting on system (x) ancilla,
/// system as the slow index.
struct Dilation {
    Dilation(DensityOperator ancilla_state, UnitaryOperator unitary, std::vector<HermitianOperator> projectors);

    DensityOperator ancilla_state;
    UnitaryOperator unitary;
    std::vector<HermitianOperator> projectors;

    int ancilla_dim() const noexcept { return ancilla_state.dim(); }
    int system_dim() const noexcept { return unitary.dim() / ancilla_state.dim(); }
};

/// sum_i sqrt(lambda_i) |a_i>|b_i> with complete orthonormal bases (dA = dB).
struct BipartitePureState {
    BipartitePureState(std::vector<double> schmidt_coefficients, ComplexMatrix basis_a, ComplexMatrix basis_b);

    std::vector<double> schmidt_coefficients;
    ComplexMatrix basis_a;
    ComplexMatrix basis_b;

    int dim() const noexcept { return static_cast<int>(basis_a.rows()); }
    ComplexVector vector() const;
    DensityOperator marginal_b() const;
};

/// Schmidt decomposition of a vector on C^d (x) C^d (SVD of its coefficient
/// matrix).
BipartitePureState schmidt_decompose(const ComplexVector &psi, int dim_a, int dim_b);

/// Probability with, for P(b) >= the zero-probability threshold, the
/// corresponding posterior state.
struct Outcome {
    double probability;
    std::optional<DensityOperator> state;
};

std::vector<double> born_probabilities(const DensityOperator &rho, const Povm &povm);

std::vector<Outcome> posterior_states(const DensityOperator &rho, const KrausChannelSet &channel);

/// (P(b), A rho A^dagger / P(b)). Raises ZeroProbability below threshold.
std::pair<double, DensityOperator> efficient_posterior(const DensityOperator &rho, const ComplexMatrix &kraus);

/// rho~_b = rho^{1/2} E_b rho^{1/2} / P(b).
std::vector<Outcome> bayes_decomposition(const DensityOperator &rho, const Povm &povm);

/// V with V rho~_b V^dagger = rho_b for E_b = A^dagger A.
UnitaryOperator readjustment_unitary(const DensityOperator &rho, const ComplexMatrix &kraus);

/// sigma_b = E^{1/2} rho E^{1/2} / P(b).
std::pair<double, DensityOperator> raw_collapse(const DensityOperator &rho, const Effect &effect);

/// Unitary factor U of A = U |A| (|A| = (A^dagger A)^{1/2}).
UnitaryOperator polar_unitary(const ComplexMatrix &a);

/// Ancilla of dimension n = #outcomes in |0><0|; U completes the isometry
/// |s> -> sum_b (E_b^{1/2}|s>) (x) |b>; Pi_b = |b><b|. The result is checked
/// against the input before it is returned.
Dilation dilate_povm(const Povm &povm);

/// E_b = tr_A((I (x) rho_A) U^dagger (I (x) Pi_b) U).
Povm povm_from_dilation(const Dilation &dilation, int system_dim);

/// P(b) = tr(U (rho_S (x) rho_A) U^dagger (I (x) Pi_b)).
std::vector<double> dilation_probabilities(const DensityOperator &rho_s, const Dilation &dilation);

/// rho_b = tr_A((I (x) Pi_b) U (rho_S (x) rho_A) U^dagger (I (x) Pi_b)) / P(b).
std::vector<Outcome> projection_at_a_distance(const DensityOperator &rho_s, const Dilation &dilation);

/// A_{b,alpha,beta} = sqrt(lambda_alpha) (I (x) <a_beta|)(I (x) Pi_b) U (I (x) |a_alpha>)
/// over the eigenbasis {lambda_alpha, |a_alpha>} of rho_A. Operators with
/// Frobenius norm below the prune tolerance are dropped unless `prune` is false.
KrausChannelSet kraus_from_dilation(const Dilation &dilation, int system_dim, bool prune = true);

struct SteeringOutcome {
    Effect steering_effect;
    double probability;
    /// tr_A((A_b (x) I)|psi><psi|(A_b^dagger (x) I)) / P(b)
    std::optional<DensityOperator> posterior_b;
};

std::vector<SteeringOutcome> steering_povm(const BipartitePureState &psi, const std::vector<ComplexMatrix> &kraus_on_a);

struct TeleportationTranscript {
    ComplexVector input;
    /// Phi+, Phi-, Psi+, Psi- on (input qubit, Alice's half).
    std::array<double, 4> bell_probabilities;
    int outcome;
    std::string correction;
    DensityOperator pre_correction;
    DensityOperator final_state;
    double verification_probability;
    /// sum_m P(m) rho_B^(m) before any correction.
    DensityOperator bob_average_marginal;
};

TeleportationTranscript simulate_teleportation(const ComplexVector &psi, std::uint64_t seed);

}  // namespace qfl

#endif
