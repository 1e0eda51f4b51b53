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

#ifndef QFL_DEFINETTI_HPP
#define QFL_DEFINETTI_HPP

#include <cstdint>
#include <vector>

#include "qfl/gleason.hpp"
#include "qfl/opcore.hpp"

namespace qfl {

/// Point of the probability simplex over k outcomes (sum within 1e-10).
class SimplexDistribution {
   public:
    explicit SimplexDistribution(std::vector<double> entries);

    std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t j) const { return p_.at(j); }
    const std::vector<double> &entries() const noexcept { return p_; }

   private:
    std::vector<double> p_;
};

/// Outcomes are 0-based, in {0, ..., k-1}.
class OutcomeSequence {
   public:
    OutcomeSequence(std::vector<int> outcomes, int k);

    const std::vector<int> &outcomes() const noexcept { return outcomes_; }
    const std::vector<int> &counts() const noexcept { return counts_; }
    std::size_t length() const noexcept { return outcomes_.size(); }

   private:
    std::vector<int> outcomes_;
    std::vector<int> counts_;
};

/// Joint law of `trials` k-outcome trials; the first trial is the slowest
/// index of `probabilities`.
struct JointDistribution {
    int outcomes_per_trial;
    int trials;
    std::vector<double> probabilities;

    double operator()(const std::vector<int> &sequence) const;
};

/// sum_i w_i p_i(x_1) ... p_i(x_N). Raises TooLarge when k^N > 1e6.
JointDistribution classical_definetti_mixture(const std::vector<double> &weights,
                                              const std::vector<SimplexDistribution> &points, int trials);

/// Sums out the last trial.
JointDistribution marginalize_last(const JointDistribution &joint);

/// sum_i w_i prod_j p_ij^{n_j}; depends on the sequence only through its counts.
double sequence_probability(const std::vector<double> &weights, const std::vector<SimplexDistribution> &points,
                            const OutcomeSequence &sequence);

/// Finite prior over density operators. Zero-weight components are dropped.
class Ensemble {
   public:
    Ensemble(std::vector<double> weights, std::vector<DensityOperator> states);

    int dim() const noexcept { return states_.front().dim(); }
    std::size_t size() const noexcept { return states_.size(); }
    const std::vector<double> &weights() const noexcept { return weights_; }
    const std::vector<DensityOperator> &states() const noexcept { return states_; }

    /// sum_k w_k rho_k
    DensityOperator mean() const;

   private:
    std::vector<double> weights_;
    std::vector<DensityOperator> states_;
};

struct MeasurementRecord {
    MeasurementRecord(Povm povm, std::vector<int> outcome_counts);

    Povm povm;
    std::vector<int> outcome_counts;
};

/// w_k' = w_k tr(rho_k E_b) / P(b). Raises ImpossibleOutcome when P(b) <= 1e-15.
Ensemble quantum_bayes_update(const Ensemble &prior, const Povm &povm, int outcome);

/// One update with likelihood prod_b tr(rho_k E_b)^{n_b}, accumulated in logs.
Ensemble quantum_bayes_update(const Ensemble &prior, const MeasurementRecord &record);

/// sum_k w_k rho_k^{(x)N}. Raises TooLarge when d^N > 1024.
DensityOperator exchangeable_state(const Ensemble &ensemble, int copies);
DensityOperator predictive_state(const Ensemble &ensemble, int copies);

struct TrajectoryStep {
    int step;
    int outcome;
    double dist_ab;
    double dist_a_true;
    double dist_b_true;
};

struct TomographyTrajectory {
    /// Step 0: distances of the prior predictive states.
    TrajectoryStep initial;
    std::vector<TrajectoryStep> steps;
    /// Set when some prior has no component within trace distance 0.2 of the
    /// true state; convergence is then not expected.
    bool prior_excludes_truth;

    double final_dist_ab() const { return steps.empty() ? initial.dist_ab : steps.back().dist_ab; }
};

/// Samples `shots` outcomes of `povm` on `true_state` and updates both priors
/// after each one. Raises NotInformationallyComplete for a non-spanning POVM.
TomographyTrajectory simulate_tomography_convergence(const Ensemble &prior_a, const Ensemble &prior_b,
                                                     const DensityOperator &true_state, const Povm &povm, int shots,
                                                     std::uint64_t seed);

struct CompletenessCheck {
    int rank;
    bool complete;
};

/// Rank of the Gram matrix tr(E_i E_j); complete iff it equals d^2.
CompletenessCheck informational_completeness_check(const Povm &povm);

/// 1/2 rho_+^{(x)N} + 1/2 rho_-^{(x)N} with rho_pm = (I pm sigma_2) / 2.
DensityOperator real_field_state(int copies);

struct RealCounterexampleReport {
    int copies;
    double max_imag;
    double exchangeability_violation;
    /// tr(rho (sigma_2 (x) sigma_2 (x) I ...)).
    double sigma2_coefficient;
};

/// 2 <= copies <= 6.
RealCounterexampleReport real_field_counterexample(int copies);

/// tr(rho P) for the qubit Pauli string P = sigma_{s_1} (x) ... (x) sigma_{s_N},
/// s_i in {0, 1, 2, 3}.
double pauli_string_coefficient(const ComplexMatrix &rho, const std::vector<int> &string);

/// max |tr(rho P)| over the Pauli strings with at least one sigma_2 factor.
double max_sigma2_string_coefficient(const ComplexMatrix &rho, int copies);

/// max over adjacent transpositions t of ||S_t rho S_t^dagger - rho||_F.
double permutation_invariance_check(const DensityOperator &state, int local_dim, int copies);

}  // namespace qfl

#endif
