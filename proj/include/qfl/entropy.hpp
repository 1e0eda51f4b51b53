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

#ifndef QFL_ENTROPY_HPP
#define QFL_ENTROPY_HPP

#include <cstdint>
#include <vector>

#include "qfl/measure.hpp"
#include "qfl/opcore.hpp"

namespace qfl {

/// Nonnegative entries summing to one. Entries in [-1e-12, 0) are stored as 0.
class ProbabilityVector {
   public:
    explicit ProbabilityVector(std::vector<double> entries);

    std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t i) const { return p_.at(i); }
    const std::vector<double> &entries() const noexcept { return p_; }

   private:
    std::vector<double> p_;
};

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286061;
/// (1 - gamma) / ln 2, the supremum of the subentropy in bits.
double subentropy_supremum_bits();

/// All entropies below are in bits; terms with p below the entropy-zero
/// tolerance contribute 0.
double shannon(const ProbabilityVector &p);

/// S(H|D) for a joint table with rows indexed by h and columns by d.
double conditional_shannon(const RealMatrix &joint);
ProbabilityVector classical_condition(const RealMatrix &joint, int observed);
ProbabilityVector hypothesis_marginal(const RealMatrix &joint);

double von_neumann(const DensityOperator &rho);

/// Q(rho) = -sum_k (prod_{i != k} l_k / (l_k - l_i)) l_k log2 l_k.
///
/// Eigenvalues closer than 1e-7 are split symmetrically about their mean by
/// eps = 1e-7 and eps / 2, and the two evaluations are Richardson-combined.
/// The divided-difference sum is evaluated in MPFR with a precision chosen
/// from the smallest eigenvalue gap, so clustered spectra keep full accuracy.
double subentropy(const DensityOperator &rho);
double subentropy_of_spectrum(std::vector<double> eigenvalues);

/// (1/ln 2)(1/2 + ... + 1/d) + Q(rho).
double mean_entropy(const DensityOperator &rho);

/// Shannon entropy of the outcomes of the von Neumann measurement given by
/// the columns of `basis`.
double measurement_entropy(const DensityOperator &rho, const UnitaryOperator &basis);

struct MonteCarloEstimate {
    double estimate;
    double standard_error;
    int samples;
};

MonteCarloEstimate monte_carlo_mean_entropy(const DensityOperator &rho, int samples, std::uint64_t seed);

struct UncertaintyReport {
    double von_neumann_bits;
    double subentropy_bits;
    double mean_entropy_bits;
};

UncertaintyReport uncertainty_report(const DensityOperator &rho);

struct PosteriorUncertainty {
    double s_before;
    double s_after_expected;
    double q_before;
    double q_after_expected;

    double s_gap() const { return s_before - s_after_expected; }
    double q_gap() const { return q_before - q_after_expected; }
};

/// Raises NotEfficient if any outcome carries more than one Kraus operator.
PosteriorUncertainty expected_posterior_uncertainty(const DensityOperator &rho, const KrausChannelSet &channel);

}  // namespace qfl

#endif
