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

#include "qfl/definetti.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qfl/error.hpp"
#include "qfl/measure.hpp"
#include "qfl/tolerance.hpp"

namespace qfl {

namespace {

constexpr double kWeightSumTolerance = 1e-10;
constexpr long kMaxJointSize = 1000000;
constexpr long kMaxStateDim = 1024;
constexpr double kSupportRadius = 0.2;

std::vector<double> checked_weights(std::vector<double> w, const char *what) {
    if (w.empty()) {
        throw QflError(ErrorCode::NotAProbability, std::string(what) + " is empty");
    }
    double total = 0.0;
    for (double &v : w) {
        if (!(v >= -1e-12)) {
            throw QflError(ErrorCode::NotAProbability, std::string(what) + " has a negative entry");
        }
        v = std::max(v, 0.0);
        total += v;
    }
    if (std::abs(total - 1.0) > kWeightSumTolerance) {
        std::ostringstream ss;
        ss << what << " sums to " << total;
        throw QflError(ErrorCode::NotAProbability, ss.str());
    }
    return w;
}

long checked_power(long base, int exponent, long limit, const char *what) {
    long out = 1;
    for (int i = 0; i < exponent; ++i) {
        out *= base;
        if (out > limit) {
            throw QflError(ErrorCode::TooLarge, std::string(what) + " exceeds " + std::to_string(limit));
        }
    }
    return out;
}

double likelihood(const DensityOperator &rho, const Effect &e) {
    return std::max((rho.matrix() * e.matrix()).trace().real(), 0.0);
}

}  // namespace

SimplexDistribution::SimplexDistribution(std::vector<double> entries)
    : p_(checked_weights(std::move(entries), "simplex distribution")) {}

OutcomeSequence::OutcomeSequence(std::vector<int> outcomes, int k) : outcomes_(std::move(outcomes)) {
    if (k < 1) {
        throw QflError(ErrorCode::InvalidArgument, "outcome alphabet must be nonempty");
    }
    counts_.assign(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        const int x = outcomes_[i];
        if (x < 0 || x >= k) {
            throw QflError(ErrorCode::InvalidArgument, "outcome out of range", std::nullopt, static_cast<int>(i));
        }
        ++counts_[x];
    }
}

double JointDistribution::operator()(const std::vector<int> &sequence) const {
    if (static_cast<int>(sequence.size()) != trials) {
        throw QflError(ErrorCode::DimensionMismatch, "sequence length differs from the number of trials");
    }
    std::size_t idx = 0;
    for (int x : sequence) {
        if (x < 0 || x >= outcomes_per_trial) {
            throw QflError(ErrorCode::InvalidArgument, "outcome out of range");
        }
        idx = idx * outcomes_per_trial + x;
    }
    return probabilities[idx];
}

JointDistribution classical_definetti_mixture(const std::vector<double> &weights,
                                              const std::vector<SimplexDistribution> &points, int trials) {
    const auto w = checked_weights(weights, "mixture weights");
    if (points.size() != w.size()) {
        throw QflError(ErrorCode::DimensionMismatch, "one simplex point per weight required");
    }
    if (trials < 0) {
        throw QflError(ErrorCode::InvalidArgument, "trials must be nonnegative");
    }
    const int k = static_cast<int>(points.front().size());
    for (const auto &p : points) {
        if (static_cast<int>(p.size()) != k) {
            throw QflError(ErrorCode::DimensionMismatch, "simplex points differ in size");
        }
    }
    const long size = checked_power(k, trials, kMaxJointSize, "k^N");

    JointDistribution out{k, trials, std::vector<double>(static_cast<std::size_t>(size), 0.0)};
    std::vector<double> iid(1, 1.0);
    for (std::size_t c = 0; c < points.size(); ++c) {
        iid.assign(1, 1.0);
        for (int t = 0; t < trials; ++t) {
            std::vector<double> next(iid.size() * k);
            for (std::size_t i = 0; i < iid.size(); ++i) {
                for (int j = 0; j < k; ++j) {
                    next[i * k + j] = iid[i] * points[c][j];
                }
            }
            iid = std::move(next);
        }
        for (std::size_t i = 0; i < iid.size(); ++i) {
            out.probabilities[i] += w[c] * iid[i];
        }
    }
    return out;
}

JointDistribution marginalize_last(const JointDistribution &joint) {
    if (joint.trials < 1) {
        throw QflError(ErrorCode::InvalidArgument, "no trial to marginalize");
    }
    const std::size_t k = joint.outcomes_per_trial;
    JointDistribution out{joint.outcomes_per_trial, joint.trials - 1,
                          std::vector<double>(joint.probabilities.size() / k, 0.0)};
    for (std::size_t i = 0; i < joint.probabilities.size(); ++i) {
        out.probabilities[i / k] += joint.probabilities[i];
    }
    return out;
}

double sequence_probability(const std::vector<double> &weights, const std::vector<SimplexDistribution> &points,
                            const OutcomeSequence &sequence) {
    const auto w = checked_weights(weights, "mixture weights");
    if (points.size() != w.size()) {
        throw QflError(ErrorCode::DimensionMismatch, "one simplex point per weight required");
    }
    const auto &n = sequence.counts();
    double total = 0.0;
    for (std::size_t c = 0; c < points.size(); ++c) {
        if (points[c].size() != n.size()) {
            throw QflError(ErrorCode::DimensionMismatch, "simplex point and sequence alphabet differ");
        }
        double term = w[c];
        for (std::size_t j = 0; j < n.size(); ++j) {
            term *= std::pow(points[c][j], n[j]);
        }
        total += term;
    }
    return total;
}

// Ensembles ----------------------------------------------------------------

Ensemble::Ensemble(std::vector<double> weights, std::vector<DensityOperator> states) {
    if (weights.size() != states.size()) {
        throw QflError(ErrorCode::DimensionMismatch, "one weight per state required");
    }
    const auto w = checked_weights(std::move(weights), "ensemble weights");
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    const int d = states.front().dim();
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (states[k].dim() != d) {
            throw QflError(ErrorCode::DimensionMismatch, "ensemble states differ in dimension", std::nullopt,
                           static_cast<int>(k));
        }
        if (w[k] > 0.0) {
            weights_.push_back(w[k] / total);
            states_.push_back(std::move(states[k]));
        }
    }
}

DensityOperator Ensemble::mean() const {
    ComplexMatrix m = ComplexMatrix::Zero(dim(), dim());
    for (std::size_t k = 0; k < size(); ++k) {
        m += weights_[k] * states_[k].matrix();
    }
    return DensityOperator(m);
}

MeasurementRecord::MeasurementRecord(Povm p, std::vector<int> counts)
    : povm(std::move(p)), outcome_counts(std::move(counts)) {
    if (outcome_counts.size() != povm.size()) {
        throw QflError(ErrorCode::DimensionMismatch, "one count per POVM outcome required");
    }
    for (std::size_t b = 0; b < outcome_counts.size(); ++b) {
        if (outcome_counts[b] < 0) {
            throw QflError(ErrorCode::InvalidArgument, "negative outcome count", std::nullopt, static_cast<int>(b));
        }
    }
}

Ensemble quantum_bayes_update(const Ensemble &prior, const Povm &povm, int outcome) {
    if (povm.dim() != prior.dim()) {
        throw QflError(ErrorCode::DimensionMismatch, "POVM and ensemble dimensions differ");
    }
    if (outcome < 0 || outcome >= static_cast<int>(povm.size())) {
        throw QflError(ErrorCode::InvalidArgument, "outcome index out of range");
    }
    std::vector<double> w(prior.size());
    double total = 0.0;
    for (std::size_t k = 0; k < prior.size(); ++k) {
        w[k] = prior.weights()[k] * likelihood(prior.states()[k], povm[outcome]);
        total += w[k];
    }
    if (total <= tolerances().impossible_outcome) {
        throw QflError(ErrorCode::ImpossibleOutcome, "outcome " + std::to_string(outcome) + " has prior probability 0");
    }
    for (double &v : w) {
        v /= total;
    }
    return Ensemble(std::move(w), prior.states());
}

Ensemble quantum_bayes_update(const Ensemble &prior, const MeasurementRecord &record) {
    if (record.povm.dim() != prior.dim()) {
        throw QflError(ErrorCode::DimensionMismatch, "POVM and ensemble dimensions differ");
    }
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> logw(prior.size());
    for (std::size_t k = 0; k < prior.size(); ++k) {
        double lw = std::log(prior.weights()[k]);
        for (std::size_t b = 0; b < record.povm.size() && lw > neg_inf; ++b) {
            const int n = record.outcome_counts[b];
            if (n == 0) {
                continue;
            }
            const double l = likelihood(prior.states()[k], record.povm[b]);
            lw = l > 0.0 ? lw + n * std::log(l) : neg_inf;
        }
        logw[k] = lw;
    }
    const double top = *std::max_element(logw.begin(), logw.end());
    if (top == neg_inf) {
        throw QflError(ErrorCode::ImpossibleOutcome, "record has prior probability 0");
    }
    std::vector<double> w(prior.size());
    double total = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] = std::exp(logw[k] - top);
        total += w[k];
    }
    for (double &v : w) {
        v /= total;
    }
    return Ensemble(std::move(w), prior.states());
}

DensityOperator exchangeable_state(const Ensemble &ensemble, int copies) {
    if (copies < 1) {
        throw QflError(ErrorCode::InvalidArgument, "copies must be positive");
    }
    const long n = checked_power(ensemble.dim(), copies, kMaxStateDim, "d^N");
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < ensemble.size(); ++k) {
        m += ensemble.weights()[k] * tensor_power(ensemble.states()[k].op(), copies).matrix();
    }
    return DensityOperator(m);
}

DensityOperator predictive_state(const Ensemble &ensemble, int copies) { return exchangeable_state(ensemble, copies); }

TomographyTrajectory simulate_tomography_convergence(const Ensemble &prior_a, const Ensemble &prior_b,
                                                     const DensityOperator &true_state, const Povm &povm, int shots,
                                                     std::uint64_t seed) {
    if (prior_a.dim() != true_state.dim() || prior_b.dim() != true_state.dim() || povm.dim() != true_state.dim()) {
        throw QflError(ErrorCode::DimensionMismatch, "priors, POVM and true state must share a dimension");
    }
    if (shots < 0) {
        throw QflError(ErrorCode::InvalidArgument, "shots must be nonnegative");
    }
    if (!informational_completeness_check(povm).complete) {
        throw QflError(ErrorCode::NotInformationallyComplete, "POVM effects do not span the Hermitian operators");
    }
    auto near_truth = [&](const Ensemble &e) {
        return std::any_of(e.states().begin(), e.states().end(),
                           [&](const DensityOperator &s) { return trace_distance(s, true_state) <= kSupportRadius; });
    };

    auto distances = [&](int step, int outcome, const Ensemble &a, const Ensemble &b) {
        const DensityOperator ma = a.mean();
        const DensityOperator mb = b.mean();
        return TrajectoryStep{step, outcome, trace_distance(ma, mb), trace_distance(ma, true_state),
                              trace_distance(mb, true_state)};
    };

    TomographyTrajectory out{distances(0, -1, prior_a, prior_b), {}, !(near_truth(prior_a) && near_truth(prior_b))};
    const auto probs = born_probabilities(true_state, povm);
    Rng rng(seed);
    Ensemble a = prior_a;
    Ensemble b = prior_b;
    out.steps.reserve(static_cast<std::size_t>(shots));
    for (int s = 1; s <= shots; ++s) {
        const int x = sample_index(probs, rng);
        a = quantum_bayes_update(a, povm, x);
        b = quantum_bayes_update(b, povm, x);
        out.steps.push_back(distances(s, x, a, b));
    }
    return out;
}

CompletenessCheck informational_completeness_check(const Povm &povm) {
    const auto n = static_cast<Eigen::Index>(povm.size());
    RealMatrix gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            gram(i, j) = (povm[i].matrix() * povm[j].matrix()).trace().real();
        }
    }
    const int rank = numerical_rank(gram, tolerances().rank);
    return CompletenessCheck{rank, rank == povm.dim() * povm.dim()};
}

// Real-Hilbert-space counterexample -------------------------------------------

DensityOperator real_field_state(int copies) {
    if (copies < 1) {
        throw QflError(ErrorCode::InvalidArgument, "copies must be positive");
    }
    const auto id = HermitianOperator::identity(2);
    const DensityOperator plus((id + pauli_y()) * 0.5);
    const DensityOperator minus((id - pauli_y()) * 0.5);
    return exchangeable_state(Ensemble({0.5, 0.5}, {plus, minus}), copies);
}

RealCounterexampleReport real_field_counterexample(int copies) {
    if (copies < 2 || copies > 6) {
        throw QflError(ErrorCode::InvalidArgument, "copies must lie in 2..6");
    }
    const DensityOperator rho = real_field_state(copies);
    std::vector<int> string(static_cast<std::size_t>(copies), 0);
    string[0] = 2;
    string[1] = 2;
    return RealCounterexampleReport{copies, rho.matrix().imag().cwiseAbs().maxCoeff(),
                                    permutation_invariance_check(rho, 2, copies),
                                    pauli_string_coefficient(rho.matrix(), string)};
}

double pauli_string_coefficient(const ComplexMatrix &rho, const std::vector<int> &string) {
    const int n = static_cast<int>(string.size());
    if (n > 20 || rho.rows() != (Eigen::Index{1} << n) || rho.cols() != rho.rows()) {
        throw QflError(ErrorCode::DimensionMismatch, "operator dimension is not 2^(string length)");
    }
    std::size_t flip = 0;
    for (int q = 0; q < n; ++q) {
        const int s = string[q];
        if (s < 0 || s > 3) {
            throw QflError(ErrorCode::InvalidArgument, "Pauli index must lie in 0..3");
        }
        if (s == 1 || s == 2) {
            flip |= std::size_t{1} << (n - 1 - q);
        }
    }
    // P|x> = c_x |x ^ flip>, so tr(rho P) = sum_x c_x rho(x, x ^ flip).
    const Complex i_unit(0.0, 1.0);
    Complex total = 0.0;
    for (std::size_t x = 0; x < static_cast<std::size_t>(rho.rows()); ++x) {
        Complex c = 1.0;
        for (int q = 0; q < n; ++q) {
            const bool bit = (x >> (n - 1 - q)) & 1U;
            switch (string[q]) {
                case 2:
                    c *= bit ? -i_unit : i_unit;
                    break;
                case 3:
                    c *= bit ? -1.0 : 1.0;
                    break;
                default:
                    break;
            }
        }
        total += c * rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x ^ flip));
    }
    return total.real();
}

double max_sigma2_string_coefficient(const ComplexMatrix &rho, int copies) {
    if (copies < 1 || copies > 8) {
        throw QflError(ErrorCode::InvalidArgument, "copies must lie in 1..8");
    }
    std::vector<int> string(static_cast<std::size_t>(copies), 0);
    const long total = 1L << (2 * copies);
    double worst = 0.0;
    for (long code = 0; code < total; ++code) {
        bool has_y = false;
        for (int q = 0; q < copies; ++q) {
            string[q] = static_cast<int>((code >> (2 * (copies - 1 - q))) & 3);
            has_y = has_y || string[q] == 2;
        }
        if (has_y) {
            worst = std::max(worst, std::abs(pauli_string_coefficient(rho, string)));
        }
    }
    return worst;
}

double permutation_invariance_check(const DensityOperator &state, int local_dim, int copies) {
    if (local_dim < 1 || copies < 1) {
        throw QflError(ErrorCode::DimensionMismatch, "local dimension and copies must be positive");
    }
    long n = 1;
    for (int i = 0; i < copies && n <= state.dim(); ++i) {
        n *= local_dim;
    }
    if (n != state.dim()) {
        throw QflError(ErrorCode::DimensionMismatch, "state dimension is not local_dim^copies");
    }
    const auto &rho = state.matrix();
    std::vector<long> stride(static_cast<std::size_t>(copies));
    stride[copies - 1] = 1;
    for (int q = copies - 1; q > 0; --q) {
        stride[q - 1] = stride[q] * local_dim;
    }
    double worst = 0.0;
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    for (int t = 0; t + 1 < copies; ++t) {
        for (long x = 0; x < n; ++x) {
            const long a = (x / stride[t]) % local_dim;
            const long b = (x / stride[t + 1]) % local_dim;
            perm[x] = x + (b - a) * stride[t] + (a - b) * stride[t + 1];
        }
        double sq = 0.0;
        for (long i = 0; i < n; ++i) {
            for (long j = 0; j < n; ++j) {
                sq += std::norm(rho(perm[i], perm[j]) - rho(i, j));
            }
        }
        worst = std::max(worst, std::sqrt(sq));
    }
    return worst;
}

}  // namespace qfl
