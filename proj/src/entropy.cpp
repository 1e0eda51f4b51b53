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

#include "qfl/entropy.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "qfl/error.hpp"
#include "qfl/tolerance.hpp"

namespace qfl {

namespace {

constexpr double kSplitThreshold = 1e-7;
constexpr double kSplitEpsilon = 1e-7;

class MpReal {
   public:
    explicit MpReal(mpfr_prec_t prec, double v = 0.0) {
        mpfr_init2(x_, prec);
        mpfr_set_d(x_, v, MPFR_RNDN);
    }
    ~MpReal() { mpfr_clear(x_); }
    MpReal(const MpReal &) = delete;
    MpReal &operator=(const MpReal &) = delete;

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

   private:
    mpfr_t x_;
};

/// Direct evaluation on pairwise-distinct positive eigenvalues.
double subentropy_distinct(const std::vector<double> &lam) {
    const std::size_t n = lam.size();
    if (n <= 1) {
        return 0.0;
    }
    double min_gap = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            min_gap = std::min(min_gap, std::abs(lam[i] - lam[j]));
        }
    }
    double min_lam = *std::min_element(lam.begin(), lam.end());
    const double loss = std::max(0.0, -std::log2(min_gap)) + std::max(0.0, -std::log2(min_lam));
    const auto prec = static_cast<mpfr_prec_t>(96 + static_cast<double>(n - 1) * loss + 64);

    MpReal sum(prec);
    MpReal prod(prec);
    MpReal diff(prec);
    MpReal lk(prec);
    MpReal li(prec);
    MpReal lg(prec);
    for (std::size_t k = 0; k < n; ++k) {
        mpfr_set_d(lk.get(), lam[k], MPFR_RNDN);
        mpfr_set_ui(prod.get(), 1, MPFR_RNDN);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) {
                continue;
            }
            mpfr_set_d(li.get(), lam[i], MPFR_RNDN);
            mpfr_sub(diff.get(), lk.get(), li.get(), MPFR_RNDN);
            mpfr_mul(prod.get(), prod.get(), lk.get(), MPFR_RNDN);
            mpfr_div(prod.get(), prod.get(), diff.get(), MPFR_RNDN);
        }
        mpfr_log2(lg.get(), lk.get(), MPFR_RNDN);
        mpfr_mul(prod.get(), prod.get(), lk.get(), MPFR_RNDN);
        mpfr_mul(prod.get(), prod.get(), lg.get(), MPFR_RNDN);
        mpfr_sub(sum.get(), sum.get(), prod.get(), MPFR_RNDN);
    }
    return sum.to_double();
}

struct Cluster {
    std::size_t begin;
    std::size_t end;
};

std::vector<double> split_clusters(const std::vector<double> &lam, const std::vector<Cluster> &clusters, double eps) {
    std::vector<double> out = lam;
    for (const auto &c : clusters) {
        const std::size_t m = c.end - c.begin;
        if (m < 2) {
            continue;
        }
        double center = 0.0;
        for (std::size_t k = c.begin; k < c.end; ++k) {
            center += lam[k];
        }
        center /= static_cast<double>(m);
        const double h = std::min(eps, center / static_cast<double>(m));
        for (std::size_t j = 0; j < m; ++j) {
            out[c.begin + j] = center + (static_cast<double>(m - 1) / 2.0 - static_cast<double>(j)) * h;
        }
    }
    return out;
}

double log2_or_zero(double p, double zero) { return p > zero ? p * std::log2(p) : 0.0; }

}  // namespace

// Probability vectors ----------------------------------------------------

ProbabilityVector::ProbabilityVector(std::vector<double> entries) : p_(std::move(entries)) {
    if (p_.empty()) {
        throw QflError(ErrorCode::NotAProbability, "empty probability vector");
    }
    double total = 0.0;
    for (double &v : p_) {
        if (!(v >= -1e-12)) {
            throw QflError(ErrorCode::NotAProbability, "negative probability " + std::to_string(v));
        }
        v = std::max(v, 0.0);
        total += v;
    }
    if (std::abs(total - 1.0) > tolerances().completeness) {
        std::ostringstream ss;
        ss << "probabilities sum to " << total;
        throw QflError(ErrorCode::NotAProbability, ss.str());
    }
}

double subentropy_supremum_bits() { return (1.0 - kEulerGamma) / std::log(2.0); }

double shannon(const ProbabilityVector &p) {
    const double zero = tolerances().entropy_zero;
    double s = 0.0;
    for (double v : p.entries()) {
        s -= log2_or_zero(v, zero);
    }
    return std::max(s, 0.0);
}

namespace {

void validate_joint(const RealMatrix &joint) {
    if (joint.size() == 0) {
        throw QflError(ErrorCode::NotAJoint, "empty joint distribution");
    }
    if (joint.minCoeff() < -1e-12) {
        throw QflError(ErrorCode::NotAJoint, "negative joint probability");
    }
    if (std::abs(joint.sum() - 1.0) > tolerances().completeness) {
        throw QflError(ErrorCode::NotAJoint, "joint probabilities sum to " + std::to_string(joint.sum()));
    }
}

}  // namespace

ProbabilityVector hypothesis_marginal(const RealMatrix &joint) {
    validate_joint(joint);
    const RealVector m = joint.rowwise().sum();
    return ProbabilityVector(std::vector<double>(m.data(), m.data() + m.size()));
}

double conditional_shannon(const RealMatrix &joint) {
    validate_joint(joint);
    const double zero = tolerances().entropy_zero;
    double s = 0.0;
    for (Eigen::Index d = 0; d < joint.cols(); ++d) {
        const double pd = joint.col(d).sum();
        if (pd <= zero) {
            continue;
        }
        double sd = 0.0;
        for (Eigen::Index h = 0; h < joint.rows(); ++h) {
            sd -= log2_or_zero(std::max(joint(h, d), 0.0) / pd, zero);
        }
        s += pd * sd;
    }
    return std::max(s, 0.0);
}

ProbabilityVector classical_condition(const RealMatrix &joint, int observed) {
    validate_joint(joint);
    if (observed < 0 || observed >= joint.cols()) {
        throw QflError(ErrorCode::InvalidArgument, "observed datum out of range");
    }
    const double pd = joint.col(observed).sum();
    if (pd <= tolerances().zero_probability) {
        throw QflError(ErrorCode::ZeroProbabilityData, "datum " + std::to_string(observed) + " has probability 0");
    }
    std::vector<double> out(static_cast<std::size_t>(joint.rows()));
    for (Eigen::Index h = 0; h < joint.rows(); ++h) {
        out[h] = std::max(joint(h, observed), 0.0) / pd;
    }
    return ProbabilityVector(std::move(out));
}

// Quantum entropies ------------------------------------------------------

double von_neumann(const DensityOperator &rho) {
    auto ev = eigenvalues(rho.op());
    for (double &l : ev) {
        l = std::max(l, 0.0);
    }
    return shannon(ProbabilityVector(std::move(ev)));
}

double subentropy_of_spectrum(std::vector<double> ev) {
    const double zero = tolerances().entropy_zero;
    std::vector<double> lam;
    for (double l : ev) {
        if (l > zero) {
            lam.push_back(l);
        }
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    if (lam.size() <= 1) {
        return 0.0;
    }
    std::vector<Cluster> clusters;
    std::size_t start = 0;
    bool degenerate = false;
    for (std::size_t k = 1; k <= lam.size(); ++k) {
        if (k == lam.size() || lam[k - 1] - lam[k] >= kSplitThreshold) {
            clusters.push_back(Cluster{start, k});
            degenerate = degenerate || (k - start > 1);
            start = k;
        }
    }
    if (!degenerate) {
        return std::max(subentropy_distinct(lam), 0.0);
    }
    const double coarse = subentropy_distinct(split_clusters(lam, clusters, kSplitEpsilon));
    const double fine = subentropy_distinct(split_clusters(lam, clusters, kSplitEpsilon / 2.0));
    return std::max((4.0 * fine - coarse) / 3.0, 0.0);
}

double subentropy(const DensityOperator &rho) { return subentropy_of_spectrum(eigenvalues(rho.op())); }

double mean_entropy(const DensityOperator &rho) {
    const int d = rho.dim();
    if (d == 1) {
        return 0.0;
    }
    double harmonic = 0.0;
    for (int k = 2; k <= d; ++k) {
        harmonic += 1.0 / k;
    }
    return harmonic / std::log(2.0) + subentropy(rho);
}

double measurement_entropy(const DensityOperator &rho, const UnitaryOperator &basis) {
    if (basis.dim() != rho.dim()) {
        throw QflError(ErrorCode::DimensionMismatch, "measurement basis and state dimensions differ");
    }
    const auto &u = basis.matrix();
    std::vector<double> p(static_cast<std::size_t>(rho.dim()));
    double total = 0.0;
    for (int i = 0; i < rho.dim(); ++i) {
        p[i] = std::max((u.col(i).adjoint() * rho.matrix() * u.col(i))(0, 0).real(), 0.0);
        total += p[i];
    }
    for (double &v : p) {
        v /= total;
    }
    return shannon(ProbabilityVector(std::move(p)));
}

MonteCarloEstimate monte_carlo_mean_entropy(const DensityOperator &rho, int samples, std::uint64_t seed) {
    if (samples < 100) {
        throw QflError(ErrorCode::InvalidArgument, "Monte Carlo mean entropy needs at least 100 samples");
    }
    Rng rng(seed);
    double mean = 0.0;
    double m2 = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double h = measurement_entropy(rho, haar_random_unitary(rho.dim(), rng));
        const double delta = h - mean;
        mean += delta / (k + 1);
        m2 += delta * (h - mean);
    }
    const double variance = m2 / (samples - 1);
    return MonteCarloEstimate{mean, std::sqrt(variance / samples), samples};
}

UncertaintyReport uncertainty_report(const DensityOperator &rho) {
    return UncertaintyReport{von_neumann(rho), subentropy(rho), mean_entropy(rho)};
}

PosteriorUncertainty expected_posterior_uncertainty(const DensityOperator &rho, const KrausChannelSet &channel) {
    if (!channel.is_efficient()) {
        throw QflError(ErrorCode::NotEfficient, "channel has an outcome with several Kraus operators");
    }
    PosteriorUncertainty r{von_neumann(rho), 0.0, subentropy(rho), 0.0};
    for (const auto &o : posterior_states(rho, channel)) {
        if (o.state) {
            r.s_after_expected += o.probability * von_neumann(*o.state);
            r.q_after_expected += o.probability * subentropy(*o.state);
        }
    }
    return r;
}

}  // namespace qfl
