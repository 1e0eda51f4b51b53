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

#include "qfl/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfl/error.hpp"
#include "qfl/tolerance.hpp"

namespace qfl {

namespace {

HermitianOperator hermitian_part(const ComplexMatrix &m) { return HermitianOperator(0.5 * (m + m.adjoint())); }

/// Normalizes a positive operator of trace p into a density operator.
DensityOperator normalized_state(const ComplexMatrix &unnormalized, double p) {
    return DensityOperator(hermitian_part(unnormalized / p));
}

void require_dim(const ComplexMatrix &m, int d, const char *what) {
    if (m.rows() != d || m.cols() != d) {
        std::ostringstream ss;
        ss << what << " is " << m.rows() << "x" << m.cols() << ", expected " << d << "x" << d;
        throw QflError(ErrorCode::DimensionMismatch, ss.str());
    }
}

/// (I (x) <y|) M (I (x) |x>) for M on C^d (x) C^n.
ComplexMatrix ancilla_block(const ComplexMatrix &m, int d, int n, const ComplexVector &y, const ComplexVector &x) {
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (int sp = 0; sp < d; ++sp) {
        for (int s = 0; s < d; ++s) {
            out(sp, s) = y.adjoint() * m.block(sp * n, s * n, n, n) * x;
        }
    }
    return out;
}

}  // namespace

// KrausChannelSet --------------------------------------------------------

KrausChannelSet::KrausChannelSet(int dim, std::vector<std::vector<ComplexMatrix>> outcomes)
    : dim_(dim), outcomes_(std::move(outcomes)) {
    if (dim < 1 || outcomes_.empty()) {
        throw QflError(ErrorCode::InvalidArgument, "Kraus channel needs a positive dimension and outcomes");
    }
    ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
    for (std::size_t b = 0; b < outcomes_.size(); ++b) {
        if (outcomes_[b].empty()) {
            throw QflError(ErrorCode::InvalidArgument, "outcome without Kraus operators", std::nullopt,
                           static_cast<int>(b));
        }
        ComplexMatrix eb = ComplexMatrix::Zero(dim, dim);
        for (const auto &a : outcomes_[b]) {
            require_dim(a, dim, "Kraus operator");
            eb += a.adjoint() * a;
        }
        try {
            Effect check(hermitian_part(eb));
        } catch (const QflError &e) {
            throw QflError(ErrorCode::NotAnEffect, std::string("outcome ") + std::to_string(b) + ": " + e.message(),
                           std::nullopt, static_cast<int>(b));
        }
        total += eb;
    }
    const double dev = (total - ComplexMatrix::Identity(dim, dim)).norm();
    if (dev > tolerances().completeness) {
        std::ostringstream ss;
        ss << "||sum A^dagger A - I||_F = " << dev;
        throw QflError(ErrorCode::BadCompleteness, ss.str());
    }
}

KrausChannelSet KrausChannelSet::efficient(const std::vector<ComplexMatrix> &kraus) {
    if (kraus.empty()) {
        throw QflError(ErrorCode::InvalidArgument, "no Kraus operators");
    }
    std::vector<std::vector<ComplexMatrix>> outcomes;
    for (const auto &a : kraus) {
        outcomes.push_back({a});
    }
    return KrausChannelSet(static_cast<int>(kraus.front().rows()), std::move(outcomes));
}

KrausChannelSet KrausChannelSet::from_povm_sqrt(const Povm &povm) {
    std::vector<ComplexMatrix> kraus;
    for (const auto &e : povm.effects()) {
        kraus.push_back(op_sqrt(e.op()).matrix());
    }
    return efficient(kraus);
}

bool KrausChannelSet::is_efficient() const {
    return std::all_of(outcomes_.begin(), outcomes_.end(), [](const auto &ops) { return ops.size() == 1; });
}

Povm KrausChannelSet::povm() const {
    std::vector<Effect> effects;
    for (const auto &ops : outcomes_) {
        ComplexMatrix eb = ComplexMatrix::Zero(dim_, dim_);
        for (const auto &a : ops) {
            eb += a.adjoint() * a;
        }
        effects.emplace_back(hermitian_part(eb));
    }
    return Povm(std::move(effects));
}

// Dilation / Schmidt -----------------------------------------------------

Dilation::Dilation(DensityOperator ancilla, UnitaryOperator u, std::vector<HermitianOperator> proj)
    : ancilla_state(std::move(ancilla)), unitary(std::move(u)), projectors(std::move(proj)) {
    const int n = ancilla_state.dim();
    if (unitary.dim() % n != 0) {
        throw QflError(ErrorCode::DimensionMismatch, "unitary dimension is not a multiple of the ancilla dimension");
    }
    if (projectors.empty()) {
        throw QflError(ErrorCode::InvalidArgument, "dilation needs at least one projector");
    }
    const double tol = tolerances().completeness;
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (std::size_t b = 0; b < projectors.size(); ++b) {
        const auto &p = projectors[b].matrix();
        if (p.rows() != n) {
            throw QflError(ErrorCode::DimensionMismatch, "projector dimension differs from the ancilla", std::nullopt,
                           static_cast<int>(b));
        }
        if ((p * p - p).norm() > tol) {
            throw QflError(ErrorCode::InvalidArgument, "ancilla operator is not a projector", std::nullopt,
                           static_cast<int>(b));
        }
        for (std::size_t c = 0; c < b; ++c) {
            if ((p * projectors[c].matrix()).norm() > tol) {
                throw QflError(ErrorCode::InvalidArgument, "ancilla projectors are not mutually orthogonal",
                               std::nullopt, static_cast<int>(b));
            }
        }
        sum += p;
    }
    if ((sum - ComplexMatrix::Identity(n, n)).norm() > tol) {
        throw QflError(ErrorCode::BadCompleteness, "ancilla projectors do not sum to the identity");
    }
}

BipartitePureState::BipartitePureState(std::vector<double> coeffs, ComplexMatrix a, ComplexMatrix b)
    : schmidt_coefficients(std::move(coeffs)), basis_a(std::move(a)), basis_b(std::move(b)) {
    const auto d = static_cast<Eigen::Index>(schmidt_coefficients.size());
    if (d < 1 || basis_a.rows() != d || basis_a.cols() != d || basis_b.rows() != d || basis_b.cols() != d) {
        throw QflError(ErrorCode::DimensionMismatch, "Schmidt bases must be complete and match the coefficient count");
    }
    double total = 0.0;
    for (double c : schmidt_coefficients) {
        if (c < 0.0) {
            throw QflError(ErrorCode::InvalidArgument, "negative Schmidt coefficient");
        }
        total += c * c;
    }
    if (std::abs(total - 1.0) > tolerances().trace) {
        throw QflError(ErrorCode::InvalidArgument, "squared Schmidt coefficients do not sum to 1");
    }
    const double tol = tolerances().psd;
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    if ((basis_a.adjoint() * basis_a - id).norm() > tol || (basis_b.adjoint() * basis_b - id).norm() > tol) {
        throw QflError(ErrorCode::InvalidArgument, "Schmidt bases are not orthonormal");
    }
}

ComplexVector BipartitePureState::vector() const {
    const int d = dim();
    ComplexVector psi = ComplexVector::Zero(d * d);
    for (int i = 0; i < d; ++i) {
        psi += schmidt_coefficients[i] * kron(basis_a.col(i), basis_b.col(i));
    }
    return psi;
}

DensityOperator BipartitePureState::marginal_b() const {
    const int d = dim();
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        rho += schmidt_coefficients[i] * schmidt_coefficients[i] * basis_b.col(i) * basis_b.col(i).adjoint();
    }
    return DensityOperator(hermitian_part(rho));
}

BipartitePureState schmidt_decompose(const ComplexVector &psi, int dim_a, int dim_b) {
    if (dim_a != dim_b || psi.size() != static_cast<Eigen::Index>(dim_a) * dim_b) {
        throw QflError(ErrorCode::DimensionMismatch, "Schmidt decomposition needs a vector on C^d (x) C^d");
    }
    ComplexMatrix c(dim_a, dim_b);
    for (int i = 0; i < dim_a; ++i) {
        for (int j = 0; j < dim_b; ++j) {
            c(i, j) = psi(i * dim_b + j);
        }
    }
    c /= psi.norm();
    // psi = sum_k s_k u_k (x) conj(v_k)
    Eigen::JacobiSVD<ComplexMatrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    std::vector<double> s(svd.singularValues().data(), svd.singularValues().data() + dim_a);
    return BipartitePureState(std::move(s), svd.matrixU(), svd.matrixV().conjugate());
}

// Born rule and posteriors -----------------------------------------------

std::vector<double> born_probabilities(const DensityOperator &rho, const Povm &povm) {
    if (rho.dim() != povm.dim()) {
        throw QflError(ErrorCode::DimensionMismatch, "state and POVM dimensions differ");
    }
    std::vector<double> p;
    p.reserve(povm.size());
    for (const auto &e : povm.effects()) {
        p.push_back(std::clamp((rho.matrix() * e.matrix()).trace().real(), 0.0, 1.0));
    }
    return p;
}

std::vector<Outcome> posterior_states(const DensityOperator &rho, const KrausChannelSet &channel) {
    if (rho.dim() != channel.dim()) {
        throw QflError(ErrorCode::DimensionMismatch, "state and channel dimensions differ");
    }
    const double zero = tolerances().zero_probability;
    std::vector<Outcome> out;
    for (const auto &ops : channel.outcomes()) {
        ComplexMatrix acc = ComplexMatrix::Zero(rho.dim(), rho.dim());
        for (const auto &a : ops) {
            acc += a * rho.matrix() * a.adjoint();
        }
        const double p = acc.trace().real();
        if (p < zero) {
            out.push_back(Outcome{std::max(p, 0.0), std::nullopt});
        } else {
            out.push_back(Outcome{p, normalized_state(acc, p)});
        }
    }
    return out;
}

std::pair<double, DensityOperator> efficient_posterior(const DensityOperator &rho, const ComplexMatrix &kraus) {
    require_dim(kraus, rho.dim(), "Kraus operator");
    Effect check(hermitian_part(kraus.adjoint() * kraus));
    const ComplexMatrix acc = kraus * rho.matrix() * kraus.adjoint();
    const double p = acc.trace().real();
    if (p < tolerances().zero_probability) {
        throw QflError(ErrorCode::ZeroProbability, "outcome has probability " + std::to_string(p));
    }
    return {p, normalized_state(acc, p)};
}

std::vector<Outcome> bayes_decomposition(const DensityOperator &rho, const Povm &povm) {
    if (rho.dim() != povm.dim()) {
        throw QflError(ErrorCode::DimensionMismatch, "state and POVM dimensions differ");
    }
    const double zero = tolerances().zero_probability;
    const ComplexMatrix root = op_sqrt(rho.op()).matrix();
    std::vector<Outcome> out;
    for (const auto &e : povm.effects()) {
        const ComplexMatrix acc = root * e.matrix() * root;
        const double p = acc.trace().real();
        if (p < zero) {
            out.push_back(Outcome{std::max(p, 0.0), std::nullopt});
        } else {
            out.push_back(Outcome{p, normalized_state(acc, p)});
        }
    }
    return out;
}

UnitaryOperator readjustment_unitary(const DensityOperator &rho, const ComplexMatrix &kraus) {
    const auto [p, posterior] = efficient_posterior(rho, kraus);
    const ComplexMatrix root = op_sqrt(rho.op()).matrix();
    const DensityOperator refined = normalized_state(root * kraus.adjoint() * kraus * root, p);
    // rho_b = X X^dagger / p and rho~_b = X^dagger X / p with X = A rho^{1/2} share a spectrum;
    // map the sorted eigenframe of rho~_b onto that of rho_b.
    const auto target = eig_hermitian(posterior.op());
    const auto source = eig_hermitian(refined.op());
    return UnitaryOperator(target.eigenvectors * source.eigenvectors.adjoint());
}

std::pair<double, DensityOperator> raw_collapse(const DensityOperator &rho, const Effect &effect) {
    if (rho.dim() != effect.dim()) {
        throw QflError(ErrorCode::DimensionMismatch, "state and effect dimensions differ");
    }
    const ComplexMatrix root = op_sqrt(effect.op()).matrix();
    const ComplexMatrix acc = root * rho.matrix() * root;
    const double p = acc.trace().real();
    if (p < tolerances().zero_probability) {
        throw QflError(ErrorCode::ZeroProbability, "outcome has probability " + std::to_string(p));
    }
    return {p, normalized_state(acc, p)};
}

UnitaryOperator polar_unitary(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw QflError(ErrorCode::DimensionMismatch, "polar decomposition of a non-square matrix");
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return UnitaryOperator(svd.matrixU() * svd.matrixV().adjoint());
}

// Naimark dilation -------------------------------------------------------

Dilation dilate_povm(const Povm &povm) {
    const int d = povm.dim();
    const int n = static_cast<int>(povm.size());
    const int big = d * n;
    std::vector<ComplexMatrix> roots;
    for (const auto &e : povm.effects()) {
        roots.push_back(op_sqrt(e.op()).matrix());
    }
    ComplexMatrix isometry = ComplexMatrix::Zero(big, d);
    for (int s = 0; s < d; ++s) {
        for (int b = 0; b < n; ++b) {
            for (int sp = 0; sp < d; ++sp) {
                isometry(sp * n + b, s) = roots[b](sp, s);
            }
        }
    }
    // V^dagger V = sum_b E_b; normalizing by its inverse root absorbs the
    // completeness slack and leaves V unchanged when the sum is exactly I
    const ComplexMatrix v = isometry * op_sqrt(hermitian_part(isometry.adjoint() * isometry)).matrix().inverse();
    const ComplexMatrix rest = orthonormal_completion(v);
    ComplexMatrix u(big, big);
    int next = 0;
    for (int col = 0; col < big; ++col) {
        if (col % n == 0) {
            u.col(col) = v.col(col / n);
        } else {
            u.col(col) = rest.col(next++);
        }
    }
    ComplexMatrix anc = ComplexMatrix::Zero(n, n);
    anc(0, 0) = 1.0;
    std::vector<HermitianOperator> projectors;
    for (int b = 0; b < n; ++b) {
        ComplexMatrix p = ComplexMatrix::Zero(n, n);
        p(b, b) = 1.0;
        projectors.emplace_back(p);
    }
    Dilation out(DensityOperator(anc), UnitaryOperator(u), std::move(projectors));
    const Povm back = povm_from_dilation(out, d);
    for (int b = 0; b < n; ++b) {
        const double dev = (back[b].matrix() - povm[b].matrix()).norm();
        if (dev > 1e-8) {
            throw QflError(ErrorCode::InvalidArgument, "dilation round trip deviates by " + std::to_string(dev),
                           std::nullopt, b);
        }
    }
    return out;
}

Povm povm_from_dilation(const Dilation &dilation, int system_dim) {
    const int n = dilation.ancilla_dim();
    if (system_dim < 1 || dilation.unitary.dim() != system_dim * n) {
        throw QflError(ErrorCode::DimensionMismatch, "unitary does not act on system (x) ancilla");
    }
    const ComplexMatrix id = ComplexMatrix::Identity(system_dim, system_dim);
    const ComplexMatrix weight = kron(id, dilation.ancilla_state.matrix());
    const ComplexMatrix &u = dilation.unitary.matrix();
    std::vector<Effect> effects;
    for (const auto &p : dilation.projectors) {
        const ComplexMatrix m = weight * u.adjoint() * kron(id, p.matrix()) * u;
        effects.emplace_back(hermitian_part(partial_trace(m, system_dim, n, Subsystem::A)));
    }
    return Povm(std::move(effects));
}

std::vector<double> dilation_probabilities(const DensityOperator &rho_s, const Dilation &dilation) {
    const int d = rho_s.dim();
    const int n = dilation.ancilla_dim();
    if (dilation.unitary.dim() != d * n) {
        throw QflError(ErrorCode::DimensionMismatch, "unitary does not act on system (x) ancilla");
    }
    const ComplexMatrix &u = dilation.unitary.matrix();
    const ComplexMatrix evolved = u * kron(rho_s.matrix(), dilation.ancilla_state.matrix()) * u.adjoint();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    std::vector<double> p;
    for (const auto &proj : dilation.projectors) {
        p.push_back((evolved * kron(id, proj.matrix())).trace().real());
    }
    return p;
}

std::vector<Outcome> projection_at_a_distance(const DensityOperator &rho_s, const Dilation &dilation) {
    const int d = rho_s.dim();
    const int n = dilation.ancilla_dim();
    if (dilation.unitary.dim() != d * n) {
        throw QflError(ErrorCode::DimensionMismatch, "unitary does not act on system (x) ancilla");
    }
    const double zero = tolerances().zero_probability;
    const ComplexMatrix &u = dilation.unitary.matrix();
    const ComplexMatrix evolved = u * kron(rho_s.matrix(), dilation.ancilla_state.matrix()) * u.adjoint();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    std::vector<Outcome> out;
    for (const auto &proj : dilation.projectors) {
        const ComplexMatrix big = kron(id, proj.matrix());
        const ComplexMatrix reduced = partial_trace(ComplexMatrix(big * evolved * big), d, n, Subsystem::A);
        const double p = reduced.trace().real();
        if (p < zero) {
            out.push_back(Outcome{std::max(p, 0.0), std::nullopt});
        } else {
            out.push_back(Outcome{p, normalized_state(reduced, p)});
        }
    }
    return out;
}

KrausChannelSet kraus_from_dilation(const Dilation &dilation, int system_dim, bool prune) {
    const int n = dilation.ancilla_dim();
    if (system_dim < 1 || dilation.unitary.dim() != system_dim * n) {
        throw QflError(ErrorCode::DimensionMismatch, "unitary does not act on system (x) ancilla");
    }
    const double cut = tolerances().kraus_prune;
    const auto anc = eig_hermitian(dilation.ancilla_state.op());
    const ComplexMatrix id = ComplexMatrix::Identity(system_dim, system_dim);
    std::vector<std::vector<ComplexMatrix>> outcomes;
    for (const auto &proj : dilation.projectors) {
        const ComplexMatrix m = kron(id, proj.matrix()) * dilation.unitary.matrix();
        std::vector<ComplexMatrix> ops;
        for (int alpha = 0; alpha < n; ++alpha) {
            const double w = std::sqrt(std::max(anc.eigenvalues[alpha], 0.0));
            for (int beta = 0; beta < n; ++beta) {
                ComplexMatrix a =
                    w * ancilla_block(m, system_dim, n, anc.eigenvectors.col(beta), anc.eigenvectors.col(alpha));
                if (!prune || a.norm() >= cut) {
                    ops.push_back(std::move(a));
                }
            }
        }
        if (ops.empty()) {
            ops.push_back(ComplexMatrix::Zero(system_dim, system_dim));
        }
        outcomes.push_back(std::move(ops));
    }
    return KrausChannelSet(system_dim, std::move(outcomes));
}

// Remote steering --------------------------------------------------------

std::vector<SteeringOutcome> steering_povm(const BipartitePureState &psi, const std::vector<ComplexMatrix> &kraus_on_a) {
    const int d = psi.dim();
    // validates shapes and completeness
    const KrausChannelSet channel = KrausChannelSet::efficient(kraus_on_a);
    if (channel.dim() != d) {
        throw QflError(ErrorCode::DimensionMismatch, "Kraus operators do not act on system A");
    }
    const double zero = tolerances().zero_probability;
    const ComplexVector v = psi.vector();
    const ComplexMatrix joint = v * v.adjoint();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    std::vector<SteeringOutcome> out;
    for (const auto &a : kraus_on_a) {
        const ComplexMatrix e = a.adjoint() * a;
        // transpose taken in the |b_i> basis
        const ComplexMatrix in_a_basis = psi.basis_a.adjoint() * e * psi.basis_a;
        const ComplexMatrix f = psi.basis_b * in_a_basis.transpose() * psi.basis_b.adjoint();
        const ComplexMatrix big = kron(a, id);
        const ComplexMatrix reduced = partial_trace(ComplexMatrix(big * joint * big.adjoint()), d, d, Subsystem::B);
        const double p = reduced.trace().real();
        SteeringOutcome o{Effect(hermitian_part(f)), std::max(p, 0.0), std::nullopt};
        if (p >= zero) {
            o.posterior_b = normalized_state(reduced, p);
        }
        out.push_back(std::move(o));
    }
    return out;
}

// Teleportation ----------------------------------------------------------

TeleportationTranscript simulate_teleportation(const ComplexVector &psi, std::uint64_t seed) {
    if (psi.size() != 2 || !(psi.norm() > 0.0)) {
        throw QflError(ErrorCode::InvalidArgument, "teleportation input must be a nonzero qubit vector");
    }
    const ComplexVector input = psi / psi.norm();
    const double h = std::sqrt(0.5);
    std::array<ComplexVector, 4> bell;
    for (auto &b : bell) {
        b = ComplexVector::Zero(4);
    }
    bell[0](0) = h;  // Phi+
    bell[0](3) = h;
    bell[1](0) = h;  // Phi-
    bell[1](3) = -h;
    bell[2](1) = h;  // Psi+
    bell[2](2) = h;
    bell[3](1) = h;  // Psi-
    bell[3](2) = -h;
    const std::array<const HermitianOperator *, 4> corrections = {&pauli(0), &pauli_z(), &pauli_x(), &pauli_y()};
    const std::array<std::string, 4> names = {"I", "Z", "X", "Y"};

    const ComplexVector full = kron(input, bell[0]);
    const ComplexMatrix joint = full * full.adjoint();
    std::array<double, 4> probs{};
    std::vector<ComplexMatrix> bob;
    ComplexMatrix average = ComplexMatrix::Zero(2, 2);
    for (int m = 0; m < 4; ++m) {
        const ComplexMatrix proj = kron(bell[m] * bell[m].adjoint(), ComplexMatrix::Identity(2, 2));
        const ComplexMatrix reduced = partial_trace(ComplexMatrix(proj * joint * proj), 4, 2, Subsystem::B);
        probs[m] = reduced.trace().real();
        average += reduced;
        bob.push_back(reduced / probs[m]);
    }
    Rng rng(seed);
    const int outcome = sample_index(std::vector<double>(probs.begin(), probs.end()), rng);
    const ComplexMatrix &c = corrections[outcome]->matrix();
    const ComplexMatrix corrected = c * bob[outcome] * c.adjoint();
    const double verification = (input.adjoint() * corrected * input)(0, 0).real();
    return TeleportationTranscript{input,
                                   probs,
                                   outcome,
                                   names[outcome],
                                   DensityOperator(hermitian_part(bob[outcome])),
                                   DensityOperator(hermitian_part(corrected)),
                                   verification,
                                   DensityOperator(hermitian_part(average))};
}

}  // namespace qfl
