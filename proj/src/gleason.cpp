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

#include "qfl/gleason.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfl/error.hpp"
#include "qfl/tolerance.hpp"

namespace qfl {

// Povm -------------------------------------------------------------------

Povm::Povm(std::vector<Effect> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) {
        throw QflError(ErrorCode::InvalidArgument, "POVM needs at least one effect");
    }
    const int d = effects_.front().dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t b = 0; b < effects_.size(); ++b) {
        if (effects_[b].dim() != d) {
            throw QflError(ErrorCode::DimensionMismatch, "POVM effects of different dimensions", std::nullopt,
                           static_cast<int>(b));
        }
        sum += effects_[b].matrix();
    }
    const double dev = (sum - ComplexMatrix::Identity(d, d)).norm();
    if (dev > tolerances().completeness) {
        std::ostringstream ss;
        ss << "||sum E_b - I||_F = " << dev;
        throw QflError(ErrorCode::BadCompleteness, ss.str());
    }
}

Povm validate_povm(std::vector<Effect> effects) { return Povm(std::move(effects)); }

Povm validate_povm(const std::vector<ComplexMatrix> &effects) {
    std::vector<Effect> out;
    out.reserve(effects.size());
    for (std::size_t b = 0; b < effects.size(); ++b) {
        try {
            out.emplace_back(effects[b]);
        } catch (const QflError &e) {
            throw QflError(e.code(), std::string("effect ") + std::to_string(b) + ": " + e.message(), std::nullopt,
                           static_cast<int>(b));
        }
    }
    return Povm(std::move(out));
}

Povm random_povm(int d, int outcomes, Rng &rng) {
    if (d < 1 || outcomes < 1) {
        throw QflError(ErrorCode::InvalidArgument, "random POVM needs d >= 1 and at least one outcome");
    }
    std::vector<ComplexMatrix> g;
    ComplexMatrix s = ComplexMatrix::Zero(d, d);
    for (int b = 0; b < outcomes; ++b) {
        const ComplexMatrix x = complex_gaussian_matrix(d, d, rng);
        g.push_back(x * x.adjoint());
        s += g.back();
    }
    const auto sp = eig_hermitian(HermitianOperator(0.5 * (s + s.adjoint())));
    RealVector inv_sqrt(d);
    for (int k = 0; k < d; ++k) {
        inv_sqrt(k) = 1.0 / std::sqrt(sp.eigenvalues[k]);
    }
    const ComplexMatrix w = sp.eigenvectors * inv_sqrt.asDiagonal() * sp.eigenvectors.adjoint();
    std::vector<Effect> effects;
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    for (int b = 0; b < outcomes; ++b) {
        ComplexMatrix e = w * g[b] * w;
        e = 0.5 * (e + e.adjoint());
        if (b + 1 == outcomes) {
            // absorb rounding so the set sums to I to machine precision
            e = ComplexMatrix::Identity(d, d) - acc;
            e = 0.5 * (e + e.adjoint());
        }
        acc += e;
        effects.emplace_back(e);
    }
    return Povm(std::move(effects));
}

Effect random_effect(int d, Rng &rng) {
    const auto u = haar_random_unitary(d, rng);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    RealVector diag(d);
    for (int k = 0; k < d; ++k) {
        diag(k) = unif(rng);
    }
    const ComplexMatrix e = u.matrix() * diag.asDiagonal() * u.matrix().adjoint();
    return Effect(0.5 * (e + e.adjoint()));
}

std::vector<Effect> spanning_effects(int d) {
    const auto basis = operator_basis(d);
    std::vector<Effect> out;
    out.reserve(basis.size());
    out.push_back(Effect::identity(d));
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    for (std::size_t k = 1; k < basis.size(); ++k) {
        const auto ev = eigenvalues(basis[k]);
        const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
        out.emplace_back(0.5 * (id + basis[k].matrix() / norm));
    }
    return out;
}

// Frame functions --------------------------------------------------------

FrameFunctionSample::FrameFunctionSample(Effect e, double v) : effect(std::move(e)), value(v) {
    const double tol = tolerances().frame_value;
    if (!(v >= -tol && v <= 1.0 + tol)) {
        std::ostringstream ss;
        ss << "frame-function value " << v << " outside [0, 1]";
        throw QflError(ErrorCode::InvalidArgument, ss.str());
    }
}

BipartiteSample::BipartiteSample(Effect a, Effect b, double v)
    : effect_a(std::move(a)), effect_b(std::move(b)), value(v) {
    const double tol = tolerances().frame_value;
    if (!(v >= -tol && v <= 1.0 + tol)) {
        std::ostringstream ss;
        ss << "frame-function value " << v << " outside [0, 1]";
        throw QflError(ErrorCode::InvalidArgument, ss.str());
    }
}

FrameFunction frame_from_state(DensityOperator rho) {
    return [rho = std::move(rho)](const Effect &e) -> double {
        if (e.dim() != rho.dim()) {
            throw QflError(ErrorCode::DimensionMismatch, "effect and state dimensions differ");
        }
        return (rho.matrix() * e.matrix()).trace().real();
    };
}

namespace {

/// Orthonormal (Hilbert-Schmidt) Hermitian basis.
std::vector<ComplexMatrix> orthonormal_hermitian_basis(int d) {
    std::vector<ComplexMatrix> out;
    for (const auto &h : operator_basis(d)) {
        out.push_back(h.matrix() / h.matrix().norm());
    }
    return out;
}

/// tr(A B) for Hermitian A, B.
double trace_pairing(const ComplexMatrix &a, const ComplexMatrix &b) {
    // tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B
    return (a.array() * b.conjugate().array()).sum().real();
}

Reconstruction solve_reconstruction(const std::vector<const ComplexMatrix *> &effects, const std::vector<double> &values,
                                    int d) {
    const auto t = tolerances();
    const auto basis = orthonormal_hermitian_basis(d);
    const auto unknowns = static_cast<Eigen::Index>(basis.size());
    const auto rows = static_cast<Eigen::Index>(effects.size());
    if (rows < unknowns) {
        std::ostringstream ss;
        ss << rows << " samples cannot determine " << unknowns << " unknowns";
        throw QflError(ErrorCode::NotInformationallyComplete, ss.str());
    }
    RealMatrix design(rows, unknowns);
    RealVector rhs(rows);
    for (Eigen::Index k = 0; k < rows; ++k) {
        for (Eigen::Index l = 0; l < unknowns; ++l) {
            design(k, l) = trace_pairing(*effects[k], basis[l]);
        }
        rhs(k) = values[k];
    }
    Eigen::JacobiSVD<RealMatrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues()(unknowns - 1);
    if (!(smin > t.rank)) {
        std::ostringstream ss;
        ss << "design rank " << numerical_rank(design, t.rank) << " < " << unknowns
           << " (smallest singular value " << smin << ")";
        throw QflError(ErrorCode::NotInformationallyComplete, ss.str());
    }
    const RealVector x = svd.solve(rhs);
    const double residual = (design * x - rhs).norm();
    if (residual > t.residual) {
        std::ostringstream ss;
        ss << "least-squares residual " << residual;
        throw QflError(ErrorCode::InconsistentSamples, ss.str());
    }
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (Eigen::Index l = 0; l < unknowns; ++l) {
        rho += x(l) * basis[l];
    }
    HermitianOperator h(0.5 * (rho + rho.adjoint()));
    const double tr = h.trace();
    auto sp = eig_hermitian(h);
    const double lmin = sp.eigenvalues.back();
    if (std::abs(tr - 1.0) > t.repair || lmin < -t.repair) {
        std::ostringstream ss;
        ss << "reconstructed operator has trace " << tr << " and smallest eigenvalue " << lmin;
        throw QflError(ErrorCode::NotAState, ss.str());
    }
    if (std::abs(tr - 1.0) <= t.trace && lmin >= -t.psd) {
        return Reconstruction{DensityOperator(std::move(h)), residual, false, smin};
    }
    double total = 0.0;
    for (double &l : sp.eigenvalues) {
        l = std::max(l, 0.0);
        total += l;
    }
    RealVector lam(d);
    for (int k = 0; k < d; ++k) {
        lam(k) = sp.eigenvalues[k] / total;
    }
    const ComplexMatrix repaired = sp.eigenvectors * lam.asDiagonal() * sp.eigenvectors.adjoint();
    return Reconstruction{DensityOperator(HermitianOperator(0.5 * (repaired + repaired.adjoint()))), residual, true,
                          smin};
}

}  // namespace

Reconstruction reconstruct_state(std::span<const FrameFunctionSample> samples) {
    if (samples.empty()) {
        throw QflError(ErrorCode::NotInformationallyComplete, "no samples");
    }
    const int d = samples.front().effect.dim();
    std::vector<const ComplexMatrix *> effects;
    std::vector<double> values;
    for (const auto &s : samples) {
        if (s.effect.dim() != d) {
            throw QflError(ErrorCode::DimensionMismatch, "samples of different dimensions");
        }
        effects.push_back(&s.effect.matrix());
        values.push_back(s.value);
    }
    return solve_reconstruction(effects, values, d);
}

Reconstruction reconstruct_bipartite(std::span<const BipartiteSample> samples, int dim_a, int dim_b) {
    if (samples.empty()) {
        throw QflError(ErrorCode::NotInformationallyComplete, "no samples");
    }
    std::vector<ComplexMatrix> products;
    products.reserve(samples.size());
    std::vector<double> values;
    for (const auto &s : samples) {
        if (s.effect_a.dim() != dim_a || s.effect_b.dim() != dim_b) {
            throw QflError(ErrorCode::DimensionMismatch, "sample effect dimensions do not match (dA, dB)");
        }
        products.push_back(kron(s.effect_a.matrix(), s.effect_b.matrix()));
        values.push_back(s.value);
    }
    std::vector<const ComplexMatrix *> effects;
    for (const auto &p : products) {
        effects.push_back(&p);
    }
    return solve_reconstruction(effects, values, dim_a * dim_b);
}

FrameLawReport check_frame_function_laws(const FrameFunction &f, int d, int trials, std::uint64_t seed) {
    if (trials < 1) {
        throw QflError(ErrorCode::InvalidArgument, "trials must be >= 1");
    }
    FrameLawReport report;
    report.trials = trials;
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
        const Effect e = random_effect(d, rng);
        const Effect g = random_effect(d, rng);
        const ComplexMatrix root = op_sqrt(e.op()).matrix();
        const Effect e1(root * g.matrix() * root);
        const Effect e2(root * (id - g.matrix()) * root);
        const Effect rest(id - e.matrix());
        const double fe = f(e);
        const double f1 = f(e1);
        const double f2 = f(e2);
        const double fr = f(rest);
        report.max_additivity_violation = std::max(report.max_additivity_violation, std::abs(fe - f1 - f2));
        report.max_completeness_violation =
            std::max({report.max_completeness_violation, std::abs(fe + fr - 1.0), std::abs(f1 + f2 + fr - 1.0)});

        std::uniform_int_distribution<int> denom(1, 16);
        const int m = denom(rng);
        std::uniform_int_distribution<int> numer(0, m);
        const int n = numer(rng);
        const double q = static_cast<double>(n) / m;
        const Effect scaled(e.matrix() * q);
        report.max_homogeneity_violation = std::max(report.max_homogeneity_violation, std::abs(f(scaled) - q * fe));
    }
    return report;
}

// Field counting ---------------------------------------------------------

FieldDimensionCounts field_dimension_counts(int dim_a, int dim_b) {
    if (dim_a < 2 || dim_b < 2) {
        throw QflError(ErrorCode::InvalidArgument, "field counts need dA, dB >= 2");
    }
    const long a = dim_a;
    const long b = dim_b;
    return FieldDimensionCounts{(a * b) * (a * b), a * b * (a + 1) * (b + 1) / 4, a * b * (a * b + 1) / 2};
}

RealRankReport real_rank_deficiency_demo(int dim_a, int dim_b) {
    const auto counts = field_dimension_counts(dim_a, dim_b);
    const auto t = tolerances();
    const int n = dim_a * dim_b;

    RealRankReport r;
    r.dim_a = dim_a;
    r.dim_b = dim_b;
    r.real_equations = counts.real_sym_product_equations;
    r.real_unknowns = counts.real_sym_unknowns;
    r.complex_unknowns = counts.complex_unknowns;

    const auto sym_a = real_symmetric_basis(dim_a);
    const auto sym_b = real_symmetric_basis(dim_b);
    std::vector<RealMatrix> sym_ab;
    for (const auto &s : real_symmetric_basis(n)) {
        sym_ab.push_back(s.matrix().real() / s.matrix().norm());
    }
    RealMatrix real_design(static_cast<Eigen::Index>(sym_a.size() * sym_b.size()),
                           static_cast<Eigen::Index>(sym_ab.size()));
    std::vector<RealMatrix> products;
    for (const auto &sa : sym_a) {
        for (const auto &sb : sym_b) {
            products.push_back(kron(sa.matrix(), sb.matrix()).real());
        }
    }
    for (std::size_t k = 0; k < products.size(); ++k) {
        for (std::size_t l = 0; l < sym_ab.size(); ++l) {
            real_design(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
                (products[k].array() * sym_ab[l].array()).sum();
        }
    }
    Eigen::JacobiSVD<RealMatrix> svd(real_design, Eigen::ComputeFullV);
    r.real_rank = static_cast<int>((svd.singularValues().array() > t.rank).count());
    // the last right singular vector spans (part of) the null space whenever rank < unknowns
    const RealVector x = svd.matrixV().col(svd.matrixV().cols() - 1);
    RealMatrix witness = RealMatrix::Zero(n, n);
    for (std::size_t l = 0; l < sym_ab.size(); ++l) {
        witness += x(static_cast<Eigen::Index>(l)) * sym_ab[l];
    }
    // fix the overall sign: first entry of largest magnitude positive
    Eigen::Index mi = 0;
    Eigen::Index mj = 0;
    witness.cwiseAbs().maxCoeff(&mi, &mj);
    if (witness(mi, mj) < 0.0) {
        witness = -witness;
    }
    r.kernel_witness = witness / witness.norm();
    for (const auto &p : products) {
        r.witness_design_residual =
            std::max(r.witness_design_residual, std::abs((p.array() * r.kernel_witness.array()).sum()));
    }

    const auto herm_a = operator_basis(dim_a);
    const auto herm_b = operator_basis(dim_b);
    const auto herm_ab = orthonormal_hermitian_basis(n);
    RealMatrix complex_design(static_cast<Eigen::Index>(herm_a.size() * herm_b.size()),
                              static_cast<Eigen::Index>(herm_ab.size()));
    Eigen::Index row = 0;
    for (const auto &ha : herm_a) {
        for (const auto &hb : herm_b) {
            const ComplexMatrix p = kron(ha.matrix(), hb.matrix());
            for (std::size_t l = 0; l < herm_ab.size(); ++l) {
                complex_design(row, static_cast<Eigen::Index>(l)) = trace_pairing(p, herm_ab[l]);
            }
            ++row;
        }
    }
    r.complex_rank = numerical_rank(complex_design, t.rank);
    return r;
}

// POVM trees -------------------------------------------------------------

namespace {

void check_stage(const std::vector<Effect> &effects, int stage, std::optional<int> index) {
    if (effects.empty()) {
        throw QflError(ErrorCode::BadCompleteness, "empty POVM stage", stage, index);
    }
    const int d = effects.front().dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto &e : effects) {
        if (e.dim() != d) {
            throw QflError(ErrorCode::DimensionMismatch, "stage effects of different dimension", stage, index);
        }
        sum += e.matrix();
    }
    const double dev = (sum - ComplexMatrix::Identity(d, d)).norm();
    if (dev > tolerances().completeness) {
        std::ostringstream ss;
        ss << "stage " << stage;
        if (index) {
            ss << " (first-stage outcome " << *index << ")";
        }
        ss << ": ||sum - I||_F = " << dev;
        throw QflError(ErrorCode::BadCompleteness, ss.str(), stage, index);
    }
}

}  // namespace

ValidatedPovmTree validate_povm_tree(const PovmTree &tree) {
    check_stage(tree.first_stage, 1, std::nullopt);
    if (tree.second_stage.size() != tree.first_stage.size()) {
        throw QflError(ErrorCode::DimensionMismatch, "need one conditional POVM per first-stage outcome");
    }
    for (std::size_t i = 0; i < tree.second_stage.size(); ++i) {
        check_stage(tree.second_stage[i], 2, static_cast<int>(i));
    }
    const int lead = tree.first_stage.front().dim();
    const int trail = tree.second_stage.front().front().dim();
    for (const auto &cond : tree.second_stage) {
        if (cond.front().dim() != trail) {
            throw QflError(ErrorCode::DimensionMismatch, "conditional POVMs act on different dimensions");
        }
    }
    ValidatedPovmTree out{tree, 0, 0, {}};
    const bool a_first = tree.order == TreeOrder::AFirst;
    out.dim_a = a_first ? lead : trail;
    out.dim_b = a_first ? trail : lead;
    for (std::size_t i = 0; i < tree.first_stage.size(); ++i) {
        for (std::size_t j = 0; j < tree.second_stage[i].size(); ++j) {
            const Effect &lead_e = tree.first_stage[i];
            const Effect &trail_e = tree.second_stage[i][j];
            if (a_first) {
                out.branches.push_back(TreeBranch{static_cast<int>(i), static_cast<int>(j), lead_e, trail_e});
            } else {
                out.branches.push_back(TreeBranch{static_cast<int>(i), static_cast<int>(j), trail_e, lead_e});
            }
        }
    }
    return out;
}

std::vector<double> tree_joint_probabilities(const ValidatedPovmTree &tree, const DensityOperator &joint_state) {
    if (joint_state.dim() != tree.dim_a * tree.dim_b) {
        throw QflError(ErrorCode::DimensionMismatch, "joint state dimension does not match the tree");
    }
    std::vector<double> p;
    p.reserve(tree.branches.size());
    for (const auto &br : tree.branches) {
        const ComplexMatrix prod = kron(br.effect_a.matrix(), br.effect_b.matrix());
        p.push_back((joint_state.matrix() * prod).trace().real());
    }
    return p;
}

}  // namespace qfl
