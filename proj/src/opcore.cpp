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

#include "qfl/opcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qfl/error.hpp"
#include "qfl/tolerance.hpp"

namespace qfl {

namespace {

void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        std::ostringstream ss;
        ss << what << " must be a nonempty square matrix, got " << m.rows() << "x" << m.cols();
        throw QflError(ErrorCode::DimensionMismatch, ss.str());
    }
}

ComplexMatrix from_spectrum(const ComplexMatrix &v, const std::vector<double> &lambda) {
    RealVector l = Eigen::Map<const RealVector>(lambda.data(), static_cast<Eigen::Index>(lambda.size()));
    return v * l.asDiagonal() * v.adjoint();
}

HermitianOperator make_hermitian_unchecked(const ComplexMatrix &m) { return HermitianOperator(0.5 * (m + m.adjoint())); }

}  // namespace

// HermitianOperator ------------------------------------------------------

HermitianOperator::HermitianOperator(const ComplexMatrix &entries) {
    require_square(entries, "Hermitian operator");
    const double dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (dev > tolerances().hermitian) {
        std::ostringstream ss;
        ss << "max |h - h^dagger| = " << dev;
        throw QflError(ErrorCode::NotHermitian, ss.str());
    }
    m_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator HermitianOperator::identity(int dim) {
    return HermitianOperator(ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(int dim) { return HermitianOperator(ComplexMatrix::Zero(dim, dim)); }

HermitianOperator HermitianOperator::operator+(const HermitianOperator &other) const {
    if (other.dim() != dim()) {
        throw QflError(ErrorCode::DimensionMismatch, "operator sum of different dimensions");
    }
    return HermitianOperator(m_ + other.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator &other) const {
    if (other.dim() != dim()) {
        throw QflError(ErrorCode::DimensionMismatch, "operator difference of different dimensions");
    }
    return HermitianOperator(m_ - other.m_);
}

HermitianOperator HermitianOperator::operator*(double s) const { return HermitianOperator(m_ * s); }

// DensityOperator --------------------------------------------------------

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
    const auto t = tolerances();
    const double tr = op_.trace();
    if (std::abs(tr - 1.0) > t.trace) {
        std::ostringstream ss;
        ss << "trace = " << tr;
        throw QflError(ErrorCode::NotADensityOperator, ss.str());
    }
    const auto ev = eigenvalues(op_);
    if (ev.back() < -t.psd) {
        std::ostringstream ss;
        ss << "smallest eigenvalue = " << ev.back();
        throw QflError(ErrorCode::NotADensityOperator, ss.str());
    }
}

DensityOperator DensityOperator::pure(const ComplexVector &psi) {
    const double n = psi.squaredNorm();
    if (!(n > 0.0)) {
        throw QflError(ErrorCode::InvalidArgument, "pure state from a zero vector");
    }
    return DensityOperator(make_hermitian_unchecked(psi * psi.adjoint() / n));
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
    return DensityOperator(HermitianOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim)));
}

// Effect -----------------------------------------------------------------

Effect::Effect(HermitianOperator op) : op_(std::move(op)) {
    const double tol = tolerances().psd;
    const auto ev = eigenvalues(op_);
    if (ev.front() > 1.0 + tol || ev.back() < -tol) {
        std::ostringstream ss;
        ss << "spectrum [" << ev.back() << ", " << ev.front() << "] outside [0, 1]";
        throw QflError(ErrorCode::NotAnEffect, ss.str());
    }
}

Effect Effect::identity(int dim) { return Effect(HermitianOperator::identity(dim)); }

Effect Effect::projector(const ComplexVector &v) {
    const double n = v.squaredNorm();
    if (!(n > 0.0)) {
        throw QflError(ErrorCode::InvalidArgument, "projector onto a zero vector");
    }
    return Effect(make_hermitian_unchecked(v * v.adjoint() / n));
}

// UnitaryOperator --------------------------------------------------------

UnitaryOperator::UnitaryOperator(const ComplexMatrix &entries) : m_(entries) {
    require_square(entries, "unitary");
    const auto n = entries.rows();
    const double dev = (entries.adjoint() * entries - ComplexMatrix::Identity(n, n)).norm();
    if (dev > tolerances().unitary) {
        std::ostringstream ss;
        ss << "||U^dagger U - I||_F = " << dev;
        throw QflError(ErrorCode::NotUnitary, ss.str());
    }
}

UnitaryOperator UnitaryOperator::identity(int dim) { return UnitaryOperator(ComplexMatrix::Identity(dim, dim)); }

UnitaryOperator UnitaryOperator::adjoint() const { return UnitaryOperator(m_.adjoint()); }

// Spectral tools ---------------------------------------------------------

Spectrum eig_hermitian(const HermitianOperator &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
    const auto n = h.dim();
    Spectrum s;
    s.eigenvalues.resize(n);
    s.eigenvectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = n - 1 - k;
        s.eigenvalues[k] = solver.eigenvalues()(src);
        ComplexVector v = solver.eigenvectors().col(src);
        for (int i = 0; i < n; ++i) {
            const double a = std::abs(v(i));
            if (a > 1e-12) {
                v *= std::conj(v(i)) / a;
                break;
            }
        }
        s.eigenvectors.col(k) = v;
    }
    return s;
}

std::vector<double> eigenvalues(const HermitianOperator &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
    const auto n = h.dim();
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) {
        out[k] = solver.eigenvalues()(n - 1 - k);
    }
    return out;
}

HermitianOperator op_sqrt(const HermitianOperator &p) {
    auto s = eig_hermitian(p);
    const double tol = tolerances().psd;
    // eigenvalues at rounding level of the largest one are zeros; their square
    // roots (~1e-8) would otherwise leak into rank-deficient results
    const double top = s.eigenvalues.empty() ? 0.0 : std::abs(s.eigenvalues.front());
    const double noise = 8.0 * p.dim() * std::numeric_limits<double>::epsilon() * top;
    for (double &l : s.eigenvalues) {
        if (l < -tol) {
            std::ostringstream ss;
            ss << "eigenvalue " << l << " below -" << tol;
            throw QflError(ErrorCode::NotPositive, ss.str());
        }
        l = l > noise ? std::sqrt(l) : 0.0;
    }
    return make_hermitian_unchecked(from_spectrum(s.eigenvectors, s.eigenvalues));
}

// Tensor structure -------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

HermitianOperator tensor(const HermitianOperator &a, const HermitianOperator &b) {
    return make_hermitian_unchecked(kron(a.matrix(), b.matrix()));
}

DensityOperator tensor(const DensityOperator &a, const DensityOperator &b) {
    return DensityOperator(tensor(a.op(), b.op()));
}

HermitianOperator tensor_power(const HermitianOperator &a, int copies) {
    if (copies < 1) {
        throw QflError(ErrorCode::InvalidArgument, "tensor power needs at least one copy");
    }
    ComplexMatrix out = a.matrix();
    for (int k = 1; k < copies; ++k) {
        out = kron(out, a.matrix());
    }
    return make_hermitian_unchecked(out);
}

ComplexMatrix partial_trace(const ComplexMatrix &joint, int dim_a, int dim_b, Subsystem keep) {
    if (dim_a < 1 || dim_b < 1 || joint.rows() != static_cast<Eigen::Index>(dim_a) * dim_b ||
        joint.cols() != joint.rows()) {
        std::ostringstream ss;
        ss << "joint dimension " << joint.rows() << " != " << dim_a << " * " << dim_b;
        throw QflError(ErrorCode::DimensionMismatch, ss.str());
    }
    if (keep == Subsystem::A) {
        ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i) {
            for (int j = 0; j < dim_a; ++j) {
                Complex acc = 0.0;
                for (int k = 0; k < dim_b; ++k) {
                    acc += joint(i * dim_b + k, j * dim_b + k);
                }
                out(i, j) = acc;
            }
        }
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
    for (int i = 0; i < dim_a; ++i) {
        out += joint.block(i * dim_b, i * dim_b, dim_b, dim_b);
    }
    return out;
}

HermitianOperator partial_trace(const HermitianOperator &joint, int dim_a, int dim_b, Subsystem keep) {
    return make_hermitian_unchecked(partial_trace(joint.matrix(), dim_a, dim_b, keep));
}

DensityOperator partial_trace(const DensityOperator &joint, int dim_a, int dim_b, Subsystem keep) {
    return DensityOperator(partial_trace(joint.op(), dim_a, dim_b, keep));
}

// Bases ------------------------------------------------------------------

namespace {

ComplexMatrix diagonal_gell_mann(int d, int l) {
    // l = 1..d-1
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    const double c = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) {
        m(j, j) = c;
    }
    m(l, l) = -c * l;
    return m;
}

}  // namespace

std::vector<HermitianOperator> operator_basis(int d) {
    if (d < 1) {
        throw QflError(ErrorCode::InvalidArgument, "operator basis needs d >= 1");
    }
    std::vector<HermitianOperator> out;
    out.reserve(static_cast<size_t>(d) * d);
    out.push_back(HermitianOperator::identity(d));
    const Complex i1(0.0, 1.0);
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix s = ComplexMatrix::Zero(d, d);
            s(j, k) = 1.0;
            s(k, j) = 1.0;
            out.emplace_back(s);
            ComplexMatrix a = ComplexMatrix::Zero(d, d);
            a(j, k) = -i1;
            a(k, j) = i1;
            out.emplace_back(a);
        }
    }
    for (int l = 1; l < d; ++l) {
        out.emplace_back(diagonal_gell_mann(d, l));
    }
    return out;
}

std::vector<HermitianOperator> real_symmetric_basis(int d) {
    if (d < 1) {
        throw QflError(ErrorCode::InvalidArgument, "real symmetric basis needs d >= 1");
    }
    std::vector<HermitianOperator> out;
    out.push_back(HermitianOperator::identity(d));
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix s = ComplexMatrix::Zero(d, d);
            s(j, k) = 1.0;
            s(k, j) = 1.0;
            out.emplace_back(s);
        }
    }
    for (int l = 1; l < d; ++l) {
        out.emplace_back(diagonal_gell_mann(d, l));
    }
    return out;
}

const HermitianOperator &pauli(int index) {
    static const std::vector<HermitianOperator> paulis = [] {
        std::vector<HermitianOperator> p = operator_basis(2);
        return p;
    }();
    if (index < 0 || index > 3) {
        throw QflError(ErrorCode::InvalidArgument, "pauli index must be in 0..3");
    }
    return paulis[index];
}

const HermitianOperator &pauli_x() { return pauli(1); }
const HermitianOperator &pauli_y() { return pauli(2); }
const HermitianOperator &pauli_z() { return pauli(3); }

// Randomness -------------------------------------------------------------

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ComplexMatrix complex_gaussian_matrix(int rows, int cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

UnitaryOperator haar_random_unitary(int d, Rng &rng) {
    if (d < 1) {
        throw QflError(ErrorCode::InvalidArgument, "unitary dimension must be >= 1");
    }
    const ComplexMatrix z = complex_gaussian_matrix(d, d, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (int k = 0; k < d; ++k) {
        const double a = std::abs(r(k, k));
        if (a > 0.0) {
            q.col(k) *= r(k, k) / a;
        }
    }
    return UnitaryOperator(q);
}

double uniform_unit(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int sample_index(const std::vector<double> &weights, Rng &rng) {
    if (weights.empty()) {
        throw QflError(ErrorCode::InvalidArgument, "cannot sample from an empty weight list");
    }
    double total = 0.0;
    for (double w : weights) {
        total += std::max(w, 0.0);
    }
    const double u = uniform_unit(rng) * total;
    double acc = 0.0;
    int last = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) {
            acc += weights[i];
            last = static_cast<int>(i);
            if (u < acc) {
                return last;
            }
        }
    }
    return last;
}

UnitaryOperator haar_random_unitary(int d, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_unitary(d, rng);
}

DensityOperator random_density(int d, int rank, Rng &rng) {
    if (d < 1 || rank < 1 || rank > d) {
        std::ostringstream ss;
        ss << "rank " << rank << " outside 1.." << d;
        throw QflError(ErrorCode::BadRank, ss.str());
    }
    const ComplexMatrix g = complex_gaussian_matrix(d, rank, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityOperator(make_hermitian_unchecked(rho));
}

DensityOperator random_density(int d, int rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(d, rank, rng);
}

HermitianOperator random_hermitian(int d, Rng &rng) {
    const ComplexMatrix g = complex_gaussian_matrix(d, d, rng);
    return make_hermitian_unchecked(g + g.adjoint());
}

ComplexMatrix orthonormal_completion(const ComplexMatrix &basis) {
    const auto dim = basis.rows();
    const auto have = basis.cols();
    ComplexMatrix q(dim, dim);
    q.leftCols(have) = basis;
    std::vector<bool> used(dim, false);
    for (Eigen::Index filled = have; filled < dim; ++filled) {
        Eigen::Index best = -1;
        double best_norm = -1.0;
        ComplexVector best_vec;
        for (Eigen::Index c = 0; c < dim; ++c) {
            if (used[c]) {
                continue;
            }
            ComplexVector v = ComplexVector::Unit(dim, c);
            for (int pass = 0; pass < 2; ++pass) {
                v -= q.leftCols(filled) * (q.leftCols(filled).adjoint() * v);
            }
            const double n = v.norm();
            if (n > best_norm + 1e-12) {
                best = c;
                best_norm = n;
                best_vec = v;
            }
        }
        used[best] = true;
        q.col(filled) = best_vec / best_norm;
    }
    return q.rightCols(dim - have);
}

// Scalars ----------------------------------------------------------------

double trace_distance(const HermitianOperator &a, const HermitianOperator &b) {
    const auto ev = eigenvalues(a - b);
    double s = 0.0;
    for (double l : ev) {
        s += std::abs(l);
    }
    return 0.5 * s;
}

double trace_distance(const DensityOperator &a, const DensityOperator &b) { return trace_distance(a.op(), b.op()); }

double purity(const DensityOperator &rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

int numerical_rank(const RealMatrix &m, double threshold) {
    if (m.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<RealMatrix> svd(m);
    const auto &s = svd.singularValues();
    return static_cast<int>((s.array() > threshold).count());
}

int numerical_rank(const ComplexMatrix &m, double threshold) {
    if (m.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto &s = svd.singularValues();
    return static_cast<int>((s.array() > threshold).count());
}

}  // namespace qfl
