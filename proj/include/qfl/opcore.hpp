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

#ifndef QFL_OPCORE_HPP
#define QFL_OPCORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace qfl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Dense Hermitian matrix. Construction rejects inputs whose largest entry of
/// |h - h^dagger| exceeds the Hermiticity tolerance, then stores the exactly
/// Hermitian part (h + h^dagger) / 2.
class HermitianOperator {
   public:
    explicit HermitianOperator(const ComplexMatrix &entries);

    static HermitianOperator identity(int dim);
    static HermitianOperator zero(int dim);

    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    const ComplexMatrix &matrix() const noexcept { return m_; }
    double trace() const { return m_.trace().real(); }

    HermitianOperator operator+(const HermitianOperator &other) const;
    HermitianOperator operator-(const HermitianOperator &other) const;
    HermitianOperator operator*(double s) const;

   private:
    ComplexMatrix m_;
};

/// Positive semidefinite, unit-trace operator.
class DensityOperator {
   public:
    explicit DensityOperator(HermitianOperator op);
    explicit DensityOperator(const ComplexMatrix &entries) : DensityOperator(HermitianOperator(entries)) {}

    /// |psi><psi| for a (not necessarily normalized, nonzero) vector.
    static DensityOperator pure(const ComplexVector &psi);
    static DensityOperator maximally_mixed(int dim);

    int dim() const noexcept { return op_.dim(); }
    const HermitianOperator &op() const noexcept { return op_; }
    const ComplexMatrix &matrix() const noexcept { return op_.matrix(); }

   private:
    HermitianOperator op_;
};

/// Hermitian operator with spectrum in [0, 1].
class Effect {
   public:
    explicit Effect(HermitianOperator op);
    explicit Effect(const ComplexMatrix &entries) : Effect(HermitianOperator(entries)) {}

    static Effect identity(int dim);
    /// |v><v| / <v|v>.
    static Effect projector(const ComplexVector &v);

    int dim() const noexcept { return op_.dim(); }
    const HermitianOperator &op() const noexcept { return op_; }
    const ComplexMatrix &matrix() const noexcept { return op_.matrix(); }

   private:
    HermitianOperator op_;
};

class UnitaryOperator {
   public:
    explicit UnitaryOperator(const ComplexMatrix &entries);

    static UnitaryOperator identity(int dim);

    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    const ComplexMatrix &matrix() const noexcept { return m_; }
    UnitaryOperator adjoint() const;

   private:
    ComplexMatrix m_;
};

/// Eigenvalues sorted descending; column k of `eigenvectors` belongs to
/// eigenvalue k and has its first nonzero component real and positive.
struct Spectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

enum class Subsystem { A, B };

Spectrum eig_hermitian(const HermitianOperator &h);
std::vector<double> eigenvalues(const HermitianOperator &h);

/// Principal square root. Eigenvalues in [-psd tolerance, 0) are clamped to 0;
/// anything more negative raises NotPositive.
HermitianOperator op_sqrt(const HermitianOperator &p);

/// Kronecker product, left factor as the slow index.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
HermitianOperator tensor(const HermitianOperator &a, const HermitianOperator &b);
DensityOperator tensor(const DensityOperator &a, const DensityOperator &b);
HermitianOperator tensor_power(const HermitianOperator &a, int copies);

ComplexMatrix partial_trace(const ComplexMatrix &joint, int dim_a, int dim_b, Subsystem keep);
HermitianOperator partial_trace(const HermitianOperator &joint, int dim_a, int dim_b, Subsystem keep);
DensityOperator partial_trace(const DensityOperator &joint, int dim_a, int dim_b, Subsystem keep);

/// The d^2 trace-orthogonal Hermitian basis: identity followed by the
/// generalized Gell-Mann matrices (symmetric, antisymmetric, diagonal).
/// For d = 2 this is {I, sigma_1, sigma_2, sigma_3}.
std::vector<HermitianOperator> operator_basis(int d);

/// Real-symmetric operator basis of dimension d(d+1)/2 (identity, symmetric
/// Gell-Mann, diagonal Gell-Mann). Every element has real entries.
std::vector<HermitianOperator> real_symmetric_basis(int d);

const HermitianOperator &pauli_x();
const HermitianOperator &pauli_y();
const HermitianOperator &pauli_z();
/// index 0..3 -> I, sigma_1, sigma_2, sigma_3
const HermitianOperator &pauli(int index);

/// Deterministic child seed (splitmix64 of seed and stream index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

ComplexMatrix complex_gaussian_matrix(int rows, int cols, Rng &rng);

/// Uniform double in [0, 1) from the top 53 bits of one draw; unlike the
/// standard distributions its output is the same on every platform.
double uniform_unit(Rng &rng);

/// Index drawn with probability proportional to the nonnegative `weights`.
int sample_index(const std::vector<double> &weights, Rng &rng);

UnitaryOperator haar_random_unitary(int d, std::uint64_t seed);
UnitaryOperator haar_random_unitary(int d, Rng &rng);

/// Ginibre construction G G^dagger / tr with G of shape d x rank.
DensityOperator random_density(int d, int rank, std::uint64_t seed);
DensityOperator random_density(int d, int rank, Rng &rng);

HermitianOperator random_hermitian(int d, Rng &rng);

/// Returns D - k orthonormal columns completing the orthonormal columns of
/// `basis` (D x k) to a basis of C^D. Candidates are the standard basis vectors; at each
/// step the candidate with the largest residual is taken (lowest index on
/// ties), so the result is deterministic.
ComplexMatrix orthonormal_completion(const ComplexMatrix &basis);

double trace_distance(const HermitianOperator &a, const HermitianOperator &b);
double trace_distance(const DensityOperator &a, const DensityOperator &b);
double purity(const DensityOperator &rho);
/// Numerical rank: number of singular values above `threshold`.
int numerical_rank(const RealMatrix &m, double threshold);
int numerical_rank(const ComplexMatrix &m, double threshold);

}  // namespace qfl

#endif
