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

#ifndef QFL_GLEASON_HPP
#define QFL_GLEASON_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qfl/opcore.hpp"

namespace qfl {

/// Effects of uniform dimension summing to the identity (Frobenius error at
/// most the completeness tolerance).
class Povm {
   public:
    explicit Povm(std::vector<Effect> effects);

    int dim() const noexcept { return effects_.front().dim(); }
    std::size_t size() const noexcept { return effects_.size(); }
    const std::vector<Effect> &effects() const noexcept { return effects_; }
    const Effect &operator[](std::size_t b) const { return effects_.at(b); }

   private:
    std::vector<Effect> effects_;
};

Povm validate_povm(std::vector<Effect> effects);
/// Builds each effect first, so a bad spectrum is reported as NotAnEffect
/// with the offending index.
Povm validate_povm(const std::vector<ComplexMatrix> &effects);

/// Draws `outcomes` Ginibre positive operators G_b and normalizes them as
/// S^{-1/2} G_b S^{-1/2} with S = sum_b G_b.
Povm random_povm(int d, int outcomes, Rng &rng);
/// U diag(u) U^dagger with Haar U and u uniform in [0, 1].
Effect random_effect(int d, Rng &rng);

/// Informationally complete effect set: I together with (I + H/||H||)/2 for
/// every non-identity element H of `operator_basis(d)`.
std::vector<Effect> spanning_effects(int d);

struct FrameFunctionSample {
    FrameFunctionSample(Effect effect, double value);

    Effect effect;
    double value;
};

using FrameFunction = std::function<double(const Effect &)>;

/// E -> tr(rho E). Raises DimensionMismatch when called on an effect of the
/// wrong dimension.
FrameFunction frame_from_state(DensityOperator rho);

struct Reconstruction {
    DensityOperator state;
    double residual;
    /// true when eigenvalue clamping / renormalization was applied.
    bool repaired;
    double min_singular_value;
};

/// Least-squares solve of tr(rho E_k) = f_k over the Hermitian operators.
Reconstruction reconstruct_state(std::span<const FrameFunctionSample> samples);

struct FrameLawReport {
    int trials = 0;
    double max_additivity_violation = 0.0;
    double max_homogeneity_violation = 0.0;
    double max_completeness_violation = 0.0;
};

/// Drives `f` with seeded random effects E, fine-grainings
/// E = E^{1/2} G E^{1/2} + E^{1/2} (I - G) E^{1/2}, and rational scalings n/m
/// with m <= 16.
FrameLawReport check_frame_function_laws(const FrameFunction &f, int d, int trials, std::uint64_t seed);

struct BipartiteSample {
    BipartiteSample(Effect effect_a, Effect effect_b, double value);

    Effect effect_a;
    Effect effect_b;
    double value;
};

Reconstruction reconstruct_bipartite(std::span<const BipartiteSample> samples, int dim_a, int dim_b);

struct FieldDimensionCounts {
    long complex_unknowns;
    long real_sym_product_equations;
    long real_sym_unknowns;
};

FieldDimensionCounts field_dimension_counts(int dim_a, int dim_b);

struct RealRankReport {
    int dim_a = 0;
    int dim_b = 0;
    int real_rank = 0;
    long real_equations = 0;
    long real_unknowns = 0;
    int complex_rank = 0;
    long complex_unknowns = 0;
    /// Unit-Frobenius real-symmetric operator on AB orthogonal to every
    /// product of real-symmetric operators.
    RealMatrix kernel_witness;
    /// max |tr(K (S_i x T_j))| over the product basis.
    double witness_design_residual = 0.0;
};

RealRankReport real_rank_deficiency_demo(int dim_a, int dim_b);

enum class TreeOrder { AFirst, BFirst };

/// Two-stage local measurement. The first stage acts on the leading system
/// (A for AFirst, B for BFirst); second_stage[i] is measured on the trailing
/// system after first-stage outcome i.
struct PovmTree {
    TreeOrder order;
    std::vector<Effect> first_stage;
    std::vector<std::vector<Effect>> second_stage;
};

/// Joint outcome (i, j) of a tree as a product effect E_A (x) E_B.
struct TreeBranch {
    int first;
    int second;
    Effect effect_a;
    Effect effect_b;
};

struct ValidatedPovmTree {
    PovmTree tree;
    int dim_a;
    int dim_b;
    std::vector<TreeBranch> branches;
};

/// Raises BadCompleteness with stage() = 1 or 2 (and index() = the
/// first-stage outcome for stage 2).
ValidatedPovmTree validate_povm_tree(const PovmTree &tree);

std::vector<double> tree_joint_probabilities(const ValidatedPovmTree &tree, const DensityOperator &joint_state);

}  // namespace qfl

#endif
