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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfl/error.hpp"
#include "qfl/fixtures.hpp"
#include "qfl/gleason.hpp"

namespace qfl {
namespace {

template <class F>
QflError error_of(F &&f) {
    try {
        f();
    } catch (const QflError &e) {
        return e;
    }
    ADD_FAILURE() << "no QflError thrown";
    return QflError(ErrorCode::InvalidArgument, "none");
}

std::vector<FrameFunctionSample> samples_for(const HermitianOperator &h, const std::vector<Effect> &effects) {
    std::vector<FrameFunctionSample> out;
    for (const auto &e : effects) {
        out.emplace_back(e, (h.matrix() * e.matrix()).trace().real());
    }
    return out;
}

/// 1/2 (I + r . sigma)
HermitianOperator bloch(double x, double y, double z) {
    return (HermitianOperator::identity(2) + pauli_x() * x + pauli_y() * y + pauli_z() * z) * 0.5;
}

TEST(ValidatePovm, StandardAndNonOrthogonal) {
    EXPECT_EQ(fixtures::computational_povm(2).size(), 2u);
    EXPECT_NO_THROW(validate_povm({Effect(HermitianOperator::identity(2) * 0.5),
                                   Effect(HermitianOperator::identity(2) * 0.5)}));
    EXPECT_EQ(fixtures::trine_povm().size(), 3u);
    EXPECT_EQ(fixtures::tetrahedral_povm().size(), 4u);
}

TEST(ValidatePovm, NineProductStatesFormAPovm) {
    const Povm p = fixtures::nine_product_povm();
    EXPECT_EQ(p.dim(), 9);
    EXPECT_EQ(p.size(), 9u);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            const double overlap = (p[i].matrix() * p[j].matrix()).trace().real();
            EXPECT_NEAR(overlap, i == j ? 1.0 : 0.0, 1e-12);
        }
    }
}

TEST(ValidatePovm, ReportsOffendingEffect) {
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2) * 0.5;
    bad(0, 0) = 1.5;
    const QflError e = error_of([&] { validate_povm(std::vector<ComplexMatrix>{ComplexMatrix::Identity(2, 2), bad}); });
    EXPECT_EQ(e.code(), ErrorCode::NotAnEffect);
    ASSERT_TRUE(e.index().has_value());
    EXPECT_EQ(*e.index(), 1);
}

TEST(ValidatePovm, Completeness) {
    const Effect half(HermitianOperator::identity(2) * 0.45);
    EXPECT_EQ(error_of([&] { validate_povm({half, half}); }).code(), ErrorCode::BadCompleteness);
    EXPECT_EQ(error_of([&] { validate_povm(std::vector<Effect>{}); }).code(), ErrorCode::InvalidArgument);
    EXPECT_EQ(error_of([&] { validate_povm({Effect::identity(2), Effect(HermitianOperator::zero(3))}); }).code(),
              ErrorCode::DimensionMismatch);
    // just inside / outside the 1e-9 Frobenius band
    const Effect a(HermitianOperator::identity(2) * (0.5 + 3e-10));
    EXPECT_NO_THROW(validate_povm({a, Effect(HermitianOperator::identity(2) * 0.5)}));
    const Effect b(HermitianOperator::identity(2) * (0.5 + 1e-9));
    EXPECT_THROW(validate_povm({b, Effect(HermitianOperator::identity(2) * 0.5)}), QflError);
}

TEST(RandomPovm, IsValidAndSeeded) {
    for (int d = 1; d <= 4; ++d) {
        for (int n = 1; n <= 8; ++n) {
            Rng rng(d * 100 + n);
            const Povm p = random_povm(d, n, rng);
            ComplexMatrix sum = ComplexMatrix::Zero(d, d);
            for (const auto &e : p.effects()) {
                sum += e.matrix();
            }
            EXPECT_LE((sum - ComplexMatrix::Identity(d, d)).norm(), 1e-12);
        }
    }
}

TEST(FrameFromState, BasicValues) {
    const DensityOperator zero = DensityOperator::pure(ComplexVector::Unit(2, 0));
    const FrameFunction f = frame_from_state(zero);
    EXPECT_NEAR(f(Effect::projector(ComplexVector::Unit(2, 0))), 1.0, 1e-15);
    Rng rng(1);
    const FrameFunction g = frame_from_state(random_density(3, 3, rng));
    EXPECT_NEAR(g(Effect::identity(3)), 1.0, 1e-12);
    const Effect e1(HermitianOperator::identity(3) * 0.2);
    const Effect e2 = random_effect(3, rng);
    const Effect half2(e2.op() * 0.5);
    EXPECT_NEAR(g(Effect(e1.op() + half2.op())), g(e1) + g(half2), 1e-12);
    EXPECT_EQ(error_of([&] { f(Effect::identity(3)); }).code(), ErrorCode::DimensionMismatch);
}

TEST(SampleTypes, ValueRange) {
    EXPECT_NO_THROW(FrameFunctionSample(Effect::identity(2), 1.0 + 5e-13));
    EXPECT_NO_THROW(FrameFunctionSample(Effect::identity(2), -5e-13));
    EXPECT_THROW(FrameFunctionSample(Effect::identity(2), 1.01), QflError);
    EXPECT_THROW(BipartiteSample(Effect::identity(2), Effect::identity(2), -0.1), QflError);
}

TEST(SpanningEffects, AreEffectsAndSpan) {
    for (int d = 1; d <= 5; ++d) {
        const auto effects = spanning_effects(d);
        EXPECT_EQ(static_cast<int>(effects.size()), d * d);
    }
}

TEST(Reconstruct, RoundTripOnRandomStates) {
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + trial % 4;
        const DensityOperator rho = random_density(d, 1 + trial % d, 500 + trial);
        const auto samples = samples_for(rho.op(), spanning_effects(d));
        const Reconstruction r = reconstruct_state(samples);
        EXPECT_LE((r.state.matrix() - rho.matrix()).norm(), 1e-9) << "d=" << d;
        EXPECT_LE(r.residual, 1e-10);
        EXPECT_GT(r.min_singular_value, 1e-8);
    }
}

TEST(Reconstruct, MaximallyMixed) {
    for (int d = 2; d <= 4; ++d) {
        const auto r = reconstruct_state(samples_for(DensityOperator::maximally_mixed(d).op(), spanning_effects(d)));
        EXPECT_LE((r.state.matrix() - ComplexMatrix::Identity(d, d) / d).norm(), 1e-12);
        EXPECT_FALSE(r.repaired);
    }
}

TEST(Reconstruct, OverdeterminedRandomEffects) {
    Rng rng(77);
    const DensityOperator rho = random_density(3, 2, rng);
    std::vector<Effect> effects;
    for (int k = 0; k < 30; ++k) {
        effects.push_back(random_effect(3, rng));
    }
    const auto r = reconstruct_state(samples_for(rho.op(), effects));
    EXPECT_LE((r.state.matrix() - rho.matrix()).norm(), 1e-9);
}

TEST(Reconstruct, TooFewSamples) {
    auto effects = spanning_effects(2);
    effects.pop_back();
    const auto samples = samples_for(DensityOperator::maximally_mixed(2).op(), effects);
    EXPECT_EQ(error_of([&] { reconstruct_state(samples); }).code(), ErrorCode::NotInformationallyComplete);
}

TEST(Reconstruct, InconsistentSamples) {
    auto effects = spanning_effects(2);
    effects.push_back(Effect::identity(2));  // duplicate of sample 0 with a different value
    auto samples = samples_for(DensityOperator::maximally_mixed(2).op(), effects);
    samples.back().value = 0.5;
    EXPECT_EQ(error_of([&] { reconstruct_state(samples); }).code(), ErrorCode::InconsistentSamples);
}

TEST(Reconstruct, NonPositiveSolution) {
    const double s = 1.1 / std::sqrt(3.0);
    const auto samples = samples_for(bloch(s, s, s), spanning_effects(2));
    EXPECT_EQ(error_of([&] { reconstruct_state(samples); }).code(), ErrorCode::NotAState);
}

TEST(Reconstruct, TinyNegativityIsRepaired) {
    const double s = (1.0 + 2e-7) / std::sqrt(3.0);
    const auto samples = samples_for(bloch(s, s, s), spanning_effects(2));
    const auto r = reconstruct_state(samples);
    EXPECT_TRUE(r.repaired);
    EXPECT_GE(eigenvalues(r.state.op()).back(), 0.0);
    EXPECT_NEAR(r.state.matrix().trace().real(), 1.0, 1e-12);
}

TEST(FrameLaws, StateFramesAreLinear) {
    for (int d = 2; d <= 4; ++d) {
        const FrameLawReport r = check_frame_function_laws(frame_from_state(random_density(d, d, 9 + d)), d, 300, 3);
        EXPECT_EQ(r.trials, 300);
        EXPECT_LE(r.max_additivity_violation, 1e-10);
        EXPECT_LE(r.max_homogeneity_violation, 1e-10);
        EXPECT_LE(r.max_completeness_violation, 1e-10);
    }
}

TEST(FrameLaws, PlantedNonlinearFrameIsCaught) {
    const int d = 3;
    const FrameFunction f = [d](const Effect &e) { return (e.matrix() * e.matrix()).trace().real() / d; };
    const FrameLawReport r = check_frame_function_laws(f, d, 200, 1);
    EXPECT_GT(r.max_additivity_violation, 0.01);
}

TEST(FrameLaws, ReportIsSeeded) {
    const FrameFunction f = [](const Effect &e) { return std::pow(e.matrix().trace().real() / 2.0, 2); };
    const auto a = check_frame_function_laws(f, 2, 50, 17);
    const auto b = check_frame_function_laws(f, 2, 50, 17);
    EXPECT_EQ(a.max_additivity_violation, b.max_additivity_violation);
    EXPECT_EQ(a.max_homogeneity_violation, b.max_homogeneity_violation);
    EXPECT_THROW(check_frame_function_laws(f, 2, 0, 1), QflError);
}

std::vector<BipartiteSample> bipartite_samples_for(const ComplexMatrix &rho, int da, int db) {
    std::vector<BipartiteSample> out;
    for (const auto &ea : spanning_effects(da)) {
        for (const auto &eb : spanning_effects(db)) {
            out.emplace_back(ea, eb, (rho * kron(ea.matrix(), eb.matrix())).trace().real());
        }
    }
    return out;
}

TEST(Bipartite, ProductAndBellStates) {
    const DensityOperator a = random_density(2, 2, 1);
    const DensityOperator b = random_density(3, 1, 2);
    const DensityOperator ab = tensor(a, b);
    auto r = reconstruct_bipartite(bipartite_samples_for(ab.matrix(), 2, 3), 2, 3);
    EXPECT_LE((r.state.matrix() - ab.matrix()).norm(), 1e-9);

    const DensityOperator bell = DensityOperator::pure(fixtures::bell_phi_plus());
    r = reconstruct_bipartite(bipartite_samples_for(bell.matrix(), 2, 2), 2, 2);
    EXPECT_LE((r.state.matrix() - bell.matrix()).norm(), 1e-9);
}

TEST(Bipartite, NonPositiveOperator) {
    // I/4 + 0.1 sum_i sigma_i (x) sigma_i: unit trace, singlet eigenvalue -0.05,
    // every product-effect value inside [0, 1].
    ComplexMatrix target = ComplexMatrix::Identity(4, 4) / 4.0;
    for (int i = 1; i <= 3; ++i) {
        target += 0.1 * kron(pauli(i).matrix(), pauli(i).matrix());
    }
    ASSERT_NEAR(eigenvalues(HermitianOperator(target)).back(), -0.05, 1e-12);
    const auto samples = bipartite_samples_for(target, 2, 2);
    EXPECT_EQ(error_of([&] { reconstruct_bipartite(samples, 2, 2); }).code(), ErrorCode::NotAState);
}

TEST(Bipartite, LocalEffectsOnlyIsIncomplete) {
    std::vector<BipartiteSample> samples;
    for (const auto &ea : spanning_effects(2)) {
        samples.emplace_back(ea, Effect::identity(2), 0.5);
    }
    EXPECT_EQ(error_of([&] { reconstruct_bipartite(samples, 2, 2); }).code(), ErrorCode::NotInformationallyComplete);
}

TEST(FieldCounts, AgreeWithFormulas) {
    auto c = field_dimension_counts(2, 2);
    EXPECT_EQ(c.complex_unknowns, 16);
    EXPECT_EQ(c.real_sym_product_equations, 9);
    EXPECT_EQ(c.real_sym_unknowns, 10);
    c = field_dimension_counts(2, 3);
    EXPECT_EQ(c.complex_unknowns, 36);
    EXPECT_EQ(c.real_sym_product_equations, 18);
    EXPECT_EQ(c.real_sym_unknowns, 21);
    c = field_dimension_counts(3, 3);
    EXPECT_EQ(c.complex_unknowns, 81);
    EXPECT_EQ(c.real_sym_product_equations, 36);
    EXPECT_EQ(c.real_sym_unknowns, 45);
    EXPECT_THROW(field_dimension_counts(1, 2), QflError);
    // counts multiply: real-symmetric dimension n(n+1)/2 on each side
    for (int a = 2; a <= 5; ++a) {
        for (int b = 2; b <= 5; ++b) {
            const auto k = field_dimension_counts(a, b);
            EXPECT_EQ(k.real_sym_product_equations, (a * (a + 1) / 2) * (b * (b + 1) / 2));
            EXPECT_LT(k.real_sym_product_equations, k.real_sym_unknowns);
        }
    }
}

TEST(RealRank, QubitPairWitnessIsSigmaYSigmaY) {
    const RealRankReport r = real_rank_deficiency_demo(2, 2);
    EXPECT_EQ(r.real_rank, 9);
    EXPECT_EQ(r.real_unknowns, 10);
    EXPECT_EQ(r.complex_rank, 16);
    EXPECT_EQ(r.complex_unknowns, 16);
    const RealMatrix yy = kron(pauli_y().matrix(), pauli_y().matrix()).real();
    EXPECT_NEAR(std::abs((r.kernel_witness.array() * yy.array()).sum()) / yy.norm(), 1.0, 1e-10);
    EXPECT_LE(r.witness_design_residual, 1e-12);
    EXPECT_NEAR((r.kernel_witness - r.kernel_witness.transpose()).norm(), 0.0, 1e-15);

    std::mt19937_64 rng(123);
    for (int k = 0; k < 1000; ++k) {
        const RealMatrix e = oracle::kron(oracle::random_real_effect(2, rng).cast<Complex>(),
                                          oracle::random_real_effect(2, rng).cast<Complex>())
                                 .real();
        ASSERT_LE(std::abs((r.kernel_witness.array() * e.array()).sum()), 1e-12);
    }
}

TEST(RealRank, LargerPairsAreDeficient) {
    for (auto [a, b] : {std::pair{2, 3}, std::pair{3, 3}}) {
        const RealRankReport r = real_rank_deficiency_demo(a, b);
        EXPECT_EQ(r.real_rank, r.real_equations);
        EXPECT_LT(r.real_rank, r.real_unknowns);
        EXPECT_EQ(r.complex_rank, r.complex_unknowns);
        EXPECT_LE(r.witness_design_residual, 1e-10);
    }
}

PovmTree simple_tree(double second_scale) {
    Rng rng(2);
    const Effect e = random_effect(2, rng);
    const Povm c0 = random_povm(3, 3, rng);
    std::vector<Effect> c1 = {Effect(HermitianOperator::identity(3) * (0.5 * second_scale)),
                              Effect(HermitianOperator::identity(3) * (0.5 * second_scale))};
    return PovmTree{TreeOrder::AFirst, {e, Effect(HermitianOperator::identity(2) - e.op())}, {c0.effects(), c1}};
}

TEST(PovmTree, JointProbabilitiesSumToOne) {
    const ValidatedPovmTree t = validate_povm_tree(simple_tree(1.0));
    EXPECT_EQ(t.dim_a, 2);
    EXPECT_EQ(t.dim_b, 3);
    EXPECT_EQ(t.branches.size(), 5u);
    Rng rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = tree_joint_probabilities(t, random_density(6, 1 + trial % 6, rng));
        double total = 0.0;
        for (double v : p) {
            EXPECT_GE(v, 0.0);
            total += v;
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(PovmTree, BFirstOrder) {
    Rng rng(12);
    const Povm first = random_povm(2, 2, rng);
    PovmTree tree{TreeOrder::BFirst, first.effects(), {random_povm(3, 2, rng).effects(), random_povm(3, 4, rng).effects()}};
    const ValidatedPovmTree t = validate_povm_tree(tree);
    EXPECT_EQ(t.dim_a, 3);
    EXPECT_EQ(t.dim_b, 2);
    const auto p = tree_joint_probabilities(t, random_density(6, 6, rng));
    double total = 0.0;
    for (double v : p) {
        total += v;
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(PovmTree, IncompleteStagesAreLocated) {
    const QflError e2 = error_of([] { validate_povm_tree(simple_tree(0.9)); });
    EXPECT_EQ(e2.code(), ErrorCode::BadCompleteness);
    EXPECT_EQ(e2.stage(), 2);
    EXPECT_EQ(e2.index(), 1);

    PovmTree bad = simple_tree(1.0);
    bad.first_stage[1] = Effect(bad.first_stage[1].op() * 0.5);
    const QflError e1 = error_of([&] { validate_povm_tree(bad); });
    EXPECT_EQ(e1.code(), ErrorCode::BadCompleteness);
    EXPECT_EQ(e1.stage(), 1);
}

}  // namespace
}  // namespace qfl
