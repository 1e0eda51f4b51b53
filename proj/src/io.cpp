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

#include "qfl/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qfl/tolerance.hpp"

namespace qfl::io {

namespace {

[[noreturn]] void parse_fail(const std::string &msg) { throw QflError(ErrorCode::ParseError, msg); }

const Json &field(const Json &j, const char *key) {
    if (!j.is_object()) {
        parse_fail(std::string("expected an object with key \"") + key + "\"");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        parse_fail(std::string("missing key \"") + key + "\"");
    }
    return *it;
}

int int_field(const Json &j, const char *key) {
    const Json &v = field(j, key);
    if (!v.is_number_integer()) {
        parse_fail(std::string("\"") + key + "\" must be an integer");
    }
    return v.get<int>();
}

double number(const Json &v, const char *what) {
    if (!v.is_number()) {
        parse_fail(std::string(what) + " must be a number");
    }
    return v.get<double>();
}

const Json &array_field(const Json &j, const char *key) {
    const Json &v = field(j, key);
    if (!v.is_array()) {
        parse_fail(std::string("\"") + key + "\" must be an array");
    }
    return v;
}

Json num(double x) { return Json(round12(x)); }

Json real_rows(const RealMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(num(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json numbers(const std::vector<double> &v) {
    Json out = Json::array();
    for (double x : v) {
        out.push_back(num(x));
    }
    return out;
}

Json vector_to_json(const ComplexVector &v) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(num(v(i).real()));
        im.push_back(num(v(i).imag()));
    }
    Json out;
    out["dim"] = v.size();
    out["re"] = std::move(re);
    out["im"] = std::move(im);
    return out;
}

}  // namespace

double round12(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

Json parse_json(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        parse_fail(std::string("invalid JSON: ") + e.what());
    }
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        parse_fail("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

std::string dump(const Json &j) { return j.dump(2); }

ComplexMatrix matrix_from_json(const Json &j) {
    const int d = int_field(j, "dim");
    if (d < 1) {
        parse_fail("\"dim\" must be positive");
    }
    const Json &re = array_field(j, "re");
    const Json &im = array_field(j, "im");
    if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d) {
        parse_fail("\"re\" and \"im\" must have dim rows");
    }
    ComplexMatrix m(d, d);
    for (int r = 0; r < d; ++r) {
        if (!re[r].is_array() || !im[r].is_array() || static_cast<int>(re[r].size()) != d ||
            static_cast<int>(im[r].size()) != d) {
            parse_fail("row " + std::to_string(r) + " must have dim entries");
        }
        for (int c = 0; c < d; ++c) {
            m(r, c) = Complex(number(re[r][c], "matrix entry"), number(im[r][c], "matrix entry"));
        }
    }
    return m;
}

Json matrix_to_json(const ComplexMatrix &m) {
    Json out;
    out["dim"] = m.rows();
    out["re"] = real_rows(m.real());
    out["im"] = real_rows(m.imag());
    return out;
}

HermitianOperator hermitian_from_json(const Json &j) { return HermitianOperator(matrix_from_json(j)); }
DensityOperator density_from_json(const Json &j) {
    const Json &re = array_field(j, "re");
    if (!re.empty() && !re[0].is_array()) {
        return DensityOperator::pure(pure_state_from_json(j));
    }
    return DensityOperator(hermitian_from_json(j));
}
Effect effect_from_json(const Json &j) { return Effect(hermitian_from_json(j)); }
UnitaryOperator unitary_from_json(const Json &j) { return UnitaryOperator(matrix_from_json(j)); }

ComplexVector pure_state_from_json(const Json &j) {
    const Json &re = array_field(j, "re");
    if (!re.empty() && re[0].is_array()) {
        const DensityOperator rho = density_from_json(j);
        const Spectrum s = eig_hermitian(rho.op());
        if (s.eigenvalues.size() > 1 && s.eigenvalues[1] > tolerances().rank) {
            throw QflError(ErrorCode::NotAState, "teleportation input must be a pure state");
        }
        return s.eigenvectors.col(0);
    }
    const int d = int_field(j, "dim");
    const Json &im = array_field(j, "im");
    if (d < 1 || static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d) {
        parse_fail("amplitude arrays must have dim entries");
    }
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) {
        v(i) = Complex(number(re[i], "amplitude"), number(im[i], "amplitude"));
    }
    const double norm = v.norm();
    if (!(norm > 0.0)) {
        throw QflError(ErrorCode::NotAState, "zero state vector");
    }
    return v / norm;
}

Povm povm_from_json(const Json &j) {
    const int d = int_field(j, "dim");
    std::vector<ComplexMatrix> effects;
    for (const Json &e : array_field(j, "effects")) {
        effects.push_back(matrix_from_json(e));
        if (effects.back().rows() != d) {
            throw QflError(ErrorCode::DimensionMismatch, "effect dimension differs from \"dim\"", std::nullopt,
                           static_cast<int>(effects.size() - 1));
        }
    }
    if (effects.empty()) {
        parse_fail("\"effects\" is empty");
    }
    return validate_povm(effects);
}

Json povm_to_json(const Povm &povm) {
    Json out;
    out["dim"] = povm.dim();
    Json effects = Json::array();
    for (const auto &e : povm.effects()) {
        effects.push_back(matrix_to_json(e.matrix()));
    }
    out["effects"] = std::move(effects);
    return out;
}

KrausChannelSet kraus_from_json(const Json &j) {
    const int d = int_field(j, "dim");
    std::vector<std::vector<ComplexMatrix>> outcomes;
    for (const Json &o : array_field(j, "outcomes")) {
        if (!o.is_array()) {
            parse_fail("each outcome must be an array of operators");
        }
        std::vector<ComplexMatrix> ops;
        for (const Json &a : o) {
            ops.push_back(matrix_from_json(a));
        }
        outcomes.push_back(std::move(ops));
    }
    return KrausChannelSet(d, std::move(outcomes));
}

Json kraus_to_json(const KrausChannelSet &channel) {
    Json out;
    out["dim"] = channel.dim();
    Json outcomes = Json::array();
    for (const auto &o : channel.outcomes()) {
        Json ops = Json::array();
        for (const auto &a : o) {
            ops.push_back(matrix_to_json(a));
        }
        outcomes.push_back(std::move(ops));
    }
    out["outcomes"] = std::move(outcomes);
    return out;
}

Dilation dilation_from_json(const Json &j) {
    std::vector<HermitianOperator> projectors;
    for (const Json &p : array_field(j, "projectors")) {
        projectors.push_back(hermitian_from_json(p));
    }
    Dilation d(density_from_json(field(j, "ancilla_state")), unitary_from_json(field(j, "unitary")),
               std::move(projectors));
    if (d.system_dim() != int_field(j, "system_dim")) {
        throw QflError(ErrorCode::DimensionMismatch, "\"system_dim\" disagrees with the unitary and ancilla");
    }
    return d;
}

Json dilation_to_json(const Dilation &dilation) {
    Json out;
    out["system_dim"] = dilation.system_dim();
    out["ancilla_dim"] = dilation.ancilla_dim();
    out["ancilla_state"] = matrix_to_json(dilation.ancilla_state.matrix());
    out["unitary"] = matrix_to_json(dilation.unitary.matrix());
    Json projectors = Json::array();
    for (const auto &p : dilation.projectors) {
        projectors.push_back(matrix_to_json(p.matrix()));
    }
    out["projectors"] = std::move(projectors);
    return out;
}

Ensemble ensemble_from_json(const Json &j) {
    std::vector<double> weights;
    for (const Json &w : array_field(j, "weights")) {
        weights.push_back(number(w, "weight"));
    }
    std::vector<DensityOperator> states;
    for (const Json &s : array_field(j, "states")) {
        states.push_back(density_from_json(s));
    }
    if (states.empty()) {
        parse_fail("\"states\" is empty");
    }
    return Ensemble(std::move(weights), std::move(states));
}

Json ensemble_to_json(const Ensemble &ensemble) {
    Json out;
    out["weights"] = numbers(ensemble.weights());
    Json states = Json::array();
    for (const auto &s : ensemble.states()) {
        states.push_back(matrix_to_json(s.matrix()));
    }
    out["states"] = std::move(states);
    return out;
}

std::vector<FrameFunctionSample> samples_from_json(const Json &j) {
    const int d = int_field(j, "dim");
    std::vector<FrameFunctionSample> out;
    for (const Json &s : array_field(j, "samples")) {
        Effect e = effect_from_json(field(s, "effect"));
        if (e.dim() != d) {
            throw QflError(ErrorCode::DimensionMismatch, "sample effect dimension differs from \"dim\"");
        }
        out.emplace_back(std::move(e), number(field(s, "value"), "sample value"));
    }
    return out;
}

Json samples_to_json(const std::vector<FrameFunctionSample> &samples) {
    Json out;
    out["dim"] = samples.empty() ? 0 : samples.front().effect.dim();
    Json list = Json::array();
    for (const auto &s : samples) {
        Json item;
        item["effect"] = matrix_to_json(s.effect.matrix());
        item["value"] = num(s.value);
        list.push_back(std::move(item));
    }
    out["samples"] = std::move(list);
    return out;
}

BipartiteSampleSet bipartite_samples_from_json(const Json &j) {
    BipartiteSampleSet out{int_field(j, "dimA"), int_field(j, "dimB"), {}};
    for (const Json &s : array_field(j, "samples")) {
        out.samples.emplace_back(effect_from_json(field(s, "effect_a")), effect_from_json(field(s, "effect_b")),
                                 number(field(s, "value"), "sample value"));
    }
    return out;
}

Json bipartite_samples_to_json(const BipartiteSampleSet &set) {
    Json out;
    out["dimA"] = set.dim_a;
    out["dimB"] = set.dim_b;
    Json list = Json::array();
    for (const auto &s : set.samples) {
        Json item;
        item["effect_a"] = matrix_to_json(s.effect_a.matrix());
        item["effect_b"] = matrix_to_json(s.effect_b.matrix());
        item["value"] = num(s.value);
        list.push_back(std::move(item));
    }
    out["samples"] = std::move(list);
    return out;
}

Json reconstruction_to_json(const Reconstruction &r) {
    Json out;
    out["state"] = matrix_to_json(r.state.matrix());
    out["residual"] = num(r.residual);
    out["repaired"] = r.repaired;
    out["min_singular_value"] = num(r.min_singular_value);
    return out;
}

Json uncertainty_to_json(const UncertaintyReport &r) {
    Json out;
    out["von_neumann_bits"] = num(r.von_neumann_bits);
    out["subentropy_bits"] = num(r.subentropy_bits);
    out["mean_entropy_bits"] = num(r.mean_entropy_bits);
    return out;
}

Json outcomes_to_json(const std::vector<double> &probabilities, const std::vector<Outcome> &outcomes) {
    Json out;
    out["probabilities"] = numbers(probabilities);
    Json posts = Json::array();
    for (const auto &o : outcomes) {
        posts.push_back(o.state ? matrix_to_json(o.state->matrix()) : Json(nullptr));
    }
    out["posterior_states"] = std::move(posts);
    return out;
}

Json teleportation_to_json(const TeleportationTranscript &t) {
    static const char *kBell[4] = {"Phi+", "Phi-", "Psi+", "Psi-"};
    Json out;
    out["input"] = vector_to_json(t.input);
    Json probs;
    for (int m = 0; m < 4; ++m) {
        probs[kBell[m]] = num(t.bell_probabilities[m]);
    }
    out["bell_probabilities"] = std::move(probs);
    out["outcome"] = kBell[t.outcome];
    out["correction"] = t.correction;
    out["pre_correction"] = matrix_to_json(t.pre_correction.matrix());
    out["final_state"] = matrix_to_json(t.final_state.matrix());
    out["verification_probability"] = num(t.verification_probability);
    out["bob_average_marginal"] = matrix_to_json(t.bob_average_marginal.matrix());
    return out;
}

Json counterexample_to_json(const RealCounterexampleReport &r) {
    Json out;
    out["copies"] = r.copies;
    out["max_imag"] = num(r.max_imag);
    out["exchangeability_violation"] = num(r.exchangeability_violation);
    out["sigma2_sigma2_coefficient"] = num(r.sigma2_coefficient);
    return out;
}

Json field_counts_to_json(const FieldDimensionCounts &c) {
    Json out;
    out["complex"] = c.complex_unknowns;
    out["real_equations"] = c.real_sym_product_equations;
    out["real_unknowns"] = c.real_sym_unknowns;
    return out;
}

Json error_to_json(const QflError &e) {
    Json body;
    body["code"] = std::string(error_code_name(e.code()));
    body["message"] = e.message();
    if (e.stage()) {
        body["stage"] = *e.stage();
    }
    if (e.index()) {
        body["index"] = *e.index();
    }
    Json out;
    out["error"] = std::move(body);
    return out;
}

void write_trajectory_csv(std::ostream &out, const TomographyTrajectory &t) {
    auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", round12(x));
        return std::string(buf);
    };
    out << "step,outcome,dist_ab,dist_a_true,dist_b_true\n";
    out << "0,," << fmt(t.initial.dist_ab) << ',' << fmt(t.initial.dist_a_true) << ',' << fmt(t.initial.dist_b_true)
        << '\n';
    for (const auto &s : t.steps) {
        out << s.step << ',' << s.outcome << ',' << fmt(s.dist_ab) << ',' << fmt(s.dist_a_true) << ','
            << fmt(s.dist_b_true) << '\n';
    }
}

}  // namespace qfl::io
