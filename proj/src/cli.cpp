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

#include "qfl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include "qfl/definetti.hpp"
#include "qfl/entropy.hpp"
#include "qfl/error.hpp"
#include "qfl/gleason.hpp"
#include "qfl/io.hpp"
#include "qfl/measure.hpp"
#include "qfl/tolerance.hpp"

namespace qfl {

namespace {

using io::Json;

void emit(std::ostream &out, const Json &j) { out << io::dump(j) << '\n'; }

struct Options {
    std::string povm_file;
    std::string samples_file;
    std::string state_file;
    std::string kraus_file;
    std::string prior_a_file;
    std::string prior_b_file;
    std::string true_file;
    std::string out_file;
    std::vector<int> dims;
    bool bipartite = false;
    int shots = 0;
    int copies = 0;
    int da = 0;
    int db = 0;
    std::uint64_t seed = 0;
};

int cmd_validate_povm(const Options &o, std::ostream &out, std::ostream &err) {
    try {
        const Povm p = io::povm_from_json(io::read_json_file(o.povm_file));
        Json j;
        j["valid"] = true;
        j["dim"] = p.dim();
        j["outcomes"] = p.size();
        emit(out, j);
        return 0;
    } catch (const QflError &e) {
        if (e.code() == ErrorCode::ParseError) {
            throw;
        }
        Json j;
        j["valid"] = false;
        j["error"] = io::error_to_json(e)["error"];
        emit(out, j);
        emit(err, io::error_to_json(e));
        return 1;
    }
}

int cmd_reconstruct(const Options &o, std::ostream &out) {
    const Json in = io::read_json_file(o.samples_file);
    if (!o.bipartite) {
        const auto samples = io::samples_from_json(in);
        emit(out, io::reconstruction_to_json(reconstruct_state(samples)));
        return 0;
    }
    const auto set = io::bipartite_samples_from_json(in);
    if (!o.dims.empty() && (o.dims.size() != 2 || o.dims[0] != set.dim_a || o.dims[1] != set.dim_b)) {
        throw QflError(ErrorCode::DimensionMismatch, "--dims disagrees with the sample file");
    }
    emit(out, io::reconstruction_to_json(reconstruct_bipartite(set.samples, set.dim_a, set.dim_b)));
    return 0;
}

int cmd_entropy(const Options &o, std::ostream &out) {
    const DensityOperator rho = io::density_from_json(io::read_json_file(o.state_file));
    emit(out, io::uncertainty_to_json(uncertainty_report(rho)));
    return 0;
}

int cmd_measure(const Options &o, std::ostream &out) {
    const DensityOperator rho = io::density_from_json(io::read_json_file(o.state_file));
    const Povm povm = io::povm_from_json(io::read_json_file(o.povm_file));
    std::optional<KrausChannelSet> channel;
    if (!o.kraus_file.empty()) {
        channel = io::kraus_from_json(io::read_json_file(o.kraus_file));
        const Povm induced = channel->povm();
        if (induced.size() != povm.size() || induced.dim() != povm.dim()) {
            throw QflError(ErrorCode::DimensionMismatch, "Kraus channel and POVM differ in shape");
        }
        for (std::size_t b = 0; b < povm.size(); ++b) {
            if ((induced[b].matrix() - povm[b].matrix()).norm() > tolerances().completeness) {
                throw QflError(ErrorCode::InvalidArgument, "Kraus operators do not realize the POVM", std::nullopt,
                               static_cast<int>(b));
            }
        }
    } else {
        channel = KrausChannelSet::from_povm_sqrt(povm);
    }
    emit(out, io::outcomes_to_json(born_probabilities(rho, povm), posterior_states(rho, *channel)));
    return 0;
}

int cmd_dilate(const Options &o, std::ostream &out) {
    const Povm povm = io::povm_from_json(io::read_json_file(o.povm_file));
    emit(out, io::dilation_to_json(dilate_povm(povm)));
    return 0;
}

int cmd_teleport(const Options &o, std::ostream &out) {
    const ComplexVector psi = io::pure_state_from_json(io::read_json_file(o.state_file));
    emit(out, io::teleportation_to_json(simulate_teleportation(psi, o.seed)));
    return 0;
}

int cmd_tomography(const Options &o, std::ostream &out, std::ostream &err) {
    const Ensemble a = io::ensemble_from_json(io::read_json_file(o.prior_a_file));
    const Ensemble b = io::ensemble_from_json(io::read_json_file(o.prior_b_file));
    const DensityOperator truth = io::density_from_json(io::read_json_file(o.true_file));
    const Povm povm = io::povm_from_json(io::read_json_file(o.povm_file));
    const TomographyTrajectory t = simulate_tomography_convergence(a, b, truth, povm, o.shots, o.seed);
    std::ofstream csv(o.out_file);
    if (!csv) {
        throw QflError(ErrorCode::ParseError, "cannot write " + o.out_file);
    }
    io::write_trajectory_csv(csv, t);
    if (t.prior_excludes_truth) {
        Json w;
        w["warning"] = "PriorExcludesTruth";
        w["message"] = "a prior has no component within trace distance 0.2 of the true state";
        emit(err, w);
    }
    Json j;
    j["shots"] = o.shots;
    j["final_dist_ab"] = io::round12(t.final_dist_ab());
    j["prior_excludes_truth"] = t.prior_excludes_truth;
    emit(out, j);
    return 0;
}

int cmd_real_demo(const Options &o, std::ostream &out) {
    emit(out, io::counterexample_to_json(real_field_counterexample(o.copies)));
    return 0;
}

int cmd_field_count(const Options &o, std::ostream &out) {
    emit(out, io::field_counts_to_json(field_dimension_counts(o.da, o.db)));
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum measurement, reconstruction and exchangeability toolkit", "qfl"};
    app.require_subcommand(1);
    Options o;

    auto *validate = app.add_subcommand("validate-povm", "Check a POVM file");
    validate->add_option("file", o.povm_file, "POVM JSON")->required();

    auto *reconstruct = app.add_subcommand("reconstruct", "Recover a state from frame-function samples");
    reconstruct->add_option("--samples", o.samples_file, "sample JSON")->required();
    auto *bip = reconstruct->add_flag("--bipartite", o.bipartite, "samples are product-effect pairs");
    reconstruct->add_option("--dims", o.dims, "dA,dB")->delimiter(',')->needs(bip)->check(CLI::PositiveNumber);

    auto *entropy = app.add_subcommand("entropy", "Entropy report of a state");
    entropy->add_option("--state", o.state_file, "state JSON")->required();

    auto *measure = app.add_subcommand("measure", "Outcome probabilities and posterior states");
    measure->add_option("--state", o.state_file, "state JSON")->required();
    measure->add_option("--povm", o.povm_file, "POVM JSON")->required();
    measure->add_option("--kraus", o.kraus_file, "Kraus channel JSON");

    auto *dilate = app.add_subcommand("dilate", "Naimark dilation of a POVM");
    dilate->add_option("--povm", o.povm_file, "POVM JSON")->required();

    auto *teleport = app.add_subcommand("teleport", "Simulate qubit teleportation");
    teleport->add_option("--state", o.state_file, "input state JSON")->required();
    teleport->add_option("--seed", o.seed, "RNG seed")->required();

    auto *tomo = app.add_subcommand("tomography", "Two-agent Bayesian tomography trajectory");
    tomo->add_option("--prior-a", o.prior_a_file, "ensemble JSON")->required();
    tomo->add_option("--prior-b", o.prior_b_file, "ensemble JSON")->required();
    tomo->add_option("--true", o.true_file, "true state JSON")->required();
    tomo->add_option("--povm", o.povm_file, "POVM JSON")->required();
    tomo->add_option("--shots", o.shots, "number of measurements")->required()->check(CLI::NonNegativeNumber);
    tomo->add_option("--seed", o.seed, "RNG seed")->required();
    tomo->add_option("--out", o.out_file, "trajectory CSV")->required();

    auto *real = app.add_subcommand("real-demo", "Real-Hilbert-space exchangeability counterexample");
    real->add_option("--copies", o.copies, "N in 2..6")->required();

    auto *field = app.add_subcommand("field-count", "Real vs complex parameter counts");
    field->add_option("--da", o.da, "dimension of A")->required()->check(CLI::PositiveNumber);
    field->add_option("--db", o.db, "dimension of B")->required()->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate_povm(o, out, err);
        }
        if (reconstruct->parsed()) {
            return cmd_reconstruct(o, out);
        }
        if (entropy->parsed()) {
            return cmd_entropy(o, out);
        }
        if (measure->parsed()) {
            return cmd_measure(o, out);
        }
        if (dilate->parsed()) {
            return cmd_dilate(o, out);
        }
        if (teleport->parsed()) {
            return cmd_teleport(o, out);
        }
        if (tomo->parsed()) {
            return cmd_tomography(o, out, err);
        }
        if (real->parsed()) {
            return cmd_real_demo(o, out);
        }
        if (field->parsed()) {
            return cmd_field_count(o, out);
        }
    } catch (const QflError &e) {
        emit(err, io::error_to_json(e));
        return e.code() == ErrorCode::ParseError ? 2 : 1;
    } catch (const std::exception &e) {
        Json j;
        j["error"]["code"] = "Internal";
        j["error"]["message"] = e.what();
        emit(err, j);
        return 1;
    }
    return 2;
}

}  // namespace qfl
