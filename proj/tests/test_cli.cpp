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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qfl/cli.hpp"
#include "qfl/fixtures.hpp"
#include "qfl/io.hpp"

namespace qfl {
namespace {

namespace fs = std::filesystem;

const std::string kData = QFL_TEST_DATA_DIR;
const std::string kGolden = QFL_GOLDEN_DIR;

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string &name) { return kData + "/" + name; }

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "qfl_test_cli";
    fs::create_directories(dir);
    return dir;
}

std::string with_newline(const io::Json &j) { return io::dump(j) + "\n"; }

struct GoldenCase {
    std::string name;
    std::vector<std::string> args;
};

std::vector<GoldenCase> golden_cases() {
    std::vector<GoldenCase> out;
    std::ifstream in(kGolden + "/cases.txt");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ss(line);
        GoldenCase c;
        ss >> c.name;
        std::string tok;
        while (ss >> tok) {
            for (const auto &[key, value] : {std::pair<std::string, std::string>{"@DATA@", kData},
                                             {"@WORK@", scratch().string()}}) {
                if (auto pos = tok.find(key); pos != std::string::npos) {
                    tok.replace(pos, key.size(), value);
                }
            }
            c.args.push_back(tok);
        }
        out.push_back(std::move(c));
    }
    return out;
}

TEST(Cli, GoldenOutputs) {
    const bool update = std::getenv("QFL_UPDATE_GOLDEN") != nullptr;
    const auto cases = golden_cases();
    ASSERT_GE(cases.size(), 10u);
    for (const auto &c : cases) {
        const CliRun r = run(c.args);
        ASSERT_EQ(r.code, 0) << c.name << ": " << r.err;
        const std::string path = kGolden + "/" + c.name + ".json";
        if (update) {
            std::ofstream(path, std::ios::binary) << r.out;
        }
        EXPECT_EQ(r.out, slurp(path)) << c.name;
        if (c.name == "tomography") {
            const std::string csv = slurp((scratch() / "tomography.csv").string());
            if (update) {
                std::ofstream(kGolden + "/tomography.csv", std::ios::binary) << csv;
            }
            EXPECT_EQ(csv, slurp(kGolden + "/tomography.csv"));
        }
    }
}

TEST(Cli, ThinShellOverTheLibrary) {
    const DensityOperator diag = io::density_from_json(io::read_json_file(data("state_diag.json")));
    EXPECT_EQ(run({"entropy", "--state", data("state_diag.json")}).out,
              with_newline(io::uncertainty_to_json(uncertainty_report(diag))));

    const Povm trine = io::povm_from_json(io::read_json_file(data("povm_trine.json")));
    EXPECT_EQ(run({"measure", "--state", data("state_diag.json"), "--povm", data("povm_trine.json")}).out,
              with_newline(io::outcomes_to_json(born_probabilities(diag, trine),
                                                posterior_states(diag, KrausChannelSet::from_povm_sqrt(trine)))));
    EXPECT_EQ(run({"dilate", "--povm", data("povm_trine.json")}).out,
              with_newline(io::dilation_to_json(dilate_povm(trine))));

    const auto samples = io::samples_from_json(io::read_json_file(data("samples_qubit.json")));
    EXPECT_EQ(run({"reconstruct", "--samples", data("samples_qubit.json")}).out,
              with_newline(io::reconstruction_to_json(reconstruct_state(samples))));

    const auto bip = io::bipartite_samples_from_json(io::read_json_file(data("samples_bell.json")));
    EXPECT_EQ(run({"reconstruct", "--samples", data("samples_bell.json"), "--bipartite"}).out,
              with_newline(io::reconstruction_to_json(reconstruct_bipartite(bip.samples, 2, 2))));

    const ComplexVector psi = io::pure_state_from_json(io::read_json_file(data("state_teleport.json")));
    EXPECT_EQ(run({"teleport", "--state", data("state_teleport.json"), "--seed", "11"}).out,
              with_newline(io::teleportation_to_json(simulate_teleportation(psi, 11))));

    EXPECT_EQ(run({"real-demo", "--copies", "4"}).out,
              with_newline(io::counterexample_to_json(real_field_counterexample(4))));
    EXPECT_EQ(run({"field-count", "--da", "3", "--db", "2"}).out,
              with_newline(io::field_counts_to_json(field_dimension_counts(3, 2))));
}

TEST(Cli, TomographyMatchesLibrary) {
    const auto csv_path = (scratch() / "thin.csv").string();
    const CliRun r = run({"tomography", "--prior-a", data("prior_a.json"), "--prior-b", data("prior_b.json"), "--true",
                       data("true_state.json"), "--povm", data("povm_tetrahedral.json"), "--shots", "40", "--seed",
                       "5", "--out", csv_path});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = simulate_tomography_convergence(
        io::ensemble_from_json(io::read_json_file(data("prior_a.json"))),
        io::ensemble_from_json(io::read_json_file(data("prior_b.json"))),
        io::density_from_json(io::read_json_file(data("true_state.json"))),
        io::povm_from_json(io::read_json_file(data("povm_tetrahedral.json"))), 40, 5);
    std::ostringstream ss;
    io::write_trajectory_csv(ss, t);
    const std::string csv = ss.str();
    EXPECT_EQ(slurp(csv_path), csv);
    EXPECT_EQ(csv.rfind("step,outcome,dist_ab,dist_a_true,dist_b_true\n0,,", 0), 0u);
    // header, step 0 and one row per shot
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 42);
    const io::Json j = io::parse_json(r.out);
    EXPECT_EQ(j["shots"], 40);
    EXPECT_EQ(j["final_dist_ab"].get<double>(), io::round12(t.final_dist_ab()));
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, SpecExamples) {
    const CliRun v = run({"validate-povm", data("povm_sigma3.json")});
    EXPECT_EQ(v.code, 0);
    EXPECT_TRUE(io::parse_json(v.out)["valid"].get<bool>());

    const io::Json e = io::parse_json(run({"entropy", "--state", data("state_maximally_mixed.json")}).out);
    EXPECT_NEAR(e["von_neumann_bits"].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(e["subentropy_bits"].get<double>(), 1.0 - 1.0 / (2.0 * std::log(2.0)), 1e-9);
    EXPECT_NEAR(e["mean_entropy_bits"].get<double>(), 1.0, 1e-9);

    const io::Json f = io::parse_json(run({"field-count", "--da", "2", "--db", "2"}).out);
    EXPECT_EQ(f["complex"], 16);
    EXPECT_EQ(f["real_equations"], 9);
    EXPECT_EQ(f["real_unknowns"], 10);
}

TEST(Cli, ExitCodes) {
    const CliRun bad = run({"validate-povm", data("povm_incomplete.json")});
    EXPECT_EQ(bad.code, 1);
    EXPECT_FALSE(io::parse_json(bad.out)["valid"].get<bool>());
    EXPECT_EQ(io::parse_json(bad.err)["error"]["code"], "BadCompleteness");

    const CliRun effect = run({"validate-povm", data("povm_not_effect.json")});
    EXPECT_EQ(effect.code, 1);
    EXPECT_EQ(io::parse_json(effect.err)["error"]["index"], 0);

    EXPECT_EQ(run({"validate-povm", data("malformed.json")}).code, 2);
    EXPECT_EQ(run({"validate-povm", data("missing.json")}).code, 2);
    EXPECT_EQ(run({"no-such-command"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"entropy"}).code, 2);
    EXPECT_EQ(run({"teleport", "--state", data("state_teleport.json")}).code, 2);
    // dims must be positive: a usage error
    EXPECT_EQ(run({"field-count", "--da", "0", "--db", "2"}).code, 2);
    EXPECT_EQ(run({"real-demo", "--copies", "9"}).code, 1);

    const CliRun mixed = run({"teleport", "--state", data("state_diag.json"), "--seed", "1"});
    EXPECT_EQ(mixed.code, 1);
    EXPECT_EQ(io::parse_json(mixed.err)["error"]["code"], "NotAState");

    const CliRun shape = run({"measure", "--state", data("state_plus.json"), "--povm", data("povm_trine.json"), "--kraus",
                           data("kraus_flip.json")});
    EXPECT_EQ(shape.code, 1);
    EXPECT_EQ(io::parse_json(shape.err)["error"]["code"], "DimensionMismatch");

    const CliRun dims = run({"reconstruct", "--samples", data("samples_bell.json"), "--bipartite", "--dims", "2,3"});
    EXPECT_EQ(dims.code, 1);

    const auto csv = (scratch() / "ic.csv").string();
    const CliRun ic = run({"tomography", "--prior-a", data("prior_a.json"), "--prior-b", data("prior_b.json"), "--true",
                        data("true_state.json"), "--povm", data("povm_sigma3.json"), "--shots", "5", "--seed", "1",
                        "--out", csv});
    EXPECT_EQ(ic.code, 1);
    EXPECT_EQ(io::parse_json(ic.err)["error"]["code"], "NotInformationallyComplete");
}

TEST(Cli, PriorExcludesTruthIsAWarning) {
    const auto csv = (scratch() / "narrow.csv").string();
    const CliRun r = run({"tomography", "--prior-a", data("prior_narrow.json"), "--prior-b", data("prior_b.json"),
                       "--true", data("true_state.json"), "--povm", data("povm_tetrahedral.json"), "--shots", "10",
                       "--seed", "1", "--out", csv});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(io::parse_json(r.err)["warning"], "PriorExcludesTruth");
    EXPECT_TRUE(io::parse_json(r.out)["prior_excludes_truth"].get<bool>());
}

TEST(Cli, KrausMustRealizeThePovm) {
    const CliRun ok = run({"measure", "--state", data("state_plus.json"), "--povm", data("povm_sigma3.json"), "--kraus",
                        data("kraus_sigma3.json")});
    EXPECT_EQ(ok.code, 0);
    const CliRun wrong = run({"measure", "--state", data("state_plus.json"), "--povm", data("povm_trine.json"), "--kraus",
                           data("kraus_sigma3.json")});
    EXPECT_EQ(wrong.code, 1);
    // flip channel: outcome 0 lands in |1>
    const io::Json j = io::parse_json(run({"measure", "--state", data("state_plus.json"), "--povm",
                                           data("povm_sigma3.json"), "--kraus", data("kraus_flip.json")})
                                          .out);
    EXPECT_EQ(j["posterior_states"][0]["re"][1][1], 1.0);
}

TEST(Cli, NumbersUseTwelveDigits) {
    EXPECT_EQ(io::round12(0.1 + 0.2), 0.3);
    EXPECT_EQ(io::round12(-0.0), 0.0);
    EXPECT_FALSE(std::signbit(io::round12(-1e-300 * 1e-300)));
    EXPECT_EQ(io::round12(1.0 / 3.0), 0.333333333333);
}

}  // namespace
}  // namespace qfl
