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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qfl/cli.hpp"
#include "qfl/definetti.hpp"
#include "qfl/entropy.hpp"
#include "qfl/error.hpp"
#include "qfl/gleason.hpp"
#include "qfl/measure.hpp"
#include "qfl/opcore.hpp"
#include "qfl/tolerance.hpp"

namespace py = pybind11;
using namespace qfl;

namespace {

std::vector<Effect> to_effects(const std::vector<ComplexMatrix> &ms) {
    std::vector<Effect> out;
    out.reserve(ms.size());
    for (const auto &m : ms) {
        out.emplace_back(m);
    }
    return out;
}

std::vector<ComplexMatrix> to_matrices(const Povm &p) {
    std::vector<ComplexMatrix> out;
    for (const auto &e : p.effects()) {
        out.push_back(e.matrix());
    }
    return out;
}

Ensemble to_ensemble(std::vector<double> weights, const std::vector<ComplexMatrix> &states) {
    std::vector<DensityOperator> s;
    for (const auto &m : states) {
        s.emplace_back(m);
    }
    return Ensemble(std::move(weights), std::move(s));
}

py::dict reconstruction_dict(const Reconstruction &r) {
    py::dict d;
    d["state"] = r.state.matrix();
    d["residual"] = r.residual;
    d["repaired"] = r.repaired;
    d["min_singular_value"] = r.min_singular_value;
    return d;
}

py::list outcome_list(const std::vector<Outcome> &outcomes) {
    py::list out;
    for (const auto &o : outcomes) {
        out.append(py::make_tuple(o.probability, o.state ? py::cast(o.state->matrix()) : py::none()));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_qfl, m) {
    m.doc() = "POVM measurement, state reconstruction, entropy and exchangeability toolkit";

    static py::exception<QflError> error(m, "QflError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const QflError &e) {
            py::tuple args = py::make_tuple(std::string(error_code_name(e.code())), std::string(e.what()));
            PyErr_SetObject(error.ptr(), args.ptr());
        }
    });

    m.def("set_tolerance_scale", &set_tolerance_scale, py::arg("scale"));
    m.def("tolerance_scale", &tolerance_scale);

    // opcore
    m.def("partial_trace",
          [](const ComplexMatrix &joint, int da, int db, const std::string &keep) {
              return partial_trace(joint, da, db, keep == "A" ? Subsystem::A : Subsystem::B);
          },
          py::arg("joint"), py::arg("dim_a"), py::arg("dim_b"), py::arg("keep") = "A");
    m.def("kron", [](const ComplexMatrix &a, const ComplexMatrix &b) { return kron(a, b); });
    m.def("random_density", [](int d, int rank, std::uint64_t seed) { return random_density(d, rank, seed).matrix(); },
          py::arg("d"), py::arg("rank"), py::arg("seed"));
    m.def("haar_random_unitary", [](int d, std::uint64_t seed) { return haar_random_unitary(d, seed).matrix(); },
          py::arg("d"), py::arg("seed"));
    m.def("eigenvalues", [](const ComplexMatrix &h) { return eigenvalues(HermitianOperator(h)); });
    m.def("trace_distance", [](const ComplexMatrix &a, const ComplexMatrix &b) {
        return trace_distance(HermitianOperator(a), HermitianOperator(b));
    });

    // gleason
    m.def("validate_povm", [](const std::vector<ComplexMatrix> &effects) { return to_matrices(validate_povm(effects)); },
          "Returns the validated effects; raises QflError otherwise.");
    m.def("spanning_effects", [](int d) {
        std::vector<ComplexMatrix> out;
        for (const auto &e : spanning_effects(d)) {
            out.push_back(e.matrix());
        }
        return out;
    });
    m.def("reconstruct_state",
          [](const std::vector<ComplexMatrix> &effects, const std::vector<double> &values) {
              if (effects.size() != values.size()) {
                  throw QflError(ErrorCode::DimensionMismatch, "one value per effect required");
              }
              std::vector<FrameFunctionSample> samples;
              for (std::size_t k = 0; k < effects.size(); ++k) {
                  samples.emplace_back(Effect(effects[k]), values[k]);
              }
              return reconstruction_dict(reconstruct_state(samples));
          },
          py::arg("effects"), py::arg("values"));
    m.def("field_dimension_counts", [](int da, int db) {
        const auto c = field_dimension_counts(da, db);
        return py::make_tuple(c.complex_unknowns, c.real_sym_product_equations, c.real_sym_unknowns);
    });

    // measure
    m.def("born_probabilities", [](const ComplexMatrix &rho, const std::vector<ComplexMatrix> &effects) {
        return born_probabilities(DensityOperator(rho), validate_povm(effects));
    });
    m.def("posterior_states",
          [](const ComplexMatrix &rho, const std::vector<std::vector<ComplexMatrix>> &kraus) {
              return outcome_list(
                  posterior_states(DensityOperator(rho), KrausChannelSet(static_cast<int>(rho.rows()), kraus)));
          },
          "List of (probability, posterior or None) per outcome.");
    m.def("dilate_povm", [](const std::vector<ComplexMatrix> &effects) {
        const Dilation d = dilate_povm(validate_povm(effects));
        py::dict out;
        out["ancilla_state"] = d.ancilla_state.matrix();
        out["unitary"] = d.unitary.matrix();
        std::vector<ComplexMatrix> proj;
        for (const auto &p : d.projectors) {
            proj.push_back(p.matrix());
        }
        out["projectors"] = proj;
        out["povm"] = to_matrices(povm_from_dilation(d, d.system_dim()));
        return out;
    });
    m.def("simulate_teleportation", [](const ComplexVector &psi, std::uint64_t seed) {
        const auto t = simulate_teleportation(psi, seed);
        py::dict out;
        out["bell_probabilities"] = std::vector<double>(t.bell_probabilities.begin(), t.bell_probabilities.end());
        out["outcome"] = t.outcome;
        out["correction"] = t.correction;
        out["final_state"] = t.final_state.matrix();
        out["verification_probability"] = t.verification_probability;
        out["bob_average_marginal"] = t.bob_average_marginal.matrix();
        return out;
    });

    // entropy
    m.def("shannon", [](const std::vector<double> &p) { return shannon(ProbabilityVector(p)); });
    m.def("von_neumann", [](const ComplexMatrix &rho) { return von_neumann(DensityOperator(rho)); });
    m.def("subentropy", [](const ComplexMatrix &rho) { return subentropy(DensityOperator(rho)); });
    m.def("subentropy_of_spectrum", &subentropy_of_spectrum);
    m.def("mean_entropy", [](const ComplexMatrix &rho) { return mean_entropy(DensityOperator(rho)); });
    m.def("monte_carlo_mean_entropy",
          [](const ComplexMatrix &rho, int samples, std::uint64_t seed) {
              const auto e = monte_carlo_mean_entropy(DensityOperator(rho), samples, seed);
              return py::make_tuple(e.estimate, e.standard_error);
          },
          py::arg("rho"), py::arg("samples"), py::arg("seed"));
    m.def("subentropy_supremum_bits", &subentropy_supremum_bits);

    // definetti
    m.def("exchangeable_state",
          [](const std::vector<double> &w, const std::vector<ComplexMatrix> &states, int copies) {
              return exchangeable_state(to_ensemble(w, states), copies).matrix();
          },
          py::arg("weights"), py::arg("states"), py::arg("copies"));
    m.def("quantum_bayes_update",
          [](const std::vector<double> &w, const std::vector<ComplexMatrix> &states,
             const std::vector<ComplexMatrix> &effects, int outcome) {
              const Ensemble post = quantum_bayes_update(to_ensemble(w, states), validate_povm(effects), outcome);
              std::vector<ComplexMatrix> s;
              for (const auto &r : post.states()) {
                  s.push_back(r.matrix());
              }
              return py::make_tuple(post.weights(), s);
          },
          "Returns (weights, states) with zero-weight components removed.");
    m.def("informational_completeness_check", [](const std::vector<ComplexMatrix> &effects) {
        const auto c = informational_completeness_check(validate_povm(effects));
        return py::make_tuple(c.rank, c.complete);
    });
    m.def("real_field_counterexample", [](int copies) {
        const auto r = real_field_counterexample(copies);
        py::dict out;
        out["copies"] = r.copies;
        out["max_imag"] = r.max_imag;
        out["exchangeability_violation"] = r.exchangeability_violation;
        out["sigma2_sigma2_coefficient"] = r.sigma2_coefficient;
        return out;
    });
    m.def("permutation_invariance_check", [](const ComplexMatrix &rho, int d, int copies) {
        return permutation_invariance_check(DensityOperator(rho), d, copies);
    });

    m.def("run_command",
          [](const std::vector<std::string> &args) {
              std::ostringstream out;
              std::ostringstream err;
              const int code = run_command(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          "Runs a CLI subcommand in-process; returns (exit_code, stdout, stderr).");

#ifdef QFL_VERSION
    m.attr("__version__") = QFL_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
