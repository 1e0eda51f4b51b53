# Copyright 2026 The qfl Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the JSON inputs under tests/data used by the CLI tests."""

import argparse
import json
import pathlib

import numpy as np

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = [I2, SX, SY, SZ]


def op(m):
    m = np.asarray(m, dtype=complex)
    return {"dim": m.shape[0], "re": m.real.tolist(), "im": m.imag.tolist()}


def povm(effects):
    return {"dim": effects[0].shape[0], "effects": [op(e) for e in effects]}


def bloch(r):
    return 0.5 * (I2 + r[0] * SX + r[1] * SY + r[2] * SZ)


def spanning_qubit_effects():
    return [I2] + [0.5 * (I2 + p) for p in PAULI[1:]]


def six_states(radius):
    out = []
    for axis in range(3):
        for s in (1.0, -1.0):
            r = [0.0, 0.0, 0.0]
            r[axis] = s * radius
            out.append(bloch(r))
    return out


def files():
    z = [np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex)]
    trine = []
    for k in range(3):
        v = np.array([np.cos(2 * np.pi * k / 3), np.sin(2 * np.pi * k / 3)])
        trine.append((2.0 / 3.0) * np.outer(v, v).astype(complex))
    tet_dirs = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / np.sqrt(3.0)
    tetra = [0.5 * bloch(n) for n in tet_dirs]

    rho = bloch([0.3, -0.2, 0.5])
    samples = [{"effect": op(e), "value": float(np.trace(rho @ e).real)} for e in spanning_qubit_effects()]

    phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    bell = np.outer(phi, phi.conj())
    bip = []
    for ea in spanning_qubit_effects():
        for eb in spanning_qubit_effects():
            bip.append({"effect_a": op(ea), "effect_b": op(eb),
                        "value": float(np.trace(bell @ np.kron(ea, eb)).real)})

    states = six_states(0.9)
    yield "povm_sigma3.json", povm(z)
    yield "povm_trine.json", povm(trine)
    yield "povm_tetrahedral.json", povm(tetra)
    yield "povm_incomplete.json", povm([z[0], 0.5 * z[1]])
    yield "povm_not_effect.json", povm([1.5 * z[0], z[1] - 0.5 * z[0]])
    yield "state_maximally_mixed.json", op(0.5 * I2)
    yield "state_diag.json", op(np.diag([0.75, 0.25]))
    yield "state_mixed.json", op(rho)
    yield "state_plus.json", {"dim": 2, "re": [2 ** -0.5, 2 ** -0.5], "im": [0.0, 0.0]}
    yield "state_teleport.json", {"dim": 2, "re": [0.6, 0.0], "im": [0.0, 0.8]}
    yield "kraus_sigma3.json", {"dim": 2, "outcomes": [[op(z[0])], [op(z[1])]]}
    yield "kraus_flip.json", {"dim": 2, "outcomes": [[op(SX @ z[0])], [op(z[1])]]}
    yield "samples_qubit.json", {"dim": 2, "samples": samples}
    yield "samples_bell.json", {"dimA": 2, "dimB": 2, "samples": bip}
    yield "prior_a.json", {"weights": [0.3, 0.1, 0.2, 0.1, 0.2, 0.1], "states": [op(s) for s in states]}
    yield "prior_b.json", {"weights": [0.05, 0.35, 0.1, 0.2, 0.1, 0.2], "states": [op(s) for s in states]}
    yield "prior_narrow.json", {"weights": [0.5, 0.5], "states": [op(states[0]), op(states[1])]}
    yield "true_state.json", op(states[2])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, content in files():
        (out / name).write_text(json.dumps(content, indent=2) + "\n")
    (out / "malformed.json").write_text('{"dim": 2, "effects": [\n')


if __name__ == "__main__":
    main()
