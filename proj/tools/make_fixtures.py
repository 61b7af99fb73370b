#!/usr/bin/env python3
# Copyright 2026 The chanasm Authors
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

"""Writes the bundled JSON fixtures into fixtures/."""

import json
import math
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
S2 = math.sqrt(2.0)


def cvec(v):
    return [[float(np.real(z)), float(np.imag(z))] for z in v]


def cmat(m):
    return [cvec(row) for row in m]


def ket(*amps):
    return np.array(amps, dtype=complex)


ZERO, ONE = ket(1, 0), ket(0, 1)
PLUS, MINUS = ket(1, 1) / S2, ket(1, -1) / S2


def kron(*vs):
    out = np.array([1.0 + 0j])
    for v in vs:
        out = np.kron(out, v)
    return out


def cnot_channel():
    # identity on the first party, controlled-NOT from the second onto the trusted system
    cnot = np.eye(4, dtype=complex)
    cnot[2:, 2:] = [[0, 1], [1, 0]]
    return {"in_dim": [2, 2, 2], "out_dim": [2, 2, 2], "kraus": [cmat(np.kron(np.eye(2), cnot))]}


def bases(*settings):
    return {"dims": [2], "bases": [[cvec(k) for k in s] for s in settings]}


def realization(alice, bob, note):
    phi_plus = (kron(ZERO, ZERO) + kron(ONE, ONE)) / S2
    return {
        "kind": "realization",
        "version": 1,
        "note": note,
        "party_state": {"dims": [2, 2], "ket": cvec(phi_plus)},
        "povms": [bases(*alice), bases(*bob)],
        "channel": cnot_channel(),
        "key": {
            "input": {"dims": [2], "ket": cvec(ZERO)},
            "measurement": bases((ZERO, ONE)),
        },
    }


# (a, x) rows and (b, y) columns, both ordered (0,0), (1,0), (0,1), (1,1)
ORDER = [(0, 0), (1, 0), (0, 1), (1, 1)]


def table_members(table):
    members = []
    for r, (a, x) in enumerate(ORDER):
        for c, (b, y) in enumerate(ORDER):
            entry = table[r][c]
            if entry is None:
                continue
            weight, vec = entry
            norm = np.linalg.norm(vec)
            members.append({
                "a": [a, b],
                "x": [x, y],
                "weight": float(weight * norm**2),
                "ket": cvec(vec / norm),
            })
    members.sort(key=lambda m: (m["x"], m["a"]))
    return members


def channel_assemblage(table, note):
    return {
        "kind": "channel_assemblage",
        "version": 1,
        "note": note,
        "scenario": {"settings": [2, 2], "outcomes": [2, 2], "d_c": 2, "d_ct": 2},
        "members": table_members(table),
    }


def example1_table(b=1.0, c=1.0, e=1.0, f=1.0):
    phi = (kron(ZERO, ZERO) + kron(ONE, ONE)) / S2
    vphi = (kron(ONE, ZERO) + kron(ZERO, ONE)) / S2
    xi = (phi + vphi) / S2
    theta = (phi - vphi) / S2
    q = 0.25
    return [
        [(2 * q, phi), None, (q, phi), (q, phi)],
        [None, (2 * q, vphi), (q, vphi), (q, vphi)],
        [(b * q, phi), (e * q, vphi), (q, xi), (q, theta)],
        [(c * q, phi), (f * q, vphi), (q, theta), (q, xi)],
    ]


def appendix_table():
    def sym(p, q):
        # p (|00> + |11>) + q (|10> + |01>)
        return p * (kron(ZERO, ZERO) + kron(ONE, ONE)) + q * (kron(ONE, ZERO) + kron(ZERO, ONE))

    n15 = 1 / (2 * math.sqrt(15))
    n6 = 1 / (2 * math.sqrt(6))
    n10 = 1 / (2 * math.sqrt(10))
    phis = {
        1: n15 * sym(1, 2 * S2),
        2: n15 * sym(2, -S2),
        3: n15 * sym(S2, -2),
        4: n15 * sym(2 * S2, 1),
        5: n6 * sym(1, S2),
        6: n6 * sym(1, -S2),
        7: n6 * sym(S2, -1),
        8: n6 * sym(S2, 1),
        9: n10 * sym(1, 2),
        10: n10 * sym(2, -1),
        11: n10 * sym(1, -2),
        12: n10 * sym(2, 1),
        13: 0.5 * kron(PLUS, PLUS),
        14: 0.5 * kron(MINUS, MINUS),
        15: 0.5 * kron(MINUS, MINUS),
        16: 0.5 * kron(PLUS, PLUS),
    }
    layout = [[1, 2, 5, 6], [3, 4, 7, 8], [9, 10, 13, 14], [11, 12, 15, 16]]
    return [[(1.0, phis[i]) for i in row] for row in layout]


def local_example():
    # two deterministic strategies mixing the identity and bit-flip channels
    phi = (kron(ZERO, ZERO) + kron(ONE, ONE)) / S2
    flip = (kron(ONE, ZERO) + kron(ZERO, ONE)) / S2
    members = []
    for x in range(2):
        for y in range(2):
            for weight, vec, (a, b) in ((0.5, phi, (x, y)), (0.5, flip, (0, 1 - y))):
                members.append({"a": [a, b], "x": [x, y], "weight": weight, "ket": cvec(vec)})
    members.sort(key=lambda m: (m["x"], m["a"]))
    return {
        "kind": "channel_assemblage",
        "version": 1,
        "note": "local mixture of two deterministic strategies",
        "scenario": {"settings": [2, 2], "outcomes": [2, 2], "d_c": 2, "d_ct": 2},
        "members": members,
    }


def dump(value, indent=0):
    pad = "  " * indent
    if isinstance(value, dict):
        items = [f'{pad}  {json.dumps(k)}: {dump(value[k], indent + 1)}' for k in sorted(value)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and any(isinstance(v, dict) for v in value):
        items = [pad + "  " + dump(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(value, list) and value and isinstance(value[0], list) and isinstance(value[0][0], list):
        items = [pad + "  " + json.dumps(v) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value)


def main():
    alpha = ket(1, 2) / math.sqrt(5)
    beta = ket(2, -1) / math.sqrt(5)
    gamma = ket(1, S2) / math.sqrt(3)
    delta = ket(S2, -1) / math.sqrt(3)
    docs = {
        "example1.json": realization(
            [(ZERO, ONE), (PLUS, MINUS)], [(ZERO, ONE), (PLUS, MINUS)],
            "controlled-NOT realization with computational and Hadamard bases"),
        "example1_expected.json": channel_assemblage(
            example1_table(), "expected Choi members of example1"),
        "example1_split_1.json": channel_assemblage(
            example1_table(b=1.5, c=0.5, e=0.5, f=1.5), "first half of an asymmetric split"),
        "example1_split_2.json": channel_assemblage(
            example1_table(b=0.5, c=1.5, e=1.5, f=0.5), "second half of an asymmetric split"),
        "appendix.json": realization(
            [(gamma, delta), (PLUS, MINUS)], [(alpha, beta), (PLUS, MINUS)],
            "controlled-NOT realization with tilted first settings"),
        "appendix_expected.json": channel_assemblage(
            appendix_table(), "expected Choi members of appendix"),
        "local_example.json": local_example(),
    }
    OUT.mkdir(exist_ok=True)
    for name, doc in docs.items():
        (OUT / name).write_text(dump(doc) + "\n")


if __name__ == "__main__":
    main()
