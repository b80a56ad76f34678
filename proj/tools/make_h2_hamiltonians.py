#!/usr/bin/env python3
# Copyright 2026 The pqclab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates the shipped H2/STO-3G qubit Hamiltonians.

Electronic integrals come from PySCF (RHF, STO-3G). The fermionic operator is
mapped with Jordan-Wigner in blocked spin ordering: qubits [0, n_spatial) hold
alpha spin orbitals, [n_spatial, 2 n_spatial) hold beta. Character j of every
Pauli string acts on qubit j. Only needed to regenerate data/; the C++ build
does not depend on it.

    pip install pyscf
    python3 tools/make_h2_hamiltonians.py data/
"""
import itertools
import sys
from pathlib import Path

import numpy as np
from pyscf import fci, gto, scf

_MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


def mul(a, b):
    out = {}
    for sa, ca in a.items():
        for sb, cb in b.items():
            phase = 1
            chars = []
            for x, y in zip(sa, sb):
                p, c = _MUL[(x, y)]
                phase *= p
                chars.append(c)
            key = "".join(chars)
            out[key] = out.get(key, 0) + phase * ca * cb
    return out


def add(a, b, scale=1.0):
    out = dict(a)
    for s, c in b.items():
        out[s] = out.get(s, 0) + scale * c
    return out


def ladder(n, p, dagger):
    zs = "Z" * p
    rest = "I" * (n - p - 1)
    sign = -1j if dagger else 1j
    return {zs + "X" + rest: 0.5, zs + "Y" + rest: 0.5 * sign}


def hamiltonian(bond_length):
    mol = gto.M(atom=f"H 0 0 0; H 0 0 {bond_length}", basis="sto-3g", unit="Angstrom", verbose=0)
    mf = scf.RHF(mol).run()
    c = mf.mo_coeff
    ns = c.shape[1]
    h1 = c.T @ mf.get_hcore() @ c
    eri = mol.ao2mo(c, compact=False).reshape(ns, ns, ns, ns)  # chemist (pr|qs)
    n = 2 * ns
    spin = lambda q: q // ns
    spatial = lambda q: q % ns
    cr = [ladder(n, p, True) for p in range(n)]
    an = [ladder(n, p, False) for p in range(n)]
    h = {"I" * n: mol.energy_nuc()}
    for p, q in itertools.product(range(n), repeat=2):
        if spin(p) == spin(q) and abs(h1[spatial(p), spatial(q)]) > 1e-14:
            h = add(h, mul(cr[p], an[q]), h1[spatial(p), spatial(q)])
    for p, q, r, s in itertools.product(range(n), repeat=4):
        if spin(p) != spin(r) or spin(q) != spin(s):
            continue
        v = eri[spatial(p), spatial(r), spatial(q), spatial(s)]
        if abs(v) < 1e-14:
            continue
        h = add(h, mul(mul(cr[p], cr[q]), mul(an[s], an[r])), 0.5 * v)
    terms = {}
    for s, c in h.items():
        assert abs(c.imag) < 1e-12 if isinstance(c, complex) else True
        c = float(np.real(c))
        if abs(c) > 1e-12:
            terms[s] = c
    e_fci = fci.FCI(mf).kernel()[0]
    return terms, e_fci, mf.e_tot


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    out.mkdir(parents=True, exist_ok=True)
    for r in (0.5, 0.75, 1.0, 1.5, 2.0):
        terms, e_fci, e_hf = hamiltonian(r)
        path = out / f"h2_sto3g_{r:.2f}.txt"
        with path.open("w") as f:
            f.write(f"# H2 / STO-3G, bond length {r:.2f} Angstrom, RHF orbitals (PySCF)\n")
            f.write("# Jordan-Wigner, blocked spin ordering: qubits 0,1 alpha; 2,3 beta\n")
            f.write("# character j of each Pauli string acts on qubit j\n")
            f.write(f"# Hartree-Fock reference 1010, E_HF = {e_hf:.12f} Ha\n")
            f.write(f"# FCI ground energy = {e_fci:.12f} Ha\n")
            for s in sorted(terms, key=lambda k: (k.count("I") != len(k), k)):
                f.write(f"{terms[s]: .15f} {s}\n")
        print(path, len(terms), e_hf, e_fci)


if __name__ == "__main__":
    main()
