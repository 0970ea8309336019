"""Independent dense-matrix reference implementations used only by tests.

These deliberately avoid the package's symplectic representation: Paulis are
built as Kronecker products of 2x2 complex matrices and circuits are applied
as dense unitaries, so agreement with the fast path is a real cross-check.
"""

from __future__ import annotations

import numpy as np

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
H2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S2 = np.array([[1, 0], [0, 1j]], dtype=complex)

LETTER_MATS = {"I": I2, "X": X2, "Y": Y2, "Z": Z2}
PHASES = [1, 1j, -1, -1j]


def pauli_matrix(letters: str, phase_exp: int = 0) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for ch in letters:
        out = np.kron(out, LETTER_MATS[ch])
    return PHASES[phase_exp % 4] * out


def single_qubit_gate(n: int, qubit: int, gate: np.ndarray) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for q in range(1, n + 1):
        out = np.kron(out, gate if q == qubit else I2)
    return out


def cnot_matrix(n: int, control: int, target: int) -> np.ndarray:
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    for basis in range(dim):
        cbit = (basis >> (n - control)) & 1
        image = basis ^ (cbit << (n - target)) if control != target else basis
        out[image, basis] = 1
    return out


def identify_pauli(mat: np.ndarray, n: int) -> tuple[str, int]:
    """Match a dense matrix against all 4^n * 4 signed Paulis."""
    letters_list = [""]
    for _ in range(n):
        letters_list = [s + c for s in letters_list for c in "IXYZ"]
    for letters in letters_list:
        base = pauli_matrix(letters)
        for k, ph in enumerate(PHASES):
            if np.allclose(mat, ph * base, atol=1e-9):
                return letters, k
    raise AssertionError("matrix is not a signed Pauli")


def statevector(n: int, gates) -> np.ndarray:
    """Apply ("CNOT",c,t) / ("H",q) / ("S",q) gates to |0...0>."""
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = 1
    for gate in gates:
        if gate[0] == "CNOT":
            u = cnot_matrix(n, gate[1], gate[2])
        elif gate[0] == "H":
            u = single_qubit_gate(n, gate[1], H2)
        elif gate[0] == "S":
            u = single_qubit_gate(n, gate[1], S2)
        else:
            raise ValueError(gate)
        psi = u @ psi
    return psi
