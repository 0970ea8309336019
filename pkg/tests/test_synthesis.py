import random

import pytest
from hypothesis import given, settings, strategies as st

from ftcalc.pauli import PauliString, parse
from ftcalc.synthesis import (
    EncoderSchedule,
    SynthesisError,
    complete_destabilizers,
    edge_coloring,
    realize_clifford,
    rref_rows,
    schedule_rows,
    solve_gf2,
    standard_form_schedule,
)
from ftcalc.tableau import CNOT, H, S, conjugate_through


def test_rref_basic():
    rows, pivots = rref_rows([0b0001111, 0b0110011, 0b1010101], 7)
    assert pivots == [0, 1, 3]
    assert rows == [0b1010101, 0b0110011, 0b0001111]


def test_rref_rejects_dependent():
    with pytest.raises(SynthesisError):
        rref_rows([0b11, 0b11], 2)


def test_solve_gf2():
    # x1 + x2 = 1, x2 + x3 = 0 over 3 bits (MSB first).
    sol = solve_gf2([0b110, 0b011], [1, 0], 3)
    assert sol is not None
    assert bin(sol & 0b110).count("1") % 2 == 1
    assert bin(sol & 0b011).count("1") % 2 == 0
    assert solve_gf2([0b1, 0b1], [0, 1], 1) is None


def _check_coloring(edges, coloring, num_colors):
    seen = {}
    for (u, v), c in coloring.items():
        assert 0 <= c < num_colors
        assert ("L", u, c) not in seen and ("R", v, c) not in seen
        seen[("L", u, c)] = seen[("R", v, c)] = True
    assert len(coloring) == len(set(edges))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.data())
def test_edge_coloring_max_degree(rows, cols, data):
    # Random binary matrices: the schedule must use exactly max-degree rounds
    # and never repeat a round in a row or column.
    bits = [
        (r, c)
        for r in range(rows)
        for c in range(cols)
        if data.draw(st.booleans())
    ]
    if not bits:
        return
    coloring, num = edge_coloring(bits)
    deg = {}
    for u, v in bits:
        deg[("L", u)] = deg.get(("L", u), 0) + 1
        deg[("R", v)] = deg.get(("R", v), 0) + 1
    assert num == max(deg.values())
    _check_coloring(bits, coloring, num)


def test_schedule_rows_round_trip():
    m_rows = (0b1101, 0b1011, 0b0111)
    rounds = schedule_rows(m_rows, 4)
    sched = EncoderSchedule(
        m_rows=m_rows,
        n_targets=4,
        rounds=rounds,
        permutation=(1, 2, 3, 4, 5, 6, 7),
        control_qubits=(1, 2, 3),
        target_qubits=(4, 5, 6, 7),
    )
    sched.validate()
    assert sched.round_count == 3
    assert sched.cnot_count == 9


def test_standard_form_schedule_trivial():
    sched = standard_form_schedule([], 3)
    assert sched.cnot_count == 0 and sched.round_count == 0


def _random_symplectic_pairs(rng, n):
    """Random Clifford circuit images of the computational basis pairs."""
    gates = []
    for _ in range(3 * n + 5):
        kind = rng.choice(("CNOT", "H", "S"))
        if kind == "CNOT" and n > 1:
            c, t = rng.sample(range(1, n + 1), 2)
            gates.append(CNOT(c, t))
        elif kind == "H":
            gates.append(H(rng.randrange(1, n + 1)))
        else:
            gates.append(S(rng.randrange(1, n + 1)))
    pairs = []
    for q in range(1, n + 1):
        pairs.append(
            (
                conjugate_through(PauliString.single(n, q, "X"), gates),
                conjugate_through(PauliString.single(n, q, "Z"), gates),
            )
        )
    return pairs


def test_realize_clifford_round_trip():
    rng = random.Random(17)
    for _ in range(60):
        n = rng.randrange(1, 6)
        pairs = _random_symplectic_pairs(rng, n)
        gates = realize_clifford(pairs)
        for q in range(1, n + 1):
            x_img = conjugate_through(PauliString.single(n, q, "X"), gates)
            z_img = conjugate_through(PauliString.single(n, q, "Z"), gates)
            assert x_img == pairs[q - 1][0]
            assert z_img == pairs[q - 1][1]


def test_realize_clifford_rejects_bad_basis():
    with pytest.raises(SynthesisError):
        realize_clifford([(parse("XI"), parse("IZ")), (parse("IX"), parse("IZ"))])


def test_complete_destabilizers():
    stabs = [parse("XXXX"), parse("ZZZZ")]
    others = [parse("XXII"), parse("IZIZ"), parse("XIXI"), parse("IIZZ")]
    destabs = complete_destabilizers(stabs, others)
    for j, d in enumerate(destabs):
        for k, s in enumerate(stabs):
            assert d.commutes(s) == (j != k)
        for p in others:
            assert d.commutes(p)
    assert not destabs[0].commutes(stabs[0])
    assert destabs[0].commutes(destabs[1])
