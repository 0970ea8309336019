"""Encoder-circuit synthesis.

Two layers:

* CSS basis-state preparation in standard form (I | M): Gaussian elimination
  over GF(2), qubit permutation, CNOT fan-out from the pivot wires, and a
  round schedule from bipartite edge coloring (max-degree rounds suffice, and
  the coloring below achieves that bound constructively).

* A generic Clifford realization that turns a full symplectic basis (code
  stabilizers plus logical/spectator pairs) into a CNOT/H/S circuit.  Its
  inverse is the decoder that moves each logical onto its own wire.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .circuit import Circuit
from .pauli import PauliString
from .tableau import CNOT, H, PauliApply, S, TableauError, conjugate_pauli


class SynthesisError(ValueError):
    pass


# ---------------------------------------------------------------------------
# GF(2) helpers on int bitmask rows (column 0 = leftmost qubit = MSB)
# ---------------------------------------------------------------------------


def rref_rows(rows: Sequence[int], width: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    work = [r for r in rows]
    pivots: list[int] = []
    out: list[int] = []
    for col in range(width):
        bit = 1 << (width - 1 - col)
        pivot = next((r for r in work if r & bit), None)
        if pivot is None:
            continue
        work.remove(pivot)
        work = [r ^ pivot if r & bit else r for r in work]
        out = [r ^ pivot if r & bit else r for r in out]
        out.append(pivot)
        pivots.append(col)
    if work:
        raise SynthesisError("dependent rows in standard-form reduction")
    return out, pivots


def solve_gf2(constraint_masks: Sequence[int], parities: Sequence[int], width: int) -> int | None:
    """One solution u of parity(u & mask_i) = b_i for all i, or None."""
    rows = [(m, b) for m, b in zip(constraint_masks, parities)]
    pivots: list[tuple[int, int, int]] = []  # (column bit, mask, rhs)
    for mask, rhs in rows:
        for bit, pmask, prhs in pivots:
            if mask & bit:
                mask ^= pmask
                rhs ^= prhs
        if mask == 0:
            if rhs:
                return None
            continue
        bit = 1 << (mask.bit_length() - 1)
        pivots.append((bit, mask, rhs))
    solution = 0
    # Back-substitute with free variables set to 0; each pivot mask is free
    # of earlier pivot bits, so reverse order resolves all dependencies.
    for bit, mask, rhs in reversed(pivots):
        acc = bin((mask ^ bit) & solution).count("1") & 1
        if acc ^ rhs:
            solution |= bit
    return solution


# ---------------------------------------------------------------------------
# Round scheduling (bipartite edge coloring)
# ---------------------------------------------------------------------------


def edge_coloring(edges: Sequence[tuple[int, int]]) -> tuple[dict[tuple[int, int], int], int]:
    """Proper edge coloring of a bipartite (multi-)graph with max-degree colors.

    Returns ({edge: color}, number_of_colors); colors are 0-based.  Uses the
    alternating-path recoloring argument, so exactly max-degree colors are
    used.
    """
    if not edges:
        return {}, 0
    degree: dict[tuple[str, int], int] = {}
    for u, v in edges:
        degree[("L", u)] = degree.get(("L", u), 0) + 1
        degree[("R", v)] = degree.get(("R", v), 0) + 1
    num_colors = max(degree.values())
    # at[(side, vertex)][color] -> opposite endpoint or None
    at: dict[tuple[str, int], list] = {k: [None] * num_colors for k in degree}
    color_of: dict[tuple[int, int], int] = {}

    def free(side_vertex):
        return next(c for c in range(num_colors) if at[side_vertex][c] is None)

    for u, v in edges:
        lu, rv = ("L", u), ("R", v)
        shared = next(
            (c for c in range(num_colors) if at[lu][c] is None and at[rv][c] is None),
            None,
        )
        if shared is None:
            a, b = free(lu), free(rv)
            # Collect the maximal a/b alternating path starting at v along a.
            # It can never reach u (the edge into u would have to be colored
            # a, which is free there), so flipping it frees a at both ends.
            path: list[tuple[tuple[int, int], int]] = []
            side, vertex, want = "R", v, a
            while at[(side, vertex)][want] is not None:
                w = at[(side, vertex)][want]
                edge = (w, vertex) if side == "R" else (vertex, w)
                path.append((edge, want))
                side = "L" if side == "R" else "R"
                vertex = w
                want = a + b - want
            for (ue, ve), c in path:
                at[("L", ue)][c] = None
                at[("R", ve)][c] = None
            for (ue, ve), c in path:
                at[("L", ue)][a + b - c] = ve
                at[("R", ve)][a + b - c] = ue
                color_of[(ue, ve)] = a + b - c
            shared = a
        at[lu][shared] = v
        at[rv][shared] = u
        color_of[(u, v)] = shared
    return color_of, num_colors


@dataclass(frozen=True)
class EncoderSchedule:
    """Standard-form CNOT plan: M over (control rows x target columns)."""

    m_rows: tuple[int, ...]          # bitmask rows of M, MSB = first target column
    n_targets: int
    rounds: dict[tuple[int, int], int]   # (row, target column) -> 1-based round
    permutation: tuple[int, ...]     # permutation[i] = original qubit on wire i+1
    control_qubits: tuple[int, ...]  # original qubit carrying each row's pivot
    target_qubits: tuple[int, ...]   # original qubit for each target column

    @property
    def cnot_count(self) -> int:
        return sum(bin(r).count("1") for r in self.m_rows)

    @property
    def round_count(self) -> int:
        return max(self.rounds.values(), default=0)

    def validate(self) -> None:
        per_row: dict[int, set] = {}
        per_col: dict[int, set] = {}
        for (r, c), rnd in self.rounds.items():
            if not self.m_rows[r] & (1 << (self.n_targets - 1 - c)):
                raise SynthesisError("schedule entry outside the support of M")
            if rnd in per_row.setdefault(r, set()) or rnd in per_col.setdefault(c, set()):
                raise SynthesisError("round number repeats within a row or column")
            per_row[r].add(rnd)
            per_col[c].add(rnd)
        if len(self.rounds) != self.cnot_count:
            raise SynthesisError("schedule does not cover M")
        max_degree = max(
            [bin(r).count("1") for r in self.m_rows]
            + [sum((r >> (self.n_targets - 1 - c)) & 1 for r in self.m_rows)
               for c in range(self.n_targets)],
            default=0,
        )
        if self.round_count != max_degree:
            raise SynthesisError(
                f"schedule uses {self.round_count} rounds; max degree is {max_degree}"
            )


def schedule_rows(m_rows: Sequence[int], n_targets: int) -> dict[tuple[int, int], int]:
    edges = [
        (r, c)
        for r, row in enumerate(m_rows)
        for c in range(n_targets)
        if row & (1 << (n_targets - 1 - c))
    ]
    coloring, _ = edge_coloring(edges)
    return {edge: color + 1 for edge, color in coloring.items()}


def standard_form_schedule(
    x_rows: Sequence[int],
    n: int,
    rounds: dict[tuple[int, int], int] | None = None,
) -> EncoderSchedule:
    """Bring X-type generator rows to (I | M) and schedule the fan-out."""
    reduced, pivots = rref_rows(x_rows, n)
    non_pivots = [c for c in range(n) if c not in pivots]
    m_rows = []
    for row in reduced:
        m = 0
        for j, c in enumerate(non_pivots):
            if row & (1 << (n - 1 - c)):
                m |= 1 << (len(non_pivots) - 1 - j)
        m_rows.append(m)
    if rounds is None:
        rounds = schedule_rows(m_rows, len(non_pivots))
    schedule = EncoderSchedule(
        m_rows=tuple(m_rows),
        n_targets=len(non_pivots),
        rounds=rounds,
        permutation=tuple(c + 1 for c in pivots + non_pivots),
        control_qubits=tuple(c + 1 for c in pivots),
        target_qubits=tuple(c + 1 for c in non_pivots),
    )
    schedule.validate()
    return schedule


def prep_circuit_from_schedule(schedule: EncoderSchedule, n: int) -> Circuit:
    """Preparation circuit in the original qubit order."""
    circ = Circuit(n)
    controls = set(schedule.control_qubits)
    for q in range(1, n + 1):
        if q in controls:
            circ.prep_x(q)
        else:
            circ.prep_z(q)
    by_round: dict[int, list[tuple[int, int]]] = {}
    for (r, c), rnd in schedule.rounds.items():
        by_round.setdefault(rnd, []).append(
            (schedule.control_qubits[r], schedule.target_qubits[c])
        )
    for rnd in sorted(by_round):
        for control, target in sorted(by_round[rnd]):
            circ.cnot(control, target)
    return circ


# ---------------------------------------------------------------------------
# Generic Clifford realization
# ---------------------------------------------------------------------------


def _gate_inverse(gate):
    if isinstance(gate, S):
        return [S(gate.qubit), S(gate.qubit), S(gate.qubit)]
    return [gate]


def realize_clifford(pairs: Sequence[tuple[PauliString, PauliString]]) -> list:
    """Gates G with (G as conjugation) X_q -> pairs[q][0], Z_q -> pairs[q][1].

    The pairs must form a symplectic basis: pairs[q][0] anticommutes with
    pairs[q][1] and commutes with everything else.  Signs are honored.
    """
    n = pairs[0][0].n
    if len(pairs) != n:
        raise SynthesisError("need exactly one (X, Z) image pair per qubit")
    rows: list[PauliString] = []
    for xi, zi in pairs:
        rows.extend([xi, zi])
    reduction: list = []

    def apply(gate):
        nonlocal rows
        rows = [conjugate_pauli(r, gate) for r in rows]
        reduction.append(gate)

    def xbit(row, q):
        return bool(rows[row].x_mask & (1 << (n - q)))

    def zbit(row, q):
        return bool(rows[row].z_mask & (1 << (n - q)))

    for i in range(1, n + 1):
        rx, rz = 2 * (i - 1), 2 * (i - 1) + 1
        if not any(xbit(rx, j) for j in range(i, n + 1)):
            j = next(j for j in range(i, n + 1) if zbit(rx, j))
            apply(H(j))
        if not xbit(rx, i):
            j = next(j for j in range(i, n + 1) if xbit(rx, j))
            apply(CNOT(i, j))
            apply(CNOT(j, i))
            apply(CNOT(i, j))
        for j in range(i + 1, n + 1):
            if xbit(rx, j):
                apply(CNOT(i, j))
        if zbit(rx, i):
            apply(S(i))
        for j in range(i + 1, n + 1):
            if zbit(rx, j):
                apply(H(j))
                apply(CNOT(i, j))
        # row rx is now +/- X_i; reduce row rz
        for j in range(i + 1, n + 1):
            if xbit(rz, j) and zbit(rz, j):
                apply(S(j))
            if xbit(rz, j):
                apply(H(j))
        for j in range(i + 1, n + 1):
            if zbit(rz, j):
                apply(CNOT(j, i))
        if xbit(rz, i):
            apply(H(i))
            apply(S(i))
            apply(H(i))
        if not (rows[rx] == PauliString.single(n, i, "X")
                or rows[rx] == PauliString.single(n, i, "X").negate()):
            raise SynthesisError("not a symplectic basis (X row reduction failed)")
        if not (rows[rz] == PauliString.single(n, i, "Z")
                or rows[rz] == PauliString.single(n, i, "Z").negate()):
            raise SynthesisError("not a symplectic basis (Z row reduction failed)")
        if rows[rx].phase:
            apply(PauliApply(PauliString.single(n, i, "Z")))
        if rows[rz].phase:
            apply(PauliApply(PauliString.single(n, i, "X")))
    gates: list = []
    for gate in reversed(reduction):
        gates.extend(_gate_inverse(gate))
    return gates


def complete_destabilizers(
    stabilizers: Sequence[PauliString],
    other: Sequence[PauliString],
) -> list[PauliString]:
    """Destabilizer partner for each stabilizer row.

    Partner j anticommutes with stabilizer j only, and commutes with every
    other listed operator and previously chosen partner.
    """
    n = stabilizers[0].n
    chosen: list[PauliString] = []
    for j, _ in enumerate(stabilizers):
        masks, rhs = [], []
        for k, s in enumerate(stabilizers):
            masks.append((s.z_mask << n) | s.x_mask)
            rhs.append(1 if k == j else 0)
        for p in list(other) + chosen:
            masks.append((p.z_mask << n) | p.x_mask)
            rhs.append(0)
        solution = solve_gf2(masks, rhs, 2 * n)
        if solution is None:
            raise TableauError("symplectic completion failed")
        chosen.append(PauliString(n, solution & ((1 << n) - 1), solution >> n))
    return chosen
