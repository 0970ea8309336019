"""Catalog of stabilizer codes with encoder synthesis and CSS checks.

Presentations follow the conventions used throughout: qubit 1 is the leftmost
letter, operator codes carry explicit spectator (gauge) pairs, and the Steane
and Golay |0> encoders ship with pinned round schedules so that downstream
correlated-error analyses are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .circuit import Circuit
from .pauli import PauliString, parse
from .synthesis import (
    EncoderSchedule,
    SynthesisError,
    complete_destabilizers,
    prep_circuit_from_schedule,
    realize_clifford,
    rref_rows,
    solve_gf2,
    standard_form_schedule,
)
from .tableau import (
    CNOT,
    Relabel,
    S,
    StabilizerTableau,
    conjugate_pauli,
    groups_equal,
    in_group,
)


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class StabilizerCode:
    name: str
    n: int
    stabilizers: tuple[PauliString, ...]
    logicals: tuple[tuple[PauliString, PauliString], ...]  # (X_L, Z_L) pairs
    spectators: tuple[tuple[PauliString, PauliString], ...] = ()
    distance: int | None = None
    preset_schedule: dict | None = None  # pinned |0...0>_L schedule data

    @property
    def k(self) -> int:
        return len(self.logicals)

    @property
    def css_split(self) -> tuple[list[PauliString], list[PauliString]] | None:
        """(pure-X generators, pure-Z generators) or None if not CSS."""
        xs, zs = [], []
        for g in self.stabilizers:
            if g.z_mask == 0:
                xs.append(g)
            elif g.x_mask == 0:
                zs.append(g)
            else:
                return None
        return xs, zs

    def quotient_generators(self, include_logicals: bool = False) -> list[PauliString]:
        """Stabilizers plus spectator pairs (plus logicals when asked)."""
        gens = list(self.stabilizers)
        for xs, zs in self.spectators:
            gens.extend([xs, zs])
        if include_logicals:
            for xl, zl in self.logicals:
                gens.extend([xl, zl])
        return gens

    def validate(self) -> None:
        gens = self.stabilizers
        if len(gens) != self.n - self.k - len(self.spectators):
            raise CodeError(
                f"{self.name}: generator count {len(gens)} != n-k-s ="
                f" {self.n - self.k - len(self.spectators)}"
            )
        for a, b in itertools.combinations(gens, 2):
            if not a.commutes(b):
                raise CodeError(f"{self.name}: stabilizers {a}, {b} anticommute")
        pairs = list(self.logicals) + list(self.spectators)
        for i, (xi, zi) in enumerate(pairs):
            if xi.commutes(zi):
                raise CodeError(f"{self.name}: pair {i} fails to anticommute")
            for g in gens:
                if not (xi.commutes(g) and zi.commutes(g)):
                    raise CodeError(f"{self.name}: pair {i} anticommutes with a stabilizer")
            for j, (xj, zj) in enumerate(pairs):
                if i == j:
                    continue
                for a in (xi, zi):
                    for b in (xj, zj):
                        if not a.commutes(b):
                            raise CodeError(f"{self.name}: pairs {i}, {j} clash")
        if self.distance is not None and self.n <= 9:
            d = self.exhaustive_distance()
            if d != self.distance:
                raise CodeError(f"{self.name}: declared distance {self.distance}, found {d}")

    def exhaustive_distance(self) -> int:
        """Minimum weight of an undetectable error with nontrivial logical action."""
        best = self.n + 1
        for x in range(1 << self.n):
            for z in range(1 << self.n):
                p = PauliString(self.n, x, z)
                w = p.weight()
                if w == 0 or w >= best:
                    continue
                if any(not p.commutes(g) for g in self.stabilizers):
                    continue
                if any(
                    not p.commutes(xl) or not p.commutes(zl)
                    for xl, zl in self.logicals
                ):
                    best = w
        return best


# ---------------------------------------------------------------------------
# Builtin presentations
# ---------------------------------------------------------------------------

# Classical [23,12,7] parity checks; each row has weight eight and the rows
# are pairwise orthogonal mod 2.
GOLAY_CHECK_ROWS = [
    int(row.replace(".", "0"), 2)
    for row in (
        "10100100111110000000000",
        "11110110100001000000000",
        "01111011010000100000000",
        "00111101101000010000000",
        "00011110110100001000000",
        "10101011100100000100000",
        "11110001001100000010000",
        "11011100011000000001000",
        "01101110001100000000100",
        "10010011111000000000010",
        "01001001111100000000001",
    )
]

# Seven-round schedule for the Golay |0>_L encoder over the (A | I) form:
# entry (row, target column) -> round, zero meaning no CNOT.
_GOLAY_SCHEDULE_ROWS = (
    (1, 0, 2, 0, 0, 4, 0, 0, 3, 5, 6, 7),
    (2, 4, 3, 5, 0, 6, 7, 0, 1, 0, 0, 0),
    (0, 2, 4, 3, 5, 0, 6, 7, 0, 1, 0, 0),
    (0, 0, 5, 6, 7, 1, 0, 2, 4, 0, 3, 0),
    (0, 0, 0, 7, 1, 3, 4, 0, 5, 6, 0, 2),
    (4, 0, 7, 0, 2, 0, 1, 5, 6, 0, 0, 3),
    (3, 5, 6, 2, 0, 0, 0, 1, 0, 0, 7, 4),
    (5, 1, 0, 4, 6, 7, 0, 0, 0, 3, 2, 0),
    (0, 7, 1, 0, 3, 5, 2, 0, 0, 0, 4, 6),
    (6, 0, 0, 1, 0, 0, 3, 4, 7, 2, 5, 0),
    (0, 6, 0, 0, 4, 0, 0, 3, 2, 7, 1, 5),
)

# Three-round schedule for the Steane |0>_L encoder: M rows are the pivot
# wires (qubits 1, 2, 4), columns the target wires (qubits 3, 5, 6, 7).
_STEANE_SCHEDULE_ROWS = (
    (1, 2, 0, 3),
    (3, 0, 1, 2),
    (0, 3, 2, 1),
)


def _schedule_dict(rows) -> dict[tuple[int, int], int]:
    return {
        (r, c): rnd
        for r, row in enumerate(rows)
        for c, rnd in enumerate(row)
        if rnd
    }


def _pairs(*texts: str) -> tuple[tuple[PauliString, PauliString], ...]:
    ps = [parse(t) for t in texts]
    return tuple((ps[i], ps[i + 1]) for i in range(0, len(ps), 2))


def _four_qubit_code() -> StabilizerCode:
    return StabilizerCode(
        name="four-qubit-422",
        n=4,
        stabilizers=(parse("XXXX"), parse("ZZZZ")),
        logicals=_pairs("XXII", "IZIZ"),
        spectators=_pairs("XIXI", "IIZZ"),
        distance=2,
    )


def _five_qubit_code() -> StabilizerCode:
    return StabilizerCode(
        name="five-qubit-513",
        n=5,
        stabilizers=tuple(parse(s) for s in ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")),
        logicals=_pairs("XXXXX", "ZZZZZ"),
        distance=3,
    )


def _steane_code() -> StabilizerCode:
    zs = ("IIIZZZZ", "IZZIIZZ", "ZIZIZIZ")
    xs = tuple(s.replace("Z", "X") for s in zs)
    return StabilizerCode(
        name="steane-713",
        n=7,
        stabilizers=tuple(parse(s) for s in xs + zs),
        logicals=_pairs("XXXXXXX", "ZZZZZZZ"),
        distance=3,
        preset_schedule={"rounds": _schedule_dict(_STEANE_SCHEDULE_ROWS)},
    )


def _shor_code() -> StabilizerCode:
    zs = (
        "ZZIIIIIII", "IZZIIIIII", "IIIZZIIII",
        "IIIIZZIII", "IIIIIIZZI", "IIIIIIIZZ",
    )
    xs = ("XXXXXXIII", "IIIXXXXXX")
    return StabilizerCode(
        name="shor-913",
        n=9,
        stabilizers=tuple(parse(s) for s in zs + xs),
        logicals=_pairs("XXXIIIIII", "ZIIZIIZII"),
        distance=3,
    )


def _bacon_shor_code() -> StabilizerCode:
    stabs = ("ZZIZZIZZI", "IZZIZZIZZ", "XXXXXXIII", "IIIXXXXXX")
    code = StabilizerCode(
        name="bacon-shor-913",
        n=9,
        stabilizers=tuple(parse(s) for s in stabs),
        logicals=_pairs("XXXIIIIII", "ZIIZIIZII"),
        spectators=(),
        distance=3,
    )
    spectators = css_spectator_pairs(code.stabilizers, code.logicals, 4)
    return StabilizerCode(
        name=code.name,
        n=code.n,
        stabilizers=code.stabilizers,
        logicals=code.logicals,
        spectators=spectators,
        distance=3,
    )


def _golay_code() -> StabilizerCode:
    n = 23
    zs = tuple(PauliString(n, 0, row) for row in GOLAY_CHECK_ROWS)
    xs = tuple(PauliString(n, row, 0) for row in GOLAY_CHECK_ROWS)
    return StabilizerCode(
        name="golay-2317",
        n=n,
        stabilizers=xs + zs,
        logicals=((PauliString(n, (1 << n) - 1, 0), PauliString(n, 0, (1 << n) - 1)),),
        distance=7,
        preset_schedule={
            "rounds": _schedule_dict(_GOLAY_SCHEDULE_ROWS),
            "control_qubits": tuple(range(13, 24)),
            "target_qubits": tuple(range(1, 13)),
            "m_rows": tuple(row >> 11 for row in GOLAY_CHECK_ROWS),
        },
    )


def repetition_code(n: int) -> StabilizerCode:
    if n < 2:
        raise CodeError("repetition code needs n >= 2")
    stabs = []
    for i in range(1, n):
        stabs.append(
            PauliString.single(n, i, "Z") * PauliString.single(n, i + 1, "Z")
        )
    return StabilizerCode(
        name=f"repetition({n})",
        n=n,
        stabilizers=tuple(stabs),
        logicals=((PauliString(n, (1 << n) - 1, 0), PauliString.single(n, 1, "Z")),),
        distance=1,
    )


_BUILTINS = {
    "four-qubit-422": _four_qubit_code,
    "five-qubit-513": _five_qubit_code,
    "steane-713": _steane_code,
    "shor-913": _shor_code,
    "bacon-shor-913": _bacon_shor_code,
    "golay-2317": _golay_code,
}


def builtin_code(name: str) -> StabilizerCode:
    if name.startswith("repetition(") and name.endswith(")"):
        return repetition_code(int(name[len("repetition("):-1]))
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise CodeError(f"unknown code {name!r}") from None


def catalog_names() -> list[str]:
    return sorted(_BUILTINS) + ["repetition(n)"]


def css_spectator_pairs(stabilizers, logicals, count) -> tuple:
    """Derive pure-X/pure-Z spectator pairs by symplectic completion."""
    n = stabilizers[0].n
    pairs = []
    for _ in range(count):
        fixed = list(stabilizers) + [p for pr in logicals for p in pr] + [
            p for pr in pairs for p in pr
        ]
        x_op = _pure_completion(n, fixed, part="x")
        fixed_x = fixed + [x_op]
        z_op = _pure_completion(n, fixed_x, part="z", anticommute_with=x_op)
        pairs.append((x_op, z_op))
    return tuple(pairs)


def _pure_completion(n, fixed, part, anticommute_with=None):
    # Solve for a pure-X (or pure-Z) operator with required commutations,
    # independent of everything already fixed.
    masks, rhs = [], []
    for p in fixed:
        if anticommute_with is not None and p == anticommute_with:
            continue
        masks.append(p.z_mask if part == "x" else p.x_mask)
        rhs.append(0)
    if anticommute_with is not None:
        masks.append(
            anticommute_with.z_mask if part == "x" else anticommute_with.x_mask
        )
        rhs.append(1)
    # Kernel sweep: try solutions forcing one extra coordinate at a time until
    # one is independent of the fixed set.
    fixed_rows = [
        (p.x_mask if part == "x" else p.z_mask) for p in fixed
        if (p.z_mask == 0 if part == "x" else p.x_mask == 0)
    ]
    for force_bit in range(n):
        bit = 1 << (n - 1 - force_bit)
        sol = solve_gf2(masks + [bit], rhs + [1], n)
        if sol is None:
            continue
        try:
            rref_rows([r for r in fixed_rows if r] + [sol], n)
        except SynthesisError:
            continue
        return PauliString(n, sol, 0) if part == "x" else PauliString(n, 0, sol)
    raise CodeError("symplectic completion found no pure-type spectator")


# ---------------------------------------------------------------------------
# Encoder synthesis and codeword amplitudes
# ---------------------------------------------------------------------------


def _state_x_rows(code, logical_basis, spectator_basis):
    split = code.css_split
    if split is None:
        raise SynthesisError(f"{code.name} is not CSS-presentable")
    x_rows = [g.x_mask for g in split[0]]
    for basis, (xl, _) in zip(logical_basis, code.logicals):
        if basis == "X":
            if xl.z_mask:
                raise SynthesisError("logical X operator is not pure X")
            x_rows.append(xl.x_mask)
    for basis, (xs, _) in zip(spectator_basis, code.spectators):
        if basis == "X":
            if xs.z_mask:
                raise SynthesisError("spectator X operator is not pure X")
            x_rows.append(xs.x_mask)
    return x_rows


def _state_stabilizer_rows(code, logical_basis, spectator_basis):
    rows = list(code.stabilizers)
    for basis, (xl, zl) in zip(logical_basis, code.logicals):
        rows.append(xl if basis == "X" else zl)
    for basis, (xs, zs) in zip(spectator_basis, code.spectators):
        rows.append(xs if basis == "X" else zs)
    return rows


def _normalize_bases(code, logical_basis, spectator_basis):
    k, s = code.k, len(code.spectators)
    logical_basis = logical_basis or "Z" * k
    spectator_basis = spectator_basis or "X" * s
    if len(logical_basis) != k or len(spectator_basis) != s:
        raise SynthesisError("basis string lengths must match k and spectator count")
    return logical_basis, spectator_basis


def synthesize_encoder(
    code: StabilizerCode,
    logical_basis: str | None = None,
    spectator_basis: str | None = None,
    reverse_rounds: bool = False,
) -> tuple[EncoderSchedule, Circuit]:
    """Standard-form preparation circuit for an encoded basis state.

    Default target is |0...0>_L with spectators in |+>.  Returns the round
    schedule and the circuit in the original qubit order.
    """
    logical_basis, spectator_basis = _normalize_bases(code, logical_basis, spectator_basis)
    preset = code.preset_schedule if logical_basis == "Z" * code.k else None
    x_rows = _state_x_rows(code, logical_basis, spectator_basis)
    if preset and "m_rows" in preset:
        schedule = EncoderSchedule(
            m_rows=preset["m_rows"],
            n_targets=len(preset["target_qubits"]),
            rounds=preset["rounds"],
            permutation=preset["control_qubits"] + preset["target_qubits"],
            control_qubits=preset["control_qubits"],
            target_qubits=preset["target_qubits"],
        )
        schedule.validate()
    else:
        rounds = preset["rounds"] if preset else None
        schedule = standard_form_schedule(x_rows, code.n, rounds=rounds)
    if reverse_rounds:
        top = schedule.round_count + 1
        schedule = EncoderSchedule(
            m_rows=schedule.m_rows,
            n_targets=schedule.n_targets,
            rounds={k: top - v for k, v in schedule.rounds.items()},
            permutation=schedule.permutation,
            control_qubits=schedule.control_qubits,
            target_qubits=schedule.target_qubits,
        )
        schedule.validate()
    return schedule, prep_circuit_from_schedule(schedule, code.n)


def encoder_output_tableau(code, circuit) -> StabilizerTableau:
    tab, _ = circuit.simulate()
    return tab


def codeword_amplitudes(
    code: StabilizerCode,
    logical_basis: str | None = None,
    spectator_basis: str | None = None,
) -> dict[str, float]:
    """Equal-superposition amplitudes of an encoded CSS basis state."""
    if code.n > 12:
        raise CodeError("amplitude table limited to n <= 12")
    logical_basis, spectator_basis = _normalize_bases(code, logical_basis, spectator_basis)
    x_rows = _state_x_rows(code, logical_basis, spectator_basis)
    reduced, _ = rref_rows(x_rows, code.n)
    strings = {0}
    for row in reduced:
        strings |= {s ^ row for s in strings}
    amp = 1.0 / (len(strings) ** 0.5)
    return {format(s, f"0{code.n}b"): amp for s in sorted(strings)}


# ---------------------------------------------------------------------------
# Transversality checks
# ---------------------------------------------------------------------------


def _two_block(p: PauliString, block: int) -> PauliString:
    n = p.n
    if block == 0:
        return PauliString(2 * n, p.x_mask << n, p.z_mask << n, p.phase)
    return PauliString(2 * n, p.x_mask, p.z_mask, p.phase)


def transversal_cnot_preserves(code: StabilizerCode):
    """Check the two-block stabilizer group survives transversal CNOT.

    Returns (ok, witness) where witness holds the logical propagation images
    on success and the offending generators on failure.
    """
    n = code.n
    gens = [_two_block(g, b) for g in code.stabilizers for b in (0, 1)]
    gates = [CNOT(i, n + i) for i in range(1, n + 1)]
    images = [g for g in gens]
    for gate in gates:
        images = [conjugate_pauli(g, gate) for g in images]
    ok = groups_equal(gens, images)
    witness: dict = {"preserved": ok}
    if ok and code.logicals:
        xl, zl = code.logicals[0]
        x_img = _two_block(xl, 0)
        z_img = _two_block(zl, 1)
        for gate in gates:
            x_img = conjugate_pauli(x_img, gate)
            z_img = conjugate_pauli(z_img, gate)
        witness["x_forward"] = x_img == _two_block(xl, 0) * _two_block(xl, 1)
        witness["z_backward"] = z_img == _two_block(zl, 0) * _two_block(zl, 1)
    elif not ok:
        witness["bad"] = [
            str(img) for g, img in zip(gens, images)
            if in_group(img.unsigned(), [x.unsigned() for x in gens]) is None
        ]
    return ok, witness


def _permuted(p: PauliString, perm: Sequence[int]) -> PauliString:
    return conjugate_pauli(p, Relabel(tuple(perm)))


def _hadamard_image(p: PauliString) -> PauliString:
    phase = (p.phase + 2 * bin(p.x_mask & p.z_mask).count("1")) % 4
    return PauliString(p.n, p.z_mask, p.x_mask, phase)


def transversal_hadamard_check(code: StabilizerCode, max_search_n: int = 9):
    """Permutation making transversal H a logical Hadamard, or None."""
    group_elems = {}
    elems = [PauliString.identity(code.n)]
    for g in code.stabilizers:
        elems += [e * g for e in elems]
    if len(elems) > 4096:
        elems = None  # too large to enumerate; only try identity
    else:
        group_elems = {(e.x_mask, e.z_mask) for e in elems}
    quotient = code.quotient_generators()
    xl, zl = code.logicals[0]

    def works(perm):
        for g in code.stabilizers:
            img = _permuted(_hadamard_image(g), perm)
            if group_elems:
                if (img.x_mask, img.z_mask) not in group_elems:
                    return False
            elif in_group(img.unsigned(), [s.unsigned() for s in code.stabilizers]) is None:
                return False
        x_img = _permuted(_hadamard_image(xl), perm)
        z_img = _permuted(_hadamard_image(zl), perm)
        ug = [q.unsigned() for q in quotient]
        return (
            in_group((x_img * zl).unsigned(), ug) is not None
            and in_group((z_img * xl).unsigned(), ug) is not None
        )

    identity = tuple(range(1, code.n + 1))
    if works(identity):
        return identity
    if code.n > max_search_n:
        return None
    for perm in itertools.permutations(range(1, code.n + 1)):
        if perm != identity and works(perm):
            return perm
    return None


# ---------------------------------------------------------------------------
# Encoding unitaries and decoder circuits
# ---------------------------------------------------------------------------

# Paper-style all-CNOT decoder for the four-qubit operator code: wire 1 is
# the logical output, wire 2 the discarded spectator, wire 3 an X-basis check
# and wire 4 a Z-basis check.
_FOUR_QUBIT_DECODER_GATES = [CNOT(3, 2), CNOT(3, 1), CNOT(3, 4), CNOT(1, 4), CNOT(2, 4)]


def encoder_unitary_gates(code: StabilizerCode) -> list:
    """Gates mapping wire-local operators onto the code's presentation.

    Wire layout: logical qubits first, then spectators, then one check wire
    per stabilizer generator (whose Z image is that generator).
    """
    if code.name == "four-qubit-422":
        gates = []
        for g in reversed(_FOUR_QUBIT_DECODER_GATES):
            gates.append(g)
        return gates
    pairs = list(code.logicals) + list(code.spectators)
    others = [p for pr in pairs for p in pr]
    destabs = complete_destabilizers(list(code.stabilizers), others)
    pairs += list(zip(destabs, code.stabilizers))
    return realize_clifford(pairs)


def decoder_circuit(code: StabilizerCode) -> Circuit:
    """Reverse of the encoding unitary; check wires become postselected
    measurements and the first wire carries the logical qubit."""
    n = code.n
    circ = Circuit(n)
    if code.name == "four-qubit-422":
        for g in _FOUR_QUBIT_DECODER_GATES:
            circ.ops.append(g)
        circ.meas_x(3, postselect=0)
        circ.meas_z(4, postselect=0)
        return circ
    gates = encoder_unitary_gates(code)
    for gate in reversed(gates):
        if isinstance(gate, S):
            circ.ops.extend([S(gate.qubit)] * 3)
        elif isinstance(gate, Relabel):
            inverse = [0] * n
            for i, v in enumerate(gate.perm):
                inverse[v - 1] = i + 1
            circ.ops.append(Relabel(tuple(inverse)))
        else:
            circ.ops.append(gate)
    first_check = code.k + len(code.spectators) + 1
    for w in range(first_check, n + 1):
        circ.meas_z(w, postselect=0)
    return circ
