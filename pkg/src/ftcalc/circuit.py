"""Circuit container: gates, preparations, postselected measurements and
tagged noise locations, with a line-oriented text format.

Format (qubits are 1-indexed):

    PREP_Z q         PREP_X q
    CNOT c t         H q          S q
    MEAS_Z q [POSTSELECT 0|1]
    MEAS_X q [POSTSELECT +|-]
    NOISE id q1[,q2] {pauli:rate,...}
    RELABEL p1,p2,...
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .pauli import PauliString, parse as parse_pauli
from .tableau import CNOT, H, S, CliffordGate, PauliApply, Relabel, StabilizerTableau, conjugate_pauli


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Prepare:
    qubit: int
    basis: str  # "Z" -> |0>, "X" -> |+>


@dataclass(frozen=True)
class Measure:
    qubit: int
    basis: str
    postselect: int | None = None  # expected outcome: 0/1 for Z, 0(+)/1(-) for X


@dataclass(frozen=True)
class NoiseLocation:
    id: str
    qubits: tuple[int, ...]
    outcomes: tuple[tuple[str, Fraction], ...]  # Pauli text on the location qubits -> rate

    def rate_map(self) -> dict[str, Fraction]:
        return dict(self.outcomes)


CircuitOp = Prepare | Measure | NoiseLocation | CNOT | H | S | PauliApply | Relabel


@dataclass
class Circuit:
    n: int
    ops: list[CircuitOp] = field(default_factory=list)

    # -- construction helpers ---------------------------------------------

    def prep_z(self, q: int) -> "Circuit":
        self.ops.append(Prepare(q, "Z"))
        return self

    def prep_x(self, q: int) -> "Circuit":
        self.ops.append(Prepare(q, "X"))
        return self

    def cnot(self, c: int, t: int) -> "Circuit":
        self.ops.append(CNOT(c, t))
        return self

    def h(self, q: int) -> "Circuit":
        self.ops.append(H(q))
        return self

    def s(self, q: int) -> "Circuit":
        self.ops.append(S(q))
        return self

    def meas_z(self, q: int, postselect: int | None = None) -> "Circuit":
        self.ops.append(Measure(q, "Z", postselect))
        return self

    def meas_x(self, q: int, postselect: int | None = None) -> "Circuit":
        self.ops.append(Measure(q, "X", postselect))
        return self

    def noise(self, id: str, qubits: Sequence[int], outcomes) -> "Circuit":
        items = tuple(
            (text, Fraction(rate)) for text, rate in
            (outcomes.items() if isinstance(outcomes, dict) else outcomes)
        )
        self.ops.append(NoiseLocation(id, tuple(qubits), items))
        return self

    # -- views --------------------------------------------------------------

    @property
    def noise_locations(self) -> list[NoiseLocation]:
        return [op for op in self.ops if isinstance(op, NoiseLocation)]

    @property
    def measurements(self) -> list[Measure]:
        return [op for op in self.ops if isinstance(op, Measure)]

    def gates(self) -> list[CliffordGate]:
        return [op for op in self.ops if isinstance(op, (CNOT, H, S, PauliApply, Relabel))]

    def embed_outcome(self, loc: NoiseLocation, text: str) -> PauliString:
        """Lift a location-local Pauli such as XY to the full register."""
        if len(text.lstrip("+-i")) != len(loc.qubits):
            raise CircuitError(f"outcome {text!r} does not fit location {loc.id}")
        small = parse_pauli(text)
        out = PauliString.identity(self.n)
        for letter_pos, q in enumerate(loc.qubits):
            letter = small.letter(letter_pos + 1)
            if letter != "I":
                out = out * PauliString.single(self.n, q, letter)
        return out

    # -- Pauli propagation ---------------------------------------------------

    def propagate_pauli(self, p: PauliString, start: int = 0):
        """Push an error inserted before ops[start] to the end of the circuit.

        Returns (final Pauli on the register, flips) where flips[i] is True
        when the i-th measurement in circuit order has its outcome toggled.
        Preparations reset the error on their qubit.
        """
        flips: list[bool] = []
        meas_index = 0
        for op in self.ops[:start]:
            if isinstance(op, Measure):
                meas_index += 1
        flips = [False] * meas_index
        for op in self.ops[start:]:
            if isinstance(op, (CNOT, H, S, PauliApply, Relabel)):
                p = conjugate_pauli(p, op)
            elif isinstance(op, Prepare):
                b = 1 << (self.n - op.qubit)
                p = PauliString(self.n, p.x_mask & ~b, p.z_mask & ~b, 0)
            elif isinstance(op, Measure):
                b = 1 << (self.n - op.qubit)
                hit = p.x_mask & b if op.basis == "Z" else p.z_mask & b
                flips.append(bool(hit))
            # NoiseLocation: pass through
        return p.unsigned(), flips

    def simulate(self, rng=None, forced: dict[int, int] | None = None) -> tuple[StabilizerTableau, list[int]]:
        """Noiseless tableau run; returns final tableau and outcomes (0/1).

        Postselected measurements are forced to their expected value; other
        random outcomes draw from rng.  ``forced`` overrides by measurement
        index.
        """
        tab = StabilizerTableau(self.n)
        outcomes: list[int] = []
        for op in self.ops:
            if isinstance(op, (CNOT, H, S, PauliApply, Relabel)):
                tab.apply(op)
            elif isinstance(op, Prepare):
                tab.prepare(op.qubit, op.basis)
            elif isinstance(op, Measure):
                basis_op = PauliString.single(self.n, op.qubit, op.basis)
                force = None
                if forced and len(outcomes) in forced:
                    force = 2 * forced[len(outcomes)]
                elif op.postselect is not None:
                    force = 2 * op.postselect
                try:
                    phase, _ = tab.measure(basis_op, rng=rng, force=force)
                except Exception:
                    phase, _ = tab.measure(basis_op, rng=rng)
                outcomes.append(phase // 2)
        return tab, outcomes

    # -- text format ----------------------------------------------------------

    def to_text(self) -> str:
        lines = []
        for op in self.ops:
            if isinstance(op, Prepare):
                lines.append(f"PREP_{op.basis} {op.qubit}")
            elif isinstance(op, CNOT):
                lines.append(f"CNOT {op.control} {op.target}")
            elif isinstance(op, H):
                lines.append(f"H {op.qubit}")
            elif isinstance(op, S):
                lines.append(f"S {op.qubit}")
            elif isinstance(op, PauliApply):
                lines.append(f"PAULI {op.pauli}")
            elif isinstance(op, Relabel):
                lines.append("RELABEL " + ",".join(map(str, op.perm)))
            elif isinstance(op, Measure):
                line = f"MEAS_{op.basis} {op.qubit}"
                if op.postselect is not None:
                    if op.basis == "Z":
                        line += f" POSTSELECT {op.postselect}"
                    else:
                        line += f" POSTSELECT {'+' if op.postselect == 0 else '-'}"
                lines.append(line)
            elif isinstance(op, NoiseLocation):
                body = ",".join(f"{text}:{rate}" for text, rate in op.outcomes)
                qubits = ",".join(map(str, op.qubits))
                lines.append(f"NOISE {op.id} {qubits} {{{body}}}")
        return "\n".join(lines) + "\n"


def parse_circuit(text: str, n: int | None = None) -> Circuit:
    ops: list[CircuitOp] = []
    max_q = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0].upper()
        try:
            if kind in ("PREP_Z", "PREP_X"):
                q = int(parts[1])
                ops.append(Prepare(q, kind[-1]))
                max_q = max(max_q, q)
            elif kind == "CNOT":
                c, t = int(parts[1]), int(parts[2])
                ops.append(CNOT(c, t))
                max_q = max(max_q, c, t)
            elif kind in ("H", "S"):
                q = int(parts[1])
                ops.append(H(q) if kind == "H" else S(q))
                max_q = max(max_q, q)
            elif kind == "PAULI":
                p = parse_pauli(parts[1])
                ops.append(PauliApply(p))
                max_q = max(max_q, p.n)
            elif kind == "RELABEL":
                perm = tuple(int(v) for v in parts[1].split(","))
                ops.append(Relabel(perm))
                max_q = max(max_q, *perm)
            elif kind in ("MEAS_Z", "MEAS_X"):
                q = int(parts[1])
                post = None
                if len(parts) > 2:
                    if parts[2].upper() != "POSTSELECT":
                        raise CircuitError(f"expected POSTSELECT, got {parts[2]!r}")
                    tok = parts[3]
                    post = {"0": 0, "1": 1, "+": 0, "-": 1}[tok]
                ops.append(Measure(q, kind[-1], post))
                max_q = max(max_q, q)
            elif kind == "NOISE":
                loc_id = parts[1]
                qubits = tuple(int(v) for v in parts[2].split(","))
                body = line.split("{", 1)[1].rsplit("}", 1)[0]
                outcomes = []
                for item in body.split(","):
                    text_part, rate_part = item.split(":")
                    outcomes.append((text_part.strip(), Fraction(rate_part.strip())))
                ops.append(NoiseLocation(loc_id, qubits, tuple(outcomes)))
                max_q = max(max_q, *qubits)
            else:
                raise CircuitError(f"unknown op {kind!r}")
        except (IndexError, KeyError, ValueError) as err:
            if isinstance(err, CircuitError):
                raise
            raise CircuitError(f"line {lineno}: cannot parse {raw!r}") from err
    if n is None:
        n = max_q
    # Relabel perms must cover 1..n; re-check sizes now that n is known.
    for op in ops:
        if isinstance(op, Relabel) and sorted(op.perm) != list(range(1, n + 1)):
            raise CircuitError(f"RELABEL {op.perm} is not a permutation of 1..{n}")
    return Circuit(n, ops)


BIASED_X_2Q = ("XI", "IX", "XX")
PAULI_2Q = tuple(
    a + b for a in "IXYZ" for b in "IXYZ" if a + b != "II"
)
PAULI_1Q = ("X", "Y", "Z")


def standard_outcomes(num_qubits: int, mode: str) -> tuple[str, ...]:
    """Allowed failure outcomes at a location under a noise mode."""
    if mode == "biased-x":
        return ("X",) if num_qubits == 1 else BIASED_X_2Q
    if mode == "pauli":
        return PAULI_1Q if num_qubits == 1 else PAULI_2Q
    raise CircuitError(f"unknown noise mode {mode!r}")
