"""Stabilizer tableau evolution, canonicalization and group utilities.

A tableau holds stabilizer rows (above the dividing line) and named tracked
rows for logical/spectator degrees of freedom (below the line).  Signs are
carried on the rows themselves as Pauli phases, which must be +/-1 for
Hermitian stabilizers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from .pauli import PauliError, PauliString


class TableauError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Clifford gates as conjugation maps on PauliString
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CNOT:
    control: int
    target: int


@dataclass(frozen=True)
class H:
    qubit: int


@dataclass(frozen=True)
class S:
    """The phase gate Z^(1/2); conjugates X to Y."""

    qubit: int


@dataclass(frozen=True)
class PauliApply:
    pauli: PauliString


@dataclass(frozen=True)
class Relabel:
    """Qubit permutation: wire q carries what wire perm[q-1] carried before."""

    perm: tuple[int, ...]


CliffordGate = CNOT | H | S | PauliApply | Relabel


def _bit(n: int, qubit: int) -> int:
    if not 1 <= qubit <= n:
        raise TableauError(f"qubit {qubit} out of range 1..{n}")
    return 1 << (n - qubit)


def conjugate_pauli(p: PauliString, gate: CliffordGate) -> PauliString:
    """Return U p U^dagger with exact phase tracking."""
    n = p.n
    # Work in the X^x Z^z form where the i-exponent is t.
    t = (p.phase + bin(p.x_mask & p.z_mask).count("1")) % 4
    x, z = p.x_mask, p.z_mask
    if isinstance(gate, CNOT):
        if gate.control == gate.target:
            raise TableauError("CNOT control equals target")
        cb, tb = _bit(n, gate.control), _bit(n, gate.target)
        if x & cb:
            x ^= tb
        if z & tb:
            z ^= cb
    elif isinstance(gate, H):
        qb = _bit(n, gate.qubit)
        if (x & qb) and (z & qb):
            t += 2
        xq, zq = x & qb, z & qb
        x = (x & ~qb) | zq
        z = (z & ~qb) | xq
    elif isinstance(gate, S):
        qb = _bit(n, gate.qubit)
        if x & qb:
            t += 1
            z ^= qb
    elif isinstance(gate, PauliApply):
        t += 2 * p.symplectic_product(gate.pauli)
    elif isinstance(gate, Relabel):
        perm = gate.perm
        if sorted(perm) != list(range(1, n + 1)):
            raise TableauError(f"invalid permutation {perm}")
        nx = nz = 0
        for q in range(1, n + 1):
            src = _bit(n, perm[q - 1])
            if x & src:
                nx |= _bit(n, q)
            if z & src:
                nz |= _bit(n, q)
        x, z = nx, nz
    else:
        raise TableauError(f"unsupported gate {gate!r}")
    return PauliString(n, x, z, (t - bin(x & z).count("1")) % 4)


def conjugate_through(p: PauliString, gates: Iterable[CliffordGate]) -> PauliString:
    for gate in gates:
        p = conjugate_pauli(p, gate)
    return p


# ---------------------------------------------------------------------------
# Symplectic Gaussian elimination
# ---------------------------------------------------------------------------


def _leading_column(p: PauliString) -> int:
    """Index into the column order x1,z1,x2,z2,... of the first nonzero entry."""
    for q in range(1, p.n + 1):
        b = 1 << (p.n - q)
        if p.x_mask & b:
            return 2 * (q - 1)
        if p.z_mask & b:
            return 2 * (q - 1) + 1
    return 2 * p.n


def canonicalize(rows: Sequence[PauliString]) -> list[PauliString]:
    """Unique reduced form of a stabilizer generating set, signs included.

    Gaussian elimination over the symplectic representation; rows are
    multiplied as group elements so phases stay consistent.  Raises on
    dependent generators.
    """
    work = list(rows)
    out: list[PauliString] = []
    for col in range(2 * work[0].n if work else 0):
        q, is_z = divmod(col, 2)
        mask_attr = "z_mask" if is_z else "x_mask"
        bit = 1 << (work[0].n - (q + 1)) if work else 0
        pivot = None
        for r in work:
            if getattr(r, mask_attr) & bit and _leading_column(r) == col:
                pivot = r
                break
        if pivot is None:
            continue
        work.remove(pivot)
        work = [r * pivot if getattr(r, mask_attr) & bit else r for r in work]
        out = [r * pivot if getattr(r, mask_attr) & bit else r for r in out]
        out.append(pivot)
    for r in work:
        if r.is_identity() and r.phase != 0:
            raise TableauError("generators multiply to -I; inconsistent signs")
        raise TableauError("dependent generators (rank deficiency)")
    return sorted(out, key=_leading_column)


def groups_equal(gens_a: Sequence[PauliString], gens_b: Sequence[PauliString]) -> bool:
    return canonicalize(gens_a) == canonicalize(gens_b)


def in_group(p: PauliString, gens: Sequence[PauliString], up_to_sign: bool = False):
    """Express +/-p over the generators; returns the matching phase or None.

    Uses the canonical form: reduce p by pivoting rows and check the residue.
    """
    residue = p
    for g in canonicalize(gens):
        col = _leading_column(g)
        q, is_z = divmod(col, 2)
        bit = 1 << (p.n - (q + 1))
        mask = residue.z_mask if is_z else residue.x_mask
        if mask & bit:
            residue = residue * g
    if not residue.is_identity():
        return None
    if up_to_sign or residue.phase == 0:
        return residue.phase
    return None


# ---------------------------------------------------------------------------
# Tableau
# ---------------------------------------------------------------------------


@dataclass
class StabilizerTableau:
    """Stabilizer rows above the line, named tracked rows below it."""

    n: int
    stabilizers: list[PauliString] = field(default_factory=list)
    tracked: dict[str, PauliString] = field(default_factory=dict)

    def validate(self) -> None:
        for r in self.stabilizers:
            if r.phase not in (0, 2):
                raise TableauError(f"stabilizer row {r} has a non-Hermitian phase")
        for a, b in itertools.combinations(self.stabilizers, 2):
            if not a.commutes(b):
                raise TableauError(f"stabilizer rows {a} and {b} anticommute")
        for name, t in self.tracked.items():
            for r in self.stabilizers:
                if not t.commutes(r):
                    raise TableauError(f"tracked row {name} anticommutes with {r}")
        canonicalize(self.stabilizers)  # raises if dependent

    def copy(self) -> "StabilizerTableau":
        return StabilizerTableau(self.n, list(self.stabilizers), dict(self.tracked))

    @staticmethod
    def computational(n: int) -> "StabilizerTableau":
        return StabilizerTableau(
            n, [PauliString.single(n, q, "Z") for q in range(1, n + 1)]
        )

    def apply(self, gate: CliffordGate) -> "StabilizerTableau":
        self.stabilizers = [conjugate_pauli(r, gate) for r in self.stabilizers]
        self.tracked = {k: conjugate_pauli(v, gate) for k, v in self.tracked.items()}
        return self

    def apply_all(self, gates: Iterable[CliffordGate]) -> "StabilizerTableau":
        for gate in gates:
            self.apply(gate)
        return self

    def prepare(self, qubit: int, basis: str) -> "StabilizerTableau":
        """Reset a qubit to |0> (basis Z) or |+> (basis X).

        The qubit must be unentangled in the current tableau (fresh wire or
        just measured); rows acting on it nontrivially are rejected.
        """
        b = _bit(self.n, qubit)
        for r in self.stabilizers + list(self.tracked.values()):
            if (r.x_mask | r.z_mask) & b and r.weight() > 1:
                raise TableauError(f"qubit {qubit} still entangled; cannot re-prepare")
        self.stabilizers = [
            r for r in self.stabilizers if not ((r.x_mask | r.z_mask) & b)
        ]
        self.stabilizers.append(PauliString.single(self.n, qubit, basis))
        return self

    def measure(self, p: PauliString, rng=None, force: int | None = None):
        """Measure the Hermitian Pauli p.

        Returns (outcome, deterministic) with outcome +1/-1 carried as a phase
        exponent 0 or 2.  Random outcomes come from rng (or are forced for
        postselection); the tableau is updated in place.
        """
        if p.phase not in (0, 2):
            raise TableauError("measurement operator must be Hermitian")
        anti = [i for i, r in enumerate(self.stabilizers) if not r.commutes(p)]
        if anti:
            if force is not None:
                outcome = force
            elif rng is not None:
                outcome = rng.choice((0, 2))
            else:
                raise TableauError("random outcome requires rng or force")
            pivot = self.stabilizers[anti[0]]
            for i in anti[1:]:
                self.stabilizers[i] = self.stabilizers[i] * pivot
            self.tracked = {
                k: (v * pivot if not v.commutes(p) else v) for k, v in self.tracked.items()
            }
            signed = PauliString(p.n, p.x_mask, p.z_mask, (p.phase + outcome) % 4)
            self.stabilizers[anti[0]] = signed
            return (outcome, False)
        phase = in_group(p, self.stabilizers, up_to_sign=True)
        if phase is not None:
            return (phase, True)
        # p commutes with all stabilizers but is not in the group: it reads a
        # tracked degree of freedom and collapses it.
        if force is not None:
            outcome = force
        elif rng is not None:
            outcome = rng.choice((0, 2))
        else:
            raise TableauError("random outcome requires rng or force")
        anti_tracked = [k for k, v in self.tracked.items() if not v.commutes(p)]
        if anti_tracked:
            pivot = self.tracked[anti_tracked[0]]
            for k in anti_tracked[1:]:
                self.tracked[k] = self.tracked[k] * pivot
            del self.tracked[anti_tracked[0]]
        self.stabilizers.append(
            PauliString(p.n, p.x_mask, p.z_mask, (p.phase + outcome) % 4)
        )
        return (outcome, False)

    def reduce_tracked(self) -> "StabilizerTableau":
        """Multiply tracked rows by stabilizers to minimize their weight."""
        for name, row in self.tracked.items():
            self.tracked[name] = min_weight_representative(row, self.stabilizers, signed=True)
        return self

    def stabilizer_group_equals(self, other: "StabilizerTableau") -> bool:
        return groups_equal(self.stabilizers, other.stabilizers)


# ---------------------------------------------------------------------------
# Cluster states and minimum-weight coset representatives
# ---------------------------------------------------------------------------


def cluster_state(n: int, edges: Iterable[tuple[int, int]]) -> StabilizerTableau:
    """Graph state tableau: X on each vertex, Z on its neighbors."""
    neighbors: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for a, b in edges:
        if a == b:
            raise TableauError("self-loop in cluster graph")
        neighbors[a].add(b)
        neighbors[b].add(a)
    rows = []
    for v in range(1, n + 1):
        row = PauliString.single(n, v, "X")
        for w in sorted(neighbors[v]):
            row = row * PauliString.single(n, w, "Z")
        rows.append(row)
    return StabilizerTableau(n, rows)


MAX_QUOTIENT = 1 << 20


def min_weight_representative(
    p: PauliString,
    quotient_generators: Sequence[PauliString],
    signed: bool = False,
) -> PauliString:
    """Minimum-weight element of p times the group the generators span.

    Ties break to the lexicographically smallest (x_mask, z_mask).  With
    ``signed=False`` the result's phase is canonicalized to +1, matching how
    error classes ignore phases.
    """
    gens = [g for g in canonicalize(quotient_generators)] if quotient_generators else []
    if 1 << len(gens) > MAX_QUOTIENT:
        raise TableauError(f"quotient group 2^{len(gens)} exceeds capacity")
    best = p
    best_key = (p.weight(), p.x_mask, p.z_mask)
    current = p
    total = 1 << len(gens)
    for code in range(1, total):
        # Gray-code walk: one generator multiplication per step.
        flip = (code ^ (code >> 1)) ^ ((code - 1) ^ ((code - 1) >> 1))
        current = current * gens[flip.bit_length() - 1]
        key = (current.weight(), current.x_mask, current.z_mask)
        if key < best_key:
            best_key = key
            best = current
    return best if signed else best.unsigned()
