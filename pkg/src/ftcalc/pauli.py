"""n-qubit Pauli operators in the binary symplectic representation.

A Pauli operator is stored as a pair of bit masks (X part, Z part) plus a
phase that is a power of i.  Qubit 1 is the leftmost letter in text form and
occupies the most significant bit of each mask, so integer comparison of
masks coincides with left-to-right lexicographic comparison of the letters.

Masks are plain Python integers, so any qubit count is supported; the
fixed-width fast path and the arbitrary-width path are the same code.
"""

from __future__ import annotations

from dataclasses import dataclass

_PHASE_STR = {0: "", 1: "i", 2: "-", 3: "-i"}
_STR_PHASE = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}


class PauliError(ValueError):
    """Raised for malformed Pauli text or dimension mismatches."""


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class PauliString:
    """Immutable n-qubit Pauli operator i^phase * (letter string).

    ``phase`` is the exponent of i relative to the letter form, e.g.
    ``PauliString(1, 1, 1, phase=0)`` is +Y on one qubit while the bare
    X.Z product on that qubit would be -iY.
    """

    n: int
    x_mask: int
    z_mask: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise PauliError(f"negative qubit count {self.n}")
        full = (1 << self.n) - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise PauliError("mask has bits outside the qubit range")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- basic structure ------------------------------------------------

    @staticmethod
    def identity(n: int) -> "PauliString":
        return PauliString(n, 0, 0, 0)

    @staticmethod
    def single(n: int, qubit: int, kind: str) -> "PauliString":
        """One nontrivial letter (X, Y or Z) on a 1-indexed qubit."""
        bit = _qubit_bit(n, qubit)
        if kind == "X":
            return PauliString(n, bit, 0)
        if kind == "Z":
            return PauliString(n, 0, bit)
        if kind == "Y":
            return PauliString(n, bit, bit)
        raise PauliError(f"unknown Pauli letter {kind!r}")

    def letter(self, qubit: int) -> str:
        bit = _qubit_bit(self.n, qubit)
        x = bool(self.x_mask & bit)
        z = bool(self.z_mask & bit)
        return "IXZY"[x + 2 * z]

    def weight(self) -> int:
        return _popcount(self.x_mask | self.z_mask)

    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    @property
    def support(self) -> tuple[int, ...]:
        """1-indexed qubits where this operator is nontrivial."""
        m = self.x_mask | self.z_mask
        return tuple(q for q in range(1, self.n + 1) if m & _qubit_bit(self.n, q))

    # -- group structure -------------------------------------------------

    def _xz_phase(self) -> int:
        # exponent of i when written as i^t * X^x Z^z
        return (self.phase + _popcount(self.x_mask & self.z_mask)) % 4

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise PauliError(f"dimension mismatch: {self.n} vs {other.n}")
        # (i^t1 X^a Z^b)(i^t2 X^c Z^d) = i^(t1+t2) (-1)^|b&c| X^(a^c) Z^(b^d)
        t = self._xz_phase() + other._xz_phase() + 2 * _popcount(self.z_mask & other.x_mask)
        x = self.x_mask ^ other.x_mask
        z = self.z_mask ^ other.z_mask
        return PauliString(self.n, x, z, (t - _popcount(x & z)) % 4)

    def inverse(self) -> "PauliString":
        sq = self * self  # i^(2t) I, so halving its phase is the correction
        return PauliString(self.n, self.x_mask, self.z_mask, (self.phase - sq.phase) % 4)

    def commutes(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise PauliError(f"dimension mismatch: {self.n} vs {other.n}")
        s = _popcount(self.x_mask & other.z_mask) + _popcount(self.z_mask & other.x_mask)
        return s % 2 == 0

    def symplectic_product(self, other: "PauliString") -> int:
        return (_popcount(self.x_mask & other.z_mask)
                + _popcount(self.z_mask & other.x_mask)) % 2

    def unsigned(self) -> "PauliString":
        return PauliString(self.n, self.x_mask, self.z_mask, 0)

    def negate(self) -> "PauliString":
        return PauliString(self.n, self.x_mask, self.z_mask, (self.phase + 2) % 4)

    def key(self) -> tuple[int, int]:
        """Phase-insensitive sort key; compares letter strings left to right."""
        return (self.x_mask, self.z_mask)

    # -- text form --------------------------------------------------------

    def __str__(self) -> str:
        return self.format()

    def format(self, dot_identity: bool = False) -> str:
        letters = "".join(self.letter(q) for q in range(1, self.n + 1))
        if dot_identity:
            letters = letters.replace("I", "\N{MIDDLE DOT}")
        return _PHASE_STR[self.phase] + letters


def _qubit_bit(n: int, qubit: int) -> int:
    if not 1 <= qubit <= n:
        raise PauliError(f"qubit {qubit} out of range 1..{n}")
    return 1 << (n - qubit)


def commutes(a: PauliString, b: PauliString) -> bool:
    return a.commutes(b)


def multiply(a: PauliString, b: PauliString) -> PauliString:
    return a * b


def weight(a: PauliString) -> int:
    return a.weight()


def parse(text: str) -> PauliString:
    """Parse a Pauli from text such as ``XZXY``, ``-iY`` or ``ZZ\N{MIDDLE DOT}Z``.

    Middle dot and ``.`` are aliases for I.  An optional prefix from
    ``+ - i +i -i`` sets the phase.
    """
    stripped = text.strip()
    body_start = 0
    prefix = ""
    for cand in ("-i", "+i", "-", "+", "i"):
        if stripped.startswith(cand):
            prefix = cand
            body_start = len(cand)
            break
    body = stripped[body_start:]
    n = len(body)
    if n == 0:
        raise PauliError(f"empty Pauli body in {text!r}")
    x = z = 0
    for pos, ch in enumerate(body):
        bit = 1 << (n - 1 - pos)
        if ch in ("I", "\N{MIDDLE DOT}", "."):
            continue
        if ch == "X":
            x |= bit
        elif ch == "Z":
            z |= bit
        elif ch == "Y":
            x |= bit
            z |= bit
        else:
            raise PauliError(f"invalid character {ch!r} at position {body_start + pos} in {text!r}")
    return PauliString(n, x, z, _STR_PHASE[prefix])


def from_letters(letters: str) -> PauliString:
    return parse(letters)
