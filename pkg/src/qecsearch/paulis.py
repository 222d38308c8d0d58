"""Pauli strings: algebra, weights, and canonical enumeration.

A Pauli string is a scalar coefficient times a tensor product of
single-qubit letters from {I, X, Y, Z}, with qubit 0 leftmost.  Strings
are kept in a normal form (letters + one complex coefficient) so that
products, adjoints and deduplication are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

_LETTERS = "IXYZ"

_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# single-letter products: _PROD[a][b] = (phase, letter) with a.b = phase*letter
_PROD = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


@dataclass(frozen=True)
class PauliString:
    """Coefficient times a product of Pauli letters, qubit 0 leftmost."""

    letters: str
    coefficient: complex = 1.0 + 0.0j

    def __post_init__(self):
        if any(c not in _LETTERS for c in self.letters):
            raise ValueError(f"invalid Pauli letters {self.letters!r}")
        object.__setattr__(self, "coefficient", complex(self.coefficient))

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def weight(self) -> int:
        return sum(c != "I" for c in self.letters)

    def letter_counts(self) -> tuple[int, int, int]:
        """(number of X, number of Y, number of Z) letters."""
        return (
            self.letters.count("X"),
            self.letters.count("Y"),
            self.letters.count("Z"),
        )

    def effective_weight(self, c_z: float) -> float:
        """X and Y letters count 1, Z letters count ``c_z``."""
        wx, wy, wz = self.letter_counts()
        return wx + wy + c_z * wz

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(q for q, c in enumerate(self.letters) if c != "I")

    def adjoint(self) -> PauliString:
        return PauliString(self.letters, np.conj(self.coefficient))

    def __mul__(self, other: PauliString) -> PauliString:
        if self.n != other.n:
            raise ValueError("length mismatch in Pauli product")
        phase = self.coefficient * other.coefficient
        out = []
        for a, b in zip(self.letters, other.letters):
            p, c = _PROD[(a, b)]
            phase *= p
            out.append(c)
        return PauliString("".join(out), phase)

    def commutes_with(self, other: PauliString) -> bool:
        anti = sum(
            1
            for a, b in zip(self.letters, other.letters)
            if a != "I" and b != "I" and a != b
        )
        return anti % 2 == 0

    def masks(self) -> tuple[int, int]:
        """(flip_mask, sign_mask) over amplitude indices, qubit 0 = MSB.

        flip_mask has a bit for every X or Y letter, sign_mask for every
        Y or Z letter.  The action on a basis state |i> is
        coeff * i^{|Y|} * (-1)^{popcount(i & sign_mask)} |i ^ flip_mask>.
        """
        n = self.n
        fm = sm = 0
        for q, c in enumerate(self.letters):
            bit = 1 << (n - 1 - q)
            if c in "XY":
                fm |= bit
            if c in "YZ":
                sm |= bit
        return fm, sm

    def matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix, for small n only."""
        m = np.array([[self.coefficient]])
        for c in self.letters:
            m = np.kron(m, _MATS[c])
        return m

    def key(self) -> tuple:
        """Hashable identity ignoring the coefficient."""
        return ("pauli", self.letters)


def identity_pauli(n: int) -> PauliString:
    return PauliString("I" * n)


def single_site(n: int, q: int, letter: str, coefficient: complex = 1.0) -> PauliString:
    word = ["I"] * n
    word[q] = letter
    return PauliString("".join(word), coefficient)


def pauli_from_support(n: int, support, letters, coefficient: complex = 1.0) -> PauliString:
    word = ["I"] * n
    for q, c in zip(support, letters):
        word[q] = c
    return PauliString("".join(word), coefficient)


def enumerate_weight(n: int, w: int):
    """All weight-w Pauli strings in canonical order.

    Supports are visited in lexicographic order of the index tuple and
    letters in X < Y < Z order at each site, so the sequence is stable
    across runs.
    """
    if w == 0:
        yield identity_pauli(n)
        return
    for support in itertools.combinations(range(n), w):
        for letters in itertools.product("XYZ", repeat=w):
            yield pauli_from_support(n, support, letters)


def enumerate_below_weight(n: int, w_max: int):
    """All Pauli strings of weight 0 <= w < w_max, weight-major order."""
    for w in range(w_max):
        yield from enumerate_weight(n, w)


def count_below_weight(n: int, w_max: int) -> int:
    """Number of strings enumerate_below_weight yields: sum_j C(n,j) 3^j."""
    from math import comb

    return sum(comb(n, j) * 3**j for j in range(w_max))
