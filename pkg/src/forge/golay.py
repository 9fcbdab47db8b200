"""The extended binary Golay code and the Niemeier lattice with roots A1^24.

Points are labelled 1..24.  Point 1 is the coordinate at infinity of the
extended quadratic residue code and point ``k + 2`` is the residue ``k``
modulo 23.  Codewords are 24-bit masks with bit ``p - 1`` for point ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from . import linalg
from .lattice import Lattice

LENGTH = 24
GOLAY_WEIGHTS = {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
ALL_ONES = (1 << LENGTH) - 1


class GolayError(RuntimeError):
    """A construction self-check failed."""


class NoCodeword(LookupError):
    """No codeword satisfies the requested constraints."""


def weight(word: int) -> int:
    return bin(word).count("1")


def points(word: int) -> tuple[int, ...]:
    return tuple(p + 1 for p in range(LENGTH) if word >> p & 1)


def mask(pts: Iterable[int]) -> int:
    m = 0
    for p in pts:
        if not 1 <= p <= LENGTH:
            raise ValueError(f"point {p} outside 1..{LENGTH}")
        m |= 1 << (p - 1)
    return m


def _rref_gf2(rows: list[int]) -> list[int]:
    """Reduced row echelon form over F2; pivots scanned from point 1 upward."""
    rows = list(rows)
    out: list[int] = []
    for bit in range(LENGTH):
        piv = next((r for r in rows if r >> bit & 1), None)
        if piv is None:
            continue
        rows.remove(piv)
        rows = [r ^ piv if r >> bit & 1 else r for r in rows]
        out = [r ^ piv if r >> bit & 1 else r for r in out]
        out.append(piv)
    return out


@dataclass(frozen=True)
class GolayCode:
    generators: tuple[int, ...]
    words: tuple[int, ...] = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.generators)

    def generator_matrix(self) -> list[list[int]]:
        return [[g >> p & 1 for p in range(LENGTH)] for g in self.generators]

    def __contains__(self, word: int) -> bool:
        return word in self._wordset

    @cached_property
    def _wordset(self) -> frozenset[int]:
        return frozenset(self.words)

    def weight_distribution(self) -> dict[int, int]:
        dist: dict[int, int] = {}
        for w in self.words:
            k = weight(w)
            dist[k] = dist.get(k, 0) + 1
        return dict(sorted(dist.items()))

    def is_self_dual(self) -> bool:
        gens = self.generators
        orthogonal = all(weight(a & b) % 2 == 0 for a in gens for b in gens)
        return orthogonal and 2 * self.dimension == LENGTH

    def with_weight(self, k: int) -> list[int]:
        """Codewords of weight ``k`` ordered lexicographically by point tuple."""
        return sorted((w for w in self.words if weight(w) == k), key=points)


def build_golay() -> GolayCode:
    """Extended quadratic residue code of length 24, in systematic form."""
    qr = sorted({x * x % 23 for x in range(1, 23)})
    rows = []
    for shift in range(23):
        rows.append(1 | mask((q + shift) % 23 + 2 for q in qr))
    gens = _rref_gf2(rows)
    words = [0]
    for g in gens:
        words += [w ^ g for w in words]
    code = GolayCode(tuple(gens), tuple(sorted(words)))
    _check_golay(code)
    return code


def _check_golay(code: GolayCode) -> None:
    if code.dimension != 12:
        raise GolayError(f"dimension {code.dimension}, expected 12")
    if not code.is_self_dual():
        raise GolayError("code is not self-dual")
    if code.weight_distribution() != GOLAY_WEIGHTS:
        raise GolayError(f"weight distribution {code.weight_distribution()}")
    if ALL_ONES not in code:
        raise GolayError("all-ones word missing")


def _find(code: GolayCode, k: int, must_contain: Iterable[int], must_avoid: Iterable[int], index: int) -> int:
    need = mask(must_contain)
    avoid = mask(must_avoid)
    hits = [w for w in code.with_weight(k) if w & need == need and not w & avoid]
    if len(hits) <= index:
        raise NoCodeword(f"fewer than {index + 1} weight-{k} codewords meet the constraints")
    return hits[index]


def find_octad(code: GolayCode, must_contain=(), must_avoid=(), index: int = 0) -> int:
    """Lexicographically smallest octad (or the ``index``-th) meeting the constraints."""
    return _find(code, 8, must_contain, must_avoid, index)


def find_dodecad(code: GolayCode, must_contain=(), must_avoid=(), index: int = 0) -> int:
    return _find(code, 12, must_contain, must_avoid, index)


@dataclass(frozen=True)
class NiemeierA1:
    """Niemeier lattice N with root system A1^24, built from a Golay code.

    A vector of N is ``sum c_i x_i / 2`` with ``c mod 2`` in the code; we call
    ``c`` its half-root coordinates.  ``half_basis`` holds the half-root
    coordinates of the lattice basis, ``roots[i]`` the coordinates of
    ``x_{i+1}`` in that basis.
    """

    lattice: Lattice
    half_basis: tuple[tuple[int, ...], ...]
    roots: tuple[tuple[int, ...], ...]
    code: GolayCode = field(repr=False)

    def from_half(self, c) -> list:
        """Basis coordinates of the vector with half-root coordinates ``c`` (rational if not in N)."""
        return linalg.vecmat(list(c), self._half_inverse)

    def to_half(self, v) -> list:
        return linalg.vecmat(list(v), [list(r) for r in self.half_basis])

    @cached_property
    def _half_inverse(self):
        return linalg.inverse(self.half_basis)


def build_niemeier(code: GolayCode) -> NiemeierA1:
    rows = [[2 * int(i == j) for j in range(LENGTH)] for i in range(LENGTH)]
    rows += code.generator_matrix()
    B = linalg.hnf_basis(rows)
    if len(B) != LENGTH:
        raise GolayError("lattice basis has the wrong rank")
    # <x_i, x_j> = -2 delta_ij, so half-root coordinates pair by -c.d / 2
    BBt = linalg.matmul(B, linalg.transpose(B))
    if any(x % 2 for row in BBt for x in row):
        raise GolayError("glued form is not integral")
    lattice = Lattice.from_gram([[-x // 2 for x in row] for row in BBt])
    inv = linalg.inverse(B)
    roots = []
    for i in range(LENGTH):
        r = [2 * x for x in inv[i]]
        if any(x.denominator != 1 for x in r):
            raise GolayError(f"root x_{i + 1} is not a lattice vector")
        roots.append(tuple(int(x) for x in r))
    if not lattice.is_even() or abs(lattice.det()) != 1:
        raise GolayError("N is not even unimodular")
    if lattice.signature() != (0, LENGTH, 0):
        raise GolayError("N is not negative definite")
    return NiemeierA1(lattice, tuple(tuple(r) for r in B), tuple(roots), code)
