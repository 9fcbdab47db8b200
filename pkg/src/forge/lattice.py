"""Integral lattices, sublattices, discriminant forms and overlattices.

Root lattices follow the negative definite convention: Dynkin Gram
matrices with -2 on the diagonal and +1 on edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .fqf import FQF, Element, is_totally_isotropic, mod1, mod2
from .linalg import IntMatrix, RatMatrix


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    """A free Z-module with the symmetric bilinear form given by ``gram``."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", rows)
        if any(len(r) != len(rows) for r in rows) or not linalg.is_symmetric(rows):
            raise LatticeError("Gram matrix must be square and symmetric")

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence[int]]) -> "Lattice":
        return cls(tuple(tuple(r) for r in gram))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def matrix(self) -> IntMatrix:
        return [list(r) for r in self.gram]

    def det(self) -> int:
        return linalg.det(self.gram)

    def signature(self) -> tuple[int, int, int]:
        return linalg.signature(self.gram)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def is_nondegenerate(self) -> bool:
        return self.det() != 0

    def is_unimodular(self) -> bool:
        return abs(self.det()) == 1

    def inner(self, u: Sequence, v: Sequence):
        return linalg.bilinear(u, self.gram, v)

    def norm(self, v: Sequence):
        return self.inner(v, v)

    def scaled(self, k: int) -> "Lattice":
        return Lattice.from_gram([[k * x for x in row] for row in self.gram])

    def to_json(self) -> str:
        return json.dumps({"rank": self.rank, "gram": self.matrix})

    @classmethod
    def from_json(cls, text: str) -> "Lattice":
        data = json.loads(text)
        n = data["rank"]
        gram = data["gram"]
        if gram and not isinstance(gram[0], list):
            gram = [gram[i * n:(i + 1) * n] for i in range(n)]
        if len(gram) != n:
            raise LatticeError(f"rank {n} does not match a {len(gram)}-row Gram matrix")
        return cls.from_gram(gram)


# ---------------------------------------------------------------------------
# constructors


def _dynkin(n: int, edges: Sequence[tuple[int, int]]) -> Lattice:
    G = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        G[i][j] = G[j][i] = 1
    return Lattice.from_gram(G)


def _chain(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def A(m: int) -> Lattice:
    if m < 1:
        raise LatticeError(f"A_{m} needs m >= 1")
    return _dynkin(m, _chain(m))


def D(n: int) -> Lattice:
    if n < 4:
        raise LatticeError(f"D_{n} needs n >= 4")
    return _dynkin(n, _chain(n - 1) + [(n - 3, n - 1)])


def E(n: int) -> Lattice:
    if n not in (6, 7, 8):
        raise LatticeError(f"E_{n} needs n in (6, 7, 8)")
    # chain of n-1 nodes with the extra node attached to the third one
    return _dynkin(n, _chain(n - 1) + [(2, n - 1)])


def U() -> Lattice:
    return Lattice.from_gram([[0, 1], [1, 0]])


def rank1(k: int) -> Lattice:
    if k == 0 or k % 2:
        raise LatticeError(f"<{k}> is not an even nondegenerate lattice")
    return Lattice.from_gram([[k]])


def root_lattice(kind: str, n: int | None = None) -> Lattice:
    """Dispatch on names like ``"A"``, ``"D"``, ``"E"``, ``"U"``, ``"rank1"``, ``"A1_24"``.

    Also accepts the compact spellings ``"A10"``, ``"E7"``, ``"D4"``.
    """
    if kind == "U":
        return U()
    if kind == "A1_24":
        return direct_sum(*[A(1)] * 24)
    if kind == "rank1":
        if n is None:
            raise LatticeError("rank1 needs its norm")
        return rank1(n)
    head, tail = kind[:1], kind[1:]
    if tail:
        if n is not None or not tail.isdigit():
            raise LatticeError(f"bad lattice name {kind!r}")
        n = int(tail)
    if n is None:
        raise LatticeError(f"{kind} needs a rank")
    try:
        return {"A": A, "D": D, "E": E}[head](n)
    except KeyError:
        raise LatticeError(f"unknown lattice kind {kind!r}") from None


def direct_sum(*lattices: Lattice) -> Lattice:
    return Lattice.from_gram(linalg.block_diag(*[L.gram for L in lattices]))


# ---------------------------------------------------------------------------
# sublattices


@dataclass(frozen=True)
class Sublattice:
    """Rows of ``basis`` are ambient coordinates of generators, kept in HNF."""

    ambient: Lattice
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, ambient: Lattice, rows: Sequence[Sequence[int]]) -> "Sublattice":
        rows = [list(r) for r in rows]
        if any(len(r) != ambient.rank for r in rows):
            raise LatticeError("generator length differs from ambient rank")
        return cls(ambient, tuple(tuple(r) for r in linalg.hnf_basis(rows)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def gram(self) -> IntMatrix:
        B = [list(r) for r in self.basis]
        return linalg.matmul(linalg.matmul(B, self.ambient.gram), linalg.transpose(B))

    def lattice(self) -> Lattice:
        return Lattice.from_gram(self.gram)

    def contains(self, v: Sequence) -> bool:
        """Membership of an ambient vector (rational entries allowed)."""
        if any(Fraction(x).denominator != 1 for x in v):
            return False
        v = [int(x) for x in v]
        B = [list(r) for r in self.basis]
        return linalg.hnf_basis(B + [v]) == B


def saturation(T: Sublattice) -> Sublattice:
    """Smallest primitive sublattice containing ``T``."""
    n = T.ambient.rank
    B = [list(r) for r in T.basis]
    perp = linalg.kernel_int(linalg.transpose(B, n), rows=n)
    sat = linalg.kernel_int(linalg.transpose(perp, n), rows=n)
    return Sublattice(T.ambient, tuple(tuple(r) for r in sat))


def rational_span_saturation(ambient: Lattice, rows: Sequence[Sequence]) -> Sublattice:
    """``ambient`` intersected with the Q-span of rational coordinate rows."""
    d = linalg.common_denominator(rows)
    ints = [[int(Fraction(x) * d) for x in r] for r in rows]
    return saturation(Sublattice.span(ambient, ints))


def orthogonal_complement(T: Sublattice) -> Sublattice:
    """``{v : <v, t> = 0 for all t in T}``, a primitive sublattice."""
    L = T.ambient
    n = L.rank
    B = [list(r) for r in T.basis]
    GB = linalg.matmul(L.gram, linalg.transpose(B, n), inner=0) if B else [[] for _ in range(n)]
    K = linalg.kernel_int(GB, rows=n)
    return Sublattice(L, tuple(tuple(r) for r in K))


def intersect(T1: Sublattice, T2: Sublattice) -> Sublattice:
    if T1.ambient != T2.ambient:
        raise LatticeError("sublattices live in different ambient lattices")
    if not T1.basis or not T2.basis:
        return Sublattice(T1.ambient, ())
    B1 = [list(r) for r in T1.basis]
    B2 = [list(r) for r in T2.basis]
    K = linalg.kernel_int(B1 + [[-x for x in r] for r in B2])
    rows = [linalg.vecmat(k[: len(B1)], B1) for k in K]
    return Sublattice.span(T1.ambient, rows)


def is_primitive(T: Sublattice) -> bool:
    return saturation(T).basis == T.basis


# ---------------------------------------------------------------------------
# discriminant forms


@dataclass(frozen=True)
class DiscriminantForm:
    """``(A_L, q_L)`` with dual-lattice lifts of the generators.

    ``lifts[i]`` is a vector of ``L*`` in the coordinates of ``L``'s basis
    whose class generates the i-th cyclic factor of order ``fqf.orders[i]``.
    """

    fqf: FQF
    lifts: tuple[tuple[Fraction, ...], ...]
    # maps a dual vector to generator coefficients: c = y @ coord_matrix (mod orders)
    coord_matrix: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    @property
    def orders(self) -> tuple[int, ...]:
        return self.fqf.orders

    @property
    def order(self) -> int:
        return self.fqf.order

    def lift(self, x: Sequence[int]) -> list[Fraction]:
        n = len(self.coord_matrix)
        out = [Fraction(0)] * n
        for c, v in zip(x, self.lifts):
            if c:
                for k in range(n):
                    out[k] += c * v[k]
        return out

    def coordinates(self, y: Sequence) -> Element:
        """Class of a dual vector ``y`` as a coefficient tuple."""
        c = linalg.vecmat([Fraction(v) for v in y], self.coord_matrix)
        if any(Fraction(v).denominator != 1 for v in c):
            raise LatticeError("vector does not lie in the dual lattice")
        return self.fqf.reduce([int(v) for v in c])


def discriminant_form(L: Lattice) -> DiscriminantForm:
    """Cyclic decomposition of ``L*/L`` from the Smith form of the Gram matrix."""
    if not L.is_even():
        raise LatticeError("discriminant form needs an even lattice")
    if not L.is_nondegenerate():
        raise LatticeError("discriminant form needs a nondegenerate lattice")
    n = L.rank
    S = linalg.snf(L.gram)
    # U G V = D  =>  L* = Z^n G^-1 is spanned by the rows U_i / d_i
    keep = [i for i, d in enumerate(S.diagonal) if d > 1]
    orders = [S.diagonal[i] for i in keep]
    lifts = [[Fraction(x, S.diagonal[i]) for x in S.U[i]] for i in keep]
    G = L.gram
    q = [mod2(linalg.bilinear(v, G, v)) for v in lifts]
    b = [[mod1(linalg.bilinear(u, G, v)) for v in lifts] for u in lifts]
    fqf = FQF.build(orders, q, b)
    # y = c D^-1 U  =>  c = y U^-1 D, restricted to the kept factors
    Uinv = linalg.inverse(S.U)
    coord = [[Uinv[r][i] * S.diagonal[i] for i in keep] for r in range(n)]
    return DiscriminantForm(
        fqf,
        tuple(tuple(v) for v in lifts),
        tuple(tuple(r) for r in coord),
    )


def direct_sum_forms(*forms: DiscriminantForm) -> DiscriminantForm:
    """Discriminant form of an orthogonal sum, with block-placed lifts."""
    from .fqf import direct_sum as fqf_sum

    n = sum(len(f.coord_matrix) for f in forms)
    lifts: list[list[Fraction]] = []
    coord: list[list[Fraction]] = [[] for _ in range(n)]
    k = sum(f.fqf.ngens for f in forms)
    off = 0
    col = 0
    for f in forms:
        m = len(f.coord_matrix)
        for v in f.lifts:
            lifts.append([Fraction(0)] * off + list(v) + [Fraction(0)] * (n - off - m))
        for r in range(n):
            if off <= r < off + m:
                row = list(f.coord_matrix[r - off])
            else:
                row = [Fraction(0)] * f.fqf.ngens
            coord[r].extend(row)
        off += m
        col += f.fqf.ngens
    assert col == k
    return DiscriminantForm(
        fqf_sum(*[f.fqf for f in forms]),
        tuple(tuple(v) for v in lifts),
        tuple(tuple(r) for r in coord),
    )


def l_invariant(L: Lattice) -> int:
    """Minimal number of generators of ``L*/L``."""
    if not L.is_nondegenerate():
        raise LatticeError("l(L) needs a nondegenerate lattice")
    return sum(1 for d in linalg.snf(L.gram).diagonal if d > 1)


# ---------------------------------------------------------------------------
# overlattices


@dataclass(frozen=True)
class GlueSpec:
    """Generators (dual lifts in L-coordinates) of an isotropic subgroup of order ``order``."""

    generators: tuple[tuple[Fraction, ...], ...]
    order: int

    @classmethod
    def of(cls, generators: Sequence[Sequence], order: int) -> "GlueSpec":
        return cls(tuple(tuple(Fraction(x) for x in g) for g in generators), order)

    @classmethod
    def from_elements(cls, form: DiscriminantForm, elements: Sequence[Element], order: int) -> "GlueSpec":
        if not is_totally_isotropic(form.fqf, elements):
            raise LatticeError("glue elements do not span an isotropic subgroup")
        return cls.of([form.lift(x) for x in elements], order)


def overlattice_basis(L: Lattice, glue: GlueSpec) -> RatMatrix:
    """Basis (rational L-coordinates, HNF over a common denominator) of the glued lattice."""
    n = L.rank
    G = L.gram
    gens = [list(g) for g in glue.generators]
    for g in gens:
        if len(g) != n:
            raise LatticeError("glue vector length differs from lattice rank")
        if any(Fraction(v).denominator != 1 for v in linalg.vecmat(g, G)):
            raise LatticeError("glue vector is not in the dual lattice")
    for i, g in enumerate(gens):
        if mod2(linalg.bilinear(g, G, g)) != 0:
            raise LatticeError("glue vector is not isotropic")
        for h in gens[i + 1:]:
            if mod1(linalg.bilinear(g, G, h)) != 0:
                raise LatticeError("glue vectors are not mutually orthogonal mod Z")
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)] + gens
    d = linalg.common_denominator(rows)
    H = linalg.hnf_basis([[int(x * d) for x in r] for r in rows])
    return [[Fraction(x, d) for x in r] for r in H]


def overlattice_from_glue(L: Lattice, glue: GlueSpec) -> Lattice:
    """Even overlattice of ``L`` determined by an isotropic subgroup of ``A_L``."""
    B = overlattice_basis(L, glue)
    index_inv = linalg.det_rational(B)
    index = 1 / abs(index_inv)
    if index.denominator != 1 or int(index) != glue.order:
        raise LatticeError(f"glue generates a subgroup of order {index}, expected {glue.order}")
    gram = linalg.matmul(linalg.matmul(B, L.gram), linalg.transpose(B))
    if any(x.denominator != 1 for row in gram for x in row):
        raise LatticeError("glued form is not integral")
    S = Lattice.from_gram([[int(x) for x in row] for row in gram])
    if not S.is_even():
        raise LatticeError("glued lattice is odd")
    return S


def genus_hypothesis(L: Lattice) -> bool:
    """Indefinite and ``rank >= l(L) + 2``: the usual sufficient condition for a one-class genus."""
    pos, neg, zero = L.signature()
    return zero == 0 and pos > 0 and neg > 0 and L.rank >= l_invariant(L) + 2
