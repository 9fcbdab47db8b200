"""Short vectors of definite lattices with exact arithmetic.

LLL on the Gram matrix with rational Gram-Schmidt data, then Fincke-Pohst
enumeration on the reduced basis.  Negative definite input is negated
internally; reported norms keep the caller's sign.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator

from . import linalg
from .lattice import Lattice, LatticeError

log = logging.getLogger(__name__)

DELTA = Fraction(99, 100)


@dataclass(frozen=True)
class ReducedBasis:
    """``transform @ original @ transform.T == gram``; rows of ``transform`` are the new basis."""

    gram: tuple[tuple[int, ...], ...]
    transform: tuple[tuple[int, ...], ...]
    sign: int  # +1 if the input was positive definite, -1 if it was negated


@dataclass(frozen=True)
class ShortVectorReport:
    bound: int
    vectors: tuple[tuple[tuple[int, ...], int], ...]  # (vector, norm), one of each +-pair
    status: str = "ok"

    @property
    def counts(self) -> dict[int, int]:
        return dict(sorted(Counter(n for _, n in self.vectors).items()))

    def __len__(self) -> int:
        return len(self.vectors)


def _definiteness(L: Lattice) -> int:
    pos, neg, zero = L.signature()
    if zero == 0 and neg == 0:
        return 1
    if zero == 0 and pos == 0:
        return -1
    raise LatticeError(f"lattice with signature {(pos, neg, zero)} is not definite")


def lll_reduce(L: Lattice, delta: Fraction = DELTA) -> ReducedBasis:
    """LLL reduction of a definite lattice, exact rational Gram-Schmidt."""
    sign = _definiteness(L) if L.rank else 1
    n = L.rank
    G = [[sign * x for x in row] for row in L.gram]
    T = linalg.identity(n)
    if n == 0:
        return ReducedBasis((), (), sign)
    mu = [[Fraction(0)] * n for _ in range(n)]
    Bn = [Fraction(0)] * n

    def gso(k):
        for j in range(k):
            s = Fraction(G[k][j])
            for i in range(j):
                s -= mu[j][i] * mu[k][i] * Bn[i]
            mu[k][j] = s / Bn[j]
        s = Fraction(G[k][k])
        for j in range(k):
            s -= mu[k][j] * mu[k][j] * Bn[j]
        Bn[k] = s

    def reduce(k, l):
        m = mu[k][l]
        if abs(m) <= Fraction(1, 2):
            return
        q = (m + Fraction(1, 2)).__floor__()
        # b_k -= q b_l
        T[k] = [a - q * b for a, b in zip(T[k], T[l])]
        gkl, gll = G[k][l], G[l][l]
        G[k][k] += -2 * q * gkl + q * q * gll
        for j in range(n):
            if j != k:
                G[k][j] -= q * G[l][j]
                G[j][k] = G[k][j]
        mu[k][l] -= q
        for i in range(l):
            mu[k][i] -= q * mu[l][i]

    def swap(k, kmax):
        T[k], T[k - 1] = T[k - 1], T[k]
        G[k], G[k - 1] = G[k - 1], G[k]
        for row in G:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m = mu[k][k - 1]
        B = Bn[k] + m * m * Bn[k - 1]
        mu[k][k - 1] = m * Bn[k - 1] / B
        Bn[k] = Bn[k - 1] * Bn[k] / B
        Bn[k - 1] = B
        for i in range(k + 1, kmax + 1):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    gso(0)
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gso(k)
        reduce(k, k - 1)
        if Bn[k] < (delta - mu[k][k - 1] ** 2) * Bn[k - 1]:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                reduce(k, l)
            k += 1
    gram = tuple(tuple(sign * x for x in row) for row in G)
    return ReducedBasis(gram, tuple(tuple(r) for r in T), sign)


def _cholesky(G) -> tuple[list[list[Fraction]], list[Fraction]]:
    """``G = sum_i Bn[i] (x_i + sum_{j>i} mu[j][i] x_j)^2`` data for positive definite ``G``."""
    n = len(G)
    mu = [[Fraction(0)] * n for _ in range(n)]
    Bn = [Fraction(0)] * n
    for k in range(n):
        for j in range(k):
            s = Fraction(G[k][j]) - sum((mu[j][i] * mu[k][i] * Bn[i] for i in range(j)), Fraction(0))
            mu[k][j] = s / Bn[j]
        Bn[k] = G[k][k] - sum((mu[k][j] ** 2 * Bn[j] for j in range(k)), Fraction(0))
    return mu, Bn


def _fincke_pohst(G, bound: int) -> Iterator[list[int]]:
    """Nonzero x, one of each +-pair, with ``x G x^T <= bound`` (G positive definite).

    The rational Cholesky data is scaled to integers once, so the tree
    search itself runs on exact integer arithmetic.
    """
    n = len(G)
    mu, Bn = _cholesky(G)
    # column i of mu over a common denominator den[i]; weights over a global scale
    den = [lcm(1, *(mu[j][i].denominator for j in range(i + 1, n))) for i in range(n)]
    a = [[int(mu[j][i] * den[i]) for i in range(n)] for j in range(n)]
    coef = [Bn[i] / (den[i] * den[i]) for i in range(n)]
    scale = lcm(1, *(c.denominator for c in coef))
    w = [int(c * scale) for c in coef]
    x = [0] * n

    def rec(i: int, rem: int, all_zero: bool) -> Iterator[list[int]]:
        # b (t - c)^2 <= rem  with  c = C / d
        d, wi = den[i], w[i]
        C = 0
        for j in range(i + 1, n):
            if x[j]:
                C -= a[j][i] * x[j]
        ts = []
        t = C // d
        while True:
            e = t * d - C
            if wi * e * e > rem:
                break
            ts.append(t)
            t -= 1
        t = C // d + 1
        while True:
            e = t * d - C
            if wi * e * e > rem:
                break
            ts.append(t)
            t += 1
        if all_zero:
            ts = [t for t in ts if t >= 0]
        ts.sort(key=lambda t: (abs(t), -t))
        for t in ts:
            x[i] = t
            e = t * d - C
            left = rem - wi * e * e
            zero = all_zero and t == 0
            if i == 0:
                if not zero:
                    yield list(x)
            else:
                yield from rec(i - 1, left, zero)
        x[i] = 0

    if n:
        yield from rec(n - 1, bound * scale, True)


def _canonical_sign(v: list[int]) -> tuple[int, ...]:
    for a in v:
        if a:
            return tuple(v) if a > 0 else tuple(-b for b in v)
    return tuple(v)


def short_vectors(L: Lattice, bound: int, reduced: ReducedBasis | None = None) -> ShortVectorReport:
    """All nonzero ``v`` (up to sign) with ``0 < |<v, v>| <= |bound|``.

    ``bound`` is given in the caller's sign convention; a bound whose sign
    disagrees with the lattice's definiteness yields an empty report with a
    warning status.
    """
    if L.rank == 0:
        return ShortVectorReport(bound, ())
    red = reduced or lll_reduce(L)
    if bound * red.sign < 0:
        log.warning("norm bound %s has the wrong sign for this lattice", bound)
        return ShortVectorReport(bound, (), status="sign-mismatch")
    R = abs(bound)
    Gpos = [[red.sign * x for x in row] for row in red.gram]
    T = [list(r) for r in red.transform]
    found = []
    for x in _fincke_pohst(Gpos, R):
        v = _canonical_sign(linalg.vecmat(x, T))
        found.append((v, L.norm(v)))
    found.sort()
    return ShortVectorReport(bound, tuple(found))


def vectors_with_norm(L: Lattice, n: int, reduced: ReducedBasis | None = None) -> ShortVectorReport:
    """All vectors (up to sign) of norm exactly ``n``."""
    if n == 0:
        raise ValueError("norm must be nonzero")
    rep = short_vectors(L, n, reduced)
    return ShortVectorReport(n, tuple(p for p in rep.vectors if p[1] == n), rep.status)


def min_norm(L: Lattice, reduced: ReducedBasis | None = None) -> int:
    """Smallest ``|<v, v>|`` over nonzero ``v``."""
    if L.rank == 0:
        raise LatticeError("minimum of a rank-0 lattice")
    red = reduced or lll_reduce(L)
    # a basis vector attains the diagonal minimum; only strictly shorter ones can beat it
    best = min(abs(red.gram[i][i]) for i in range(L.rank))
    if best == 1:
        return 1
    rep = short_vectors(L, red.sign * (best - 1), red)
    return min([best] + [abs(norm) for _, norm in rep.vectors])
