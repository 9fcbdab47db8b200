"""Exact integer and rational matrix algebra.

Matrices are plain lists of row lists holding Python ``int`` (or
``fractions.Fraction`` for the rational helpers).  Every function returns
fresh lists and never mutates its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    return rows, cols


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def copy(M: Sequence[Sequence]) -> list[list]:
    return [list(row) for row in M]


def transpose(M: Sequence[Sequence], cols: int | None = None) -> list[list]:
    """Transpose; ``cols`` gives the column count when ``M`` has no rows."""
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence], inner: int | None = None) -> list[list]:
    """Product ``A @ B``.  ``inner`` is needed only when ``B`` has no rows."""
    if not A:
        return []
    if not B:
        # A is (r x 0); result is r x 0 unless the caller says otherwise
        return [[0] * (inner or 0) for _ in A]
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vecmat(v: Sequence, M: Sequence[Sequence]) -> list:
    cols = len(M[0]) if M else 0
    out = [0] * cols
    for a, row in zip(v, M):
        if a:
            for j, b in enumerate(row):
                out[j] += a * b
    return out


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def bilinear(u: Sequence, G: Sequence[Sequence], v: Sequence):
    """``u G v^T``."""
    return dot(vecmat(u, G), v)


def block_diag(*blocks: Sequence[Sequence[int]]) -> IntMatrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return out


def is_symmetric(M: Sequence[Sequence]) -> bool:
    r, c = shape(M)
    return r == c and all(M[i][j] == M[j][i] for i in range(r) for j in range(i))


def common_denominator(M: Sequence[Sequence]) -> int:
    d = 1
    for row in M:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return d


def to_fractions(M: Sequence[Sequence]) -> RatMatrix:
    return [[Fraction(x) for x in row] for row in M]


# ---------------------------------------------------------------------------
# Hermite normal form


def hnf(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``H = U M``, ``U`` unimodular.  ``H`` is in row
    echelon form with positive pivots, entries above each pivot reduced
    into ``[0, pivot)``, and zero rows at the bottom.  The pivot row in each
    column is the one with smallest absolute entry, lowest index on ties.
    """
    m, n = shape(M)
    H = copy(M)
    U = identity(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            rows = [i for i in range(r, m) if H[i][j] != 0]
            if not rows:
                break
            p = min(rows, key=lambda i: (abs(H[i][j]), i))
            if p != r:
                H[p], H[r] = H[r], H[p]
                U[p], U[r] = U[r], U[p]
            done = True
            piv = H[r][j]
            for i in range(r + 1, m):
                if H[i][j]:
                    q = H[i][j] // piv
                    _axpy(H[i], -q, H[r])
                    _axpy(U[i], -q, U[r])
                    if H[i][j]:
                        done = False
            if done:
                break
        if r < m and H[r][j] != 0:
            if H[r][j] < 0:
                H[r] = [-x for x in H[r]]
                U[r] = [-x for x in U[r]]
            piv = H[r][j]
            for i in range(r):
                q = H[i][j] // piv
                if q:
                    _axpy(H[i], -q, H[r])
                    _axpy(U[i], -q, U[r])
            r += 1
    return H, U


def hnf_basis(M: Sequence[Sequence[int]]) -> IntMatrix:
    """Nonzero rows of the HNF: a canonical basis of the row lattice."""
    H, _ = hnf(M)
    return [row for row in H if any(row)]


def _axpy(y: list, a: int, x: Sequence) -> None:
    for k, xk in enumerate(x):
        if xk:
            y[k] += a * xk


def rank(M: Sequence[Sequence]) -> int:
    """Rank over Q (rational entries allowed)."""
    return len(hnf_basis(_clear(M)))


def _clear(M: Sequence[Sequence]) -> IntMatrix:
    d = common_denominator(M)
    return [[int(Fraction(x) * d) for x in row] for row in M]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """``U M V = D`` with ``U``, ``V`` unimodular and ``D`` a divisor chain."""

    U: IntMatrix
    V: IntMatrix
    D: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        r, c = shape(self.D)
        return [self.D[i][i] for i in range(min(r, c))]

    @property
    def invariant_factors(self) -> list[int]:
        """Nonzero diagonal entries."""
        return [d for d in self.diagonal if d]


def snf(M: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form by iterated gcd elimination with tracked transforms."""
    m, n = shape(M)
    A = copy(M)
    U = identity(m)
    V = identity(n)

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    def add_col(dst, src, q):
        # column dst += q * column src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = A[i][j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
            if best is None:
                return SmithForm(U, V, A)
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // piv
                    _axpy(A[i], -q, A[t])
                    _axpy(U[i], -q, U[t])
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            _axpy(A[t], 1, A[bad])
            _axpy(U[t], 1, U[bad])
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return SmithForm(U, V, A)


# ---------------------------------------------------------------------------
# kernels, determinants, signatures


def kernel_int(M: Sequence[Sequence[int]], rows: int | None = None) -> IntMatrix:
    """Saturated basis (in HNF) of the left integer kernel ``{v : v M = 0}``.

    ``rows`` is required only when ``M`` has zero columns, to fix the
    ambient dimension (every vector is then in the kernel).
    """
    m, n = shape(M)
    if rows is not None:
        m = rows
    if n == 0:
        return identity(m)
    H, U = hnf(M)
    K = [U[i] for i in range(m) if not any(H[i])]
    return hnf_basis(K) if K else []


def det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m, n = shape(M)
    if m != n:
        raise ValueError(f"determinant of a non-square {m}x{n} matrix")
    if n == 0:
        return 1
    A = copy(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def det_rational(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    d = common_denominator(M)
    return Fraction(det(_clear(M)), d**n)


def inverse(M: Sequence[Sequence]) -> RatMatrix:
    """Exact inverse over Q by Gauss-Jordan."""
    n, c = shape(M)
    if n != c:
        raise ValueError("inverse of a non-square matrix")
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[k], A[p] = A[p], A[k]
        inv = 1 / A[k][k]
        A[k] = [x * inv for x in A[k]]
        for i in range(n):
            if i != k and A[i][k]:
                f = A[i][k]
                A[i] = [x - f * y for x, y in zip(A[i], A[k])]
    return [row[n:] for row in A]


def signature(M: Sequence[Sequence]) -> tuple[int, int, int]:
    """``(n_plus, n_minus, n_zero)`` of a symmetric matrix, computed exactly.

    Symmetric elimination over Q.  When every remaining diagonal entry is
    zero but an off-diagonal one is not, the 2x2 hyperbolic block it spans
    contributes one positive and one negative direction.
    """
    if not is_symmetric(M):
        raise ValueError("signature of a non-symmetric matrix")
    A = to_fractions(M)
    pos = neg = 0
    while A:
        n = len(A)
        i = next((k for k in range(n) if A[k][k] != 0), None)
        if i is not None:
            a = A[i][i]
            if a > 0:
                pos += 1
            else:
                neg += 1
            rest = [k for k in range(n) if k != i]
            A = [[A[r][s] - A[r][i] * A[i][s] / a for s in rest] for r in rest]
            continue
        pair = next(((r, s) for r in range(n) for s in range(r + 1, n) if A[r][s] != 0), None)
        if pair is None:
            break
        r0, s0 = pair
        b = A[r0][s0]
        pos += 1
        neg += 1
        rest = [k for k in range(n) if k not in pair]
        # Schur complement against [[0, b], [b, 0]], whose inverse is [[0, 1/b], [1/b, 0]]
        A = [
            [A[r][s] - (A[r][r0] * A[s0][s] + A[r][s0] * A[r0][s]) / b for s in rest]
            for r in rest
        ]
    return pos, neg, len(A)


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    return abs(det(M)) == 1


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
