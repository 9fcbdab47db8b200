"""Slow, independent reference computations used only by the tests."""

import itertools
from fractions import Fraction
from functools import lru_cache
from math import isqrt


def cofactor_det(M):
    """Laplace expansion along the first row, memoized on column subsets."""
    n = len(M)

    @lru_cache(maxsize=None)
    def minor(row, cols):
        if row == n:
            return 1
        total = 0
        for k, c in enumerate(cols):
            if M[row][c]:
                rest = cols[:k] + cols[k + 1:]
                total += (-1) ** k * M[row][c] * minor(row + 1, rest)
        return total

    return minor(0, tuple(range(n)))


def gauss_inverse(M):
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for k in range(n):
        p = next(i for i in range(k, n) if A[i][k])
        A[k], A[p] = A[p], A[k]
        A[k] = [x / A[k][k] for x in A[k]]
        for i in range(n):
            if i != k:
                A[i] = [x - A[i][k] * y for x, y in zip(A[i], A[k])]
    return [r[n:] for r in A]


def box_bounds(G, R):
    """|x_i| <= sqrt(R * (G^-1)_ii) for every x with x G x^T <= R (G positive definite)."""
    inv = gauss_inverse(G)
    out = []
    for i in range(len(G)):
        t = R * inv[i][i]
        out.append(isqrt(t.numerator // t.denominator))
    return out


def box_count(G, R, bounds=None):
    """Counts per norm of nonzero vectors with norm <= R, both signs, by brute force."""
    n = len(G)
    bounds = bounds or box_bounds(G, R)
    counts = {}
    for x in itertools.product(*(range(-b, b + 1) for b in bounds)):
        if not any(x):
            continue
        v = sum(x[i] * G[i][j] * x[j] for i in range(n) for j in range(n))
        if v <= R:
            counts[v] = counts.get(v, 0) + 1
    return dict(sorted(counts.items()))


def span_gf2(rows):
    words = {0}
    for r in rows:
        words |= {w ^ r for w in words}
    return words
