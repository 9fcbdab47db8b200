"""Finite quadratic forms: finite abelian groups with a Q/2Z-valued form.

A form is stored on a chosen set of generators of a product of cyclic
groups ``Z/d_1 + ... + Z/d_k``.  Elements are coefficient tuples reduced
modulo the orders.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Iterable, Iterator, Sequence

Element = tuple[int, ...]

DEFAULT_BUDGET = 10**6


class SearchBudgetExceeded(RuntimeError):
    """The isomorphism search ran out of budget without deciding."""


def mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def mod2(x) -> Fraction:
    x = Fraction(x)
    return x - 2 * (x.numerator // (2 * x.denominator))


@dataclass(frozen=True)
class FQF:
    """Finite quadratic form on ``Z/orders[0] + ... + Z/orders[-1]``.

    ``q`` holds ``q(g_i)`` in ``[0, 2)``; ``b`` is the full symmetric matrix
    of ``b(g_i, g_j)`` in ``[0, 1)`` with ``b[i][i] = q[i] mod 1``.
    """

    orders: tuple[int, ...]
    q: tuple[Fraction, ...]
    b: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        k = len(self.orders)
        if len(self.q) != k or len(self.b) != k or any(len(r) != k for r in self.b):
            raise ValueError("inconsistent FQF dimensions")
        for i, d in enumerate(self.orders):
            if d < 1:
                raise ValueError(f"bad cyclic order {d}")
            if not (d * self.q[i]).denominator == 1 or mod2(d * d * self.q[i]) != 0:
                raise ValueError(f"q(g_{i}) = {self.q[i]} is not defined on Z/{d}")
            if self.b[i][i] != mod1(self.q[i]):
                raise ValueError("b(g, g) must equal q(g) mod 1")
            for j in range(k):
                if self.b[i][j] != self.b[j][i]:
                    raise ValueError("pairing matrix is not symmetric")
                if (d * self.b[i][j]).denominator != 1:
                    raise ValueError(f"b(g_{i}, g_{j}) is not defined on Z/{d}")

    @classmethod
    def build(cls, orders: Sequence[int], q: Sequence, b=None) -> "FQF":
        """Normalize raw values.  ``b`` may be a full matrix or a dict ``{(i, j): value}``."""
        k = len(orders)
        qq = tuple(mod2(x) for x in q)
        bb = [[Fraction(0)] * k for _ in range(k)]
        if isinstance(b, dict):
            for (i, j), v in b.items():
                bb[i][j] = bb[j][i] = mod1(v)
        elif b is not None:
            bb = [[mod1(v) for v in row] for row in b]
        for i in range(k):
            bb[i][i] = mod1(qq[i])
        return cls(tuple(int(d) for d in orders), qq, tuple(tuple(r) for r in bb))

    @classmethod
    def cyclic_sum(cls, values: Iterable) -> "FQF":
        """Orthogonal sum of cyclic forms written as in ``(5/4) + (4/11)``.

        Each value ``a/d`` in lowest terms is a generator of ``Z/d`` with
        ``q = a/d``.
        """
        vals = [Fraction(v) for v in values]
        return cls.build([v.denominator for v in vals], vals)

    @classmethod
    def trivial(cls) -> "FQF":
        return cls((), (), ())

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def exponent(self) -> int:
        return lcm(1, *self.orders)

    def reduce(self, x: Sequence[int]) -> Element:
        return tuple(int(c) % d for c, d in zip(x, self.orders))

    def zero(self) -> Element:
        return (0,) * self.ngens

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + c) % d for a, c, d in zip(x, y, self.orders))

    def scale(self, n: int, x: Element) -> Element:
        return tuple((n * a) % d for a, d in zip(x, self.orders))

    def neg(self, x: Element) -> Element:
        return self.scale(-1, x)

    def elements(self) -> Iterator[Element]:
        """All elements in lexicographic coefficient order."""
        return itertools.product(*(range(d) for d in self.orders))

    def element_order(self, x: Element) -> int:
        return lcm(1, *(d // gcd(a, d) for a, d in zip(x, self.orders)))

    def __str__(self) -> str:
        if not self.orders:
            return "trivial"
        parts = [f"Z/{d}:{q}" for d, q in zip(self.orders, self.q)]
        cross = [
            f"b{i}{j}={self.b[i][j]}"
            for i in range(self.ngens)
            for j in range(i + 1, self.ngens)
            if self.b[i][j]
        ]
        return " + ".join(parts) + (f" [{', '.join(cross)}]" if cross else "")

    def to_dict(self) -> dict:
        return {
            "orders": list(self.orders),
            "q": [str(v) for v in self.q],
            "b": [[str(v) for v in row] for row in self.b],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FQF":
        return cls.build(
            data["orders"],
            [Fraction(v) for v in data["q"]],
            [[Fraction(v) for v in row] for row in data["b"]],
        )


def eval_q(f: FQF, x: Sequence[int]) -> Fraction:
    """``q(x) = sum x_i^2 q(g_i) + 2 sum_{i<j} x_i x_j b(g_i, g_j)`` mod 2Z."""
    total = Fraction(0)
    k = f.ngens
    for i in range(k):
        xi = x[i]
        if not xi:
            continue
        total += xi * xi * f.q[i]
        row = f.b[i]
        for j in range(i + 1, k):
            if x[j]:
                total += 2 * xi * x[j] * row[j]
    return mod2(total)


def eval_b(f: FQF, x: Sequence[int], y: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for i, xi in enumerate(x):
        if xi:
            row = f.b[i]
            for j, yj in enumerate(y):
                if yj:
                    total += xi * yj * row[j]
    return mod1(total)


def direct_sum(*forms: FQF) -> FQF:
    orders: list[int] = []
    q: list[Fraction] = []
    blocks: list[tuple[int, FQF]] = []
    for f in forms:
        blocks.append((len(orders), f))
        orders.extend(f.orders)
        q.extend(f.q)
    k = len(orders)
    b = [[Fraction(0)] * k for _ in range(k)]
    for off, f in blocks:
        for i in range(f.ngens):
            for j in range(f.ngens):
                b[off + i][off + j] = f.b[i][j]
    return FQF(tuple(orders), tuple(q), tuple(tuple(r) for r in b))


def negate(f: FQF) -> FQF:
    return FQF(
        f.orders,
        tuple(mod2(-v) for v in f.q),
        tuple(tuple(mod1(-v) for v in row) for row in f.b),
    )


def isotropic_elements(f: FQF, order: int) -> list[Element]:
    """Elements of exact order ``order`` with ``q = 0``, lexicographic."""
    if order < 1 or f.exponent % order:
        return []
    return [x for x in f.elements() if f.element_order(x) == order and eval_q(f, x) == 0]


def is_totally_isotropic(f: FQF, gens: Sequence[Element]) -> bool:
    return all(eval_q(f, x) == 0 for x in gens) and all(
        eval_b(f, x, y) == 0 for x, y in itertools.combinations(gens, 2)
    )


def subgroup(f: FQF, gens: Sequence[Element]) -> set[Element]:
    """The subgroup generated by ``gens``, by closure."""
    seen = {f.zero()}
    frontier = [f.zero()]
    gens = [f.reduce(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = f.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def orthogonal(f: FQF, H: Iterable[Element]) -> list[Element]:
    H = list(H)
    return [x for x in f.elements() if all(eval_b(f, x, h) == 0 for h in H)]


def apply_map(f1: FQF, f2: FQF, images: Sequence[Element], x: Sequence[int]) -> Element:
    out = f2.zero()
    for c, y in zip(x, images):
        if c:
            out = f2.add(out, f2.scale(c, y))
    return out


def isomorphic(f1: FQF, f2: FQF, budget: int = DEFAULT_BUDGET) -> tuple[Element, ...] | None:
    """Find an isometry ``f1 -> f2`` given by the images of f1's generators.

    Backtracking over generator images in lexicographic order, pruned by
    element order, ``q`` value and the pairings with earlier images, so the
    first isometry found is the lexicographically smallest image tuple.
    Returns ``None`` when no isometry exists.  Raises
    ``SearchBudgetExceeded`` once ``budget`` candidate checks are spent.
    """
    if f1.order != f2.order:
        return None
    if f1.ngens == 0:
        return ()
    buckets: dict[tuple[int, Fraction], list[Element]] = {}
    for y in f2.elements():
        buckets.setdefault((f2.element_order(y), eval_q(f2, y)), []).append(y)
    candidates = [buckets.get((d, f1.q[i]), []) for i, d in enumerate(f1.orders)]
    if any(not c for c in candidates):
        return None
    # f1 may have a degenerate pairing; injectivity is then checked directly
    target = f1.order
    spent = 0
    chosen: list[Element] = []

    def search(i: int) -> bool:
        nonlocal spent
        if i == f1.ngens:
            return len(subgroup(f2, chosen)) == target
        for y in candidates[i]:
            spent += 1
            if spent > budget:
                raise SearchBudgetExceeded(f"isomorphism search exceeded {budget} checks")
            if all(eval_b(f2, chosen[j], y) == f1.b[j][i] for j in range(i)):
                chosen.append(y)
                if search(i + 1):
                    return True
                chosen.pop()
        return False

    return tuple(chosen) if search(0) else None


def verify_isometry(f1: FQF, f2: FQF, images: Sequence[Element]) -> bool:
    """Check a generator map on every element: well defined, bijective, q-preserving."""
    if f1.order != f2.order or len(images) != f1.ngens:
        return False
    for d, y in zip(f1.orders, images):
        if f2.scale(d, y) != f2.zero():
            return False
    seen = set()
    for x in f1.elements():
        y = apply_map(f1, f2, images, x)
        if eval_q(f1, x) != eval_q(f2, y):
            return False
        seen.add(y)
    return len(seen) == f2.order
