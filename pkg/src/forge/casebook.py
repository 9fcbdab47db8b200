"""Invariant lattices of the three-orbit maximal subgroups of M23 and their gluing
into Neron-Severi lattices of supersingular K3 surfaces with Artin invariant 1.

A group G is represented only by its orbits on the 24 roots of N: the
invariant lattice of any permutation action depends on nothing else.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import fqf as fq
from . import golay, lattice as lat
from .enumeration import lll_reduce, min_norm, vectors_with_norm
from .fqf import FQF
from .golay import GolayCode, NiemeierA1
from .lattice import GlueSpec, Lattice, Sublattice

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CaseData:
    name: str
    group: str
    orbit_sizes: tuple[int, ...]
    det_invariant: int
    q_invariant: tuple[str, ...]  # q of N^G as cyclic values, e.g. ("-5/4", "-4/11")
    q_coinvariant: tuple[str, ...]
    glue_order: int
    p: int
    h2: int


CASES: dict[str, CaseData] = {
    c.name: c
    for c in [
        CaseData("M22", "M22", (1, 1, 22), 44, ("-5/4", "-4/11"), ("5/4", "4/11"), 4, 11, 44),
        CaseData("L34", "L3(4):2", (1, 2, 21), 84, ("-3/4", "-2/3", "-6/7"), ("3/4", "2/3", "6/7"), 12, 7, 84),
        CaseData("A7", "2^4:A7", (1, 7, 16), 56, ("-1/8", "-2/7"), ("1/8", "2/7"), 8, 7, 56),
        CaseData("A8", "A8", (1, 8, 15), 60, ("-1/4", "-4/3", "-6/5"), ("1/4", "4/3", "6/5"), 12, 5, 60),
        CaseData("M11", "M11", (1, 11, 12), 66, ("-3/2", "-2/3", "-2/11"), ("3/2", "2/3", "2/11"), 6, 11, 66),
        CaseData(
            "A5x3", "2^4:(3xA5):2", (1, 3, 20), 120, ("-9/8", "-2/3", "-8/5"), ("9/8", "2/3", "8/5"), 24, 5, 120
        ),
    ]
}

TABLE2 = [(c.name, c.p, c.h2) for c in CASES.values()]

NS_FORMS = {5: ("-2/5", "-6/5"), 7: ("-6/7", "-6/7"), 11: ("-10/11", "-10/11")}


# ---------------------------------------------------------------------------
# orbit partitions


@dataclass(frozen=True)
class OrbitPartition:
    case: str
    blocks: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)


class PartitionError(ValueError):
    pass


def make_partition(case: str, code: GolayCode, choice: int = 0) -> OrbitPartition:
    """Concrete orbits on points 1..24 with the fixed root at point 1.

    ``choice`` picks the choice-th admissible octad or dodecad (in
    lexicographic order) for the cases that need one.
    """
    everything = set(range(1, 25))

    def rest(*used):
        return tuple(sorted(everything - set().union(*used)))

    if case == "M22":
        blocks = [(1,), (2,), rest({1, 2})]
    elif case == "L34":
        blocks = [(1,), (2, 3), rest({1, 2, 3})]
    elif case == "A5x3":
        blocks = [(1,), (2, 3, 4), rest({1, 2, 3, 4})]
    elif case == "A7":
        octad = set(golay.points(golay.find_octad(code, must_contain=[1], index=choice)))
        blocks = [(1,), tuple(sorted(octad - {1})), rest(octad)]
    elif case == "A8":
        octad = golay.points(golay.find_octad(code, must_avoid=[1], index=choice))
        blocks = [(1,), octad, rest({1}, octad)]
    elif case == "M11":
        dodecad = set(golay.points(golay.find_dodecad(code, must_contain=[1], index=choice)))
        blocks = [(1,), tuple(sorted(dodecad - {1})), rest(dodecad)]
    else:
        raise PartitionError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    P = OrbitPartition(case, tuple(tuple(b) for b in blocks))
    _check_partition(P, code)
    return P


def _check_partition(P: OrbitPartition, code: GolayCode) -> None:
    if P.sizes != CASES[P.case].orbit_sizes:
        raise PartitionError(f"{P.case}: orbit sizes {P.sizes}")
    if sorted(p for b in P.blocks for p in b) != list(range(1, 25)):
        raise PartitionError(f"{P.case}: blocks do not partition 1..24")
    if P.blocks[0] != (1,):
        raise PartitionError(f"{P.case}: first orbit must be the fixed point 1")
    b1, b2 = (golay.mask(b) for b in P.blocks[:2])
    structural = {"A7": (b1 | b2, 8), "A8": (b2, 8), "M11": (b1 | b2, 12)}
    if P.case in structural:
        word, w = structural[P.case]
        if word not in code or golay.weight(word) != w:
            raise PartitionError(f"{P.case}: structural codeword condition fails")


def invariant_sublattice(N: NiemeierA1, P: OrbitPartition) -> Sublattice:
    """N intersected with the Q-span of the orbit indicator vectors.

    Computed in root coordinates: 2N sits inside the root lattice A1^24
    with basis the half-root coordinates, and the indicator span is
    primitive there.
    """
    roots = lat.root_lattice("A1_24")
    twice_n = Sublattice.span(roots, N.half_basis)
    indicators = Sublattice.span(roots, [[int(p in b) for p in range(1, 25)] for b in P.blocks])
    meet = lat.intersect(twice_n, indicators)
    coords = [N.from_half(r) for r in meet.basis]
    return Sublattice.span(N.lattice, [[int(x) for x in r] for r in coords])


# ---------------------------------------------------------------------------
# Neron-Severi targets


@dataclass(frozen=True)
class NSTarget:
    p: int
    sigma: int
    lattice: Lattice
    fqf: FQF
    construction: str
    checks: dict = field(default_factory=dict)


def ns_target(p: int) -> NSTarget:
    if p == 7:
        L = lat.direct_sum(lat.U(), lat.E(8), lat.A(6), lat.A(6))
        return NSTarget(7, 1, L, lat.discriminant_form(L).fqf, "U+E8+A6+A6")
    if p == 11:
        L = lat.direct_sum(lat.U(), lat.A(10), lat.A(10))
        return NSTarget(11, 1, L, lat.discriminant_form(L).fqf, "U+A10+A10")
    if p == 5:
        S, checks = _glue_p5()
        return NSTarget(5, 1, S, lat.discriminant_form(S).fqf, "U+E7+A4+A9 glued by x+5y", checks)
    raise ValueError(f"no Neron-Severi target for p={p}; supported: 5, 7, 11")


def _glue_p5() -> tuple[Lattice, dict]:
    parts = [lat.U(), lat.E(7), lat.A(4), lat.A(9)]
    K = lat.direct_sum(*parts)
    forms = [lat.discriminant_form(L) for L in parts]
    A_K = lat.direct_sum_forms(*forms)
    # generators: E7 -> Z/2, A4 -> Z/5, A9 -> Z/10, in that order (U is unimodular)
    if A_K.orders != (2, 5, 10):
        raise lat.LatticeError(f"unexpected discriminant group {A_K.orders} for K")
    x = (1, 0, 0)
    y = (0, 0, 1)
    five_y = A_K.fqf.scale(5, y)
    glue_element = A_K.fqf.add(x, five_y)
    checks = {
        "q(x)": str(fq.eval_q(A_K.fqf, x)),
        "q(5y)": str(fq.eval_q(A_K.fqf, five_y)),
        "q(x+5y)": str(fq.eval_q(A_K.fqf, glue_element)),
        "detK": K.det(),
        "index": 2,
    }
    S = lat.overlattice_from_glue(K, GlueSpec.from_elements(A_K, [glue_element], 2))
    checks["detS"] = S.det()
    return S, checks


def stated_form(values) -> FQF:
    return FQF.cyclic_sum(Fraction(v) for v in values)


# ---------------------------------------------------------------------------
# the six cases


@dataclass
class CaseReport:
    case: str
    group: str
    blocks: list
    detNG: int = 0
    qNG: dict | None = None
    qN_G: dict | None = None
    rootFree: bool = False
    minNorm: int | None = None
    h2: int = 0
    glueOrder: int = 0
    glueElement: list | None = None
    glueLift: list | None = None
    glueCandidates: int = 0
    detS: int | None = None
    signatureS: list | None = None
    qS: dict | None = None
    target_p: int = 0
    targetMatch: bool = False
    lNG: int | None = None
    nikulinOK: bool = False
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    status: str = "fail"

    def check(self, name: str, ok: bool, detail=None) -> bool:
        self.checks[name] = bool(ok)
        if not ok:
            self.failures.append(name if detail is None else f"{name}: {detail}")
        return ok

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        c = CASES[self.case]
        lines = [
            f"case {self.case}  G = {self.group}  orbits {[len(b) for b in self.blocks]}",
            f"  det N^G             {self.detNG}",
            f"  q_(N^G)             {_fmt(self.qNG)}",
            f"  q_(N_G)             {_fmt(self.qN_G)}   (expected {' + '.join(c.q_coinvariant)})",
            f"  l(N_G)              {self.lNG}",
            f"  root-free N_G       {self.rootFree}  (min |norm| {self.minNorm})",
            f"  h^2                 {self.h2}",
            f"  glue                order {self.glueOrder}, element {self.glueElement}, "
            f"{self.glueCandidates} valid candidates",
            f"  det S               {self.detS}   signature {self.signatureS}",
            f"  q_S                 {_fmt(self.qS)}",
            f"  target p            {self.target_p}  match {self.targetMatch}  genus hypothesis {self.nikulinOK}",
            f"  status              {self.status.upper()}",
        ]
        lines += [f"  FAILED {f}" for f in self.failures]
        return "\n".join(lines)


def _fmt(d: dict | None) -> str:
    if not d:
        return "trivial" if d is not None else "-"
    return str(FQF.from_dict(d))


@lru_cache(maxsize=None)
def niemeier() -> NiemeierA1:
    return golay.build_niemeier(golay.build_golay())


def run_case(case: str, choice: int = 0, count_all: bool = True) -> CaseReport:
    """Run the whole pipeline for one case, collecting every failed check."""
    if case not in CASES:
        raise PartitionError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    data = CASES[case]
    N = niemeier()
    P = make_partition(case, N.code, choice)
    rep = CaseReport(case, data.group, [list(b) for b in P.blocks], target_p=data.p)

    NG_inv = invariant_sublattice(N, P)
    rep.check("rank N^G = 3", NG_inv.rank == 3, NG_inv.rank)
    inv_lat = NG_inv.lattice()
    rep.detNG = abs(inv_lat.det())
    rep.check("det N^G", rep.detNG == data.det_invariant, rep.detNG)

    N_G = lat.orthogonal_complement(NG_inv)
    co_lat = N_G.lattice()
    rep.check("rank N_G = 21", N_G.rank == 21, N_G.rank)
    rep.check("|det N_G| = |det N^G|", abs(co_lat.det()) == rep.detNG)

    q_inv = lat.discriminant_form(inv_lat)
    q_co = lat.discriminant_form(co_lat)
    rep.qNG = q_inv.fqf.to_dict()
    rep.qN_G = q_co.fqf.to_dict()
    rep.check("q_(N_G) = -q_(N^G)", fq.isomorphic(q_co.fqf, fq.negate(q_inv.fqf)) is not None)
    rep.check("q_(N^G) matches", fq.isomorphic(q_inv.fqf, stated_form(data.q_invariant)) is not None)
    rep.check("q_(N_G) matches", fq.isomorphic(q_co.fqf, stated_form(data.q_coinvariant)) is not None)
    rep.lNG = lat.l_invariant(co_lat)
    rep.check("l(N_G) <= 22 - rank", rep.lNG <= 22 - N_G.rank, rep.lNG)

    red = lll_reduce(co_lat)
    roots = vectors_with_norm(co_lat, -2, red)
    rep.rootFree = len(roots) == 0
    rep.minNorm = min_norm(co_lat, red)
    rep.check("N_G has no (-2)-vectors", rep.rootFree, len(roots))
    rep.check("min |norm| N_G = 4", rep.minNorm == 4, rep.minNorm)

    rep.h2 = abs(co_lat.det())
    rep.check("h^2 matches", rep.h2 == data.h2, rep.h2)
    _glue(rep, co_lat, q_co, data, count_all)
    rep.status = "pass" if not rep.failures else "fail"
    return rep


def _glue(rep: CaseReport, co_lat: Lattice, q_co, data: CaseData, count_all: bool) -> None:
    h = lat.rank1(rep.h2)
    L = lat.direct_sum(h, co_lat)
    A_L = lat.direct_sum_forms(lat.discriminant_form(h), q_co)
    target = ns_target(data.p)
    rep.glueOrder = data.glue_order
    candidates = fq.isotropic_elements(A_L.fqf, data.glue_order)
    chosen = None
    valid = 0
    for x in candidates:
        try:
            S = lat.overlattice_from_glue(L, GlueSpec.from_elements(A_L, [x], data.glue_order))
        except lat.LatticeError:
            continue
        if S.det() != -data.p**2:
            continue
        form = lat.discriminant_form(S).fqf
        if fq.isomorphic(form, target.fqf) is None:
            continue
        valid += 1
        if chosen is None:
            chosen = (x, S, form)
            if not count_all:
                break
    rep.glueCandidates = valid
    if not rep.check("isotropic glue found", chosen is not None, f"{len(candidates)} isotropic elements"):
        return
    x, S, form = chosen
    rep.glueElement = list(x)
    rep.glueLift = [str(v) for v in A_L.lift(x)]
    # the h-component carries the full order, as in h/n + theta
    rep.check("glue has shape h/n + theta", A_L.fqf.element_order((x[0],) + (0,) * (len(x) - 1)) == data.glue_order)
    rep.detS = S.det()
    rep.signatureS = list(S.signature())
    rep.qS = form.to_dict()
    rep.check("S even", S.is_even())
    rep.check("rank S = 22", S.rank == 22)
    rep.check("signature S = (1,21)", rep.signatureS == [1, 21, 0], rep.signatureS)
    rep.check("det S = -p^2", rep.detS == -data.p**2, rep.detS)
    rep.check("|det S| order^2 = h^2 |det N_G|", abs(rep.detS) * data.glue_order**2 == rep.h2 * abs(co_lat.det()))
    rep.targetMatch = fq.isomorphic(form, stated_form(NS_FORMS[data.p])) is not None
    rep.check("q_S matches target", rep.targetMatch)
    rep.nikulinOK = lat.genus_hypothesis(S)
    rep.check("rank S >= l(S) + 2, indefinite", rep.nikulinOK)


def _workers() -> int:
    env = os.environ.get("FORGE_WORKERS")
    if env:
        return max(1, int(env))
    return min(len(CASES), os.cpu_count() or 1)


def table2(workers: int | None = None) -> list[CaseReport]:
    """All six reports in table order."""
    workers = workers or _workers()
    names = list(CASES)
    if workers == 1:
        return [run_case(c) for c in names]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_case, names))
