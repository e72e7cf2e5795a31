"""Ungraded weak Hopf quasigroups given by structure constants.

``WhqData`` holds a unital magma (not assumed associative) together with a
comultiplication, counit and antipode.  :func:`check_base_whq` verifies the
defining axioms and the standard consequences as exact matrix identities.
Every identity is evaluated on all basis tuples at once.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .exactlin import DimensionError, Mat, NotInvertible, Wiring, invert, kron
from .groups import FiniteGroup
from .report import Checker, CheckReport

__all__ = [
    "WhqData",
    "StructureError",
    "check_base_whq",
    "group_algebra",
    "groupoid_algebra",
    "endomorphism_violations",
    "automorphisms_brute",
    "target_map",
    "source_map",
]


class StructureError(ValueError):
    """Structure constants have the wrong shapes."""


@dataclass(frozen=True)
class WhqData:
    dim: int
    unit: Mat      # dim x 1
    mul: Mat       # dim x dim^2
    comul: Mat     # dim^2 x dim
    counit: Mat    # 1 x dim
    antipode: Mat  # dim x dim

    def validate_shapes(self) -> None:
        n = self.dim
        if n < 1:
            raise StructureError("dimension must be at least 1")
        want = {
            "unit": (n, 1),
            "mul": (n, n * n),
            "comul": (n * n, n),
            "counit": (1, n),
            "antipode": (n, n),
        }
        for name, shape in want.items():
            got = getattr(self, name).shape
            if got != shape:
                raise StructureError(f"{name} has shape {got}, expected {shape}")

    def replace(self, **kw) -> "WhqData":
        fields = dict(dim=self.dim, unit=self.unit, mul=self.mul, comul=self.comul,
                      counit=self.counit, antipode=self.antipode)
        fields.update(kw)
        return WhqData(**fields)

    def product(self, x: Mat, y: Mat) -> Mat:
        return self.mul @ kron(x, y)


def _pair_product(m: Mat, n: int, x: Mat) -> Mat:
    """Apply (a1 (x) a2)(b1 (x) b2) -> a1 b1 (x) a2 b2 to the columns of ``x`` (legs a1,a2,b1,b2)."""
    return Wiring([n, n, n, n], start=x).permute([0, 2, 1, 3]).apply(m, at=0, n=2).apply(m, at=1, n=2).mat()


def _triple_product(m: Mat, n: int, a: Mat, b: Mat) -> Mat:
    """Product of two vectors of H (x) H (x) H."""
    w = Wiring([n] * 6, start=kron(a, b)).permute([0, 3, 1, 4, 2, 5])
    return w.apply(m, at=0, n=2).apply(m, at=1, n=2).apply(m, at=2, n=2).mat()


def target_map(H: WhqData) -> Mat:
    """h -> eps(1_1 h) 1_2."""
    n = H.dim
    return (Wiring([n]).insert(H.comul @ H.unit, at=0, out=[n, n])
            .permute([0, 2, 1]).apply(H.counit @ H.mul, at=0, n=2).mat())


def source_map(H: WhqData) -> Mat:
    """h -> 1_1 eps(h 1_2)."""
    n = H.dim
    return (Wiring([n]).insert(H.comul @ H.unit, at=1, out=[n, n])
            .permute([1, 0, 2]).apply(H.counit @ H.mul, at=1, n=2).mat())


def check_base_whq(H: WhqData) -> CheckReport:
    H.validate_shapes()
    n = H.dim
    M, D, e, u, S = H.mul, H.comul, H.counit, H.unit, H.antipode
    I = Mat.identity(n)
    eM = e @ M
    et, es = target_map(H), source_map(H)
    ck = Checker()
    x = ()  # no group elements in the ungraded setting

    # unital magma and comonoid
    ck.eq("unit.left", x, M @ kron(u, I), I, [n])
    ck.eq("unit.right", x, M @ kron(I, u), I, [n])
    ck.eq("coassociative", x, kron(D, I) @ D, kron(I, D) @ D, [n])
    ck.eq("counit.left", x, kron(e, I) @ D, I, [n])
    ck.eq("counit.right", x, kron(I, e) @ D, I, [n])

    # comultiplication is multiplicative
    ck.eq("comultiplicative", x, D @ M, _pair_product(M, n, kron(D, D)), [n, n])

    # weak multiplicativity of the counit, inputs (h, g, l)
    assoc_l = eM @ kron(M, I)
    ck.eq("counit.associator", x, assoc_l, eM @ kron(I, M), [n, n, n])
    split = Wiring([n, n, n]).apply(D, at=1, out=[n, n]).apply(eM, at=0, n=2).apply(eM, at=1, n=2).mat()
    split_sw = (Wiring([n, n, n]).apply(D, at=1, out=[n, n]).permute([0, 2, 1, 3])
                .apply(eM, at=0, n=2).apply(eM, at=1, n=2).mat())
    ck.eq("counit.split.12", x, assoc_l, split, [n, n, n])
    ck.eq("counit.split.21", x, assoc_l, split_sw, [n, n, n])

    # weak comultiplicativity of the unit
    one3 = kron(D, I) @ D @ u
    a = kron(D @ u, u)
    b = kron(u, D @ u)
    ck.eq("unit.weak-coassoc.left", x, one3, _triple_product(M, n, a, b), [])
    ck.eq("unit.weak-coassoc.right", x, one3, _triple_product(M, n, b, a), [])

    # antipode axioms
    ck.eq("target.convolution", x, et, M @ kron(I, S) @ D, [n])
    ck.eq("source.convolution", x, es, M @ kron(S, I) @ D, [n])
    ck.eq("antipode.right-target", x, S, M @ kron(S, et) @ D, [n])
    ck.eq("antipode.left-source", x, S, M @ kron(es, S) @ D, [n])

    # S(h1)(h2 g) = eps_s(h) g, inputs (h, g)
    lhs = Wiring([n, n]).apply(D, at=0, out=[n, n]).apply(M, at=1, n=2).apply(S, at=0).apply(M, at=0, n=2).mat()
    ck.eq("cancel.left-source", x, lhs, M @ kron(es, I), [n, n])
    # h1 (S(h2) g) = eps_t(h) g, inputs (h, g)
    lhs = Wiring([n, n]).apply(D, at=0, out=[n, n]).apply(S, at=1).apply(M, at=1, n=2).apply(M, at=0, n=2).mat()
    ck.eq("cancel.left-target", x, lhs, M @ kron(et, I), [n, n])
    # (g h1) S(h2) = g eps_t(h), inputs (g, h)
    lhs = Wiring([n, n]).apply(D, at=1, out=[n, n]).apply(M, at=0, n=2).apply(S, at=1).apply(M, at=0, n=2).mat()
    ck.eq("cancel.right-target", x, lhs, M @ kron(I, et), [n, n])
    # (g S(h1)) h2 = g eps_s(h), inputs (g, h)
    lhs = Wiring([n, n]).apply(D, at=1, out=[n, n]).apply(S, at=1).apply(M, at=0, n=2).apply(M, at=0, n=2).mat()
    ck.eq("cancel.right-source", x, lhs, M @ kron(I, es), [n, n])

    # consequences
    ck.eq("unit-convolution.target", x, M @ kron(et, I) @ D, I, [n])
    ck.eq("unit-convolution.source", x, M @ kron(I, es) @ D, I, [n])
    ck.eq("target.unit", x, et @ u, u, [])
    ck.eq("source.unit", x, es @ u, u, [])
    ck.eq("counit.target", x, e @ et, e, [n])
    ck.eq("counit.source", x, e @ es, e, [n])
    flip = Wiring([n, n]).permute([1, 0]).mat()
    ck.eq("antipode.antimultiplicative", x, S @ M, M @ kron(S, S) @ flip, [n, n])
    ck.eq("antipode.anticomultiplicative", x, D @ S, kron(S, S) @ flip @ D, [n])
    ck.eq("antipode.unit", x, S @ u, u, [])
    ck.eq("antipode.counit", x, e @ S, e, [n])

    report = ck.done()
    report.notes.extend(weakness_notes(H))
    return report


def weakness_notes(H: WhqData) -> list[str]:
    """Diagnostics telling a genuinely weak structure from a Hopf-like one."""
    n = H.dim
    notes = []
    if H.comul @ H.unit != kron(H.unit, H.unit):
        notes.append("comultiplication of the unit differs from 1 (x) 1")
    eM = H.counit @ H.mul
    if eM != kron(H.counit, H.counit):
        bad = next((i, j) for i, j in product(range(n), repeat=2) if eM[0, i * n + j] != H.counit[0, i] * H.counit[0, j])
        notes.append(f"counit is not multiplicative (basis pair {bad[0]},{bad[1]})")
    return notes


def is_counit_multiplicative(H: WhqData) -> bool:
    return H.counit @ H.mul == kron(H.counit, H.counit)


def comul_of_unit_is_trivial(H: WhqData) -> bool:
    return H.comul @ H.unit == kron(H.unit, H.unit)


def group_algebra(G: FiniteGroup) -> WhqData:
    n = len(G)
    mul = Mat.zeros(n, n * n).array
    comul = Mat.zeros(n * n, n).array
    S = Mat.zeros(n, n).array
    for a in range(n):
        for b in range(n):
            mul[G.mul(a, b), a * n + b] = Fraction(1)
        comul[a * n + a, a] = Fraction(1)
        S[G.inv(a), a] = Fraction(1)
    return WhqData(n, Mat.basis_vector(n, G.identity), Mat(mul), Mat(comul),
                   Mat.row([1] * n), Mat(S))


def groupoid_algebra(objects: int, groups: Sequence[FiniteGroup] | FiniteGroup) -> WhqData:
    """Algebra of a disjoint union of one-object groupoids (one group per object).

    Arrows of different objects do not compose; their product is zero.
    """
    if objects < 1:
        raise ValueError("need at least one object")
    if isinstance(groups, FiniteGroup):
        groups = [groups] * objects
    groups = list(groups)
    if len(groups) != objects:
        raise ValueError(f"expected {objects} groups, got {len(groups)}")
    offsets = []
    n = 0
    for G in groups:
        offsets.append(n)
        n += len(G)
    mul = Mat.zeros(n, n * n).array
    comul = Mat.zeros(n * n, n).array
    S = Mat.zeros(n, n).array
    unit = [Fraction(0)] * n
    for G, off in zip(groups, offsets):
        unit[off + G.identity] = Fraction(1)
        for a in range(len(G)):
            for b in range(len(G)):
                mul[off + G.mul(a, b), (off + a) * n + off + b] = Fraction(1)
            comul[(off + a) * n + off + a, off + a] = Fraction(1)
            S[off + G.inv(a), off + a] = Fraction(1)
    return WhqData(n, Mat.column(unit), Mat(mul), Mat(comul), Mat.row([1] * n), Mat(S))


def endomorphism_violations(H: WhqData, f: Mat) -> list[str]:
    """Names of the structure maps that ``f`` fails to commute with."""
    n = H.dim
    if f.shape != (n, n):
        return ["shape"]
    bad = []
    if f @ H.mul != H.mul @ kron(f, f):
        bad.append("mul")
    if H.comul @ f != kron(f, f) @ H.comul:
        bad.append("comul")
    if H.counit @ f != H.counit:
        bad.append("counit")
    if f @ H.unit != H.unit:
        bad.append("unit")
    if f @ H.antipode != H.antipode @ f:
        bad.append("antipode")
    try:
        invert(f)
    except NotInvertible:
        bad.append("invertible")
    return bad


def automorphisms_brute(H: WhqData, candidates: Sequence[Mat]) -> list[Mat]:
    """The candidates that are invertible structure-preserving maps of ``H``."""
    out = []
    for f in candidates:
        if f.shape != (H.dim, H.dim):
            raise DimensionError(f"candidate of shape {f.shape} for dimension {H.dim}")
        if not endomorphism_violations(H, f):
            out.append(f)
    return out
