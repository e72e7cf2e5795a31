"""Crossings, the mirror construction and the builders from a group action.

A crossing is a family ``pi_p: H_q -> H_{p q p^-1}`` of algebra isomorphisms
compatible with the comultiplication, the counit and the group law.  The
builders take an ungraded weak Hopf quasigroup ``B`` with an action of a
finite group by structure-preserving maps and return certified crossed
structures whose components are all copies of ``B``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .core import GcwhqData, check_graded_axioms, check_derived_identities, counital_maps
from .exactlin import Mat, kron, rank
from .groups import FiniteGroup
from .report import Checker, CheckReport
from .whq import StructureError, WhqData, check_base_whq, endomorphism_violations

__all__ = [
    "CrossingData",
    "CrossedGcwhq",
    "ActionInvalid",
    "CertificationFailed",
    "MirrorInconsistent",
    "check_crossing",
    "certify",
    "mirror",
    "build_HG",
    "build_tildeHG",
    "build_barHG",
    "is_weak_hopf_group_coalgebra",
    "WeakHopfDiagnostic",
    "structure_equal",
]


class ActionInvalid(ValueError):
    """The supplied group action is not an action by structure-preserving maps."""


class CertificationFailed(RuntimeError):
    def __init__(self, message: str, report: CheckReport):
        super().__init__(message)
        self.report = report


class MirrorInconsistent(CertificationFailed):
    """The mirror of a certified structure failed its own certification."""


@dataclass(frozen=True)
class CrossingData:
    pi: dict = field(hash=False)  # (p, q) -> Mat, d_{pqp^-1} x d_q

    def __call__(self, p: int, q: int) -> Mat:
        return self.pi[(p, q)]


@dataclass(frozen=True)
class CrossedGcwhq:
    base: GcwhqData
    crossing: CrossingData
    certified: bool = False
    report: CheckReport | None = field(default=None, compare=False, hash=False)

    @property
    def group(self) -> FiniteGroup:
        return self.base.group

    def pi(self, p: int, q: int) -> Mat:
        return self.crossing.pi[(p, q)]


def _crossing_shapes(H: GcwhqData, pi: CrossingData) -> None:
    G = H.group
    for p, q in product(G, G):
        if (p, q) not in pi.pi:
            raise StructureError(f"crossing component {G.label(p)}|{G.label(q)} missing")
        want = (H.dims[G.conj(p, q)], H.dims[q])
        if pi.pi[(p, q)].shape != want:
            raise StructureError(f"crossing {G.label(p)}|{G.label(q)} has shape {pi.pi[(p, q)].shape}, expected {want}")


def check_crossing(H: GcwhqData, pi: CrossingData) -> CheckReport:
    H.validate_shapes()
    _crossing_shapes(H, pi)
    G, e = H.group, H.e
    maps = counital_maps(H)
    ck = Checker(G)
    for p, q in product(G, G):
        c = G.conj(p, q)
        f = pi(p, q)
        dq = H.dims[q]
        ck.eq("crossing.unital", (p, q), f @ H.unit[q], H.unit[c], [])
        ck.eq("crossing.multiplicative", (p, q), f @ H.mul[q], H.mul[c] @ kron(f, f), [dq, dq])
        r = rank(f)
        ck.flag("crossing.invertible", (p, q), f.rows == f.cols and r == f.rows,
                lhs=[r], rhs=[f.rows])
        # pi_q eps^s_p = eps^s_{qpq^-1} pi_q and the target analogue, at (p, q)
        cq = G.conj(q, p)
        ck.eq("crossing.source", (p, q), pi(q, p) @ maps.eps_s[p], maps.eps_s[cq] @ pi(q, e), [H.dims[e]])
        ck.eq("crossing.target", (p, q), pi(q, p) @ maps.eps_t[p], maps.eps_t[cq] @ pi(q, e), [H.dims[e]])
    for q in G:
        ck.eq("crossing.identity", (q,), pi(e, q), Mat.identity(H.dims[q]), [H.dims[q]])
    for p in G:
        ck.eq("crossing.counit", (p,), H.counit @ pi(p, e), H.counit, [H.dims[e]])
    for p, q, r in product(G, G, G):
        qr = G.mul(q, r)
        lhs = kron(pi(p, q), pi(p, r)) @ H.D(q, r)
        rhs = H.D(G.conj(p, q), G.conj(p, r)) @ pi(p, qr)
        ck.eq("crossing.comul", (p, q, r), lhs, rhs, [H.dims[qr]])
        ck.eq("crossing.composition", (p, q, r), pi(G.mul(p, q), r), pi(p, G.conj(q, r)) @ pi(q, r), [H.dims[r]])
    return ck.done()


def certify(H: CrossedGcwhq) -> CrossedGcwhq:
    """Run the full suite and return a certified copy, or raise CertificationFailed."""
    axioms = check_graded_axioms(H.base)
    derived = check_derived_identities(H.base, axioms)
    crossing = check_crossing(H.base, H.crossing)
    report = CheckReport(list(axioms.verdicts), H.group).extend(derived).extend(crossing).sorted()
    if not report.passed:
        first = report.failures()[0]
        raise CertificationFailed(f"certification failed at {first.label} {first.elements}", report)
    return CrossedGcwhq(H.base, H.crossing, True, report)


def mirror(H: CrossedGcwhq) -> CrossedGcwhq:
    """The mirror structure: component ``p`` is the old component ``p^-1``.

    Comultiplication ``(pi_q (x) id) Delta_{q^-1 p^-1 q, q^-1}``, antipode
    ``pi_p S_{p^-1}``, same counit and same crossing maps.  The result is
    certified before it is returned.
    """
    if not H.certified:
        raise ValueError("mirror needs a certified structure")
    B, G = H.base, H.group
    inv = G.inv
    dims = tuple(B.dims[inv(p)] for p in G)
    unit = tuple(B.unit[inv(p)] for p in G)
    mul = tuple(B.mul[inv(p)] for p in G)
    delta = {}
    for p, q in product(G, G):
        qi = inv(q)
        src = G.mul(qi, inv(p), q)
        f = H.pi(q, src)  # H_{q^-1 p^-1 q} -> H_{p^-1}
        delta[(p, q)] = kron(f, Mat.identity(B.dims[qi])) @ B.D(src, qi)
    antipode = tuple(H.pi(p, p) @ B.S(inv(p)) for p in G)
    pi = {(p, q): H.pi(p, inv(q)) for p, q in product(G, G)}
    out = CrossedGcwhq(GcwhqData(G, dims, unit, mul, delta, B.counit, antipode), CrossingData(pi))
    try:
        return certify(out)
    except CertificationFailed as exc:
        raise MirrorInconsistent(f"mirror is not a crossed structure: {exc}", exc.report) from None


def _validate_action(B: WhqData, G: FiniteGroup, action: Mapping[int, Mat]) -> dict[int, Mat]:
    base = check_base_whq(B)
    if not base.passed:
        raise ActionInvalid(f"base structure fails its axioms at {base.failures()[0].label}")
    act = {}
    for g in G:
        if g not in action:
            raise ActionInvalid(f"no action matrix for {G.label(g)}")
        f = action[g]
        if f.shape != (B.dim, B.dim):
            raise ActionInvalid(f"action of {G.label(g)} has shape {f.shape}")
        bad = endomorphism_violations(B, f)
        if bad:
            raise ActionInvalid(f"action of {G.label(g)} does not preserve: {', '.join(bad)}")
        act[g] = f
    if act[G.identity] != Mat.identity(B.dim):
        raise ActionInvalid("identity element must act trivially")
    for g, h in product(G, G):
        if act[G.mul(g, h)] != act[g] @ act[h]:
            raise ActionInvalid(f"not a homomorphism at ({G.label(g)}, {G.label(h)})")
    return act


def _copies(B: WhqData, G: FiniteGroup, act, delta, antipode) -> CrossedGcwhq:
    n = len(G)
    data = GcwhqData(G, (B.dim,) * n, (B.unit,) * n, (B.mul,) * n, delta, B.counit, antipode)
    pi = CrossingData({(p, q): act[p] for p, q in product(G, G)})
    return certify(CrossedGcwhq(data, pi))


def build_HG(B: WhqData, G: FiniteGroup, action: Mapping[int, Mat]) -> CrossedGcwhq:
    act = _validate_action(B, G, action)
    delta = {(p, q): B.comul for p, q in product(G, G)}
    return _copies(B, G, act, delta, tuple(B.antipode for _ in G))


def build_tildeHG(B: WhqData, G: FiniteGroup, action: Mapping[int, Mat]) -> CrossedGcwhq:
    act = _validate_action(B, G, action)
    I = Mat.identity(B.dim)
    delta = {(p, q): kron(act[q], I) @ B.comul for p, q in product(G, G)}
    return _copies(B, G, act, delta, tuple(act[p] @ B.antipode for p in G))


def build_barHG(B: WhqData, G: FiniteGroup, action: Mapping[int, Mat]) -> CrossedGcwhq:
    act = _validate_action(B, G, action)
    I = Mat.identity(B.dim)
    delta = {(p, q): kron(I, act[p]) @ B.comul for p, q in product(G, G)}
    return _copies(B, G, act, delta, tuple(act[p] @ B.antipode for p in G))


@dataclass(frozen=True)
class WeakHopfDiagnostic:
    associative: bool
    associativity_witness: tuple[int, int, int, int] | None  # (component, i, j, k)
    counit_multiplicative: bool
    counit_witness: tuple[int, int] | None

    def __bool__(self) -> bool:
        return self.associative


def is_weak_hopf_group_coalgebra(H: CrossedGcwhq | GcwhqData) -> WeakHopfDiagnostic:
    """Associativity of every component, and multiplicativity of the counit."""
    B = H.base if isinstance(H, CrossedGcwhq) else H
    witness = None
    for p in B.group:
        d = B.dims[p]
        M, I = B.mul[p], Mat.identity(d)
        a, b = (M @ kron(M, I)).array, (M @ kron(I, M)).array
        cols = [j for j in range(d ** 3) if any(a[i, j] != b[i, j] for i in range(d))]
        if cols:
            j = cols[0]
            witness = (p, j // (d * d), (j // d) % d, j % d)
            break
    e = B.e
    de = B.dims[e]
    eM = B.counit @ B.mul[e]
    ee = kron(B.counit, B.counit)
    cw = next(((i, j) for i in range(de) for j in range(de) if eM[0, i * de + j] != ee[0, i * de + j]), None)
    return WeakHopfDiagnostic(witness is None, witness, cw is None, cw)


def structure_equal(a: CrossedGcwhq, b: CrossedGcwhq) -> bool:
    A, B = a.base, b.base
    return (A.group == B.group and A.dims == B.dims and A.unit == B.unit and A.mul == B.mul
            and A.delta == B.delta and A.counit == B.counit and A.antipode == B.antipode
            and a.crossing.pi == b.crossing.pi)
