"""Group-cograded weak Hopf quasigroups.

A :class:`GcwhqData` is a family of unital magmas ``H_p`` indexed by a finite
group, comultiplications ``Delta_{p,q}: H_{pq} -> H_p (x) H_q``, a counit on
``H_e`` and antipodes ``S_p: H_p -> H_{p^-1}``.  Group elements are indices
into the group's Cayley table.

Every identity below is evaluated on all basis tuples of its input legs.
The leg degrees of each Sweedler expansion are the unique ones under which
every product lands in a single component.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .exactlin import Mat, Wiring, kron
from .groups import FiniteGroup, make_cyclic
from .report import Checker, CheckReport
from .whq import StructureError, WhqData

__all__ = [
    "GcwhqData",
    "GradingError",
    "CounitalMaps",
    "from_whq",
    "sweedler",
    "sweedler_map",
    "counital_maps",
    "convolution_antipode_check",
    "check_graded_axioms",
    "check_derived_identities",
    "check_gcwhq",
]


class GradingError(ValueError):
    pass


@dataclass(frozen=True)
class GcwhqData:
    group: FiniteGroup
    dims: tuple[int, ...]
    unit: tuple[Mat, ...]
    mul: tuple[Mat, ...]
    delta: dict = field(hash=False)  # (p, q) -> Mat, d_p d_q x d_pq
    counit: Mat = None  # 1 x d_e
    antipode: tuple[Mat, ...] = ()

    @property
    def e(self) -> int:
        return self.group.identity

    def D(self, p: int, q: int) -> Mat:
        return self.delta[(p, q)]

    def S(self, p: int) -> Mat:
        return self.antipode[p]

    def one(self, p: int) -> Mat:
        return self.unit[p]

    def unit_split(self, p: int, q: int) -> Mat:
        """1_{(1,p)} (x) 1_{(2,q)} = Delta_{p,q}(1_{pq})."""
        return self.D(p, q) @ self.unit[self.group.mul(p, q)]

    def validate_shapes(self) -> None:
        G = self.group
        n = len(G)
        for name in ("dims", "unit", "mul", "antipode"):
            if len(getattr(self, name)) != n:
                raise StructureError(f"{name} must have one entry per group element")
        for p in G:
            d = self.dims[p]
            if d < 1:
                raise StructureError(f"component {G.label(p)} has dimension {d}; components must be nonzero")
            if self.unit[p].shape != (d, 1):
                raise StructureError(f"unit[{G.label(p)}] has shape {self.unit[p].shape}")
            if self.mul[p].shape != (d, d * d):
                raise StructureError(f"mul[{G.label(p)}] has shape {self.mul[p].shape}")
            want = (self.dims[G.inv(p)], d)
            if self.antipode[p].shape != want:
                raise StructureError(f"antipode[{G.label(p)}] has shape {self.antipode[p].shape}, expected {want}")
        for p, q in product(G, G):
            if (p, q) not in self.delta:
                raise StructureError(f"delta[{G.label(p)},{G.label(q)}] missing")
            want = (self.dims[p] * self.dims[q], self.dims[G.mul(p, q)])
            if self.delta[(p, q)].shape != want:
                raise StructureError(f"delta[{G.label(p)},{G.label(q)}] has shape {self.delta[(p, q)].shape}, expected {want}")
        if self.counit is None or self.counit.shape != (1, self.dims[G.identity]):
            raise StructureError("counit must be a row vector on the identity component")

    def replace(self, **kw) -> "GcwhqData":
        f = dict(group=self.group, dims=self.dims, unit=self.unit, mul=self.mul,
                 delta=self.delta, counit=self.counit, antipode=self.antipode)
        f.update(kw)
        return GcwhqData(**f)


def from_whq(B: WhqData, G: FiniteGroup | None = None) -> GcwhqData:
    """Trivially graded copy of an ungraded structure (the group must be trivial)."""
    G = G if G is not None else make_cyclic(1)
    if len(G) != 1:
        raise ValueError("from_whq needs the trivial group")
    return GcwhqData(G, (B.dim,), (B.unit,), (B.mul,), {(0, 0): B.comul}, B.counit, (B.antipode,))


# Sweedler expansions ---------------------------------------------------------

def sweedler_map(H: GcwhqData, degrees: Sequence[int], nesting: str = "left") -> Mat:
    """Matrix of ``x -> x_(1,p1) (x) ... (x) x_(n,pn)`` on ``H_{p1...pn}``.

    ``nesting='left'`` splits off the last leg first, i.e.
    ``(Delta_{p1,p2} (x) id ...) ... Delta_{p1...p(n-1), pn}``; ``'right'``
    splits off the first leg first.
    """
    G = H.group
    degrees = list(degrees)
    if not degrees:
        raise GradingError("need at least one degree")
    total = G.mul(*degrees)
    w = Wiring([H.dims[total]])
    if nesting == "left":
        for k in range(len(degrees) - 1, 0, -1):
            head = G.mul(*degrees[:k])
            w.apply(H.D(head, degrees[k]), at=0, out=[H.dims[head], H.dims[degrees[k]]])
    elif nesting == "right":
        for k in range(len(degrees) - 1):
            tail = G.mul(*degrees[k + 1:])
            w.apply(H.D(degrees[k], tail), at=k, out=[H.dims[degrees[k]], H.dims[tail]])
    else:
        raise ValueError(f"unknown nesting {nesting!r}")
    return w.mat()


def sweedler(H: GcwhqData, x: Mat, degrees: Sequence[int], grade: int | None = None,
             nesting: str = "left") -> Mat:
    G = H.group
    total = G.mul(*degrees)
    if grade is not None and grade != total:
        raise GradingError(f"degrees multiply to {G.label(total)}, element lives in {G.label(grade)}")
    if x.rows != H.dims[total]:
        raise GradingError(f"vector of length {x.rows} cannot lie in component {G.label(total)}")
    return sweedler_map(H, degrees, nesting) @ x


# counital maps -----------------------------------------------------------------

@dataclass(frozen=True)
class CounitalMaps:
    eps_t: tuple[Mat, ...]
    eps_s: tuple[Mat, ...]
    eps_t_tilde: tuple[Mat, ...]
    eps_s_tilde: tuple[Mat, ...]


def counital_maps(H: GcwhqData) -> CounitalMaps:
    """The four maps ``H_e -> H_p``: eps^t, eps^s and their tilde variants."""
    G, e = H.group, H.e
    de = H.dims[e]
    eM = H.counit @ H.mul[e]
    t, s, tt, ts = [], [], [], []
    for p in G:
        dp = H.dims[p]
        one_ep = H.unit_split(e, p)  # 1_(1,e) (x) 1_(2,p)
        one_pe = H.unit_split(p, e)  # 1_(1,p) (x) 1_(2,e)
        # eps(1_(1,e) h) 1_(2,p)
        t.append(Wiring([de]).insert(one_ep, at=0, out=[de, dp]).permute([0, 2, 1])
                 .apply(eM, at=0, n=2).mat())
        # 1_(1,p) eps(h 1_(2,e))
        s.append(Wiring([de]).insert(one_pe, at=1, out=[dp, de]).permute([1, 0, 2])
                 .apply(eM, at=1, n=2).mat())
        # 1_(1,p) eps(1_(2,e) h)
        tt.append(Wiring([de]).insert(one_pe, at=0, out=[dp, de]).apply(eM, at=1, n=2).mat())
        # eps(h 1_(1,e)) 1_(2,p)
        ts.append(Wiring([de]).insert(one_ep, at=1, out=[de, dp]).apply(eM, at=0, n=2).mat())
    return CounitalMaps(tuple(t), tuple(s), tuple(tt), tuple(ts))


# checks ----------------------------------------------------------------------

def _structural(H: GcwhqData) -> None:
    H.validate_shapes()


def _check_coalgebra(H: GcwhqData, ck: Checker) -> None:
    G, e = H.group, H.e
    for p in G:
        d = H.dims[p]
        I = Mat.identity(d)
        ck.eq("unit.left", (p,), H.mul[p] @ kron(H.unit[p], I), I, [d])
        ck.eq("unit.right", (p,), H.mul[p] @ kron(I, H.unit[p]), I, [d])
        ck.eq("counit.left", (p,), kron(H.counit, I) @ H.D(e, p), I, [d])
        ck.eq("counit.right", (p,), kron(I, H.counit) @ H.D(p, e), I, [d])
    for p, q, r in product(G, G, G):
        pq, qr = G.mul(p, q), G.mul(q, r)
        lhs = kron(H.D(p, q), Mat.identity(H.dims[r])) @ H.D(pq, r)
        rhs = kron(Mat.identity(H.dims[p]), H.D(q, r)) @ H.D(p, qr)
        ck.eq("coassociative", (p, q, r), lhs, rhs, [H.dims[G.mul(p, q, r)]])


def convolution_antipode_check(H: GcwhqData, maps: CounitalMaps | None = None) -> CheckReport:
    """The antipode against the target/source counital maps.

    ``S_p = S_p * eps^t`` and ``S_p = eps^s * S_p`` with products in
    ``H_{p^-1}``, together with the convolution descriptions
    ``eps^t_p = id * S`` and ``eps^s_p = S * id`` of the counital maps.
    """
    _structural(H)
    maps = maps or counital_maps(H)
    G, e = H.group, H.e
    ck = Checker(G)
    de = H.dims[e]
    for p in G:
        pi = G.inv(p)
        dp = H.dims[p]
        M = H.mul[pi]
        # S_p(h_(1,p)) eps^t_{p^-1}(h_(2,e)), h in H_p
        rhs = M @ kron(H.S(p), maps.eps_t[pi]) @ H.D(p, e)
        ck.eq("antipode.right-target", (p,), H.S(p), rhs, [dp])
        # eps^s_{p^-1}(h_(1,e)) S_p(h_(2,p))
        rhs = M @ kron(maps.eps_s[pi], H.S(p)) @ H.D(e, p)
        ck.eq("antipode.left-source", (p,), H.S(p), rhs, [dp])
        # eps^t_p(h) = h_(1,p) S_{p^-1}(h_(2,p^-1)), h in H_e
        rhs = H.mul[p] @ kron(Mat.identity(dp), H.S(pi)) @ H.D(p, pi)
        ck.eq("target.convolution", (p,), maps.eps_t[p], rhs, [de])
        # eps^s_p(h) = S_{p^-1}(h_(1,p^-1)) h_(2,p)
        rhs = H.mul[p] @ kron(H.S(pi), Mat.identity(dp)) @ H.D(pi, p)
        ck.eq("source.convolution", (p,), maps.eps_s[p], rhs, [de])
    return ck.done()


def check_graded_axioms(H: GcwhqData) -> CheckReport:
    """Axioms of a group-cograded weak Hopf quasigroup."""
    _structural(H)
    G, e = H.group, H.e
    maps = counital_maps(H)
    ck = Checker(G)
    _check_coalgebra(H, ck)

    # Delta_{p,q} is multiplicative
    for p, q in product(G, G):
        pq = G.mul(p, q)
        d, dp, dq = H.dims[pq], H.dims[p], H.dims[q]
        rhs = (Wiring([dp, dq, dp, dq], start=kron(H.D(p, q), H.D(p, q))).permute([0, 2, 1, 3])
               .apply(H.mul[p], at=0, n=2).apply(H.mul[q], at=1, n=2).mat())
        ck.eq("comultiplicative", (p, q), H.D(p, q) @ H.mul[pq], rhs, [d, d])

    # weak comultiplicativity of the units
    for p, q, r in product(G, G, G):
        pq, pqr = G.mul(p, q), G.mul(p, q, r)
        dp, dq, dr = H.dims[p], H.dims[q], H.dims[r]
        one3 = kron(H.D(p, q), Mat.identity(dr)) @ H.D(pq, r) @ H.unit[pqr]
        a = kron(H.unit_split(p, q), H.unit[r])
        b = kron(H.unit[p], H.unit_split(q, r))

        def triple(x, y):
            w = Wiring([dp, dq, dr, dp, dq, dr], start=kron(x, y)).permute([0, 3, 1, 4, 2, 5])
            return w.apply(H.mul[p], at=0, n=2).apply(H.mul[q], at=1, n=2).apply(H.mul[r], at=2, n=2).mat()

        ck.eq("unit.weak-coassoc.left", (p, q, r), one3, triple(a, b), [])
        ck.eq("unit.weak-coassoc.right", (p, q, r), one3, triple(b, a), [])

    # counit on H_e, inputs (g, h, l)
    de = H.dims[e]
    Me, Ie = H.mul[e], Mat.identity(de)
    eM = H.counit @ Me
    lhs = eM @ kron(Me, Ie)
    ck.eq("counit.associator", (e,), lhs, eM @ kron(Ie, Me), [de] * 3)
    split = (Wiring([de] * 3).apply(H.D(e, e), at=1, out=[de, de])
             .apply(eM, at=0, n=2).apply(eM, at=1, n=2).mat())
    split_sw = (Wiring([de] * 3).apply(H.D(e, e), at=1, out=[de, de]).permute([0, 2, 1, 3])
                .apply(eM, at=0, n=2).apply(eM, at=1, n=2).mat())
    ck.eq("counit.split.12", (e,), lhs, split, [de] * 3)
    ck.eq("counit.split.21", (e,), lhs, split_sw, [de] * 3)

    # antipode
    ck.report.extend(convolution_antipode_check(H, maps))
    _check_cancellations(H, maps, ck)
    return ck.done()


def _check_cancellations(H: GcwhqData, maps: CounitalMaps, ck: Checker) -> None:
    G, e = H.group, H.e
    de = H.dims[e]
    for p in G:
        pi = G.inv(p)
        dp, dpi = H.dims[p], H.dims[pi]
        M, Sp = H.mul[p], H.S(pi)  # S_{p^-1}: H_{p^-1} -> H_p
        Ip = Mat.identity(dp)
        # S(h_(1,p^-1)) (h_(2,p) g) = eps^s_p(h) g, inputs (h, g)
        lhs = (Wiring([de, dp]).apply(H.D(pi, p), at=0, out=[dpi, dp]).apply(M, at=1, n=2)
               .apply(Sp, at=0).apply(M, at=0, n=2).mat())
        ck.eq("cancel.left-source", (p,), lhs, M @ kron(maps.eps_s[p], Ip), [de, dp])
        # h_(1,p) (S(h_(2,p^-1)) g) = eps^t_p(h) g, inputs (h, g)
        lhs = (Wiring([de, dp]).apply(H.D(p, pi), at=0, out=[dp, dpi]).apply(Sp, at=1)
               .apply(M, at=1, n=2).apply(M, at=0, n=2).mat())
        ck.eq("cancel.left-target", (p,), lhs, M @ kron(maps.eps_t[p], Ip), [de, dp])
        # (g h_(1,p)) S(h_(2,p^-1)) = g eps^t_p(h), inputs (g, h)
        lhs = (Wiring([dp, de]).apply(H.D(p, pi), at=1, out=[dp, dpi]).apply(M, at=0, n=2)
               .apply(Sp, at=1).apply(M, at=0, n=2).mat())
        ck.eq("cancel.right-target", (p,), lhs, M @ kron(Ip, maps.eps_t[p]), [dp, de])
        # (g S(h_(1,p^-1))) h_(2,p) = g eps^s_p(h), inputs (g, h)
        lhs = (Wiring([dp, de]).apply(H.D(pi, p), at=1, out=[dpi, dp]).apply(Sp, at=1)
               .apply(M, at=0, n=2).apply(M, at=0, n=2).mat())
        ck.eq("cancel.right-source", (p,), lhs, M @ kron(Ip, maps.eps_s[p]), [dp, de])


def check_derived_identities(H: GcwhqData, prerequisite: CheckReport | None = None) -> CheckReport:
    """Consequences of the axioms: counital-map identities and product expansions.

    When the axioms themselves fail, every verdict is still computed but the
    report is marked conditional.
    """
    _structural(H)
    if prerequisite is None:
        prerequisite = check_graded_axioms(H)
    G, e = H.group, H.e
    maps = counital_maps(H)
    t, s, tt, ts = maps.eps_t, maps.eps_s, maps.eps_t_tilde, maps.eps_s_tilde
    ck = Checker(G)
    de = H.dims[e]
    Me, Ie = H.mul[e], Mat.identity(de)
    eps = H.counit

    # idempotency at the identity component
    for name, m in (("target", t), ("source", s), ("target-tilde", tt), ("source-tilde", ts)):
        ck.eq(f"idempotent.{name}", (e,), m[e] @ m[e], m[e], [de])

    for p in G:
        pi = G.inv(p)
        dp = H.dims[p]
        Mp, Ip = H.mul[p], Mat.identity(dp)
        Se, Spi = H.S(e), H.S(pi)

        # composition relations
        ck.eq("compose.t.tt", (p,), t[p] @ tt[e], t[p], [de])
        ck.eq("compose.t.ts", (p,), t[p] @ ts[e], ts[p], [de])
        ck.eq("compose.tt.t", (p,), tt[p] @ t[e], tt[p], [de])
        ck.eq("compose.ts.t", (p,), ts[p] @ t[e], t[p], [de])
        ck.eq("compose.s.tt", (p,), s[p] @ tt[e], tt[p], [de])
        ck.eq("compose.s.ts", (p,), s[p] @ ts[e], s[p], [de])
        ck.eq("compose.tt.s", (p,), tt[p] @ s[e], s[p], [de])
        ck.eq("compose.ts.s", (p,), ts[p] @ s[e], ts[p], [de])
        ck.eq("antipode.t-via-ts", (p,), t[p], ts[p] @ Se, [de])
        ck.eq("antipode.t-via-tt", (p,), t[p], Spi @ tt[pi], [de])
        ck.eq("antipode.s-via-tt", (p,), s[p], tt[p] @ Se, [de])
        ck.eq("antipode.s-via-ts", (p,), s[p], Spi @ ts[pi], [de])
        ck.eq("antipode.t-after-S", (p,), t[p] @ Se, t[p] @ s[e], [de])
        ck.eq("antipode.S-after-s", (p,), Spi @ s[pi], t[p] @ s[e], [de])
        ck.eq("antipode.s-after-S", (p,), s[p] @ Se, s[p] @ t[e], [de])
        ck.eq("antipode.S-after-t", (p,), Spi @ t[pi], s[p] @ t[e], [de])

        # products with counital maps; h in H_p, g in H_e
        # h eps^t_p(g) = eps(h_(1,e) g) h_(2,p), inputs (h, g)
        rhs = (Wiring([dp, de]).apply(H.D(e, p), at=0, out=[de, dp]).permute([0, 2, 1])
               .apply(eps @ Me, at=0, n=2).mat())
        ck.eq("product.h-target", (p,), Mp @ kron(Ip, t[p]), rhs, [dp, de])
        # eps^s_p(g) h = h_(1,p) eps(g h_(2,e)), inputs (g, h)
        rhs = (Wiring([de, dp]).apply(H.D(p, e), at=1, out=[dp, de]).permute([1, 0, 2])
               .apply(eps @ Me, at=1, n=2).mat())
        ck.eq("product.source-h", (p,), Mp @ kron(s[p], Ip), rhs, [de, dp])
        # h eps~t_p(g) = h_(1,p) eps(h_(2,e) g), inputs (h, g)
        rhs = Wiring([dp, de]).apply(H.D(p, e), at=0, out=[dp, de]).apply(eps @ Me, at=1, n=2).mat()
        ck.eq("product.h-target-tilde", (p,), Mp @ kron(Ip, tt[p]), rhs, [dp, de])
        # eps~s_p(g) h = eps(g h_(1,e)) h_(2,p), inputs (g, h)
        rhs = Wiring([de, dp]).apply(H.D(e, p), at=1, out=[de, dp]).apply(eps @ Me, at=0, n=2).mat()
        ck.eq("product.source-tilde-h", (p,), Mp @ kron(ts[p], Ip), rhs, [de, dp])

        # gh expansions; g, h in H_p, inputs (g, h)
        gh = Mp
        a = (Wiring([dp, dp]).apply(H.D(e, p), at=1, out=[de, dp]).apply(t[p], at=1)
             .apply(Mp, at=0, n=2).apply(Mp, at=0, n=2).mat())
        ck.eq("product.expand.1", (p,), gh, a, [dp, dp])
        b = (Wiring([dp, dp]).apply(H.D(e, p), at=0, out=[de, dp]).apply(Mp, at=1, n=2)
             .apply(t[p], at=0).apply(Mp, at=0, n=2).mat())
        ck.eq("product.expand.2", (p,), gh, b, [dp, dp])
        c = (Wiring([dp, dp]).apply(H.D(p, e), at=0, out=[dp, de]).apply(s[p], at=1)
             .apply(Mp, at=1, n=2).apply(Mp, at=0, n=2).mat())
        ck.eq("product.expand.3", (p,), gh, c, [dp, dp])
        d = (Wiring([dp, dp]).apply(H.D(p, e), at=1, out=[dp, de]).apply(Mp, at=0, n=2)
             .apply(s[p], at=1).apply(Mp, at=0, n=2).mat())
        ck.eq("product.expand.4", (p,), gh, d, [dp, dp])

        # eps^t_p(h eps^t_e(g)) = eps^t_p(hg) and eps^s_p(eps^s_e(h) g) = eps^s_p(hg)
        ck.eq("target.absorb", (p,), t[p] @ Me @ kron(Ie, t[e]), t[p] @ Me, [de, de])
        ck.eq("source.absorb", (p,), s[p] @ Me @ kron(s[e], Ie), s[p] @ Me, [de, de])
        # eps^t_p(eps^t_e(h) g) = eps^t_p(h) eps^t_p(g), and the analogues
        ck.eq("target.multiplicative", (p,), t[p] @ Me @ kron(t[e], Ie), Mp @ kron(t[p], t[p]), [de, de])
        ck.eq("source.multiplicative", (p,), s[p] @ Me @ kron(Ie, s[e]), Mp @ kron(s[p], s[p]), [de, de])
        ck.eq("target-tilde.multiplicative", (p,), tt[p] @ Me @ kron(tt[e], Ie),
              Mp @ kron(tt[p], tt[p]), [de, de])
        ck.eq("source-tilde.multiplicative", (p,), ts[p] @ Me @ kron(Ie, ts[e]),
              Mp @ kron(ts[p], ts[p]), [de, de])

    for p, q in product(G, G):
        dp, dq = H.dims[p], H.dims[q]
        pq = G.mul(p, q)
        qi = G.inv(q)
        Mp = H.mul[p]
        one_pq = H.unit_split(p, q)
        one_qp = H.unit_split(q, p)
        # h in H_p: h_(1,p) (x) eps^t_q(h_(2,e)) = 1_(1,p) h (x) 1_(2,q)
        lhs = kron(Mat.identity(dp), t[q]) @ H.D(p, e)
        rhs = Wiring([dp], start=None).insert(one_pq, at=0, out=[dp, dq]).permute([0, 2, 1]).apply(Mp, at=0, n=2).mat()
        ck.eq("het1", (p, q), lhs, rhs, [dp])
        # eps^s_q(h_(1,e)) (x) h_(2,p) = 1_(1,q) (x) h 1_(2,p)
        lhs = kron(s[q], Mat.identity(dp)) @ H.D(e, p)
        rhs = Wiring([dp]).insert(one_qp, at=0, out=[dq, dp]).permute([0, 2, 1]).apply(Mp, at=1, n=2).mat()
        ck.eq("esh1", (p, q), lhs, rhs, [dp])
        # eps~t_q(h_(1,e)) (x) h_(2,p) = 1_(1,q) (x) 1_(2,p) h
        lhs = kron(tt[q], Mat.identity(dp)) @ H.D(e, p)
        rhs = Wiring([dp]).insert(one_qp, at=0, out=[dq, dp]).apply(Mp, at=1, n=2).mat()
        ck.eq("eth1", (p, q), lhs, rhs, [dp])
        # h_(1,p) (x) eps~s_q(h_(2,e)) = h 1_(1,p) (x) 1_(2,q)
        lhs = kron(Mat.identity(dp), ts[q]) @ H.D(p, e)
        rhs = Wiring([dp]).insert(one_pq, at=1, out=[dp, dq]).apply(Mp, at=0, n=2).mat()
        ck.eq("hes1", (p, q), lhs, rhs, [dp])
        # unit forms
        ck.eq("1et", (p, q), kron(Mat.identity(dp), t[q]) @ H.unit_split(p, e), one_pq, [])
        ck.eq("es1", (p, q), kron(s[q], Mat.identity(dp)) @ H.unit_split(e, p), one_qp, [])
        ck.eq("et1", (p, q), kron(tt[q], Mat.identity(dp)) @ H.unit_split(e, p), one_qp, [])
        ck.eq("1es", (p, q), kron(Mat.identity(dp), ts[q]) @ H.unit_split(p, e), one_pq, [])
        # eps^t_q(h_(1,e)) (x) h_(2,p) = S(1_(1,q^-1)) (x) 1_(2,p) h
        lhs = kron(t[q], Mat.identity(dp)) @ H.D(e, p)
        one = kron(H.S(qi), Mat.identity(dp)) @ H.unit_split(qi, p)
        rhs = Wiring([dp]).insert(one, at=0, out=[dq, dp]).apply(Mp, at=1, n=2).mat()
        ck.eq("SE5", (p, q), lhs, rhs, [dp])
        # h_(1,p) (x) eps^s_q(h_(2,e)) = h 1_(1,p) (x) S(1_(2,q^-1))
        lhs = kron(Mat.identity(dp), s[q]) @ H.D(p, e)
        one = kron(Mat.identity(dp), H.S(qi)) @ H.unit_split(p, qi)
        rhs = Wiring([dp]).insert(one, at=1, out=[dp, dq]).apply(Mp, at=0, n=2).mat()
        ck.eq("SE6", (p, q), lhs, rhs, [dp])
        # comultiplication of counital images
        lhs = kron(Mat.identity(dp), t[q]) @ H.D(p, e) @ t[p]
        ck.eq("target.comul", (p, q), lhs, H.D(p, q) @ t[pq], [de])
        lhs = kron(s[p], Mat.identity(dq)) @ H.D(e, q) @ s[q]
        ck.eq("source.comul", (p, q), lhs, H.D(p, q) @ s[pq], [de])

    # counit against counital maps, inputs (h, g) in H_e
    ck.eq("eets1.target", (e,), eps @ Me @ kron(Ie, t[e]), eps @ Me, [de, de])
    ck.eq("eets1.source", (e,), eps @ Me @ kron(s[e], Ie), eps @ Me, [de, de])
    ck.eq("eets2.target", (e,), eps @ Me @ kron(Ie, tt[e]), eps @ Me, [de, de])
    ck.eq("eets2.source", (e,), eps @ Me @ kron(ts[e], Ie), eps @ Me, [de, de])

    return ck.done(conditional=not prerequisite.passed)


def check_gcwhq(H: GcwhqData) -> CheckReport:
    """Axioms followed by the derived identities, in one report."""
    axioms = check_graded_axioms(H)
    derived = check_derived_identities(H, axioms)
    out = CheckReport(list(axioms.verdicts), H.group).extend(derived)
    return out.sorted()
