"""Standard worked instances used by the tests, the acceptance suite and the CLI."""
from __future__ import annotations

from .crossed import CrossedGcwhq, build_barHG, build_HG, build_tildeHG
from .exactlin import Mat
from .groups import FiniteGroup, make_cyclic
from .whq import WhqData, group_algebra, groupoid_algebra

__all__ = [
    "cyclic_group_algebra",
    "inversion_action",
    "two_object_groupoid",
    "swap_action",
    "trivial_action",
    "standard_pairs",
    "build",
    "BUILDERS",
]

BUILDERS = {"hg": build_HG, "tilde": build_tildeHG, "bar": build_barHG}


def cyclic_group_algebra(n: int = 3) -> WhqData:
    return group_algebra(make_cyclic(n))


def inversion_action(B: WhqData, G: FiniteGroup | None = None) -> tuple[FiniteGroup, dict[int, Mat]]:
    """Z/2 acting on a commutative group algebra by the antipode (group inversion)."""
    G = make_cyclic(2) if G is None else G
    return G, {0: Mat.identity(B.dim), 1: B.antipode}


def two_object_groupoid() -> WhqData:
    """Algebra of two objects each with the trivial group: the simplest weak example."""
    return groupoid_algebra(2, make_cyclic(1))


def swap_action(B: WhqData) -> tuple[FiniteGroup, dict[int, Mat]]:
    """Z/2 swapping the two objects of :func:`two_object_groupoid`."""
    if B.dim != 2:
        raise ValueError("swap action needs a two-dimensional algebra")
    return make_cyclic(2), {0: Mat.identity(2), 1: Mat([[0, 1], [1, 0]])}


def trivial_action(B: WhqData, G: FiniteGroup) -> dict[int, Mat]:
    return {g: Mat.identity(B.dim) for g in G}


def build(kind: str, B: WhqData, G: FiniteGroup, action) -> CrossedGcwhq:
    try:
        f = BUILDERS[kind]
    except KeyError:
        raise ValueError(f"unknown construction {kind!r}; choose from {sorted(BUILDERS)}") from None
    return f(B, G, action)


def standard_pairs() -> list[tuple[str, WhqData, FiniteGroup, dict[int, Mat]]]:
    """(name, base, group, action) for the stock examples."""
    B1 = cyclic_group_algebra(3)
    G1, a1 = inversion_action(B1)
    B2 = two_object_groupoid()
    G2, a2 = swap_action(B2)
    return [("z3-inversion", B1, G1, a1), ("groupoid-swap", B2, G2, a2)]
