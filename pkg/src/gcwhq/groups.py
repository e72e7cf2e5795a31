"""Finite grading groups given by Cayley tables.

Elements are identified by their index; labels only matter for printing and
for file round-trips.  The identity is always index 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Sequence

__all__ = [
    "GroupError",
    "NotLatinSquare",
    "NoIdentity",
    "MissingInverse",
    "NotAssociative",
    "FiniteGroup",
    "make_cyclic",
    "make_from_table",
    "make_symmetric",
    "conj",
]


class GroupError(ValueError):
    pass


class NotLatinSquare(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class MissingInverse(GroupError):
    pass


class NotAssociative(GroupError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(range(len(self.elements)))

    def mul(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = self.table[acc][x]
        return acc

    def inv(self, x: int) -> int:
        return self._inverses[x]

    @property
    def _inverses(self) -> tuple[int, ...]:
        # cached lazily on the frozen instance
        try:
            return self.__dict__["_inv_cache"]
        except KeyError:
            e = self.identity
            invs = tuple(next(j for j in range(len(self)) if self.table[i][j] == e)
                         for i in range(len(self)))
            object.__setattr__(self, "_inv_cache", invs)
            return invs

    def conj(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.mul(g, h, self.inv(g))

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise KeyError(f"unknown group element {label!r}") from None

    def label(self, x: int) -> str:
        return self.elements[x]

    def is_abelian(self) -> bool:
        n = len(self)
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))


def make_from_table(labels: Sequence[str], table: Sequence[Sequence]) -> FiniteGroup:
    """Validate a Cayley table and return the group.

    ``table`` entries may be labels or indices.  The identity must come first.
    """
    labels = tuple(str(s) for s in labels)
    n = len(labels)
    if n == 0:
        raise GroupError("a group needs at least one element")
    if len(set(labels)) != n:
        raise GroupError("duplicate element labels")
    pos = {s: i for i, s in enumerate(labels)}

    def idx(v):
        if isinstance(v, str):
            if v not in pos:
                raise GroupError(f"table entry {v!r} is not an element")
            return pos[v]
        if not (isinstance(v, int) and 0 <= v < n):
            raise GroupError(f"table entry {v!r} out of range")
        return v

    if len(table) != n or any(len(row) != n for row in table):
        raise GroupError(f"table must be {n}x{n}")
    t = tuple(tuple(idx(v) for v in row) for row in table)

    for i, row in enumerate(t):
        if len(set(row)) != n:
            raise NotLatinSquare(f"row {labels[i]} repeats an element")
    for j in range(n):
        if len({t[i][j] for i in range(n)}) != n:
            raise NotLatinSquare(f"column {labels[j]} repeats an element")

    if any(t[0][j] != j or t[j][0] != j for j in range(n)):
        raise NoIdentity(f"first element {labels[0]} is not a two-sided identity")

    for a in range(n):
        if not any(t[a][b] == 0 and t[b][a] == 0 for b in range(n)):
            raise MissingInverse(f"{labels[a]} has no two-sided inverse")

    for a, b, c in product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            raise NotAssociative(f"({labels[a]}{labels[b]}){labels[c]} != {labels[a]}({labels[b]}{labels[c]})")

    return FiniteGroup(labels, t, 0)


def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be >= 1")
    labels = [str(i) for i in range(n)]
    return make_from_table(labels, [[(i + j) % n for j in range(n)] for i in range(n)])


def make_symmetric(n: int) -> FiniteGroup:
    """S_n on one-line notation, composition (ab)(x) = a(b(x))."""
    perms = sorted(permutations(range(n)))
    labels = ["".join(str(k) for k in p) for p in perms]
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(a[b[x]] for x in range(n))] for b in perms] for a in perms]
    return make_from_table(labels, table)


def conj(G: FiniteGroup, g: int, h: int) -> int:
    return G.conj(g, h)
