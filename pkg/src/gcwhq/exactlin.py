"""Exact rational scalars and dense linear/tensor algebra.

Every structure map in the package is a :class:`Mat` of :class:`fractions.Fraction`
entries.  Tensor products are row-major Kronecker products with the left factor
major, so the basis vector ``e_i (x) e_j`` of ``A (x) B`` sits at index
``i * dim(B) + j``.  Nothing else in the package is allowed to assume another
leg order.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from math import lcm, prod
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "DimensionError",
    "NotInvertible",
    "Mat",
    "Wiring",
    "as_fraction",
    "fmt_rational",
    "parse_rational",
    "kron",
    "factor_permute",
    "invert",
    "rank",
    "rref",
    "image_basis",
]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class DimensionError(ValueError):
    """Raised when two maps are composed or compared with mismatched shapes."""


class NotInvertible(ArithmeticError):
    """Raised by :func:`invert` on a singular matrix."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational: {x!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals and floats are rejected."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def fmt_rational(x: Fraction) -> str:
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


_INT64_SAFE = 1 << 62


def _bound(n: np.ndarray) -> int:
    if n.size == 0:
        return 0
    if n.dtype == np.int64:
        return int(np.abs(n).max())
    return max(abs(int(v)) for v in n.ravel().tolist())


def _compact(n: np.ndarray) -> np.ndarray:
    """Store as int64 when every entry fits, otherwise as Python ints."""
    if n.dtype == np.int64:
        return n
    if _bound(n) < _INT64_SAFE:
        return n.astype(np.int64)
    return n


def _normalize(n: np.ndarray, d: int) -> tuple[np.ndarray, int]:
    if d < 0:
        n, d = -n, -d
    if d != 1:
        g = int(np.gcd.reduce(n.ravel())) if n.size else 0
        g = math.gcd(g, d)
        if g > 1:
            n, d = n // g, d // g
    return _compact(n), d


def _int_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    k = a.shape[-1]
    if a.dtype == np.int64 and b.dtype == np.int64 and _bound(a) * _bound(b) * max(k, 1) < _INT64_SAFE:
        return np.dot(a, b)
    return _compact(np.dot(a.astype(object), b.astype(object)))


def _to_fractions(n: np.ndarray, d: int) -> np.ndarray:
    """Fraction object array for ``n / d``, building one object per distinct value."""
    out = np.empty(n.shape, dtype=object)
    if n.size == 0:
        return out
    if n.dtype == np.int64:
        vals, inv = np.unique(n.ravel(), return_inverse=True)
        objs = np.array([Fraction(int(v), d) for v in vals.tolist()] + [None], dtype=object)[:-1]
        out[...] = objs[inv].reshape(n.shape)
        return out
    flat = n.ravel().tolist()
    out.ravel()[:] = [Fraction(int(v), d) for v in flat]
    return out


def _from_fractions(a: np.ndarray) -> tuple[np.ndarray, int]:
    flat = a.ravel().tolist()
    d = lcm(*{x.denominator for x in flat}) if flat else 1
    if d == 1:
        nums = [x.numerator for x in flat]
    else:
        nums = [x.numerator * (d // x.denominator) for x in flat]
    n = np.array(nums, dtype=object).reshape(a.shape) if flat else np.zeros(a.shape, dtype=np.int64)
    return _normalize(n, d)


def exact_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``np.dot`` for Fraction object arrays, done in integer arithmetic.

    Both operands are scaled to integers over a common denominator.  When the
    worst-case accumulated value fits, the product runs in int64; otherwise
    it falls back to Python integers.  Either way the result is exact.
    """
    na, da = _from_fractions(a)
    nb, db = _from_fractions(b)
    n, d = _normalize(_int_dot(na, nb), da * db)
    return _to_fractions(n, d)


def _obj_array(rows: int, cols: int) -> np.ndarray:
    a = np.empty((rows, cols), dtype=object)
    a.fill(Fraction(0))
    return a


class Mat:
    """Dense matrix over the rationals.

    Stored as an integer numerator array over one positive common denominator,
    kept in lowest terms so equality is plain array equality.  Numerators are
    int64 while every entry fits and Python integers otherwise.  Instances
    are immutable values; the Fraction view is built on demand.
    """

    __slots__ = ("_n", "_d", "_fa")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, data):
        if isinstance(data, Mat):
            self._n, self._d, self._fa = data._n, data._d, data._fa
            return
        a = np.array(data, dtype=object)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise DimensionError(f"matrix data must be two-dimensional, got shape {a.shape}")
        out = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            out[idx] = as_fraction(x)
        self._n, self._d = _from_fractions(out)
        self._fa = None

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "Mat":
        """From a two-dimensional Fraction object array."""
        m = cls.__new__(cls)
        m._n, m._d = _from_fractions(a)
        m._fa = None
        return m

    @classmethod
    def _int(cls, n: np.ndarray, d: int = 1, normalized: bool = False) -> "Mat":
        m = cls.__new__(cls)
        if normalized:
            m._n, m._d = _compact(n), d
        else:
            m._n, m._d = _normalize(n, d)
        m._fa = None
        return m

    @property
    def _a(self) -> np.ndarray:
        if self._fa is None:
            self._fa = _to_fractions(self._n, self._d)
        return self._fa

    # constructors -----------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls._int(np.zeros((rows, cols), dtype=np.int64), 1, True)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._int(np.eye(n, dtype=np.int64), 1, True)

    @classmethod
    def column(cls, entries: Iterable) -> "Mat":
        vals = [as_fraction(x) for x in entries]
        return cls([[x] for x in vals]) if vals else cls.zeros(0, 1)

    @classmethod
    def row(cls, entries: Iterable) -> "Mat":
        vals = [as_fraction(x) for x in entries]
        return cls([vals]) if vals else cls.zeros(1, 0)

    @classmethod
    def basis_vector(cls, n: int, i: int) -> "Mat":
        a = np.zeros((n, 1), dtype=np.int64)
        a[i, 0] = 1
        return cls._int(a, 1, True)

    @classmethod
    def from_columns(cls, cols: Sequence["Mat"], rows: int | None = None) -> "Mat":
        if not cols:
            return cls.zeros(rows or 0, 0)
        return _concat(cols, axis=1)

    # shape ------------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self._n.shape[0]

    @property
    def cols(self) -> int:
        return self._n.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._n.shape

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(self._a.reshape(-1))

    @property
    def array(self) -> np.ndarray:
        """A copy of the entries as a Fraction object array."""
        return self._a.copy()

    @property
    def denominator(self) -> int:
        return self._d

    @property
    def numerators(self) -> np.ndarray:
        return self._n.copy()

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return Fraction(int(self._n[i, j]), self._d)

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(v), self._d) for v in self._n[:, j].tolist())

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._a]

    # arithmetic -------------------------------------------------------------
    def __matmul__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot compose {self.shape} after {other.shape}")
        return Mat._int(_int_dot(self._n, other._n), self._d * other._d)

    def _common(self, other: "Mat") -> tuple[np.ndarray, np.ndarray, int]:
        d = lcm(self._d, other._d)
        a = self._n if d == self._d else self._n.astype(object) * (d // self._d)
        b = other._n if d == other._d else other._n.astype(object) * (d // other._d)
        if a.dtype != b.dtype or a.dtype != np.int64 or _bound(a) + _bound(b) >= _INT64_SAFE:
            a, b = a.astype(object), b.astype(object)
        return a, b, d

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        a, b, d = self._common(other)
        return Mat._int(a + b, d)

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        a, b, d = self._common(other)
        return Mat._int(a - b, d)

    def __neg__(self) -> "Mat":
        return Mat._int(-self._n.astype(object), self._d)

    def __mul__(self, scalar) -> "Mat":
        if isinstance(scalar, Mat):
            return NotImplemented
        s = as_fraction(scalar)
        return Mat._int(self._n.astype(object) * s.numerator, self._d * s.denominator)

    __rmul__ = __mul__

    @property
    def T(self) -> "Mat":
        return Mat._int(np.ascontiguousarray(self._n.T), self._d, True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._d == other._d and bool(np.array_equal(self._n, other._n))

    def column_mismatch(self, other: "Mat") -> np.ndarray:
        """Indices of the columns where ``self`` and ``other`` differ."""
        if self._d == other._d:
            diff = self._n != other._n
        else:
            a, b, _ = self._common(other)
            diff = a != b
        return np.nonzero(np.asarray(diff, dtype=bool).any(axis=0))[0]

    def is_zero(self) -> bool:
        return not bool(np.any(self._n))

    def with_entry(self, i: int, j: int, value) -> "Mat":
        a = self._a.copy()
        a[i, j] = as_fraction(value)
        return Mat._wrap(a)

    def to_strings(self) -> list[list[str]]:
        return [[fmt_rational(x) for x in r] for r in self._a]

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]]) -> "Mat":
        return cls([[parse_rational(x) if isinstance(x, str) else x for x in r] for r in rows])

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fmt_rational(x) for x in r) for r in self._a)
        return f"Mat({self.rows}x{self.cols}: [{body}])"


def _concat(mats: Sequence[Mat], axis: int) -> Mat:
    d = lcm(*(m._d for m in mats))
    parts = [m._n.astype(object) * (d // m._d) if m._d != d else m._n.astype(object) for m in mats]
    return Mat._int(np.concatenate(parts, axis=axis), d)


def kron(*mats: Mat) -> Mat:
    """Kronecker product, left factor major."""
    if not mats:
        return Mat.identity(1)

    def k2(a: Mat, b: Mat) -> Mat:
        if a.rows * a.cols == 0 or b.rows * b.cols == 0:
            return Mat.zeros(a.rows * b.rows, a.cols * b.cols)
        x, y = a._n, b._n
        if x.dtype != np.int64 or y.dtype != np.int64 or _bound(x) * _bound(y) >= _INT64_SAFE:
            x, y = x.astype(object), y.astype(object)
        return Mat._int(np.kron(x, y), a._d * b._d)

    return reduce(k2, mats)


class Wiring:
    """Builds a linear map one tensor leg at a time.

    The map starts as the identity on ``in_dims``.  Each operation acts on the
    *current* output legs: ``apply`` replaces a block of consecutive legs by
    the output of a matrix, ``permute`` reorders legs.  ``mat()`` returns the
    accumulated map as a ``prod(legs) x prod(in_dims)`` matrix.

    ``start`` replaces the initial identity by another matrix whose rows are
    indexed by ``in_dims``; the wiring then acts on its columns.  This keeps
    large tensor spaces out of memory when only a few vectors are needed.
    """

    def __init__(self, in_dims: Sequence[int], start: "Mat | None" = None):
        self.in_dims = list(in_dims)
        self.legs = list(in_dims)
        n = prod(self.in_dims)
        if start is None:
            start = Mat.identity(n)
        elif start.rows != n:
            raise DimensionError(f"start matrix has {start.rows} rows, legs {self.legs} need {n}")
        self._ncols = start.cols
        self._d = start._d
        self._t = start._n.reshape(*self.legs, start.cols)

    @property
    def ncols(self) -> int:
        return self._ncols

    def apply(self, f: Mat, at: int = 0, n: int = 1, out: Sequence[int] | None = None) -> "Wiring":
        if at < 0 or at + n > len(self.legs):
            raise DimensionError(f"legs {at}..{at + n - 1} out of range for {self.legs}")
        in_legs = self.legs[at:at + n]
        k = prod(in_legs)
        if f.cols != k:
            raise DimensionError(f"map with {f.cols} columns applied to legs of size {k}")
        out = [f.rows] if out is None else list(out)
        if prod(out) != f.rows:
            raise DimensionError(f"output legs {out} do not match {f.rows} rows")
        src = list(range(at, at + n))
        t = np.moveaxis(self._t, src, list(range(n))) if n else self._t
        rest_shape = t.shape[n:]
        t2 = t.reshape(k, -1)
        flat, d = _normalize(_int_dot(f._n, t2), self._d * f._d)
        res = flat.reshape(*out, *rest_shape)
        self._d = d
        m = len(out)
        self._t = np.moveaxis(res, list(range(m)), list(range(at, at + m))) if m else res
        self.legs = self.legs[:at] + out + self.legs[at + n:]
        return self

    def insert(self, vec: Mat, at: int, out: Sequence[int] | None = None) -> "Wiring":
        """Tensor in a constant vector as new legs starting at position ``at``."""
        if vec.cols != 1:
            raise DimensionError("insert expects a column vector")
        return self.apply(vec, at=at, n=0, out=out)

    def permute(self, perm: Sequence[int]) -> "Wiring":
        """New leg ``i`` is old leg ``perm[i]``."""
        perm = list(perm)
        if sorted(perm) != list(range(len(self.legs))):
            raise ValueError(f"{perm} is not a permutation of {len(self.legs)} legs")
        self._t = np.transpose(self._t, perm + [len(self.legs)])
        self.legs = [self.legs[i] for i in perm]
        return self

    def mat(self) -> Mat:
        rows = prod(self.legs)
        return Mat._int(np.ascontiguousarray(self._t).reshape(rows, self.ncols), self._d, True)


def factor_permute(dims: Sequence[int], perm: Sequence[int]) -> Mat:
    """Permutation matrix reordering tensor legs: output leg ``k`` is input leg ``perm[k]``."""
    if not dims:
        raise ValueError("factor_permute needs at least one leg")
    if sorted(perm) != list(range(len(dims))):
        raise ValueError(f"{list(perm)} is not a permutation of {len(dims)} legs")
    return Wiring(dims).permute(perm).mat()


def rref(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = a.array
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] / m[r, c]
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = m[i] - m[i, c] * m[r]
        pivots.append(c)
        r += 1
    return Mat._wrap(m), pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def invert(a: Mat) -> Mat:
    if a.rows != a.cols:
        raise DimensionError(f"cannot invert non-square {a.shape}")
    n = a.rows
    aug = Mat._wrap(np.concatenate([a._a, Mat.identity(n)._a], axis=1))
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise NotInvertible(f"matrix of size {n} has rank {sum(1 for p in pivots if p < n)}")
    return Mat._wrap(red._a[:, n:].copy())


def image_basis(e: Mat) -> tuple[Mat, Mat]:
    """Basis of the column space of ``e`` and a left inverse on that space.

    Returns ``(embed, restrict)``: ``embed`` holds the pivot columns of ``e``;
    ``restrict @ embed`` is the identity and ``embed @ restrict @ x == x`` for
    every ``x`` in the image.
    """
    _, cols = rref(e)
    embed = Mat._wrap(e._a[:, cols].copy()) if cols else Mat.zeros(e.rows, 0)
    if not cols:
        return embed, Mat.zeros(0, e.rows)
    _, rows = rref(embed.T)
    select = Mat.zeros(len(rows), e.rows)
    a = select.array
    for k, i in enumerate(rows):
        a[k, i] = Fraction(1)
    select = Mat._wrap(a)
    restrict = invert(select @ embed) @ select
    return embed, restrict
