"""Verdicts and check reports shared by every checker.

An identity is checked by building both sides as matrices on the whole input
tensor space and comparing them column by column.  A failing column is
unravelled back into basis indices of the input legs, which is the
counterexample stored in the verdict.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactlin import Mat, fmt_rational
from .groups import FiniteGroup

__all__ = ["Verdict", "CheckReport", "Checker"]


@dataclass(frozen=True)
class Verdict:
    label: str
    elements: tuple[int, ...]  # group-element instantiation (indices)
    passed: bool
    basis: tuple[int, ...] | None = None  # first counterexample, basis index per input leg
    lhs: tuple[Fraction, ...] | None = None
    rhs: tuple[Fraction, ...] | None = None

    def sort_key(self):
        return (self.label, self.elements)

    def instantiation(self, G: FiniteGroup | None = None) -> dict:
        els = [G.label(x) for x in self.elements] if G is not None else list(self.elements)
        out: dict = {"group": els}
        if self.basis is not None:
            out["basis"] = list(self.basis)
        return out

    def record(self, G: FiniteGroup | None = None) -> dict:
        return {
            "identity": self.label,
            "instantiation": self.instantiation(G),
            "pass": self.passed,
            "lhs": None if self.lhs is None else [fmt_rational(x) for x in self.lhs],
            "rhs": None if self.rhs is None else [fmt_rational(x) for x in self.rhs],
        }


@dataclass
class CheckReport:
    verdicts: list[Verdict] = field(default_factory=list)
    group: FiniteGroup | None = None
    conditional: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def __bool__(self) -> bool:  # pragma: no cover - explicit `passed` preferred
        return self.passed

    def sorted(self) -> "CheckReport":
        return CheckReport(sorted(self.verdicts, key=Verdict.sort_key), self.group,
                           self.conditional, list(self.notes))

    def extend(self, other: "CheckReport") -> "CheckReport":
        self.verdicts.extend(other.verdicts)
        self.notes.extend(n for n in other.notes if n not in self.notes)
        self.conditional = self.conditional or other.conditional
        return self

    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.passed]

    def labels(self) -> set[str]:
        return {v.label for v in self.verdicts}

    def by_label(self, label: str) -> list[Verdict]:
        return [v for v in self.verdicts if v.label == label]

    def label_passed(self, label: str) -> bool:
        vs = self.by_label(label)
        if not vs:
            raise KeyError(label)
        return all(v.passed for v in vs)

    def label_summary(self) -> dict[str, bool]:
        out: dict[str, bool] = {}
        for v in self.verdicts:
            out[v.label] = out.get(v.label, True) and v.passed
        return out

    def format_text(self) -> str:
        lines = []
        for v in sorted(self.verdicts, key=Verdict.sort_key):
            els = ",".join(self.group.label(x) for x in v.elements) if self.group else ",".join(map(str, v.elements))
            status = "PASS" if v.passed else "FAIL"
            line = f"{status} {v.label} [{els}]"
            if not v.passed:
                line += f" basis={list(v.basis) if v.basis is not None else '-'}"
                if v.lhs is not None:
                    line += f" lhs={[fmt_rational(x) for x in v.lhs]} rhs={[fmt_rational(x) for x in v.rhs]}"
            lines.append(line)
        n_fail = len(self.failures())
        if self.conditional:
            lines.append("NOTE results are conditional: prerequisite checks failed")
        for note in self.notes:
            lines.append(f"NOTE {note}")
        lines.append(f"{len(self.verdicts)} verdicts, {n_fail} failed: {'PASSED' if self.passed else 'FAILED'}")
        return "\n".join(lines) + "\n"

    def machine_lines(self) -> list[dict]:
        return [v.record(self.group) for v in sorted(self.verdicts, key=Verdict.sort_key)]


def compare(label: str, elements: Sequence[int], lhs: Mat, rhs: Mat, in_dims: Sequence[int]) -> Verdict:
    """One verdict for ``lhs == rhs`` as maps on an input space with legs ``in_dims``."""
    if lhs.shape != rhs.shape:
        raise ValueError(f"{label}: sides have shapes {lhs.shape} and {rhs.shape}")
    diff = lhs.column_mismatch(rhs)
    if diff.size == 0:
        return Verdict(label, tuple(elements), True)
    j = int(diff[0])
    basis = tuple(int(i) for i in np.unravel_index(j, tuple(in_dims))) if in_dims else ()
    return Verdict(label, tuple(elements), False, basis, lhs.col(j), rhs.col(j))


class Checker:
    """Accumulates verdicts for one report."""

    def __init__(self, group: FiniteGroup | None = None):
        self.report = CheckReport(group=group)

    def eq(self, label: str, elements: Sequence[int], lhs: Mat, rhs: Mat, in_dims: Sequence[int]) -> Verdict:
        v = compare(label, elements, lhs, rhs, in_dims)
        self.report.verdicts.append(v)
        return v

    def flag(self, label: str, elements: Sequence[int], ok: bool,
             lhs: Sequence[Fraction] | None = None, rhs: Sequence[Fraction] | None = None) -> Verdict:
        v = Verdict(label, tuple(elements), bool(ok), None if ok else (),
                    None if ok else (tuple(lhs) if lhs is not None else None),
                    None if ok else (tuple(rhs) if rhs is not None else None))
        self.report.verdicts.append(v)
        return v

    def done(self, conditional: bool = False) -> CheckReport:
        r = self.report.sorted()
        r.conditional = conditional
        return r
