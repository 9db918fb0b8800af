"""Totally ordered values of the resolution invariant.

Two kinds exist. ``Positive`` values describe points where the residual
ideal still has positive order; ``Monomial`` values describe points where
only the exceptional monomial is left. Every Positive value is larger than
every Monomial value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


def _fmt(q) -> str:
    if q == math.inf:
        return "inf"
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@total_ordering
class InvariantValue:
    def key(self) -> tuple:  # pragma: no cover - abstract
        raise NotImplementedError

    def __lt__(self, other: "InvariantValue") -> bool:
        return self.key() < other.key()

    def __eq__(self, other) -> bool:
        return isinstance(other, InvariantValue) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


@dataclass(frozen=True, eq=False)
class Positive(InvariantValue):
    w: int
    n: int = 0
    contact: Fraction = Fraction(0)

    def __post_init__(self):
        if self.w < 1:
            raise ValueError("Positive values need w >= 1")
        if self.contact != math.inf:
            object.__setattr__(self, "contact", Fraction(self.contact))

    def key(self) -> tuple:
        return (1, self.w, self.n, self.contact)

    def __str__(self) -> str:
        return f"P({self.w},{self.n},{_fmt(self.contact)})"

    def to_json(self) -> list:
        return ["P", self.w, self.n, _fmt(self.contact)]


@dataclass(frozen=True, eq=False)
class Monomial(InvariantValue):
    neg_p: int
    gamma: Fraction
    labels: tuple[int, ...]

    def __post_init__(self):
        if self.neg_p >= 0:
            raise ValueError("Monomial values need a negative first entry")
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        object.__setattr__(self, "labels", tuple(self.labels))

    def key(self) -> tuple:
        return (0, self.neg_p, self.gamma, self.labels)

    def __str__(self) -> str:
        return f"M({self.neg_p},{_fmt(self.gamma)},[{','.join(map(str, self.labels))}])"

    def to_json(self) -> list:
        return ["M", self.neg_p, _fmt(self.gamma), list(self.labels)]


def value_from_json(data) -> InvariantValue:
    tag = data[0]
    if tag == "P":
        contact = math.inf if data[3] == "inf" else Fraction(data[3])
        return Positive(int(data[1]), int(data[2]), contact)
    if tag == "M":
        return Monomial(int(data[1]), Fraction(data[2]), tuple(int(x) for x in data[3]))
    raise ValueError(f"unknown value tag {tag!r}")


def best_monomial_witness(exponents: dict[int, int], b: int) -> Monomial | None:
    """Largest value over label sets S with sum of exponents >= b.

    The comparison key (-|S|, sum/b, descending labels) is maximized, so
    the smallest sets win first, then the heaviest, then the newest labels.
    """
    from itertools import combinations

    labels = sorted((lab for lab, a in exponents.items() if a > 0), reverse=True)
    for size in range(1, len(labels) + 1):
        best = None
        for subset in combinations(labels, size):
            total = sum(exponents[lab] for lab in subset)
            if total < b:
                continue
            cand = Monomial(-size, Fraction(total, b), tuple(subset))
            if best is None or cand > best:
                best = cand
        if best is not None:
            return best
    return None
