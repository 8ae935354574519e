"""The pointed group F1^inf of all roots of unity together with 0.

A root of unity exp(2 pi i q) is stored additively as the angle q in Q/Z.
"""

from __future__ import annotations

from typing import Optional, Union

from .errors import NotAPointedGroup
from .lattice import QmodZ
from .monoid import FiniteMonoid


class F1Inf:
    """An element of F1^inf: either zero or an angle in Q/Z."""

    __slots__ = ("angle",)

    def __init__(self, angle: Optional[QmodZ]):
        self.angle = None if angle is None else QmodZ(angle)

    @property
    def is_zero(self) -> bool:
        return self.angle is None

    def __mul__(self, other: "F1Inf") -> "F1Inf":
        return mul(self, other)

    def __pow__(self, k: int) -> "F1Inf":
        if self.angle is None:
            return ZERO if k > 0 else ONE
        return F1Inf(self.angle * k)

    def __eq__(self, other):
        return isinstance(other, F1Inf) and self.angle == other.angle

    def __hash__(self):
        return hash(("F1Inf", self.angle))

    def __repr__(self):
        return "Zero" if self.angle is None else f"Angle({self.angle})"

    def __str__(self):
        return "0" if self.angle is None else str(self.angle)

    def to_json(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, text: Union[str, int]) -> "F1Inf":
        text = str(text).strip()
        if text == "0":
            return ZERO
        return cls(QmodZ(text))


ZERO = F1Inf(None)
ONE = F1Inf(QmodZ(0))


def Angle(q) -> F1Inf:
    return F1Inf(QmodZ(q))


def mul(a: F1Inf, b: F1Inf) -> F1Inf:
    if a.angle is None or b.angle is None:
        return ZERO
    return F1Inf(a.angle + b.angle)


def nth_roots(alpha: F1Inf, n: int) -> list[F1Inf]:
    """All solutions of ``x^n == alpha``: ``n`` of them for nonzero ``alpha``."""
    if n < 1:
        raise ValueError("n must be positive")
    if alpha.angle is None:
        return [ZERO]
    return [F1Inf(q) for q in alpha.angle.roots(n)]


class MuN:
    """The pointed group mu_n ∪ {0}; element ``k`` stands for ``g^k``, ``None`` for 0."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order

    def elements(self) -> list:
        return [None] + list(range(self.order))

    def as_monoid(self) -> FiniteMonoid:
        n = self.order
        labels = ["0"] + [str(QmodZ(k, n)) for k in range(n)]
        size = n + 1
        mult = [[0] * size for _ in range(size)]
        for a in range(n):
            for b in range(n):
                mult[a + 1][b + 1] = (a + b) % n + 1
        return FiniteMonoid(mult, 0, 1, labels)


def is_pointed_group(g: FiniteMonoid) -> bool:
    units = set(g.units())
    return all(x in units for x in range(g.size) if x != g.zero)


def is_algebraically_closed(g: FiniteMonoid) -> tuple[bool, Optional[tuple]]:
    """Refute algebraic closedness of a finite pointed group.

    Returns ``(False, (alpha, n, count))`` where ``x^n == alpha`` has
    ``count != n`` solutions.  A finite group always fails, at the latest
    for ``n = |G| + 1`` and ``alpha = 1``.
    """
    if not is_pointed_group(g) or g.size < 2:
        raise NotAPointedGroup("nonzero elements must form a group")
    nonzero = [x for x in range(g.size) if x != g.zero]
    for n in range(1, len(nonzero) + 2):
        for alpha in nonzero:
            count = sum(1 for x in nonzero if g.power(x, n) == alpha)
            if count != n:
                return False, (alpha, n, count)
    raise AssertionError("unreachable for finite groups")


def algebraic_closure_embedding(g: MuN) -> dict:
    """The embedding mu_n ∪ {0} -> F1^inf sending the generator to Angle(1/n)."""
    out = {None: ZERO}
    for k in range(g.order):
        out[k] = F1Inf(QmodZ(k, g.order))
    return out
