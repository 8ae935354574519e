"""Finite pointed monoids given by multiplication tables.

This is the brute-force layer: congruence closure, quotients, integrality
and the intrinsic domain criterion are all decided by exhaustive search, so
the symbolic code elsewhere can be checked against it on small truncations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import gcd
from typing import Iterable, Optional, Sequence

from .cones import Cone, dual_cone, hilbert_basis
from .errors import MonoidAxiomError, ParseError
from .lattice import QmodZ, dot, primitive


class FiniteMonoid:
    """A commutative pointed monoid on ``range(size)``.

    ``mult[a][b]`` is the index of ``a * b``.  Construction checks
    commutativity, associativity and the roles of ``zero`` and ``one``.
    """

    def __init__(self, mult: Sequence[Sequence[int]], zero: int, one: int,
                 labels: Optional[Sequence[str]] = None, check: bool = True):
        self.mult = tuple(tuple(int(x) for x in row) for row in mult)
        self.size = len(self.mult)
        self.zero = zero
        self.one = one
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.size))
        if check:
            self._check()

    def _check(self):
        n, m = self.size, self.mult
        if n == 0:
            raise MonoidAxiomError("empty monoid")
        if any(len(row) != n for row in m):
            raise MonoidAxiomError("multiplication table is not square")
        if any(not 0 <= x < n for row in m for x in row):
            raise MonoidAxiomError("table entry out of range")
        for a in range(n):
            if m[a][self.one] != a or m[self.one][a] != a:
                raise MonoidAxiomError(f"{self.labels[self.one]} is not neutral")
            if m[a][self.zero] != self.zero or m[self.zero][a] != self.zero:
                raise MonoidAxiomError(f"{self.labels[self.zero]} is not absorbing")
            for b in range(n):
                if m[a][b] != m[b][a]:
                    raise MonoidAxiomError("table is not commutative")
        for a in range(n):
            for b in range(n):
                ab = m[a][b]
                row = m[ab]
                for c in range(n):
                    if row[c] != m[a][m[b][c]]:
                        raise MonoidAxiomError("table is not associative")

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def power(self, a: int, k: int) -> int:
        out = self.one
        for _ in range(k):
            out = self.mult[out][a]
        return out

    def units(self) -> list[int]:
        return [a for a in range(self.size) if self.one in self.mult[a]]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def __repr__(self):
        return f"FiniteMonoid(size={self.size}, labels={list(self.labels)})"

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        lab = self.labels
        return {"elements": list(lab), "zero": lab[self.zero], "one": lab[self.one],
                "mult": [[lab[x] for x in row] for row in self.mult]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteMonoid":
        try:
            names = [str(x) for x in data["elements"]]
            pos = {name: i for i, name in enumerate(names)}
            if len(pos) != len(names):
                raise ParseError("duplicate element names")
            mult = [[pos[str(x)] for x in row] for row in data["mult"]]
            return cls(mult, pos[str(data["zero"])], pos[str(data["one"])], names)
        except KeyError as exc:
            raise ParseError(f"unknown or missing element {exc}") from None
        except TypeError as exc:
            raise ParseError(str(exc)) from None


@dataclass(frozen=True)
class FiniteCongruence:
    parent: FiniteMonoid
    partition: tuple  # class id per element, ids numbered by first occurrence

    @property
    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for a, k in enumerate(self.partition):
            out.setdefault(k, []).append(a)
        return [out[k] for k in sorted(out)]

    def related(self, a: int, b: int) -> bool:
        return self.partition[a] == self.partition[b]

    @property
    def null_ideal(self) -> list[int]:
        z = self.partition[self.parent.zero]
        return [a for a, k in enumerate(self.partition) if k == z]

    @property
    def is_total(self) -> bool:
        return self.related(self.parent.zero, self.parent.one)

    def __le__(self, other: "FiniteCongruence") -> bool:
        return all(other.related(a, cls[0]) for cls in self.classes for a in cls)


def _normalize(parent_of: Sequence[int]) -> tuple:
    ids: dict[int, int] = {}
    return tuple(ids.setdefault(r, len(ids)) for r in parent_of)


def congruence_closure(a: FiniteMonoid, pairs: Iterable[tuple]) -> FiniteCongruence:
    """Least congruence containing ``pairs`` (union-find plus multiplicative closure)."""
    parent = list(range(a.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = [(int(x), int(y)) for x, y in pairs]
    while pending:
        x, y = pending.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[max(rx, ry)] = min(rx, ry)
        for lam in range(a.size):
            row = a.mult[lam]
            pending.append((row[x], row[y]))
    return FiniteCongruence(a, _normalize([find(x) for x in range(a.size)]))


def trivial_congruence(a: FiniteMonoid) -> FiniteCongruence:
    return FiniteCongruence(a, tuple(range(a.size)))


def quotient(a: FiniteMonoid, c: FiniteCongruence) -> FiniteMonoid:
    classes = c.classes
    reps = [cls[0] for cls in classes]
    cid = c.partition
    mult = [[cid[a.mult[x][y]] for y in reps] for x in reps]
    labels = ["[" + a.labels[r] + "]" for r in reps]
    return FiniteMonoid(mult, cid[a.zero], cid[a.one], labels, check=False)


def is_integral(a: FiniteMonoid) -> bool:
    """``ab == ac`` implies ``a == 0`` or ``b == c``: each nonzero row is injective."""
    return all(len(set(a.mult[x])) == a.size for x in range(a.size) if x != a.zero)


def _order(a: FiniteMonoid, x: int) -> int:
    k, y = 1, x
    while y != a.one:
        y = a.mult[y][x]
        k += 1
        if k > a.size + 1:
            return 0
    return k


def unit_group_exponent(a: FiniteMonoid) -> int:
    e = 1
    for u in a.units():
        k = _order(a, u)
        e = e * k // gcd(e, k)
    return e


def root_count_violation(a: FiniteMonoid) -> Optional[tuple]:
    """First ``(alpha, n, count)`` with more than ``n`` solutions of ``x^n == alpha``.

    Only ``n`` up to the exponent of the unit group is searched; for an
    integral finite monoid the nonzero part is a group, so root counts are
    periodic in ``n`` with that period.
    """
    for n in range(1, unit_group_exponent(a) + 1):
        counts = [0] * a.size
        for x in range(a.size):
            counts[a.power(x, n)] += 1
        for alpha in range(a.size):
            if counts[alpha] > n:
                return (alpha, n, counts[alpha])
    return None


def is_domain(a: FiniteMonoid) -> bool:
    """Integral with at most ``n`` solutions of ``x^n == alpha``; needs ``0 != 1``."""
    return a.zero != a.one and is_integral(a) and root_count_violation(a) is None


def is_cyclic_group_with_zero(a: FiniteMonoid) -> bool:
    """Independent characterisation: integral, nonzero part a cyclic group."""
    if a.zero == a.one:
        return False
    nonzero = [x for x in range(a.size) if x != a.zero]
    if set(a.units()) != set(nonzero):
        return False
    return any(_order(a, g) == len(nonzero) for g in nonzero)


@dataclass(frozen=True)
class PrimeVerdict:
    prime: bool
    degenerate: bool = False

    def __bool__(self):
        return self.prime


def is_prime(c: FiniteCongruence) -> PrimeVerdict:
    return PrimeVerdict(is_integral(quotient(c.parent, c)), c.is_total)


def is_strong(c: FiniteCongruence) -> bool:
    return is_domain(quotient(c.parent, c))


# ---------------------------------------------------------------------------
# truncations of F[S_sigma]

@dataclass
class TruncatedAlgebra:
    """The finite monoid of ``zeta * chi^s`` (``zeta`` in mu_m, ``deg s <= d``) plus 0."""

    monoid: FiniteMonoid
    mu_order: int
    degree_bound: int
    grading: tuple
    exponents: list
    index: dict

    def element(self, coeff: Optional[QmodZ], exponent: Sequence[int]) -> int:
        """Index of ``coeff * chi^exponent`` (``None`` coefficient means the zero element)."""
        if coeff is None:
            return self.monoid.zero
        coeff = QmodZ(coeff)
        if self.mu_order % coeff.denominator:
            raise ValueError(f"{coeff} is not in mu_{self.mu_order}")
        exponent = tuple(exponent)
        if dot(self.grading, exponent) > self.degree_bound:
            return self.monoid.zero
        k = coeff.numerator * (self.mu_order // coeff.denominator)
        return self.index[(k, exponent)]


def truncated_algebra(sigma: Cone, mu_order: int, degree_bound: int) -> TruncatedAlgebra:
    """Quotient of ``mu_m[S_sigma]`` by the ideal of monomials of degree > d.

    The degree is the pairing with the primitive vector along the sum of the
    rays of ``sigma``; this needs ``sigma`` full dimensional so the grading is
    positive on every nonzero exponent (for the orthant it is the coordinate
    sum).
    """
    if mu_order < 1 or degree_bound < 0:
        raise ValueError("need mu_order >= 1 and degree_bound >= 0")
    n = sigma.ambient_rank
    if not sigma.is_strongly_convex() or sigma.dim != n:
        raise ValueError("truncation needs a strongly convex full-dimensional cone")
    w = primitive([sum(r[i] for r in sigma.rays) for i in range(n)])
    dual = dual_cone(sigma)
    gens = hilbert_basis(dual)
    zero = tuple([0] * n)
    exps = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for s in frontier:
            for g in gens:
                t = tuple(x + y for x, y in zip(s, g))
                if t not in exps and dot(w, t) <= degree_bound:
                    exps.add(t)
                    new.append(t)
        frontier = new
    exps = sorted(exps, key=lambda s: (dot(w, s), s))
    labels = ["0"]
    index = {}
    for s in exps:
        for k in range(mu_order):
            index[(k, s)] = len(labels)
            labels.append(_term_label(k, mu_order, s))
    size = len(labels)
    mult = [[0] * size for _ in range(size)]
    items = list(index.items())
    for (k1, s1), i in items:
        for (k2, s2), j in items:
            t = tuple(x + y for x, y in zip(s1, s2))
            if dot(w, t) <= degree_bound:
                mult[i][j] = index[((k1 + k2) % mu_order, t)]
    one = index[(0, zero)]
    mon = FiniteMonoid(mult, 0, one, labels, check=False)
    return TruncatedAlgebra(mon, mu_order, degree_bound, tuple(w), exps, index)


def _term_label(k, m, s):
    coeff = "" if k == 0 else f"[{QmodZ(k, m)}]"
    mono = "*".join(f"x{i}^{e}" if e != 1 else f"x{i}" for i, e in enumerate(s) if e)
    return (coeff + mono) or "1"


# ---------------------------------------------------------------------------
# exhaustive catalogs

def _canonical_table(mult, size) -> tuple:
    """Least relabelling of a table with 0 and 1 fixed at positions 0 and 1."""
    best = None
    for perm in permutations(range(2, size)):
        p = (0, 1) + perm  # p[old] = new
        inv = [0] * size
        for old, new in enumerate(p):
            inv[new] = old
        t = tuple(p[mult[inv[a]][inv[b]]] for a in range(size) for b in range(a, size))
        if best is None or t < best:
            best = t
    return best


def enumerate_pointed_monoids(size: int) -> list[FiniteMonoid]:
    """All commutative pointed monoids with ``size`` elements, up to isomorphism.

    Element 0 is the zero and 1 the identity; the products of the other
    elements are filled in by backtracking with an associativity check on
    every triple whose products are already known.
    """
    if size == 1:
        return [FiniteMonoid([[0]], 0, 0, ["0"])]
    cells = [(a, b) for a in range(2, size) for b in range(a, size)]
    mult = [[None] * size for _ in range(size)]
    for a in range(size):
        mult[0][a] = mult[a][0] = 0
        mult[1][a] = mult[a][1] = a
    seen = set()
    out = []

    def consistent():
        for x in range(size):
            for y in range(size):
                xy = mult[x][y]
                if xy is None:
                    continue
                for z in range(size):
                    yz = mult[y][z]
                    if yz is None:
                        continue
                    left, right = mult[xy][z], mult[x][yz]
                    if left is not None and right is not None and left != right:
                        return False
        return True

    def fill(k):
        if k == len(cells):
            key = _canonical_table(mult, size)
            if key not in seen:
                seen.add(key)
                out.append(FiniteMonoid([row[:] for row in mult], 0, 1))
            return
        a, b = cells[k]
        for v in range(size):
            mult[a][b] = mult[b][a] = v
            if consistent():
                fill(k + 1)
        mult[a][b] = mult[b][a] = None

    fill(0)
    return out
