"""Exact integer linear algebra: normal forms, subgroups of Z^n, characters.

Matrices are plain lists of integer rows.  Every routine works with Python's
arbitrary precision integers; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Callable, Iterable, Optional, Sequence

from .errors import Inconsistent, NotASubgroup, NotSaturated

Vector = tuple


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


def transpose(m, ncols: Optional[int] = None):
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def vec_add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(k, u):
    return tuple(k * x for x in u)


def content(v: Iterable[int]) -> int:
    return reduce(gcd, v, 0)


def primitive(v: Sequence[int]) -> tuple:
    g = content(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def determinant(m) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse_unimodular(m) -> list[list[int]]:
    inv = inverse_rational(m)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def inverse_rational(m) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


# ---------------------------------------------------------------------------
# normal forms

def hnf(m, ncols: Optional[int] = None):
    """Row Hermite normal form.

    Returns ``(h, u)`` with ``h == u * m``, ``u`` unimodular and ``h`` in row
    echelon form: positive pivots, entries above each pivot reduced into
    ``[0, pivot)``, zero rows at the bottom.  ``h`` keeps the shape of ``m``.
    """
    a = [list(r) for r in m]
    nrows = len(a)
    if ncols is None:
        ncols = len(a[0]) if a else 0
    u = identity(nrows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            clean = True
            for i in range(r + 1, nrows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u


def hnf_basis(m, ncols: int) -> tuple:
    """Nonzero rows of the HNF of ``m``, as a tuple of tuples."""
    h, _ = hnf(m, ncols)
    return tuple(tuple(r) for r in h if any(r))


def rank(m, ncols: Optional[int] = None) -> int:
    if ncols is None:
        ncols = len(m[0]) if m else 0
    return len(hnf_basis(m, ncols))


def left_kernel(m, ncols: Optional[int] = None) -> list[tuple]:
    """Integer basis of ``{x : x * m == 0}`` (a saturated lattice)."""
    h, u = hnf(m, ncols)
    return [tuple(u[i]) for i, row in enumerate(h) if not any(row)]


def kernel(m, ncols: int) -> list[tuple]:
    """Integer basis of the right kernel ``{y : m * y == 0}``."""
    if not m:
        return [tuple(r) for r in identity(ncols)]
    return left_kernel(transpose(m), len(m))


def snf(m, ncols: Optional[int] = None):
    """Smith normal form ``d == u * m * v`` with ``d1 | d2 | ...``."""
    a = [list(r) for r in m]
    nrows = len(a)
    if ncols is None:
        ncols = len(a[0]) if a else 0
    u = identity(nrows)
    v = identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(nrows, ncols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, nrows)
                   for j in range(t, ncols) if a[i][j] != 0]
        if not entries:
            break
        _, i0, j0 = min(entries)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            p = a[t][t]
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            rest = [(abs(a[i][t]), i, 'r') for i in range(t + 1, nrows) if a[i][t]]
            rest += [(abs(a[t][j]), j, 'c') for j in range(t + 1, ncols) if a[t][j]]
            if rest:
                _, k, kind = min(rest)
                if kind == 'r':
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def invariant_factors(m, ncols: Optional[int] = None) -> list[int]:
    d, _, _ = snf(m, ncols)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i] != 0]


# ---------------------------------------------------------------------------
# Q/Z

class QmodZ:
    """An element of the additive group Q/Z, stored as a reduced fraction in [0, 1)."""

    __slots__ = ("_f",)

    def __init__(self, value=0, denominator=None):
        if denominator is not None:
            f = Fraction(value, denominator)
        elif isinstance(value, QmodZ):
            f = value._f
        elif isinstance(value, str):
            f = Fraction(value.strip())
        else:
            f = Fraction(value)
        self._f = f - (f.numerator // f.denominator)

    @property
    def numerator(self) -> int:
        return self._f.numerator

    @property
    def denominator(self) -> int:
        return self._f.denominator

    def as_fraction(self) -> Fraction:
        return self._f

    def __add__(self, other):
        return QmodZ(self._f + QmodZ(other)._f)

    __radd__ = __add__

    def __sub__(self, other):
        return QmodZ(self._f - QmodZ(other)._f)

    def __rsub__(self, other):
        return QmodZ(QmodZ(other)._f - self._f)

    def __neg__(self):
        return QmodZ(-self._f)

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return QmodZ(self._f * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, QmodZ):
            return self._f == other._f
        if isinstance(other, (int, Fraction)):
            return self._f == QmodZ(other)._f
        return NotImplemented

    def __hash__(self):
        return hash(("QmodZ", self._f))

    def __lt__(self, other):
        return self._f < QmodZ(other)._f

    def __bool__(self):
        return self._f != 0

    def __str__(self):
        return f"{self._f.numerator}/{self._f.denominator}"

    def __repr__(self):
        return f"QmodZ({self})"

    def roots(self, m: int) -> list["QmodZ"]:
        """All ``m`` solutions of ``m * x == self``, smallest first."""
        return sorted(QmodZ((self._f + k) / m) for k in range(m))


def angles(max_denominator: int) -> list[QmodZ]:
    """All elements of Q/Z whose reduced denominator is at most ``max_denominator``."""
    seen = {QmodZ(0)}
    for q in range(1, max(max_denominator, 1) + 1):
        for p in range(q):
            seen.add(QmodZ(p, q))
    return sorted(seen)


# ---------------------------------------------------------------------------
# subgroups

class Subgroup:
    """A subgroup of Z^n stored by the nonzero rows of its Hermite normal form."""

    __slots__ = ("ambient_rank", "basis", "_pivots")

    def __init__(self, ambient_rank: int, generators: Iterable[Sequence[int]] = ()):
        gens = [list(g) for g in generators]
        for g in gens:
            if len(g) != ambient_rank:
                raise ValueError(f"generator {g} does not live in Z^{ambient_rank}")
        self.ambient_rank = ambient_rank
        self.basis = hnf_basis(gens, ambient_rank) if gens else ()
        self._pivots = tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    @classmethod
    def full(cls, n: int) -> "Subgroup":
        return cls(n, identity(n))

    @classmethod
    def zero(cls, n: int) -> "Subgroup":
        return cls(n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.ambient_rank == other.ambient_rank
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_rank, self.basis))

    def __repr__(self):
        return f"Subgroup({self.ambient_rank}, {[list(r) for r in self.basis]})"

    def coordinates(self, v: Sequence[int]) -> Optional[tuple]:
        """Coordinates of ``v`` in the HNF basis, or None if ``v`` is not a member."""
        v = list(v)
        coords = []
        for row, p in zip(self.basis, self._pivots):
            if any(v[:p]):
                return None
            q, r = divmod(v[p], row[p])
            if r:
                return None
            coords.append(q)
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        if any(v):
            return None
        return tuple(coords)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return all(b in other for b in self.basis)

    def __le__(self, other):
        return self.is_subgroup_of(other)

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.ambient_rank, self.basis + other.basis)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        if not self.basis or not other.basis:
            return Subgroup.zero(self.ambient_rank)
        stacked = [list(r) for r in self.basis] + [list(r) for r in other.basis]
        k = len(self.basis)
        gens = []
        for rel in left_kernel(stacked, self.ambient_rank):
            gens.append([sum(rel[i] * self.basis[i][j] for i in range(k))
                         for j in range(self.ambient_rank)])
        return Subgroup(self.ambient_rank, gens)

    def element(self, coords: Sequence[int]) -> tuple:
        out = [0] * self.ambient_rank
        for c, row in zip(coords, self.basis):
            if c:
                out = [x + c * y for x, y in zip(out, row)]
        return tuple(out)

    def to_json(self) -> dict:
        return {"rows": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, data: dict, ambient_rank: Optional[int] = None) -> "Subgroup":
        rows = data["rows"]
        n = ambient_rank if ambient_rank is not None else len(rows[0])
        return cls(n, rows)


def saturate(h: Subgroup) -> Subgroup:
    """Smallest subgroup containing ``h`` with torsion-free quotient (same rank)."""
    if not h.basis:
        return h
    _, _, v = snf(h.basis, h.ambient_rank)
    vinv = inverse_unimodular(v)
    return Subgroup(h.ambient_rank, vinv[:h.rank])


def is_saturated(h: Subgroup) -> bool:
    return all(d == 1 for d in invariant_factors(h.basis, h.ambient_rank))


def span_lattice(vectors: Iterable[Sequence[int]], n: int) -> Subgroup:
    """Saturated lattice ``span(vectors) ∩ Z^n``."""
    return saturate(Subgroup(n, vectors))


def complete_basis(vectors: Sequence[Sequence[int]], n: Optional[int] = None) -> list[list[int]]:
    """Complete ``vectors`` to a basis of Z^n.

    The first rows of the result generate the same subgroup as ``vectors``
    (they are ``vectors`` themselves when those are linearly independent).
    """
    vectors = [list(v) for v in vectors]
    if n is None:
        n = len(vectors[0])
    h = Subgroup(n, vectors)
    if not is_saturated(h):
        raise NotSaturated(f"{vectors} spans an unsaturated subgroup")
    head = vectors if len(vectors) == h.rank else [list(r) for r in h.basis]
    if not head:
        return identity(n)
    _, _, v = snf(head, n)
    vinv = inverse_unimodular(v)
    return head + vinv[h.rank:]


def solve_in_subgroup(h: Subgroup, v: Sequence[int]) -> Optional[tuple]:
    return h.coordinates(v)


# ---------------------------------------------------------------------------
# characters

RootSelector = Callable[[QmodZ, int], QmodZ]


def default_root_selector(alpha: QmodZ, m: int) -> QmodZ:
    """Pick the m-th root of ``alpha`` with the smallest numerator; 0 for free generators."""
    if m == 0:
        return QmodZ(0)
    return alpha.roots(m)[0]


def smallest_order_root_selector(alpha: QmodZ, m: int) -> QmodZ:
    """Pick the m-th root of ``alpha`` of least multiplicative order (then least numerator)."""
    if m == 0:
        return QmodZ(0)
    return min(alpha.roots(m), key=lambda q: (q.denominator, q))


ROOT_SELECTORS = {"default": default_root_selector, "smallest": smallest_order_root_selector}


class Character:
    """A homomorphism H -> Q/Z given by its values on the HNF basis of H."""

    __slots__ = ("domain", "values")

    def __init__(self, domain: Subgroup, values: Sequence = ()):
        values = tuple(QmodZ(x) for x in values)
        if len(values) != domain.rank:
            raise ValueError(f"expected {domain.rank} values, got {len(values)}")
        self.domain = domain
        self.values = values

    @classmethod
    def trivial(cls, domain: Subgroup) -> "Character":
        return cls(domain, [0] * domain.rank)

    @classmethod
    def from_generators(cls, ambient_rank: int, generators, values) -> "Character":
        """Character on the subgroup generated by ``generators`` taking the given values.

        Raises Inconsistent when some integer relation among the generators
        is sent to a nonzero angle.
        """
        gens = [list(g) for g in generators]
        vals = [QmodZ(x) for x in values]
        if len(gens) != len(vals):
            raise ValueError("one value per generator expected")
        h, u = hnf(gens, ambient_rank)
        basis_vals = []
        for row, urow in zip(h, u):
            val = sum((c * x for c, x in zip(urow, vals) if c), QmodZ(0))
            if any(row):
                basis_vals.append(val)
            elif val:
                raise Inconsistent("a relation among generators has nonzero angle "
                                   f"{val}")
        return cls(Subgroup(ambient_rank, gens), basis_vals)

    def __call__(self, v) -> Optional[QmodZ]:
        return character_value(self, v)

    def __eq__(self, other):
        return (isinstance(other, Character) and self.domain == other.domain
                and self.values == other.values)

    def __hash__(self):
        return hash((self.domain, self.values))

    def __repr__(self):
        return f"Character({self.domain!r}, {[str(x) for x in self.values]})"

    def restrict(self, sub: Subgroup) -> "Character":
        vals = []
        for b in sub.basis:
            val = self(b)
            if val is None:
                raise NotASubgroup(f"{sub} is not contained in {self.domain}")
            vals.append(val)
        return Character(sub, vals)

    def agrees_with(self, other: "Character", on: Subgroup) -> bool:
        return all(self(b) == other(b) for b in on.basis)


def character_value(chi: Character, v) -> Optional[QmodZ]:
    coords = chi.domain.coordinates(v)
    if coords is None:
        return None
    return sum((c * x for c, x in zip(coords, chi.values) if c), QmodZ(0))


def extend_character(chi: Character, target: Subgroup,
                     root_selector: Optional[RootSelector] = None) -> Character:
    """Extend ``chi`` to the larger subgroup ``target``.

    Writes the domain basis in target coordinates, diagonalises with the
    Smith form and solves ``d_i * y_i = b_i`` in Q/Z.  The selector picks
    among the ``d_i`` roots; for free directions it is called with ``m == 0``.
    """
    select = root_selector or default_root_selector
    dom = chi.domain
    if not dom.is_subgroup_of(target):
        raise NotASubgroup(f"{dom} is not contained in {target}")
    if dom == target:
        return chi
    k = target.rank
    if dom.rank == 0:
        return Character(target, [select(QmodZ(0), 0) for _ in range(k)])
    a = [list(target.coordinates(b)) for b in dom.basis]
    d, u, v = snf(a, k)
    rhs = [sum((c * x for c, x in zip(urow, chi.values) if c), QmodZ(0)) for urow in u]
    y = []
    for i in range(k):
        di = d[i][i] if i < len(d) else 0
        if di:
            y.append(select(rhs[i], di))
        else:
            y.append(select(QmodZ(0), 0))
    for i in range(k, len(d)):
        if rhs[i]:
            raise Inconsistent("no extension exists")
    # x = V y: values on the target basis
    x = [sum((v[i][j] * y[j] for j in range(k) if v[i][j]), QmodZ(0)) for i in range(k)]
    out = Character(target, x)
    if not all(out(b) == val for b, val in zip(dom.basis, chi.values)):
        raise Inconsistent("root selector returned a value that is not a root")
    return out


def matrix_to_json(m) -> dict:
    return {"rows": [list(r) for r in m]}


def matrix_from_json(data: dict) -> list[list[int]]:
    return [list(map(int, r)) for r in data["rows"]]
