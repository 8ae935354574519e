"""Rational polyhedral cones, face lattices, Hilbert bases and fans.

Both lattices N and M are realised as Z^n with the standard dot product as
pairing.  A cone is kept in a canonical form: a basis of its lineality space
(HNF) together with the primitive extreme rays of its pointed part, each
chosen orthogonal to the lineality space.  Two cones are equal iff their
canonical forms agree.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import floor
from typing import Iterable, Optional, Sequence

from .errors import NotAFace, NotPointed
from .lattice import (Subgroup, complete_basis, dot, hnf_basis, inverse_rational,
                      kernel, primitive, rank, span_lattice, vec_sub)


def extreme_rays(rows: Iterable[Sequence[int]], n: int):
    """V-description of ``{y in R^n : <a, y> >= 0 for every row a}``.

    Returns ``(rays, lineality)``: primitive extreme rays of the pointed part
    (orthogonal to the lineality space) and an HNF basis of the lineality
    lattice.  Rays are found as one-dimensional solutions of tight
    subsystems of rank ``d - 1``; at the ranks used here that enumeration is
    small and exact.
    """
    a = sorted({primitive(r) for r in rows if any(r)})
    lin = kernel([list(r) for r in a], n)
    lin = [list(r) for r in hnf_basis(lin, n)] if lin else []
    d = n - len(lin)
    rays = set()
    if d > 0:
        for subset in combinations(range(len(a)), d - 1):
            m = [list(a[i]) for i in subset] + lin
            k = kernel(m, n)
            if len(k) != 1:
                continue
            y = k[0]
            s = [dot(r, y) for r in a]
            if all(x >= 0 for x in s) and any(s):
                rays.add(primitive(y))
            elif all(x <= 0 for x in s) and any(s):
                rays.add(primitive([-x for x in y]))
    return tuple(sorted(rays)), tuple(tuple(r) for r in lin)


def _gens_of(rays, lin):
    out = list(rays)
    for v in lin:
        out.append(tuple(v))
        out.append(tuple(-x for x in v))
    return out


class Cone:
    """The cone ``{sum l_i z_i : l_i >= 0}`` spanned by integer generators."""

    def __init__(self, generators: Iterable[Sequence[int]] = (), rank: Optional[int] = None):
        gens = [tuple(int(x) for x in g) for g in generators]
        if rank is None:
            if not gens:
                raise ValueError("rank is required for a cone without generators")
            rank = len(gens[0])
        if any(len(g) != rank for g in gens):
            raise ValueError("generators of different lengths")
        self.ambient_rank = rank
        drays, dlin = extreme_rays(gens, rank)
        rays, lin = extreme_rays(_gens_of(drays, dlin), rank)
        self._init(rank, rays, lin, (drays, dlin))

    @classmethod
    def _canonical(cls, n, rays, lin, dual=None) -> "Cone":
        obj = cls.__new__(cls)
        obj._init(n, tuple(rays), tuple(lin), dual)
        return obj

    @classmethod
    def from_inequalities(cls, rows: Iterable[Sequence[int]], n: int) -> "Cone":
        """The cone ``{x : <a, x> >= 0 for all rows a}``."""
        rows = [tuple(r) for r in rows]
        rays, lin = extreme_rays(rows, n)
        return cls._canonical(n, rays, lin)

    def _init(self, n, rays, lin, dual):
        self.ambient_rank = n
        self.rays = rays
        self.lineality = lin
        self._dual = dual
        self._lock = threading.Lock()
        self._faces = None
        self._hilbert = None

    # -- representation ---------------------------------------------------
    @property
    def generators(self) -> list[tuple]:
        """Canonical generator list: extreme rays, then +/- lineality basis."""
        return _gens_of(self.rays, self.lineality)

    @property
    def key(self):
        return (self.ambient_rank, self.rays, self.lineality)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Cone({[list(g) for g in self.generators]}, rank={self.ambient_rank})"

    def _dual_data(self):
        if self._dual is None:
            with self._lock:
                if self._dual is None:
                    self._dual = extreme_rays(self.generators, self.ambient_rank)
        return self._dual

    @property
    def inequalities(self) -> list[tuple]:
        """Generators of the dual cone."""
        return _gens_of(*self._dual_data())

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self._dual_data()[1])

    def contains(self, x: Sequence[int]) -> bool:
        drays, dlin = self._dual_data()
        return all(dot(d, x) >= 0 for d in drays) and all(dot(d, x) == 0 for d in dlin)

    def __contains__(self, x):
        return self.contains(x)

    def is_subcone(self, other: "Cone") -> bool:
        return all(other.contains(g) for g in self.generators)

    def is_strongly_convex(self) -> bool:
        return not self.lineality

    def to_json(self) -> list:
        return [list(g) for g in self.generators]


def dual_cone(c: Cone) -> Cone:
    drays, dlin = c._dual_data()
    return Cone._canonical(c.ambient_rank, drays, dlin, (c.rays, c.lineality))


def is_strongly_convex(c: Cone) -> bool:
    return c.is_strongly_convex()


def intersect(c1: Cone, c2: Cone) -> Cone:
    return Cone.from_inequalities(c1.inequalities + c2.inequalities, c1.ambient_rank)


# ---------------------------------------------------------------------------
# faces

class Face(Cone):
    """A face ``parent ∩ H_m`` of a cone, remembering the witness normal ``m``."""

    def __init__(self, parent: Cone, index: int, ray_set: frozenset, normal: tuple):
        gens = [parent.rays[i] for i in sorted(ray_set)] + _gens_of((), parent.lineality)
        super().__init__(gens, parent.ambient_rank)
        self.parent = parent
        self.index = index
        self.ray_set = ray_set
        self.defining_normal = normal

    def __repr__(self):
        return f"Face#{self.index}({[list(g) for g in self.generators]})"

    def __eq__(self, other):
        return Cone.__eq__(self, other)

    __hash__ = Cone.__hash__


@dataclass
class FaceLattice:
    cone: Cone
    faces: list
    inclusion: list = field(repr=False)

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __getitem__(self, i) -> Face:
        return self.faces[i]

    def le(self, i: int, j: int) -> bool:
        """Face ``i`` is contained in face ``j``."""
        return self.inclusion[i][j]

    def index_of(self, c: Cone) -> int:
        for f in self.faces:
            if Cone.__eq__(f, c):
                return f.index
        raise NotAFace(f"{c!r} is not a face of {self.cone!r}")

    @property
    def top(self) -> Face:
        return self.faces[-1]

    @property
    def bottom(self) -> Face:
        return self.faces[0]

    def facets_of(self, j: int) -> list[int]:
        d = self.faces[j].dim
        return [f.index for f in self.faces if f.dim == d - 1 and self.le(f.index, j)]


def faces(c: Cone) -> FaceLattice:
    """All faces of ``c``, each with a supporting normal from the dual cone."""
    if c._faces is not None:
        return c._faces
    with c._lock:
        if c._faces is None:
            c._faces = _compute_faces(c)
    return c._faces


def _compute_faces(c: Cone) -> FaceLattice:
    drays, _ = c._dual_data()
    full = frozenset(range(len(c.rays)))
    # facets are cut out by the dual rays; every face is an intersection of facets
    cuts = [frozenset(i for i in full if dot(d, c.rays[i]) == 0) for d in drays]
    found = {full}
    queue = deque([full])
    while queue:
        s = queue.popleft()
        for cut in cuts:
            t = s & cut
            if t not in found:
                found.add(t)
                queue.append(t)
    entries = []
    for s in found:
        normal = [0] * c.ambient_rank
        for d, cut in zip(drays, cuts):
            if s <= cut:
                normal = [x + y for x, y in zip(normal, d)]
        entries.append((s, tuple(normal)))
    built = [Face(c, -1, s, normal) for s, normal in entries]
    built.sort(key=lambda f: (f.dim, f.rays))
    for i, f in enumerate(built):
        f.index = i
    inclusion = [[a.ray_set <= b.ray_set for b in built] for a in built]
    return FaceLattice(c, built, inclusion)


def dual_face(sigma: Cone, tau: Cone) -> Face:
    """``sigma ∩ tau^perp`` for a face ``tau`` of the dual cone of ``sigma``."""
    dual = dual_cone(sigma)
    faces(dual).index_of(tau)  # raises NotAFace
    gens = [r for r in sigma.rays if all(dot(r, t) == 0 for t in tau.generators)]
    gens += _gens_of((), sigma.lineality)
    return faces(sigma)[faces(sigma).index_of(Cone(gens, sigma.ambient_rank))]


def lattice_of_face(tau: Cone) -> Subgroup:
    """``span(tau) ∩ Z^n`` as a saturated subgroup."""
    return span_lattice(tau.generators, tau.ambient_rank)


# ---------------------------------------------------------------------------
# Hilbert bases

def _parallelepiped(rays_coords: list[list[int]]) -> list[tuple]:
    """Lattice points of the half-open parallelepiped spanned by a basis of Q^d."""
    d = len(rays_coords)
    inv = inverse_rational(rays_coords)

    def reduce_point(p):
        lam = [sum(Fraction(p[i]) * inv[i][j] for i in range(d)) for j in range(d)]
        lam = [x - floor(x) for x in lam]
        q = [sum(lam[j] * rays_coords[j][k] for j in range(d)) for k in range(d)]
        return tuple(int(x) for x in q)

    zero = tuple([0] * d)
    seen = {zero}
    queue = deque([zero])
    while queue:
        p = queue.popleft()
        for k in range(d):
            q = list(p)
            q[k] += 1
            r = reduce_point(q)
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return sorted(seen)


def _pointed_hilbert_basis(c: Cone) -> list[tuple]:
    n = c.ambient_rank
    if not c.rays:
        return []
    lat = span_lattice(c.rays, n)
    d = lat.rank
    coords = [list(lat.coordinates(r)) for r in c.rays]
    candidates = set(c.rays)
    # Caratheodory: each irreducible element lies in the parallelepiped of some
    # simplicial subcone spanned by d independent extreme rays
    for subset in combinations(range(len(coords)), d):
        mat = [coords[i] for i in subset]
        if rank(mat, d) < d:
            continue
        for p in _parallelepiped(mat):
            if any(p):
                candidates.add(lat.element(p))
    cands = sorted(candidates)
    basis = []
    for x in cands:
        if not any(g != x and c.contains(vec_sub(x, g)) for g in cands):
            basis.append(x)
    return sorted(basis)


def hilbert_basis(c: Cone) -> list[tuple]:
    """Minimal generating set of the monoid ``c ∩ Z^n``.

    For a cone with a lineality space the result is the lineality basis with
    both signs followed by lifts of the Hilbert basis of the pointed quotient
    along a fixed basis completion; that set generates but is only canonical
    given that choice.
    """
    if c._hilbert is not None:
        return list(c._hilbert)
    n = c.ambient_rank
    if not c.lineality:
        hb = _pointed_hilbert_basis(c)
    else:
        lin = [list(v) for v in c.lineality]
        basis = complete_basis(lin, n)
        k = len(lin)
        proj = [_coords_in(basis, r)[k:] for r in c.rays]
        q = Cone(proj, n - k) if proj else Cone([], n - k)
        if q.lineality:
            raise NotPointed("quotient by the lineality space is not pointed")
        hb = _gens_of((), [tuple(v) for v in lin])
        for p in _pointed_hilbert_basis(q):
            coords = [0] * k + list(p)
            hb.append(tuple(sum(coords[i] * basis[i][j] for i in range(n)) for j in range(n)))
    c._hilbert = tuple(hb)
    return list(hb)


def _coords_in(basis, v):
    inv = inverse_rational(basis)
    out = [sum(Fraction(v[i]) * inv[i][j] for i in range(len(v))) for j in range(len(v))]
    assert all(x.denominator == 1 for x in out)
    return [int(x) for x in out]


# ---------------------------------------------------------------------------
# fans

class Fan:
    """A finite collection of cones in a common lattice of rank ``n``."""

    def __init__(self, rank: int, cones: Iterable[Cone]):
        self.ambient_rank = rank
        self.cones = []
        for c in cones:
            if c not in self.cones:
                self.cones.append(c)

    @classmethod
    def from_maximal(cls, rank: int, maximal: Iterable[Cone]) -> "Fan":
        """Close a list of cones under taking faces."""
        out = []
        for c in maximal:
            for f in faces(c):
                g = Cone._canonical(rank, f.rays, f.lineality)
                if g not in out:
                    out.append(g)
        out.sort(key=lambda c: (c.dim, c.rays))
        return cls(rank, out)

    @property
    def dim(self) -> int:
        return self.ambient_rank

    def index(self, c: Cone) -> int:
        for i, d in enumerate(self.cones):
            if d == c:
                return i
        raise KeyError(c)

    def __contains__(self, c: Cone) -> bool:
        return any(d == c for d in self.cones)

    def maximal_cones(self) -> list[Cone]:
        return [c for c in self.cones
                if not any(c != d and c.is_subcone(d) for d in self.cones)]

    def to_json(self) -> dict:
        return {"rank": self.ambient_rank,
                "cones": [c.to_json() for c in self.maximal_cones()]}


def fan_validate(f: Fan) -> list[dict]:
    """Check the three fan axioms; returns one record per violation."""
    out = []
    for i, c in enumerate(f.cones):
        if not c.is_strongly_convex():
            out.append({"axiom": "strong convexity", "cones": [i]})
    for i, c in enumerate(f.cones):
        for face in faces(c):
            if face not in f:
                out.append({"axiom": "face closure", "cones": [i],
                            "missing": face.to_json()})
    for i, j in combinations(range(len(f.cones)), 2):
        a, b = f.cones[i], f.cones[j]
        both = intersect(a, b)
        for k, c in ((i, a), (j, b)):
            try:
                faces(c).index_of(both)
            except NotAFace:
                out.append({"axiom": "intersection is a common face", "cones": [i, j]})
                break
    return out
