"""Gluing affine pieces along a fan.

A point of the glued space is stored in orbit-cone form: the cone ``delta``
of the fan dual to the face of its null ideal, a saturated subgroup ``h`` of
``delta^perp ∩ M`` and a character on ``h``.  Every affine piece whose cone
contains ``delta`` sees the point, and all of them agree on ``(h, chi)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional

from .cones import Cone, Fan, dual_face, fan_validate, faces
from .errors import MeetsNullIdeal, NotAFace, NotVisible, ValidationError
from .lattice import Character, Subgroup, angles, dot, identity, kernel, primitive, saturate
from .scong import FCongruence, ToricContext, contains, krull_dim, make_congruence


@dataclass(frozen=True)
class GlobalPoint:
    support_cone: Cone
    h: Subgroup
    chi: Character

    @property
    def key(self):
        return (self.support_cone.key, self.h.basis, self.chi.values)

    def __eq__(self, other):
        return isinstance(other, GlobalPoint) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def height(self) -> int:
        return self.support_cone.dim + self.h.rank

    def sort_key(self):
        return (self.height, self.support_cone.dim, self.support_cone.rays,
                self.h.basis, tuple(v.as_fraction() for v in self.chi.values))

    def to_json(self) -> dict:
        return {"support_cone": self.support_cone.to_json(),
                "h": [list(r) for r in self.h.basis],
                "chi": [str(v) for v in self.chi.values],
                "height": self.height}

    def label(self) -> str:
        rays = ",".join("(" + ",".join(map(str, r)) + ")" for r in self.support_cone.rays)
        h = ";".join(f"{list(r)}:{v}" for r, v in zip(self.h.basis, self.chi.values))
        return f"<{rays or '0'}|{h or 'none'}>"


class FanScheme:
    """The space of strong congruences on the toric monoid scheme of a fan."""

    def __init__(self, fan: Fan):
        violations = fan_validate(fan)
        if violations:
            raise ValidationError("not a fan", violations)
        if not fan.cones:
            raise ValidationError("empty fan")
        self.fan = fan
        self.rank = fan.ambient_rank
        self._contexts: dict[int, ToricContext] = {}

    def context(self, sigma: Cone) -> ToricContext:
        i = self.fan.index(sigma)
        if i not in self._contexts:
            self._contexts[i] = ToricContext(self.fan.cones[i])
        return self._contexts[i]

    @property
    def contexts(self) -> list[ToricContext]:
        return [self.context(c) for c in self.fan.cones]


def _plain(c: Cone) -> Cone:
    return Cone._canonical(c.ambient_rank, c.rays, c.lineality)


# ---------------------------------------------------------------------------
# localization

def localize_point(c: FCongruence, smaller, target: Optional[ToricContext] = None) -> FCongruence:
    """Invert the monomials of a face ``smaller`` of the dual cone.

    The result lives on ``F[S_sigma']`` with ``sigma' = sigma ∩ smaller^perp``;
    the face becomes ``tau + span(smaller)`` and ``(h, chi)`` is kept.
    """
    ctx = c.context
    j = ctx.face_index(smaller)
    if not ctx.face_lattice.le(j, c.tau):
        raise MeetsNullIdeal("an inverted monomial is identified with 0")
    sub = _plain(dual_face(ctx.sigma, ctx.face(j)))
    if target is None:
        target = ToricContext(sub)
    elif target.sigma != sub:
        raise ValueError("target context does not match the localization")
    inv = ctx.face(j).generators
    image = Cone(list(c.face.generators) + [tuple(-x for x in g) for g in inv], ctx.rank)
    return make_congruence(target, target.face_index(image), c.h, c.chi)


def delocalize_point(c: FCongruence, ctx: ToricContext) -> FCongruence:
    """Pull a congruence back from a localization of ``ctx`` (inverse of ``localize_point``)."""
    if not c.context.sigma.is_subcone(ctx.sigma):
        raise NotVisible("the congruence does not live on a localization of this piece")
    face = c.face
    # the preimage face is the largest face of the dual cone inside the image face
    best = max((f for f in ctx.face_lattice if all(face.contains(g) for g in f.generators)),
               key=lambda f: f.dim)
    return make_congruence(ctx, best.index, c.h, c.chi)


# ---------------------------------------------------------------------------
# orbit-cone form

def canonicalize_global(sigma: Optional[Cone], c: FCongruence) -> GlobalPoint:
    """Orbit-cone form of ``c``, a congruence on the piece of ``sigma``."""
    ctx = c.context
    if sigma is not None and ctx.sigma != sigma:
        raise ValueError("congruence does not live on this cone")
    support = _plain(dual_face(ctx.sigma, c.face))
    return GlobalPoint(support, c.h, c.chi)


def _face_perp(ctx: ToricContext, delta: Cone) -> int:
    """Index of the face ``sigma^dual ∩ delta^perp`` of the dual cone."""
    gens = [r for r in ctx.dual.rays if all(dot(r, d) == 0 for d in delta.generators)]
    gens += list(ctx.dual.lineality) + [tuple(-x for x in v) for v in ctx.dual.lineality]
    return ctx.face_index(Cone(gens, ctx.rank))


def is_visible(p: GlobalPoint, sigma: Cone) -> bool:
    try:
        faces(sigma).index_of(p.support_cone)
    except NotAFace:
        return False
    return True


def restrict_global(p: GlobalPoint, sigma, fs: Optional[FanScheme] = None) -> FCongruence:
    """The representative of ``p`` on the affine piece of ``sigma``."""
    if isinstance(sigma, ToricContext):
        ctx = sigma
    elif fs is not None:
        ctx = fs.context(sigma)
    else:
        ctx = ToricContext(sigma)
    if not is_visible(p, ctx.sigma):
        raise NotVisible("the support cone is not a face of this piece")
    return make_congruence(ctx, _face_perp(ctx, p.support_cone), p.h, p.chi)


def global_contains(fs: FanScheme, p: GlobalPoint, q: GlobalPoint) -> bool:
    """``p ⊆ q``: compared on the piece of the support cone of ``q``."""
    if not is_visible(p, q.support_cone):
        return False
    ctx = fs.context(q.support_cone)
    return contains(restrict_global(p, ctx), restrict_global(q, ctx))


# ---------------------------------------------------------------------------
# dimension

@dataclass
class GlobalDimension:
    dim: int
    complex_variety_dim: int
    witness_cone: Cone
    witness_chain: list

    def to_json(self) -> dict:
        return {"dim": self.dim, "complex_variety_dim": self.complex_variety_dim,
                "witness_cone": self.witness_cone.to_json(),
                "witness_chain": [c.to_json() for c in self.witness_chain]}


def global_dim(fs: FanScheme) -> GlobalDimension:
    """Krull dimension of the glued space with a witness chain.

    The affine pieces cover the space and every one of them, the torus
    included, has dimension ``n``; the witness is taken on a cone of
    largest dimension.
    """
    sigma = min(fs.fan.cones, key=lambda c: (-c.dim, c.rays))
    d, chain = krull_dim(fs.context(sigma))
    return GlobalDimension(d, fs.rank, sigma, chain)


# ---------------------------------------------------------------------------
# bounded specialization poset

def _bounded_subgroups(lat: Subgroup, entry_bound: int) -> list[Subgroup]:
    """Saturated subgroups of ``lat`` spanned by vectors with small coordinates."""
    k = lat.rank
    dirs = set()
    for coeffs in product(range(-entry_bound, entry_bound + 1), repeat=k):
        if any(coeffs):
            v = primitive(lat.element(coeffs))
            first = next(x for x in v if x)
            dirs.add(v if first > 0 else tuple(-x for x in v))
    dirs = sorted(dirs)
    out = {Subgroup.zero(lat.ambient_rank)}
    for r in range(1, k + 1):
        for combo in combinations(dirs, r):
            h = Subgroup(lat.ambient_rank, combo)
            if h.rank == r:
                out.add(saturate(h))
    return sorted(out, key=lambda h: (h.rank, h.basis))


@dataclass
class Poset:
    nodes: list
    edges: list

    def to_json(self) -> dict:
        return {"nodes": [dict(p.to_json(), id=i) for i, p in enumerate(self.nodes)],
                "edges": [list(e) for e in self.edges]}

    def to_dot(self, name: str = "specialization") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        by_height: dict[int, list[int]] = {}
        for i, p in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{p.label()}"];')
            by_height.setdefault(p.height, []).append(i)
        for hgt in sorted(by_height):
            lines.append("  { rank=same; " + " ".join(f"n{i};" for i in by_height[hgt]) + " }")
        for i, j in self.edges:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def global_points(fs: FanScheme, denom_bound: int, entry_bound: int = 1) -> list[GlobalPoint]:
    vals = angles(denom_bound) if denom_bound >= 1 else angles(1)
    out = []
    for delta in fs.fan.cones:
        perp = Subgroup(fs.rank, _perp_basis(delta, fs.rank))
        for h in _bounded_subgroups(perp, entry_bound):
            for chi in product(vals, repeat=h.rank):
                out.append(GlobalPoint(delta, h, Character(h, list(chi))))
    return sorted(set(out), key=GlobalPoint.sort_key)


def _perp_basis(delta: Cone, n: int) -> list[tuple]:
    if not delta.generators:
        return [tuple(r) for r in identity(n)]
    return kernel([list(g) for g in delta.generators], n)


def _poset(fs: FanScheme, nodes: list[GlobalPoint]) -> Poset:
    le = {(i, j) for i, p in enumerate(nodes) for j, q in enumerate(nodes)
          if i != j and global_contains(fs, p, q)}
    edges = sorted((i, j) for i, j in le
                   if not any((i, k) in le and (k, j) in le for k in range(len(nodes))))
    return Poset(nodes, edges)


def specialization_poset(fs: FanScheme, denom_bound: int, per_piece: bool = False,
                         entry_bound: int = 1):
    """The finite slice of bounded points with covering edges of containment.

    With ``per_piece`` a dictionary ``{cone index: Poset}`` of the points
    visible on each maximal cone is returned instead.
    """
    nodes = global_points(fs, denom_bound, entry_bound)
    if not per_piece:
        return _poset(fs, nodes)
    out = {}
    for sigma in fs.fan.maximal_cones():
        out[fs.fan.index(sigma)] = _poset(fs, [p for p in nodes if is_visible(p, sigma)])
    return out


# ---------------------------------------------------------------------------
# catalog fans

def catalog_fan(name: str, rank: int = 2) -> Fan:
    """Standard fans: ``P1``, ``P2``, ``P1xP1``, ``A2``, ``torus`` (of the given rank)."""
    c = Cone
    if name == "P1":
        return Fan.from_maximal(1, [c([(1,)]), c([(-1,)])])
    if name == "P2":
        return Fan.from_maximal(2, [c([(1, 0), (0, 1)]), c([(0, 1), (-1, -1)]),
                                    c([(-1, -1), (1, 0)])])
    if name == "P1xP1":
        return Fan.from_maximal(2, [c([(1, 0), (0, 1)]), c([(0, 1), (-1, 0)]),
                                    c([(-1, 0), (0, -1)]), c([(0, -1), (1, 0)])])
    if name == "A2":
        return Fan.from_maximal(2, [c([(1, 0), (0, 1)])])
    if name == "torus":
        return Fan.from_maximal(rank, [c([], rank)])
    raise KeyError(name)
