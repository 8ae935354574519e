"""Strong F1^inf-congruences on the affine toric monoids F[S_sigma].

A strong congruence is stored canonically as a triple ``(tau, h, chi)``:

* ``tau``  a face of the dual cone (its index in the sorted face lattice);
  monomials with exponent outside ``tau`` are identified with 0,
* ``h``    a saturated subgroup of ``span(tau) ∩ M`` (HNF, ambient coordinates),
* ``chi``  a character ``h -> Q/Z``; ``chi^a ~ lambda chi^b`` for surviving
  exponents ``a, b`` iff ``a - b`` is in ``h`` and ``chi(a - b) = mu - lambda``.

Heights are ``N = n - dim tau`` plus ``T = rank h``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from math import gcd
from typing import Iterator, Optional, Sequence

from .cones import Cone, dual_cone, dual_face, extreme_rays, faces, hilbert_basis, lattice_of_face
from .errors import (ChainDeadEnd, ContextMismatch, ExponentOutsideMonoid, Inconsistent,
                     MalformedPresentation, NotASubgroupOfFaceLattice, NotContained,
                     NotSaturated)
from .lattice import (Character, QmodZ, RootSelector, Subgroup, angles, complete_basis,
                      dot, extend_character, identity, inverse_unimodular, is_saturated,
                      primitive, rank, saturate)
from .roots import F1Inf


# ---------------------------------------------------------------------------
# contexts and terms

class ToricContext:
    """The affine toric monoid ``F[S_sigma]`` with ``S_sigma = sigma^dual ∩ Z^n``."""

    def __init__(self, sigma: Cone):
        if not sigma.is_strongly_convex():
            raise ValueError("sigma must be strongly convex")
        self.sigma = sigma
        self.rank = sigma.ambient_rank
        self.dual = dual_cone(sigma)
        self.face_lattice = faces(self.dual)
        self._face_lattices: dict[int, Subgroup] = {}
        self._dual_face_gens: dict[int, list] = {}
        self._terms: dict[int, list] = {}
        self._monoid_cache: dict[tuple, bool] = {}
        self._tables: dict[tuple, frozenset] = {}

    @classmethod
    def orthant(cls, n: int) -> "ToricContext":
        return cls(Cone(identity(n), n))

    @classmethod
    def torus(cls, n: int) -> "ToricContext":
        return cls(Cone([], n))

    @property
    def hilbert(self) -> list[tuple]:
        return hilbert_basis(self.dual)

    @property
    def is_torus(self) -> bool:
        return self.dual.dim == self.rank and len(self.dual.lineality) == self.rank

    @property
    def is_orthant(self) -> bool:
        return self.sigma == Cone(identity(self.rank), self.rank)

    def __eq__(self, other):
        return isinstance(other, ToricContext) and self.sigma == other.sigma

    def __hash__(self):
        return hash(self.sigma)

    def __repr__(self):
        return f"ToricContext({self.sigma!r})"

    def face(self, i: int):
        return self.face_lattice[i]

    def face_index(self, tau) -> int:
        if isinstance(tau, int):
            if not 0 <= tau < len(self.face_lattice):
                raise IndexError(tau)
            return tau
        return self.face_lattice.index_of(tau)

    def face_group(self, i: int) -> Subgroup:
        """``span(tau_i) ∩ M``."""
        if i not in self._face_lattices:
            self._face_lattices[i] = lattice_of_face(self.face_lattice[i])
        return self._face_lattices[i]

    def dual_face_generators(self, i: int) -> list[tuple]:
        if i not in self._dual_face_gens:
            self._dual_face_gens[i] = dual_face(self.sigma, self.face_lattice[i]).generators
        return self._dual_face_gens[i]

    def in_face(self, i: int, s: Sequence[int]) -> bool:
        """Membership of an exponent of ``S_sigma`` in face ``i``."""
        return dot(self.face_lattice[i].defining_normal, s) == 0

    def in_monoid(self, s: Sequence[int]) -> bool:
        s = tuple(s)
        hit = self._monoid_cache.get(s)
        if hit is None:
            hit = len(s) == self.rank and self.dual.contains(s)
            if len(self._monoid_cache) < 1 << 16:
                self._monoid_cache[s] = hit
        return hit

    @property
    def top(self) -> int:
        return len(self.face_lattice) - 1

    @property
    def bottom(self) -> int:
        return 0

    def trivial(self) -> "FCongruence":
        return FCongruence(self, self.top, Subgroup.zero(self.rank))

    def terms(self, degree_bound: int) -> list[tuple]:
        """Exponents ``s`` in ``S_sigma`` with ``|s|_1 <= degree_bound``, sorted."""
        if degree_bound not in self._terms:
            n, d = self.rank, degree_bound
            out = []
            for s in product(range(-d, d + 1), repeat=n):
                if sum(abs(x) for x in s) <= d and self.dual.contains(s):
                    out.append(s)
            out.sort(key=lambda s: (sum(abs(x) for x in s), s))
            self._terms[degree_bound] = out
        return self._terms[degree_bound]


@dataclass(frozen=True)
class MonomialTerm:
    """``coeff * chi^exponent`` with a nonzero coefficient in F1^inf."""

    coeff: QmodZ
    exponent: tuple

    def __init__(self, coeff, exponent):
        if isinstance(coeff, F1Inf):
            if coeff.is_zero:
                raise MalformedPresentation("monomial coefficient must be nonzero")
            coeff = coeff.angle
        object.__setattr__(self, "coeff", QmodZ(coeff))
        object.__setattr__(self, "exponent", tuple(int(x) for x in exponent))

    def __str__(self):
        return f"{self.coeff}*chi^{list(self.exponent)}"

    def to_json(self) -> dict:
        return {"coeff": str(self.coeff), "exp": list(self.exponent)}


Term = Optional[MonomialTerm]  # None is the zero element


@dataclass
class Presentation:
    """Generating relations ``a_i ~ b_i`` for a congruence on ``F[S_sigma]``."""

    context: ToricContext
    relations: list = field(default_factory=list)

    def __post_init__(self):
        for pair in self.relations:
            if len(pair) != 2:
                raise MalformedPresentation("relations are pairs")
            for t in pair:
                if t is None:
                    continue
                if not isinstance(t, MonomialTerm):
                    raise MalformedPresentation(f"{t!r} is not a monomial term")
                if not self.context.in_monoid(t.exponent):
                    raise ExponentOutsideMonoid(f"{list(t.exponent)} is not in S_sigma")

    @classmethod
    def from_congruence(cls, c: "FCongruence") -> "Presentation":
        """Basis relations ``chi^{z_i+} ~ lambda_i chi^{z_i-}`` plus killed Hilbert elements.

        Exact generating set on the torus and on orthants; for other cones
        it is a subset of ``c`` that need not generate it.
        """
        ctx = c.context
        rels = []
        for g in ctx.hilbert:
            if not ctx.in_face(c.tau, g):
                rels.append((MonomialTerm(0, g), None))
        for z, lam in zip(c.h.basis, c.chi.values):
            if ctx.is_torus:
                plus, minus = z, tuple([0] * ctx.rank)
            else:
                plus = tuple(max(x, 0) for x in z)
                minus = tuple(max(-x, 0) for x in z)
            rels.append((MonomialTerm(0, plus), MonomialTerm(lam, minus)))
        return cls(ctx, rels)


# ---------------------------------------------------------------------------
# canonical strong congruences

class FCongruence:
    __slots__ = ("context", "tau", "h", "chi")

    def __init__(self, context: ToricContext, tau: int, h: Subgroup,
                 chi: Optional[Character] = None):
        self.context = context
        self.tau = tau
        self.h = h
        self.chi = chi if chi is not None else Character.trivial(h)

    @property
    def face(self):
        return self.context.face_lattice[self.tau]

    @property
    def key(self):
        return (self.tau, self.h.basis, self.chi.values)

    def __eq__(self, other):
        return (isinstance(other, FCongruence) and self.key == other.key
                and self.context == other.context)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return (f"FCongruence(tau={self.tau}, h={[list(r) for r in self.h.basis]}, "
                f"chi={[str(x) for x in self.chi.values]})")

    @property
    def height_N(self) -> int:
        return self.context.rank - self.face.dim

    @property
    def height_T(self) -> int:
        return self.h.rank

    @property
    def height(self) -> int:
        return self.height_N + self.height_T

    def to_json(self) -> dict:
        return {"tau": self.tau,
                "tau_generators": self.face.to_json(),
                "h": [list(r) for r in self.h.basis],
                "chi": [str(x) for x in self.chi.values],
                "height": {"N": self.height_N, "T": self.height_T}}


def make_congruence(ctx: ToricContext, tau, h, chi=None) -> FCongruence:
    """Validate ``(tau, h, chi)`` and return the canonical congruence."""
    i = ctx.face_index(tau)
    if not isinstance(h, Subgroup):
        h = Subgroup(ctx.rank, h)
    if not h.is_subgroup_of(ctx.face_group(i)):
        raise NotASubgroupOfFaceLattice(f"{h} is not inside span(tau) ∩ M")
    if not is_saturated(h):
        raise NotSaturated(f"{h} is not saturated")
    if chi is None:
        chi = Character.trivial(h)
    elif not isinstance(chi, Character):
        chi = Character(h, chi)
    elif chi.domain != h:
        raise ValueError("character domain differs from h")
    return FCongruence(ctx, i, h, chi)


def null_ideal_face(c: FCongruence):
    return c.face


def height_N(c: FCongruence) -> int:
    return c.height_N


def height_T(c: FCongruence) -> int:
    return c.height_T


def height(c: FCongruence) -> int:
    return c.height


def residue_descriptor(c: FCongruence) -> tuple[str, int]:
    """Residue pointed group ``F1^inf x Z^r ∪ {0}``: returns ``("Q/Z", r)``."""
    return ("Q/Z", c.face.dim - c.h.rank)


def mspec_enumerate(ctx: ToricContext) -> list[tuple]:
    """One prime ideal per face: the Hilbert basis elements outside the face generate it."""
    hb = ctx.hilbert
    return [(f, [g for g in hb if not ctx.in_face(f.index, g)]) for f in ctx.face_lattice]


def _check_term(ctx: ToricContext, t: Term):
    if t is not None and not ctx.in_monoid(t.exponent):
        raise ExponentOutsideMonoid(f"{list(t.exponent)} is not in S_sigma")


def member(c: FCongruence, s: Term, t: Term) -> bool:
    """Decide ``s ~ t`` in ``c`` (``None`` is the zero element)."""
    ctx = c.context
    _check_term(ctx, s)
    _check_term(ctx, t)
    if s is None and t is None:
        return True
    if s is None or t is None:
        other = s if t is None else t
        return not ctx.in_face(c.tau, other.exponent)
    a_in = ctx.in_face(c.tau, s.exponent)
    b_in = ctx.in_face(c.tau, t.exponent)
    if not a_in and not b_in:
        return True
    if a_in != b_in:
        return False
    v = tuple(x - y for x, y in zip(s.exponent, t.exponent))
    val = c.chi(v)
    return val is not None and val == t.coeff - s.coeff


# ---------------------------------------------------------------------------
# containment

def _same_context(c1: FCongruence, c2: FCongruence):
    if c1.context is not c2.context and c1.context != c2.context:
        raise ContextMismatch("congruences live on different monoids")


def contains(c1: FCongruence, c2: FCongruence) -> bool:
    """``c1 ⊆ c2`` as relations.

    (i)   the face of ``c2`` lies in the face of ``c1``;
    (ii)  ``h1 ∩ span(tau2)`` lies in ``h2`` and the characters agree there;
    (iii) the part of ``span(h1)`` that is nonnegative on the dual face
          ``sigma ∩ tau2^perp`` lies in ``span(tau2)``; otherwise some relation
          of ``c1`` keeps exactly one endpoint alive in ``c2``.
    """
    _same_context(c1, c2)
    ctx = c1.context
    if not ctx.face_lattice.le(c2.tau, c1.tau):
        return False
    inner = c1.h.intersection(ctx.face_group(c2.tau))
    for b in inner.basis:
        v2 = c2.chi(b)
        if v2 is None or v2 != c1.chi(b):
            return False
    if c1.h.rank and c1.tau != c2.tau:
        rows = [tuple(dot(b, u) for b in c1.h.basis) for u in ctx.dual_face_generators(c2.tau)]
        rays, _ = extreme_rays(rows, c1.h.rank)
        if rays:
            return False
    return True


def term_table(c: FCongruence, degree_bound: int, denominator: int) -> frozenset:
    """Every related pair among terms of degree ``<= degree_bound``, via ``member``.

    Terms are ``zeta * chi^s`` with ``zeta`` a ``denominator``-th root of unity.
    Pairs are recorded as ``(i, j, k)`` for ``chi^{s_i} ~ (k/D) chi^{s_j}`` and
    ``(i, None, 0)`` for ``chi^{s_i} ~ 0``; a pair with left coefficient
    ``lambda`` is the same as the recorded one multiplied by ``lambda^{-1}``.
    """
    cache = c.context._tables
    key = (c.key, degree_bound, denominator)
    if key in cache:
        return cache[key]
    exps = c.context.terms(degree_bound)
    coeffs = [QmodZ(k, denominator) for k in range(denominator)]
    out = set()
    for i, a in enumerate(exps):
        ta = MonomialTerm(0, a)
        if member(c, ta, None):
            out.add((i, None, 0))
        for j, b in enumerate(exps):
            for k, mu in enumerate(coeffs):
                if member(c, ta, MonomialTerm(mu, b)):
                    out.add((i, j, k))
    out = frozenset(out)
    if len(cache) < 256:
        cache[key] = out
    return out


def _lcm(xs) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), xs, 1)


def oracle_denominator(*cs: FCongruence) -> int:
    return 2 * _lcm(v.denominator for c in cs for v in c.chi.values)


def brute_contains(c1: FCongruence, c2: FCongruence, degree_bound: int = 6) -> bool:
    """Containment by exhaustive comparison of ``member`` on bounded terms."""
    _same_context(c1, c2)
    d = oracle_denominator(c1, c2)
    return term_table(c1, degree_bound, d) <= term_table(c2, degree_bound, d)


# ---------------------------------------------------------------------------
# chains

def _case2_step(c: FCongruence, j: int) -> FCongruence:
    """Shrink the face to ``j`` keeping ``h ∩ span(tau_j)`` and the restricted character."""
    ctx = c.context
    hj = c.h.intersection(ctx.face_group(j))
    return FCongruence(ctx, j, hj, c.chi.restrict(hj))


def _joint_extension(c: FCongruence, c2: FCongruence,
                     selector: Optional[RootSelector]) -> Character:
    """A character on ``sat(h + h2)`` restricting to ``chi`` and ``chi2``."""
    n = c.context.rank
    gens = list(c.h.basis) + list(c2.h.basis)
    vals = list(c.chi.values) + list(c2.chi.values)
    if not gens:
        return Character.trivial(Subgroup.zero(n))
    joint = Character.from_generators(n, gens, vals)
    return extend_character(joint, saturate(joint.domain), selector)


def _grow_once(c: FCongruence, big: Character) -> FCongruence:
    """Add one basis vector of ``big.domain`` to ``h`` (``h`` is a direct summand of it)."""
    target = big.domain
    coords = [list(target.coordinates(b)) for b in c.h.basis]
    basis = complete_basis(coords, target.rank) if coords else identity(target.rank)
    w = target.element(basis[c.h.rank])
    hp = Subgroup(c.context.rank, list(c.h.basis) + [w])
    return FCongruence(c.context, c.tau, hp, big.restrict(hp))


def saturated_chain(c1: FCongruence, c2: FCongruence,
                    root_selector: Optional[RootSelector] = None) -> list[FCongruence]:
    """A chain from ``c1`` to ``c2`` in which every step raises the height by one.

    While the faces differ, ``h`` is first grown towards ``sat(h + h2)``
    (one basis vector per step), then the face is shrunk by a step that
    keeps ``h ∩ span(tau')``.  Once the faces agree ``h`` is grown up to ``h2``.
    """
    _same_context(c1, c2)
    if not contains(c1, c2):
        raise NotContained("c1 is not contained in c2")
    ctx = c1.context
    chain = [c1]
    cur = c1
    while cur != c2:
        big = _joint_extension(cur, c2, root_selector)
        if cur.h != big.domain:
            nxt = _grow_once(cur, big)
        else:
            nxt = None
            options = [f.index for f in ctx.face_lattice
                       if ctx.face_lattice.le(c2.tau, f.index)
                       and ctx.face_lattice.le(f.index, cur.tau) and f.index != cur.tau]
            options.sort(key=lambda j: (-ctx.face_lattice[j].dim, j))
            for j in options:
                cand = _case2_step(cur, j)
                if (cand.height == cur.height + 1 and contains(cur, cand)
                        and contains(cand, c2)):
                    nxt = cand
                    break
            if nxt is None:
                raise ChainDeadEnd(f"no cover of {cur} below {c2}", chain)
        if nxt.height != cur.height + 1:
            raise ChainDeadEnd(f"step {cur} -> {nxt} does not raise height by one", chain)
        chain.append(nxt)
        cur = nxt
    return chain


def _small_directions(group: Subgroup, entry_bound: int) -> list[tuple]:
    out = set()
    k = group.rank
    for coeffs in product(range(-entry_bound, entry_bound + 1), repeat=k):
        if not any(coeffs):
            continue
        v = primitive(group.element(coeffs))
        first = next(x for x in v if x)
        out.add(v if first > 0 else tuple(-x for x in v))
    return sorted(out)


def _twist_functional(h: Subgroup, hp: Subgroup) -> list[int]:
    """Values on the HNF basis of ``hp`` of a functional ``hp -> Z`` with kernel ``h``."""
    coords = [list(hp.coordinates(b)) for b in h.basis]
    basis = complete_basis(coords, hp.rank) if coords else identity(hp.rank)
    inv = inverse_unimodular(basis)
    return [row[-1] for row in inv]


def covers_within(c: FCongruence, c2: FCongruence, denom_bound: int = 2,
                  entry_bound: int = 1) -> list[FCongruence]:
    """Congruences ``d`` with ``c ⊊ d ⊆ c2`` and ``height(d) = height(c) + 1``.

    Shrinking steps are finite in number.  Growing steps add one direction
    to ``h``; directions are small combinations (coefficients up to
    ``entry_bound``) of a basis of ``span(tau) ∩ M`` together with the basis
    of ``h2``, and the new character value ranges over angles of denominator
    at most ``denom_bound`` plus any value forced by ``c2``.
    """
    ctx = c.context
    lat = ctx.face_lattice
    out: dict = {}
    for f in lat:
        j = f.index
        if j == c.tau or not lat.le(c2.tau, j) or not lat.le(j, c.tau):
            continue
        cand = _case2_step(c, j)
        if cand.height == c.height + 1 and contains(c, cand) and contains(cand, c2):
            out[cand.key] = cand
    group = ctx.face_group(c.tau)
    if c.h.rank < group.rank:
        dirs = _small_directions(group, entry_bound)
        dirs += [tuple(b) for b in c2.h.basis if b in group]
        try:
            big = _joint_extension(c, c2, None)
            if big.domain != c.h and big.domain.is_subgroup_of(group):
                dirs.append(_grow_once(c, big).h.basis[-1])
        except Inconsistent:
            pass
        seen = set()
        g2 = ctx.face_group(c2.tau)
        for v in dirs:
            if rank(list(c.h.basis) + [v], ctx.rank) != c.h.rank + 1:
                continue
            hp = saturate(c.h + Subgroup(ctx.rank, [v]))
            if hp in seen:
                continue
            seen.add(hp)
            chi0 = extend_character(c.chi, hp)
            f = _twist_functional(c.h, hp)
            values = set(angles(denom_bound))
            for w in hp.intersection(g2).basis:
                coords = hp.coordinates(w)
                fw = sum(a * b for a, b in zip(coords, f))
                want = c2.chi(w)
                if fw and want is not None:
                    rhs = want - chi0(w)
                    if fw < 0:
                        fw, rhs = -fw, -rhs
                    values.update(rhs.roots(fw))
                    break
            for t in sorted(values):
                chi_t = Character(hp, [x + t * fb for x, fb in zip(chi0.values, f)])
                cand = FCongruence(ctx, c.tau, hp, chi_t)
                if contains(cand, c2):
                    out[cand.key] = cand
    return [out[k] for k in sorted(out, key=_sort_key)]


def _sort_key(key):
    tau, basis, vals = key
    return (tau, basis, tuple(v.as_fraction() for v in vals))


def iter_saturated_chains(c1: FCongruence, c2: FCongruence, denom_bound: int = 2,
                          entry_bound: int = 1) -> Iterator[list[FCongruence]]:
    _same_context(c1, c2)
    if not contains(c1, c2):
        raise NotContained("c1 is not contained in c2")
    memo: dict = {}

    def nexts(cur):
        if cur.key not in memo:
            memo[cur.key] = covers_within(cur, c2, denom_bound, entry_bound)
        return memo[cur.key]

    chain = [c1]

    def walk():
        cur = chain[-1]
        if cur == c2:
            yield list(chain)
            return
        options = nexts(cur)
        if not options:
            raise ChainDeadEnd(f"no cover of {cur} below {c2}", chain)
        for d in options:
            chain.append(d)
            yield from walk()
            chain.pop()

    yield from walk()


def enumerate_saturated_chains(c1: FCongruence, c2: FCongruence, denom_bound: int = 2,
                               entry_bound: int = 1) -> list[list[FCongruence]]:
    """All saturated chains from ``c1`` to ``c2`` within the bounded candidate family."""
    return list(iter_saturated_chains(c1, c2, denom_bound, entry_bound))


def chain_length_profile(c1: FCongruence, c2: FCongruence, denom_bound: int = 2,
                         entry_bound: int = 1) -> dict[int, int]:
    """``{length: number of saturated chains}`` computed by memoised counting."""
    _same_context(c1, c2)
    if not contains(c1, c2):
        raise NotContained("c1 is not contained in c2")
    memo: dict = {}

    def profile(cur) -> dict:
        if cur == c2:
            return {0: 1}
        if cur.key in memo:
            return memo[cur.key]
        options = covers_within(cur, c2, denom_bound, entry_bound)
        if not options:
            raise ChainDeadEnd(f"no cover of {cur} below {c2}", [cur])
        out: dict = {}
        for d in options:
            for length, count in profile(d).items():
                out[length + 1] = out.get(length + 1, 0) + count
        memo[cur.key] = out
        return out

    return profile(c1)


def maximal_congruence(ctx: ToricContext, tau=None, chi=None) -> FCongruence:
    """``(tau, span(tau) ∩ M, chi)``: quotient is F, height n.  Defaults to the minimal face."""
    i = ctx.bottom if tau is None else ctx.face_index(tau)
    return make_congruence(ctx, i, ctx.face_group(i), chi)


def krull_dim(ctx: ToricContext, root_selector: Optional[RootSelector] = None):
    """Krull dimension with a witness chain from the generic point to a closed point."""
    chain = saturated_chain(ctx.trivial(), maximal_congruence(ctx), root_selector)
    return len(chain) - 1, chain


# ---------------------------------------------------------------------------
# classification on the torus and on affine space

@dataclass
class Classification:
    verdict: str  # Canonical | NotPrime | PrimeNotStrong | CollapsesF | ZeroClosureNotPrime
    congruence: Optional[FCongruence] = None
    reason: str = ""
    degenerate: bool = False

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "reason": self.reason}
        if self.degenerate:
            out["degenerate"] = True
        if self.congruence is not None:
            out["canonical"] = self.congruence.to_json()
        return out


def _classify_unit_relations(ctx: ToricContext, tau: int, pairs) -> Classification:
    n = ctx.rank
    gens, vals = [], []
    for s, t in pairs:
        gens.append([x - y for x, y in zip(s.exponent, t.exponent)])
        vals.append(t.coeff - s.coeff)
    try:
        chi = Character.from_generators(n, gens, vals) if gens else Character.trivial(
            Subgroup.zero(n))
    except Inconsistent as exc:
        return Classification("CollapsesF", reason=f"F does not inject into the quotient: {exc}")
    h = chi.domain
    if not is_saturated(h):
        return Classification(
            "PrimeNotStrong",
            reason=f"exponent lattice {[list(r) for r in h.basis]} is not saturated; the "
                   "quotient has too many roots of unity")
    return Classification("Canonical", FCongruence(ctx, tau, h, chi), "strong congruence")


def classify_torus(p: Presentation) -> Classification:
    """Canonical form of the congruence generated on a Laurent monoid ``F[Z^n]``."""
    ctx = p.context
    if not ctx.is_torus:
        raise MalformedPresentation("classify_torus needs the torus context")
    pairs = []
    for s, t in p.relations:
        if s is None and t is None:
            continue
        if s is None or t is None:
            return Classification("NotPrime", reason="a unit is identified with 0; the "
                                  "quotient collapses to {0 = 1}", degenerate=True)
        pairs.append((s, t))
    return _classify_unit_relations(ctx, ctx.top, pairs)


def _divides(z: Sequence[int], a: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(z, a))


def classify_affine(p: Presentation) -> Classification:
    """Canonical form of the strong congruence presented on ``F[x_1, ..., x_n]``.

    The monomials forced to 0 are closed under the relations; they must be
    generated by variables (the set ``L``).  The remaining relations are
    classified as on the torus over the variables outside ``L``.
    """
    ctx = p.context
    if not ctx.is_orthant:
        raise MalformedPresentation("classify_affine needs the orthant context")
    n = ctx.rank
    zeros = [t.exponent for s, t in p.relations if s is None and t is not None]
    zeros += [s.exponent for s, t in p.relations if t is None and s is not None]
    both = [(s, t) for s, t in p.relations if s is not None and t is not None]

    def killed(a):
        return any(_divides(z, a) for z in zeros)

    changed = True
    while changed:
        changed = False
        for s, t in both:
            ks, kt = killed(s.exponent), killed(t.exponent)
            if ks != kt:
                zeros.append(t.exponent if ks else s.exponent)
                changed = True
    minimal = sorted({z for z in zeros if not any(w != z and _divides(w, z) for w in zeros)})
    if any(not any(z) for z in minimal):
        return Classification("ZeroClosureNotPrime",
                              reason="the zero closure contains a unit", degenerate=True)
    bad = [z for z in minimal if sum(z) != 1]
    if bad:
        return Classification(
            "NotPrime",
            reason=f"monomial {list(bad[0])} is identified with 0 but none of its "
                   "variables is; the quotient has zero divisors")
    dead = {z.index(1) for z in minimal}
    live = [s for s in both if not killed(s[0].exponent)]
    face = Cone([tuple(int(i == j) for j in range(n)) for i in range(n) if i not in dead], n)
    return _classify_unit_relations(ctx, ctx.face_index(face), live)


# ---------------------------------------------------------------------------
# random sampling (test and demo support)

def random_congruence(ctx: ToricContext, rng: random.Random,
                      denominators: Sequence[int] = (1, 2, 3, 6),
                      face: Optional[int] = None) -> FCongruence:
    """A random canonical congruence with small data."""
    i = rng.randrange(len(ctx.face_lattice)) if face is None else face
    group = ctx.face_group(i)
    k = rng.randint(0, group.rank)
    vecs = []
    for _ in range(k):
        coeffs = [rng.randint(-2, 2) for _ in range(group.rank)]
        vecs.append(group.element(coeffs))
    h = saturate(Subgroup(ctx.rank, vecs)) if vecs else Subgroup.zero(ctx.rank)
    vals = []
    for _ in range(h.rank):
        q = rng.choice(list(denominators))
        vals.append(QmodZ(rng.randrange(q), q))
    return FCongruence(ctx, i, h, Character(h, vals))


def random_cover_walk(c: FCongruence, rng: random.Random, steps: int,
                      denom_bound: int = 2) -> FCongruence:
    """Random upward walk along covers (no upper target)."""
    ctx = c.context
    cur = c
    for _ in range(steps):
        options = []
        lat = ctx.face_lattice
        for f in lat:
            if f.index != cur.tau and lat.le(f.index, cur.tau):
                cand = _case2_step(cur, f.index)
                if cand.height == cur.height + 1 and contains(cur, cand):
                    options.append(cand)
        group = ctx.face_group(cur.tau)
        if cur.h.rank < group.rank:
            for v in _small_directions(group, 1):
                if rank(list(cur.h.basis) + [v], ctx.rank) != cur.h.rank + 1:
                    continue
                hp = saturate(cur.h + Subgroup(ctx.rank, [v]))
                chi0 = extend_character(cur.chi, hp)
                f = _twist_functional(cur.h, hp)
                t = rng.choice(angles(denom_bound))
                options.append(FCongruence(ctx, cur.tau, hp,
                                           Character(hp, [x + t * fb for x, fb in
                                                          zip(chi0.values, f)])))
        if not options:
            break
        cur = rng.choice(options)
    return cur
