import random

import pytest
from hypothesis import given, settings, strategies as st

from f1scong.cones import Cone
from f1scong.errors import (ChainDeadEnd, ContextMismatch, ExponentOutsideMonoid,
                            MalformedPresentation, NotASubgroupOfFaceLattice, NotContained,
                            NotSaturated)
from f1scong.lattice import QmodZ, Subgroup
from f1scong.monoid import FiniteMonoid, congruence_closure, is_cyclic_group_with_zero, quotient
from f1scong.scong import (MonomialTerm, Presentation, ToricContext,
                           brute_contains, chain_length_profile, classify_affine,
                           classify_torus, contains, covers_within, enumerate_saturated_chains,
                           krull_dim, make_congruence, maximal_congruence, member,
                           mspec_enumerate, null_ideal_face, random_congruence,
                           random_cover_walk, residue_descriptor, saturated_chain, term_table)
from oracles import truncation_check

from conftest import CATALOG

T = MonomialTerm
seeds = st.integers(0, 10 ** 6)


def affine(ctx, *rels):
    return classify_affine(Presentation(ctx, list(rels))).congruence


def x_is_one(ctx):
    return affine(ctx, (T(0, (1, 0)), T(0, (0, 0))))


def kill_x_y_third(ctx):
    return affine(ctx, (T(0, (1, 0)), None), (T(0, (0, 1)), T("1/3", (0, 0))))


def both_one(ctx):
    return affine(ctx, (T(0, (1, 0)), T(0, (0, 0))), (T(0, (0, 1)), T(0, (0, 0))))


# -- construction ------------------------------------------------------------

def test_trivial_and_maximal(quadrant):
    triv = make_congruence(quadrant, quadrant.top, [])
    assert triv == quadrant.trivial()
    assert null_ideal_face(triv) == quadrant.dual
    top = maximal_congruence(quadrant)
    assert null_ideal_face(top).dim == 0
    assert (top.height_N, top.height_T, top.height) == (2, 0, 2)


def test_maximal_quotient_is_mu_m(quadrant):
    r = truncation_check(maximal_congruence(quadrant), 3, mu_order=4)
    assert r["quotient"].size == 5
    assert is_cyclic_group_with_zero(r["quotient"])


def test_make_congruence_errors(quadrant):
    with pytest.raises(NotSaturated):
        make_congruence(quadrant, quadrant.top, [(2, 0)])
    y_axis = quadrant.face_index(Cone([(0, 1)], 2))
    with pytest.raises(NotASubgroupOfFaceLattice):
        make_congruence(quadrant, y_axis, [(1, 0)])


def test_exponent_outside_monoid(quadrant):
    with pytest.raises(ExponentOutsideMonoid):
        member(quadrant.trivial(), T(0, (-1, 0)), None)
    with pytest.raises(ExponentOutsideMonoid):
        Presentation(quadrant, [(T(0, (-1, 0)), None)])
    with pytest.raises(MalformedPresentation):
        Presentation(quadrant, [("x", None)])


# -- membership ----------------------------------------------------------------

def test_member_examples(quadrant):
    c = x_is_one(quadrant)
    assert member(c, T(0, (1, 0)), T(0, (0, 0)))
    assert not member(c, T(0, (1, 0)), T("1/2", (0, 0)))
    k = affine(quadrant, (T(0, (1, 0)), None))
    assert null_ideal_face(k) == Cone([(0, 1)], 2)
    assert member(k, T(0, (1, 0)), None)
    assert member(k, T(0, (1, 3)), T("1/5", (2, 0)))
    assert not member(k, T(0, (0, 1)), None)


@pytest.mark.parametrize("name", sorted(CATALOG))
@given(seed=seeds)
def test_member_is_a_congruence(contexts, name, seed):
    ctx = contexts[name]
    rng = random.Random(seed)
    c = random_congruence(ctx, rng)
    exps = ctx.terms(3)
    def term():
        if rng.random() < 0.1:
            return None
        return T(QmodZ(rng.randrange(6), 6), rng.choice(exps))
    a, b, d = term(), term(), term()
    assert member(c, a, a)
    assert member(c, a, b) == member(c, b, a)
    if member(c, a, b) and member(c, b, d):
        assert member(c, a, d)
    if member(c, a, b):
        e = term()
        def times(x):
            if x is None or e is None:
                return None
            return T(x.coeff + e.coeff, tuple(p + q for p, q in zip(x.exponent, e.exponent)))
        assert member(c, times(a), times(b))


# -- heights and residues ----------------------------------------------------------

def test_heights(quadrant):
    triv = quadrant.trivial()
    assert (triv.height_N, triv.height_T, triv.height) == (0, 0, 0)
    c = x_is_one(quadrant)
    assert (c.height_N, c.height_T, c.height) == (0, 1, 1)
    k = kill_x_y_third(quadrant)
    assert (k.height_N, k.height_T, k.height) == (1, 1, 2)
    assert k.h == Subgroup(2, [(0, 1)]) and k.chi.values == (QmodZ(1, 3),)


def test_residue(quadrant):
    assert residue_descriptor(quadrant.trivial()) == ("Q/Z", 2)
    assert residue_descriptor(maximal_congruence(quadrant)) == ("Q/Z", 0)
    assert residue_descriptor(x_is_one(quadrant)) == ("Q/Z", 1)


def test_mspec(contexts):
    primes = mspec_enumerate(contexts["quadrant"])
    assert [sorted(g) for _, g in primes] == [[(0, 1), (1, 0)], [(1, 0)], [(0, 1)], []]
    assert len(mspec_enumerate(contexts["simplicial3"])) == 8
    assert len(mspec_enumerate(ToricContext(Cone([(1,)])))) == 2


# -- containment -----------------------------------------------------------------

def test_contains_examples(quadrant):
    c1, c2 = x_is_one(quadrant), both_one(quadrant)
    assert contains(c1, c2) and brute_contains(c1, c2, 6)
    y_half = affine(quadrant, (T(0, (0, 1)), T("1/2", (0, 0))))
    x_face = quadrant.face_index(Cone([(1, 0)], 2))
    kills_y = make_congruence(quadrant, x_face, [])
    assert not contains(y_half, kills_y)
    assert not brute_contains(y_half, kills_y, 6)
    assert member(y_half, T(0, (0, 1)), T("1/2", (0, 0)))
    assert not member(kills_y, T(0, (0, 1)), T("1/2", (0, 0)))


def test_context_mismatch(contexts):
    with pytest.raises(ContextMismatch):
        contains(contexts["quadrant"].trivial(), contexts["wedge"].trivial())


@pytest.mark.parametrize("name", sorted(CATALOG))
@settings(max_examples=15)
@given(seed=seeds)
def test_contains_agrees_with_brute_force(contexts, name, seed):
    ctx = contexts[name]
    rng = random.Random(seed)
    c1 = random_congruence(ctx, rng)
    c2 = random_cover_walk(c1, rng, rng.randint(0, 3)) if rng.random() < 0.6 \
        else random_congruence(ctx, rng)
    assert contains(c1, c2) == brute_contains(c1, c2, 4)


@pytest.mark.parametrize("name", sorted(CATALOG))
@given(seed=seeds)
def test_order_properties(contexts, name, seed):
    ctx = contexts[name]
    rng = random.Random(seed)
    a = random_congruence(ctx, rng)
    b = random_cover_walk(a, rng, 2)
    c = random_cover_walk(b, rng, 2)
    assert contains(ctx.trivial(), a) and contains(a, a)
    assert contains(a, b) and contains(b, c) and contains(a, c)
    if a != b:
        assert not contains(b, a)
        assert b.height > a.height


@pytest.mark.parametrize("name", sorted(CATALOG))
@settings(max_examples=15)
@given(seed=seeds)
def test_canonical_form_is_injective(contexts, name, seed):
    ctx = contexts[name]
    rng = random.Random(seed)
    c1, c2 = random_congruence(ctx, rng), random_congruence(ctx, rng)
    d = 12
    assert (term_table(c1, 3, d) == term_table(c2, 3, d)) == (c1 == c2)


# -- chains ----------------------------------------------------------------------

def test_saturated_chain_examples(quadrant):
    triv = quadrant.trivial()
    assert saturated_chain(triv, triv) == [triv]
    chain = saturated_chain(triv, both_one(quadrant))
    assert len(chain) == 3 and chain[1] == x_is_one(quadrant)
    target = kill_x_y_third(quadrant)
    chain = saturated_chain(triv, target)
    assert len(chain) == 3
    assert chain[1] == affine(quadrant, (T(0, (0, 1)), T("1/3", (0, 0))))
    with pytest.raises(NotContained):
        saturated_chain(target, triv)


@pytest.mark.parametrize("name", sorted(CATALOG))
@given(seed=seeds)
def test_saturated_chain_steps(contexts, name, seed):
    ctx = contexts[name]
    rng = random.Random(seed)
    c1 = random_congruence(ctx, rng)
    c2 = random_cover_walk(c1, rng, 3)
    chain = saturated_chain(c1, c2)
    assert chain[0] == c1 and chain[-1] == c2
    for a, b in zip(chain, chain[1:]):
        assert contains(a, b) and b.height == a.height + 1


def test_enumerated_chains_rank2(quadrant):
    top = both_one(quadrant)
    chains = enumerate_saturated_chains(quadrant.trivial(), top, 2)
    assert chains and all(len(ch) == 3 for ch in chains)
    assert enumerate_saturated_chains(top, top, 2) == [[top]]
    assert chain_length_profile(quadrant.trivial(), maximal_congruence(quadrant), 2) == {2: 4}


def test_covers_are_height_one(quadrant):
    top = maximal_congruence(quadrant)
    for d in covers_within(quadrant.trivial(), top, 3):
        assert d.height == 1 and contains(d, top)


def test_krull_dim(contexts):
    assert krull_dim(contexts["quadrant"])[0] == 2
    assert len(krull_dim(contexts["quadrant"])[1]) == 3
    assert krull_dim(ToricContext(Cone([(1,)])))[0] == 1
    assert krull_dim(contexts["simplicial3"])[0] == 3
    assert krull_dim(ToricContext.torus(2))[0] == 2


def test_dead_end_carries_partial_chain():
    err = ChainDeadEnd("stuck", [1, 2])
    assert err.partial_chain == [1, 2]


# -- classification ----------------------------------------------------------------

def test_classify_torus_examples():
    ctx = ToricContext.torus(1)
    r = classify_torus(Presentation(ctx, [(T(0, (1,)), T(0, (0,)))]))
    assert r.verdict == "Canonical" and r.congruence.h == Subgroup(1, [(1,)])
    assert r.congruence.chi.values == (QmodZ(0),)
    r = classify_torus(Presentation(ctx, [(T(0, (2,)), T(0, (0,)))]))
    assert r.verdict == "PrimeNotStrong"
    r = classify_torus(Presentation(ctx, [(T(0, (1,)), T(0, (0,))),
                                          (T(0, (1,)), T("1/2", (0,)))]))
    assert r.verdict == "CollapsesF"
    r = classify_torus(Presentation(ctx, [(T(0, (1,)), None)]))
    assert r.verdict == "NotPrime" and r.degenerate


def test_x_squared_has_four_square_roots_of_one():
    # mu_2 x Z/4 with zero; X^2 ~ 1 leaves mu_2 x Z/2, four square roots of 1
    els = [(a, b) for a in range(2) for b in range(4)]
    idx = {e: i + 1 for i, e in enumerate(els)}
    n = len(els) + 1
    mult = [[0] * n for _ in range(n)]
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            mult[i][j] = idx[((a + c) % 2, (b + d) % 4)]
    m = FiniteMonoid(mult, 0, idx[(0, 0)])
    q = quotient(m, congruence_closure(m, [(idx[(0, 2)], idx[(0, 0)])]))
    roots = [x for x in range(q.size) if q.mul(x, x) == q.one]
    assert len(roots) == 4


def test_classify_affine_examples(quadrant):
    r = classify_affine(Presentation(quadrant, [(T(0, (1, 0)), None)]))
    assert r.congruence.face == Cone([(0, 1)], 2) and r.congruence.h.rank == 0
    k = kill_x_y_third(quadrant)
    assert k.face == Cone([(0, 1)], 2)
    r = classify_affine(Presentation(quadrant, [(T(0, (1, 1)), None)]))
    assert r.verdict == "NotPrime"
    r = classify_affine(Presentation(quadrant, [(T(0, (1, 0)), None),
                                                (T(0, (1, 0)), T(0, (0, 0)))]))
    assert r.verdict == "ZeroClosureNotPrime" and r.degenerate
    r = classify_affine(Presentation(quadrant, [(T(0, (1, 0)), None),
                                                (T(0, (0, 1)), T(0, (1, 1)))]))
    assert r.congruence == make_congruence(quadrant, 0, [])


def test_xy_zero_truncation_has_zero_divisors(quadrant):
    from f1scong.monoid import is_integral, truncated_algebra
    t = truncated_algebra(quadrant.sigma, 1, 3)
    c = congruence_closure(t.monoid, [(t.element(0, (1, 1)), t.monoid.zero)])
    q = quotient(t.monoid, c)
    x = c.partition[t.element(0, (1, 0))]
    y = c.partition[t.element(0, (0, 1))]
    assert q.mul(x, y) == q.zero and x != q.zero and y != q.zero
    assert not is_integral(q)


@given(seed=seeds, n=st.integers(1, 3))
def test_torus_round_trip(seed, n):
    ctx = ToricContext.torus(n)
    c = random_congruence(ctx, random.Random(seed))
    r = classify_torus(Presentation.from_congruence(c))
    assert r.congruence == c


@given(seed=seeds, n=st.integers(1, 3))
def test_affine_round_trip(seed, n):
    ctx = ToricContext.orthant(n)
    c = random_congruence(ctx, random.Random(seed))
    r = classify_affine(Presentation.from_congruence(c))
    assert r.congruence == c


# -- truncation oracle ---------------------------------------------------------------

@pytest.mark.parametrize("name", ["quadrant", "wedge", "simplicial3"])
@given(seed=seeds)
def test_truncation_soundness(contexts, name, seed):
    c = random_congruence(contexts[name], random.Random(seed))
    r = truncation_check(c, 3)
    assert r["conflicts"] == []
    assert r["unit_domain"]
