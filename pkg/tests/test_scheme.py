import random

import pytest
from hypothesis import given, settings, strategies as st

from f1scong.cones import Cone, Fan
from f1scong.errors import MeetsNullIdeal, NotVisible, ValidationError
from f1scong.scheme import (FanScheme, canonicalize_global, catalog_fan,
                            delocalize_point, global_contains, global_dim, global_points,
                            localize_point, restrict_global, specialization_poset)
from f1scong.scong import (MonomialTerm as T, Presentation, ToricContext, classify_affine,
                           contains, krull_dim, make_congruence, maximal_congruence,
                           random_congruence, saturated_chain)

RAY_P, RAY_M = Cone([(1,)]), Cone([(-1,)])


@pytest.fixture(scope="module")
def p1():
    return FanScheme(catalog_fan("P1"))


@pytest.mark.parametrize("name,dim", [("P1", 1), ("P2", 2), ("P1xP1", 2), ("A2", 2),
                                      ("torus", 2)])
def test_global_dim(name, dim):
    g = global_dim(FanScheme(catalog_fan(name)))
    assert g.dim == dim == g.complex_variety_dim
    assert len(g.witness_chain) == dim + 1
    for a, b in zip(g.witness_chain, g.witness_chain[1:]):
        assert contains(a, b) and b.height == a.height + 1


def test_every_piece_has_full_dimension():
    fs = FanScheme(catalog_fan("P2"))
    assert {krull_dim(ctx)[0] for ctx in fs.contexts} == {2}


def test_invalid_fan_rejected():
    with pytest.raises(ValidationError):
        FanScheme(Fan(2, [Cone([(1, 0), (0, 1)])]))


def test_p1_gluing(p1):
    cp = make_congruence(p1.context(RAY_P), p1.context(RAY_P).top, [(1,)])
    cm = make_congruence(p1.context(RAY_M), p1.context(RAY_M).top, [(1,)])
    g = canonicalize_global(RAY_P, cp)
    assert g == canonicalize_global(RAY_M, cm)
    assert g.support_cone == Cone([], 1)
    assert restrict_global(g, RAY_P, p1) == cp
    top = canonicalize_global(RAY_P, maximal_congruence(p1.context(RAY_P)))
    assert top.support_cone == RAY_P and top.height == 1
    with pytest.raises(NotVisible):
        restrict_global(top, RAY_M, p1)


def test_generic_point(p1):
    for sigma in (RAY_P, RAY_M):
        ctx = p1.context(sigma)
        g = canonicalize_global(sigma, ctx.trivial())
        assert g.support_cone == Cone([], 1) and g.h.rank == 0
        assert restrict_global(g, sigma, p1) == ctx.trivial()


@pytest.mark.parametrize("name", ["P2", "P1xP1", "A2"])
@settings(max_examples=25)
@given(seed=st.integers(0, 10 ** 6))
def test_gluing_consistency(name, seed):
    fs = FanScheme(catalog_fan(name))
    rng = random.Random(seed)
    sigma = rng.choice(fs.fan.cones)
    c = random_congruence(fs.context(sigma), rng)
    p = canonicalize_global(sigma, c)
    heights = set()
    for other in fs.fan.cones:
        if p.support_cone.is_subcone(other):
            r = restrict_global(p, other, fs)
            assert canonicalize_global(other, r) == p
            heights.add(r.height)
    assert heights == {p.height}


def test_localization(quadrant):
    c = classify_affine(Presentation(quadrant, [(T(0, (1, 0)), T(0, (0, 0)))])).congruence
    x_face = quadrant.face_index(Cone([(1, 0)], 2))
    loc = localize_point(c, x_face)
    assert loc.context.sigma == Cone([(0, 1)], 2)
    assert (loc.h, loc.chi) == (c.h, c.chi)
    assert delocalize_point(loc, quadrant) == c
    assert localize_point(quadrant.trivial(), x_face) == loc.context.trivial()
    kill = classify_affine(Presentation(quadrant, [(T(0, (1, 0)), None)])).congruence
    with pytest.raises(MeetsNullIdeal):
        localize_point(kill, x_face)


@settings(max_examples=30)
@given(seed=st.integers(0, 10 ** 6))
def test_localization_round_trip(seed):
    ctx = ToricContext(Cone([(1, 0, 0), (0, 1, 0), (1, 1, 2)]))
    rng = random.Random(seed)
    c = random_congruence(ctx, rng)
    below = [f.index for f in ctx.face_lattice if ctx.face_lattice.le(f.index, c.tau)]
    loc = localize_point(c, rng.choice(below))
    assert delocalize_point(loc, ctx) == c
    assert loc.height == c.height


def test_poset_examples(p1):
    torus = FanScheme(catalog_fan("torus", 1))
    poset = specialization_poset(torus, 1)
    assert len(poset.nodes) == 2 and poset.edges == [(0, 1)]
    poset = specialization_poset(p1, 1)
    assert [p.height for p in poset.nodes] == [0, 1, 1, 1]
    assert poset.edges == [(0, 1), (0, 2), (0, 3)]
    assert "digraph" in poset.to_dot()
    assert len(specialization_poset(p1, 0).nodes) == 4
    pieces = specialization_poset(p1, 1, per_piece=True)
    assert sorted(len(p.nodes) for p in pieces.values()) == [3, 3]


def test_poset_is_graded():
    fs = FanScheme(catalog_fan("P2"))
    poset = specialization_poset(fs, 2)
    for i, j in poset.edges:
        assert poset.nodes[j].height == poset.nodes[i].height + 1


def test_global_catenary_on_p1xp1():
    fs = FanScheme(catalog_fan("P1xP1"))
    pts = global_points(fs, 1)
    for p in pts:
        for q in pts:
            if global_contains(fs, p, q):
                ctx = fs.context(q.support_cone)
                chain = saturated_chain(restrict_global(p, ctx), restrict_global(q, ctx))
                assert len(chain) - 1 == q.height - p.height
