from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from f1scong.cones import (Cone, Fan, dual_cone, dual_face, extreme_rays, fan_validate, faces,
                           hilbert_basis, intersect, lattice_of_face)
from f1scong.errors import NotAFace
from f1scong.lattice import Subgroup, dot
from f1scong.scheme import catalog_fan

QUADRANT = Cone([(1, 0), (0, 1)])


def brute_hilbert(c: Cone):
    """Irreducible lattice points of a pointed cone, by enumeration in a box."""
    n = c.ambient_rank
    bound = max(1, max(sum(abs(r[i]) for r in c.rays) for i in range(n)))
    pts = [p for p in product(range(-bound, bound + 1), repeat=n) if any(p) and c.contains(p)]
    pset = set(pts)
    irr = []
    for p in pts:
        if not any(tuple(x - y for x, y in zip(p, q)) in pset for q in pts if q != p):
            irr.append(p)
    return sorted(irr)


def brute_face_count(c: Cone) -> int:
    rays = c.rays
    duals = dual_cone(c).generators
    count = 0
    for k in range(len(rays) + 1):
        for sub in combinations(range(len(rays)), k):
            normal = [sum(d[i] for d in duals if all(dot(d, rays[j]) == 0 for j in sub))
                      for i in range(c.ambient_rank)]
            if {j for j in range(len(rays)) if dot(normal, rays[j]) == 0} == set(sub):
                count += 1
    return count


small_vec = st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any)


def test_quadrant_is_self_dual():
    assert dual_cone(QUADRANT) == QUADRANT


def test_dual_examples():
    assert dual_cone(Cone([(1, 0)])).generators == [(1, 0), (0, 1), (0, -1)]
    assert dual_cone(Cone([(0, 1), (2, -1)])) == Cone([(1, 0), (1, 2)])


def test_face_counts():
    assert len(faces(QUADRANT)) == 4
    assert len(faces(Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))) == 8
    assert len(faces(Cone([], 2))) == 1


def test_face_inclusion_and_normals():
    lat = faces(Cone([(1, 0, 0), (0, 1, 0), (1, 1, 3)]))
    for f in lat:
        assert dual_cone(lat.cone).contains(f.defining_normal)
        for r in lat.cone.rays:
            assert (dot(f.defining_normal, r) == 0) == f.contains(r)
    for f, g in product(lat, lat):
        assert lat.le(f.index, g.index) == f.is_subcone(g)


def test_hilbert_example():
    assert hilbert_basis(Cone([(1, 0), (1, 2)])) == [(1, 0), (1, 1), (1, 2)]


def test_hilbert_non_pointed():
    hb = hilbert_basis(Cone([(1, 0), (0, 1), (0, -1)]))
    assert set(hb) == {(1, 0), (0, 1), (0, -1)}


def test_dual_face_and_lattice():
    ray = faces(QUADRANT)[faces(QUADRANT).index_of(Cone([(1, 0)], 2))]
    assert dual_face(QUADRANT, ray) == Cone([(0, 1)], 2)
    assert lattice_of_face(Cone([(2, 4)])) == Subgroup(2, [(1, 2)])
    with pytest.raises(NotAFace):
        dual_face(QUADRANT, Cone([(1, 1)]))


@given(st.lists(small_vec, min_size=1, max_size=4))
def test_double_dual(gens):
    c = Cone(gens)
    assert dual_cone(dual_cone(c)) == c
    for g in gens:
        assert c.contains(g)


@given(st.lists(small_vec, min_size=1, max_size=4))
def test_face_count_matches_brute_force(gens):
    c = Cone(gens)
    if c.is_strongly_convex():
        assert len(faces(c)) == brute_face_count(c)


@given(st.lists(st.lists(st.integers(-2, 3), min_size=2, max_size=2).filter(any),
                min_size=1, max_size=3))
def test_hilbert_matches_brute_force_rank2(gens):
    c = Cone(gens)
    if c.is_strongly_convex():
        assert hilbert_basis(c) == brute_hilbert(c)


@pytest.mark.parametrize("gens", [[(1, 0, 0), (0, 1, 0), (1, 1, 2)],
                                  [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)],
                                  [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]])
def test_hilbert_matches_brute_force_rank3(gens):
    c = Cone(gens)
    assert hilbert_basis(c) == brute_hilbert(c)


@given(st.lists(small_vec, min_size=1, max_size=3), st.lists(small_vec, min_size=1, max_size=3))
def test_intersection(g1, g2):
    a, b = Cone(g1), Cone(g2)
    both = intersect(a, b)
    for g in both.generators:
        assert a.contains(g) and b.contains(g)


def test_extreme_rays_of_inequalities():
    rays, lin = extreme_rays([(1, 0), (0, 1)], 2)
    assert sorted(rays) == [(0, 1), (1, 0)] and not lin


@pytest.mark.parametrize("name", ["P1", "P2", "P1xP1", "A2", "torus"])
def test_catalog_fans_valid(name):
    assert fan_validate(catalog_fan(name)) == []


def test_fan_violations():
    assert [v["axiom"] for v in fan_validate(Fan(2, [QUADRANT]))] == ["face closure"] * 3
    bad = Fan.from_maximal(2, [Cone([(1, 0), (1, 2)]), Cone([(1, 1), (0, 1)])])
    assert any(v["axiom"] == "intersection is a common face" for v in fan_validate(bad))
    assert any(v["axiom"] == "strong convexity"
               for v in fan_validate(Fan(2, [Cone([(1, 0), (-1, 0)])])))
