import json
import random

import pytest

from drinfeld.algebra import Ideal
from drinfeld.btree import Edge, Vertex, act
from drinfeld.quotient import (P1, QuotientError, build_quotient, equivalent, equivalent_bruteforce, in_gamma0,
                               stab_order, stabilizer_bruteforce)

from .helpers import graph, level
from .test_btree import random_vertex

SQUAREFREE = [(2, "T"), (2, "T^2+T"), (2, "T^3+T+1"), (2, "T^3+T^2+T"), (3, "T^2+T"), (3, "T^3+T")]


def test_level_one_is_half_line():
    g = build_quotient(Ideal(2, (1,)), depth=6)
    assert [v.n for v in g.vertices] == list(range(7))
    assert [(e.o, e.t) for e in g.edges] == [(i, i + 1) for i in range(6)]
    assert list(g.cusps) == [(1,)]


@pytest.mark.parametrize("q,s", SQUAREFREE)
def test_cusp_count(q, s):
    I = level(q, s)
    g = graph(q, s)
    assert len(g.cusps) == 2 ** len(I.primes)
    assert set(g.cusps) == set(I.divisors())


def test_cusps_of_T():
    g = graph(2, "T")
    assert sorted(g.cusps) == [(0, 1), (1,)]


def test_non_squarefree_rejected():
    with pytest.raises(QuotientError):
        build_quotient(Ideal.parse(2, "T^2"))


@pytest.mark.parametrize("q,s", SQUAREFREE[:4])
def test_projection_property(q, s):
    I = level(q, s)
    g = graph(q, s)
    rng = random.Random(7)
    for _ in range(200):
        while True:
            e = Edge(random_vertex(rng, I.F, kmin=-2, kmax=4), rng.choice((1, -1)))
            try:
                eid, sign = g.classify_edge(e)
                break
            except QuotientError:
                continue  # beyond the computed depth
        rep = g.edges[eid].rep if sign > 0 else g.edges[eid].rep.reverse()
        gamma = equivalent(e.origin, rep.origin, I)
        assert gamma is not None and in_gamma0(gamma, I)
        assert g.classify_vertex(e.origin) == g.classify_vertex(rep.origin)


@pytest.mark.parametrize("q,s", [(2, "T"), (2, "T^2+T")])
def test_equivalence_matches_bruteforce(q, s):
    I = level(q, s)
    F = I.F
    rng = random.Random(3)
    for _ in range(15):
        v, w = random_vertex(rng, F, -1, 2), random_vertex(rng, F, -1, 2)
        exact = equivalent(v, w, I)
        if exact is not None:
            assert act(exact, v, F) == w
        else:
            assert equivalent_bruteforce(v, w, I, 2) is None


@pytest.mark.parametrize("q,s,bound", [(2, "T", 3), (2, "T^2+T", 3), (3, "T", 2)])
def test_stabilizers_match_bruteforce(q, s, bound):
    # representatives are gamma * e_n, so stabilizers are conjugates of degree <= bound here
    I = level(q, s)
    g = graph(q, s)
    for e in g.edges:
        if e.n <= bound - 2:
            assert stabilizer_bruteforce(e.rep, I, bound) == e.stab


@pytest.mark.parametrize("q,s", SQUAREFREE)
def test_mass_consistency(q, s):
    # the vertex classes at height n partition the P^1(A/I) coset space
    I = level(q, s)
    g = graph(q, s)
    npts = len(P1(I).points())
    for n in range(g.depth + 1):
        full = stab_order(q, n, n == 0)
        assert sum(full // v.stab for v in g.vertices if v.n == n) == npts


@pytest.mark.parametrize("q,s", SQUAREFREE[:3])
def test_adjacency_is_image_of_tree(q, s):
    g = graph(q, s)
    for e in g.edges:
        assert g.classify_vertex(e.rep.origin) == e.o
        assert g.classify_vertex(e.rep.terminus) == e.t
        assert g.classify_edge(e.rep) == (e.id, 1)
        assert g.classify_edge(e.rep.reverse()) == (e.id, -1)


def test_map_to_coarser_level_is_surjective():
    fine, coarse = graph(2, "T^2+T"), graph(2, "T")
    images = {coarse.classify_vertex(v.rep) for v in fine.vertices if v.n < coarse.depth}
    assert images == {v.id for v in coarse.vertices if v.n < coarse.depth}


def test_json_schema_and_dot():
    g = graph(2, "T^2+T")
    data = json.loads(json.dumps(g.to_json()))
    assert {"vertices", "edges", "cusps"} <= set(data)
    assert {"id", "o", "t", "stab", "mu"} <= set(data["edges"][0])
    assert {"d", "ray"} <= set(data["cusps"][0])
    dot = g.to_dot()
    assert dot.count("style=dashed") == sum(len(r) for r in g.cusps.values())


def test_measure():
    g = graph(3, "T")
    for e in g.edges:
        assert e.mu == pytest.approx((3 - 1) / (2 * e.stab))
