import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld.algebra import KElt
from drinfeld.btree import (Edge, Mat2, Vertex, act, ball, ball_dot, canonical_vertex, neighbors,
                            reduce_vertex, standard_vertex)
from drinfeld.fq import field


def random_vertex(rng, F, kmin=-3, kmax=5):
    k = rng.randint(kmin, kmax)
    tail = tuple((j, a) for j in range(kmin - 2, k) if (a := rng.randrange(F.q)))
    return Vertex(k, tail)


def random_gl2(rng, F, deg=2):
    while True:
        a, b, c, d = (F.trim(tuple(rng.randrange(F.q) for _ in range(deg + 1))) for _ in range(4))
        M = Mat2.from_polys(F, a, b, c, d)
        if M.det():
            return M


def test_edge_conventions():
    e = Edge(Vertex(0), 1)
    assert e.origin == Vertex(0) and e.terminus == Vertex(-1)
    assert e.reverse().reverse() == e
    assert e.reverse().sign == -1
    assert e.reverse().origin == e.terminus


@pytest.mark.parametrize("q", (2, 3, 4))
def test_neighbors_degree(q):
    F = field(q)
    v = Vertex(2, ((0, 1),))
    nb = neighbors(v, F)
    assert len(set(nb)) == q + 1
    for w in nb:
        assert v in neighbors(w, F)
    # exactly one positive edge leaves each vertex
    assert sum(1 for w in nb if Edge.between(v, w).sign > 0) == 1


@pytest.mark.parametrize("q,depth", [(2, 6), (3, 6), (4, 4)])
def test_ball_is_tree(q, depth):
    F = field(q)
    order, edges = ball(Vertex(0), depth, F)
    assert len(order) == 1 + (q + 1) * (q ** depth - 1) // (q - 1)
    assert len(edges) == len(order) - 1  # connected with |E| = |V| - 1 means no cycles


def test_ball_dot():
    dot = ball_dot(Vertex(0), 2, field(2))
    assert dot.startswith("graph tree {") and dot.count("--") == 9


@pytest.mark.parametrize("q", (2, 3))
def test_canonical_vertex_of_matrix(q):
    F = field(q)
    rng = random.Random(q)
    for _ in range(50):
        v = random_vertex(rng, F)
        assert canonical_vertex(v.matrix(F)) == v


@pytest.mark.parametrize("q", (2, 3))
def test_right_unit_invariance(q):
    # M and M g give the same vertex for g in GL2(O_inf); 100 random column operations
    F = field(q)
    rng = random.Random(10 + q)
    pi = KElt.pi_power(F, 1)
    one, zero = KElt(F, (1,)), KElt(F, ())
    for _ in range(100):
        M = random_gl2(rng, F)
        c = KElt(F, (rng.randrange(1, q),)) * pi if rng.random() < 0.5 else KElt(F, (rng.randrange(q),))
        unit = KElt(F, (rng.randrange(1, q),))
        ops = [Mat2(one, c, zero, one), Mat2(one, zero, c, one), Mat2(unit, zero, zero, one),
               Mat2(zero, one, one, zero)]
        assert canonical_vertex(M * rng.choice(ops)) == canonical_vertex(M)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_action_is_left_action(seed):
    F = field(3)
    rng = random.Random(seed)
    M, N = random_gl2(rng, F), random_gl2(rng, F)
    v = random_vertex(rng, F)
    assert act(M * N, v, F) == act(M, act(N, v, F), F)
    e = Edge(v, rng.choice((1, -1)))
    img = act(M, e, F)
    assert img.origin == act(M, e.origin, F) and img.terminus == act(M, e.terminus, F)


@pytest.mark.parametrize("q", (2, 3))
def test_reduce_vertex(q):
    F = field(q)
    rng = random.Random(q)
    for _ in range(40):
        v = random_vertex(rng, F)
        n, gamma = reduce_vertex(v, F)
        assert n >= 0
        assert act(gamma, standard_vertex(n), F) == v
        assert gamma.det().is_poly() and all(x.is_poly() for x in gamma.entries())
