"""The quotient graph Gamma_0(I) \\ T for square-free I.

Every vertex of T is gamma * v_n for a unique n >= 0 and some gamma in GL2(A),
and every edge is gamma * e_n or its reverse, where e_n runs v_n -> v_{n+1}.
So classes of vertices and edges at height n are the orbits of Stab(v_n)
(resp. Stab(e_n)) acting on the right on Gamma_0(I) \\ GL2(A) = P^1(A/I).
Stabilizers in GL2(A):

    Stab(v_0) = GL2(F_q)
    Stab(v_n) = Stab(e_n) = U_n = {(a b; 0 d) : deg b <= n}   (n >= 1)
    Stab(e_0) = U_0

The orbit of a point has size |Stab| / |Stab_Gamma_0(I)(class)|.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra import AlgebraError, Ideal, KElt, pgcd
from .btree import (Edge, Mat2, Vertex, act, reduce_vertex, standard_vertex,
                    translation, w_matrix)
from .fq import Fq


class QuotientError(RuntimeError):
    pass


# --- P^1(A/I) -----------------------------------------------------------------

def _normalize(F: Fq, P, c, d):
    c, d = F.pmod(c, P), F.pmod(d, P)
    if d:
        return (F.pmod(F.pmul(c, F.pinv_mod(d, P)), P), (1,))
    if not c:
        raise QuotientError("(0:0) is not a point of P^1")
    return ((1,), ())


class P1:
    """P^1(A/I) = prod_P P^1(A/P); a point is a tuple of normalized pairs."""

    def __init__(self, I: Ideal):
        if not I.squarefree:
            raise QuotientError(f"level {I} is not square-free")
        self.I = I
        self.F = I.F
        self.primes = I.primes

    def point(self, c, d):
        return tuple(_normalize(self.F, P, c, d) for P in self.primes)

    def points(self):
        F = self.F
        per = []
        for P in self.primes:
            pts = [(c, (1,)) for c in F.polys_below(len(P) - 1)]
            pts.append(((1,), ()))
            per.append(pts)
        return [tuple(x) for x in product(*per)]

    def act(self, pt, g: Mat2):
        """Right action (c, d) -> (c, d) * g for g with polynomial entries."""
        F = self.F
        a, b, c2, d2 = (x.num for x in g.entries())
        out = []
        for P, (c, d) in zip(self.primes, pt):
            out.append(_normalize(F, P, F.padd(F.pmul(c, a), F.pmul(d, c2)),
                                  F.padd(F.pmul(c, b), F.pmul(d, d2))))
        return tuple(out)

    def cusp_label(self, pt):
        """Monic d | I collecting the primes where the point is (0 : 1)."""
        F = self.F
        d = (1,)
        for P, (c, _) in zip(self.primes, pt):
            if not c:
                d = F.pmul(d, P)
        return d

    def lift(self, pt) -> Mat2:
        """gamma in SL2(A) whose bottom row reduces to pt."""
        F = self.F
        I = self.I.gen
        c0 = _crt(F, [(P, c) for P, (c, _) in zip(self.primes, pt)])
        d0 = _crt(F, [(P, d) for P, (_, d) in zip(self.primes, pt)])
        if not c0:
            return Mat2.identity(F)
        deg = 0
        while True:
            for t in F.polys_below(deg + 1) if deg else [()]:
                d = F.padd(d0, F.pmul(t, I))
                g, s, u = F.pxgcd(c0, d)
                if g == (1,):
                    # s c0 + u d = 1, so (u, -s; c0, d) has determinant 1
                    return Mat2.from_polys(F, u, F.pneg(s), c0, d)
            deg += 1
            if deg > 8 + len(I):
                raise QuotientError(f"no coprime lift found for {pt}")


def _crt(F: Fq, residues):
    x, m = (), (1,)
    for P, r in residues:
        # x' = x + m * ((r - x) * m^-1 mod P)
        t = F.pmod(F.pmul(F.psub(r, x), F.pinv_mod(F.pmod(m, P), P)), P)
        x = F.padd(x, F.pmul(m, t))
        m = F.pmul(m, P)
    return F.pmod(x, m) if len(m) > 1 else ()


# --- stabilizer groups and their orbits ---------------------------------------

def _stab_generators(F: Fq, n: int, full: bool):
    """Generators of U_n, or of GL2(F_q) when full."""
    gens = []
    g = F.generator
    gens.append(Mat2.from_polys(F, (g,), (), (), (1,)))
    gens.append(Mat2.from_polys(F, (1,), (), (), (g,)))
    for j in range(n + 1):
        for a in F.units:
            gens.append(translation(F, tuple([0] * j + [a])))
    if full:
        gens.append(w_matrix(F))
    return gens


def stab_order(q: int, n: int, full: bool) -> int:
    if full:
        return (q * q - 1) * (q * q - q)
    return (q - 1) ** 2 * q ** (n + 1)


@dataclass
class OrbitTable:
    """Orbits of a finite group acting on P^1(A/I), with transporters."""

    key: dict  # point -> orbit representative (smallest point)
    word: dict  # point -> s with rep * s = point
    size: dict  # representative -> orbit size

    def transporter(self, p1, p2):
        """s in the group with p1 * s = p2 (same orbit required)."""
        return self.word[p1].inverse() * self.word[p2]


def orbit_table(P: P1, gens) -> OrbitTable:
    F = P.F
    key, word, size = {}, {}, {}
    for start in sorted(P.points()):
        if start in key:
            continue
        key[start] = start
        word[start] = Mat2.identity(F)
        members = [start]
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = P.act(x, g)
                    if y not in key:
                        key[y] = start
                        word[y] = word[x] * g
                        members.append(y)
                        nxt.append(y)
            frontier = nxt
        size[start] = len(members)
    return OrbitTable(key, word, size)


# --- the quotient graph -------------------------------------------------------

@dataclass
class VertexClass:
    id: int
    n: int
    point: tuple
    stab: int
    rep: Vertex


@dataclass
class EdgeClass:
    """Class of the positively oriented edge gamma * e_n (origin at height n)."""

    id: int
    n: int
    point: tuple
    stab: int
    mu: Fraction
    rep: Edge
    o: int = -1
    t: int = -1


@dataclass
class QuotientGraph:
    I: Ideal
    depth: int
    stable_from: int
    vertices: list
    edges: list
    cusps: dict  # monic d (poly tuple) -> list of edge ids along the ray
    _P1: P1 = field(repr=False, default=None)
    _vtables: dict = field(repr=False, default=None)
    _etables: dict = field(repr=False, default=None)
    _vindex: dict = field(repr=False, default=None)
    _eindex: dict = field(repr=False, default=None)

    @property
    def F(self) -> Fq:
        return self.I.F

    @property
    def q(self) -> int:
        return self.I.q

    def _table(self, tables, n):
        return tables[min(n, max(tables))]

    # classification of arbitrary tree cells

    def vertex_key(self, v: Vertex):
        n, gamma = reduce_vertex(v, self.F)
        pt = self._P1.point(gamma.c.num, gamma.d.num)
        return (n, self._table(self._vtables, n).key[pt])

    def classify_vertex(self, v: Vertex) -> int:
        key = self.vertex_key(v)
        if key not in self._vindex:
            raise QuotientError(f"vertex {v} lies beyond the computed depth {self.depth}")
        return self._vindex[key]

    def edge_key(self, e: Edge):
        """(n, orbit representative, sign) of an oriented tree edge."""
        F = self.F
        o, t = e.origin, e.terminus
        n, gamma = reduce_vertex(o, F)
        t1 = act(gamma.inverse(), t, F)
        row = (gamma.c.num, gamma.d.num)
        if t1 == standard_vertex(n + 1):
            m, sign, pt = n, 1, self._P1.point(*row)
        elif n >= 1:
            if t1.k != 1 - n or len(t1.tail) > 1 or (t1.tail and t1.tail[0][0] != -n):
                raise QuotientError(f"{t} is not adjacent to {o}")
            a = t1.tail[0][1] if t1.tail else 0
            h = translation(F, tuple([0] * n + [a]) if a else ())
            g = gamma * h
            m, sign, pt = n - 1, -1, self._P1.point(g.c.num, g.d.num)
        else:
            if t1.k != 1 or (t1.tail and t1.tail[0][0] != 0):
                raise QuotientError(f"{t} is not adjacent to {o}")
            a = t1.tail[0][1] if t1.tail else 0
            g = gamma * translation(F, (a,) if a else ()) * w_matrix(F)
            m, sign, pt = 0, 1, self._P1.point(g.c.num, g.d.num)
        return m, self._table(self._etables, m).key[pt], sign

    def classify_edge(self, e: Edge):
        """(edge class id, sign) with e in the class of sign * rep."""
        n, rep, sign = self.edge_key(e)
        if (n, rep) not in self._eindex:
            raise QuotientError(f"edge {e} lies beyond the computed depth {self.depth}")
        return self._eindex[(n, rep)], sign

    def cusp_coord(self, e: Edge):
        """Like classify_edge, but None on the cusp rays where cusp forms vanish."""
        n, rep, sign = self.edge_key(e)
        if n >= self.stable_from:
            return None
        return self._eindex[(n, rep)], sign

    def core_edges(self):
        """Positive edge classes below the stable range (support of cusp forms)."""
        return [e for e in self.edges if e.n < self.stable_from]

    def edges_at_vertex(self, vid: int):
        """Signed edge classes of the q+1 tree edges leaving the representative."""
        vc = self.vertices[vid]
        out = []
        for e in _edges_out_of_standard(self, vc.n, vc.point):
            out.append(e)
        return out

    def measures(self):
        return {e.id: e.mu for e in self.edges}

    def cusp_of_edge(self):
        out = {}
        for d, ray in self.cusps.items():
            for eid in ray:
                out[eid] = d
        return out

    def to_json(self):
        F = self.F
        return {
            "level": str(self.I),
            "q": self.q,
            "depth": self.depth,
            "vertices": [{"id": v.id, "n": v.n, "rep": v.rep.to_json(), "stab": v.stab}
                         for v in self.vertices],
            "edges": [{"id": e.id, "n": e.n, "o": e.o, "t": e.t, "stab": e.stab,
                       "mu": str(e.mu), "rep": e.rep.to_json()} for e in self.edges],
            "cusps": [{"d": F.fmt(d), "ray": ray} for d, ray in sorted(self.cusps.items())],
        }

    def to_dot(self) -> str:
        on_ray = self.cusp_of_edge()
        lines = ["digraph quotient {", "  rankdir=LR;"]
        for v in self.vertices:
            lines.append(f'  v{v.id} [label="{v.id}: n={v.n} |S|={v.stab}"];')
        for e in self.edges:
            style = ' style=dashed' if e.id in on_ray else ''
            lines.append(f'  v{e.o} -> v{e.t} [label="e{e.id} mu={e.mu}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _edges_out_of_standard(g: QuotientGraph, n: int, pt):
    """Signed edge classes of the tree edges leaving gamma * v_n, row(gamma) = pt."""
    F, P = g.F, g._P1
    et = g._table(g._etables, n)
    out = [(g._eindex[(n, et.key[pt])], 1)]
    if n >= 1:
        em = g._table(g._etables, n - 1)
        for a in range(F.q):
            h = translation(F, tuple([0] * n + [a]) if a else ())
            out.append((g._eindex[(n - 1, em.key[P.act(pt, h)])], -1))
    else:
        for a in range(F.q):
            h = translation(F, (a,) if a else ()) * w_matrix(F)
            out.append((g._eindex[(0, et.key[P.act(pt, h)])], 1))
    return out


def build_quotient(I: Ideal, depth: int = None) -> QuotientGraph:
    """Vertex and edge classes up to height `depth` (default: 3 past stabilization)."""
    F, q = I.F, I.q
    P = P1(I)
    stable_from = max(I.degree - 1, 0)
    if depth is None:
        depth = stable_from + 3
    if depth < stable_from + 1:
        raise QuotientError(f"depth {depth} is below the stable range starting at {stable_from}")
    vtables, etables = {}, {}
    for n in range(0, stable_from + 2):
        etables[n] = orbit_table(P, _stab_generators(F, n, False))
        vtables[n] = orbit_table(P, _stab_generators(F, 0, True)) if n == 0 else etables[n]
    g = QuotientGraph(I, depth, stable_from, [], [], {}, P, vtables, etables, {}, {})
    lifts = {}

    def lift(pt):
        if pt not in lifts:
            lifts[pt] = P.lift(pt)
        return lifts[pt]

    for n in range(depth + 1):
        vt = g._table(vtables, n)
        for rep in sorted(vt.size):
            full = stab_order(q, n, n == 0) if n == 0 else stab_order(q, n, False)
            vid = len(g.vertices)
            g.vertices.append(VertexClass(vid, n, rep, full // vt.size[rep],
                                          act(lift(rep), standard_vertex(n), F)))
            g._vindex[(n, rep)] = vid
    base_edge = {n: Edge(standard_vertex(n), 1) for n in range(depth + 1)}
    for n in range(depth):
        et = g._table(etables, n)
        for rep in sorted(et.size):
            stab = stab_order(q, n, False) // et.size[rep]
            eid = len(g.edges)
            e = EdgeClass(eid, n, rep, stab, Fraction(q - 1, 2 * stab),
                          act(lift(rep), base_edge[n], F))
            e.o = g._vindex[(n, g._table(vtables, n).key[rep])]
            e.t = g._vindex[(n + 1, g._table(vtables, n + 1).key[rep])]
            g.edges.append(e)
            g._eindex[(n, rep)] = eid
    # drop the last vertex layer's dangling classes from adjacency checks only;
    # cusp rays are the stable-range edge chains
    et = g._table(etables, stable_from)
    for rep in sorted(et.size):
        d = P.cusp_label(rep)
        ray = [g._eindex[(n, et.key[rep])] for n in range(stable_from, depth)]
        stabs = [g.edges[i].stab for i in ray]
        if any(b != a * q for a, b in zip(stabs, stabs[1:])):
            raise QuotientError(f"cusp ray for {F.fmt(d)} is not periodic: {stabs}")
        if d in g.cusps:
            raise QuotientError(f"two rays share the cusp label {F.fmt(d)}")
        g.cusps[d] = ray
    if len(g.cusps) != len(I.divisors()):
        raise QuotientError(f"found {len(g.cusps)} cusp rays, expected {len(I.divisors())}")
    return g


# --- group elements ------------------------------------------------------------

def in_gamma0(g: Mat2, I: Ideal) -> bool:
    F = I.F
    ents = g.entries()
    if not all(x.is_poly() for x in ents):
        return False
    det = g.det()
    if not det.is_poly() or len(det.num) != 1:
        return False
    return not F.pmod(g.c.num, I.gen)


def equivalent(v1: Vertex, v2: Vertex, I: Ideal):
    """gamma in Gamma_0(I) with gamma * v1 = v2, or None when inequivalent.

    Exact: reduces both vertices to the standard half-line and solves for the
    stabilizer element transporting one coset to the other.
    """
    F = I.F
    P = P1(I)
    n1, g1 = reduce_vertex(v1, F)
    n2, g2 = reduce_vertex(v2, F)
    if n1 != n2:
        return None
    tab = orbit_table(P, _stab_generators(F, n1, n1 == 0))
    p1 = P.point(g1.c.num, g1.d.num)
    p2 = P.point(g2.c.num, g2.d.num)
    if tab.key[p1] != tab.key[p2]:
        return None
    # Gamma_0(I) g2 s = Gamma_0(I) g1 with p2 * s = p1; then g2 s g1^-1 works
    s = tab.transporter(p2, p1)
    gamma = g2 * s * g1.inverse()
    assert in_gamma0(gamma, I)
    return gamma


def gamma0_elements(I: Ideal, bound: int):
    """All of Gamma_0(I) with entries of degree <= bound (brute force)."""
    F = I.F
    polys = list(F.polys_below(bound + 1))
    cs = [c for c in polys if not F.pmod(c, I.gen)]
    for c in cs:
        for d in polys:
            g, s, t = F.pxgcd(c, d) if (c or d) else ((), (), ())
            if g != (1,):
                continue
            for a in polys:
                for b in polys:
                    det = F.psub(F.pmul(a, d), F.pmul(b, c))
                    if len(det) == 1:
                        yield Mat2.from_polys(F, a, b, c, d)


def equivalent_bruteforce(v1: Vertex, v2: Vertex, I: Ideal, bound: int):
    """Search gamma with entries of degree <= bound; None means not found within bound."""
    for g in gamma0_elements(I, bound):
        if act(g, v1, I.F) == v2:
            return g
    return None


def stabilizer_bruteforce(x, I: Ideal, bound: int) -> int:
    """Number of gamma of degree <= bound fixing a vertex or oriented edge."""
    return sum(1 for g in gamma0_elements(I, bound) if act(g, x, I.F) == x)


def dump_json(g: QuotientGraph) -> str:
    return json.dumps(g.to_json(), indent=2)
