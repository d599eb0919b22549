"""The Bruhat-Tits tree of PGL2(F_q((1/T))) in (k, u) coordinates.

A vertex v(k, u) is the class of the matrix (pi^k, u; 0, 1) with pi = 1/T and
u a finite tail sum_{j<k} a_j pi^j.  The positively oriented edge e(k, u)
runs from v(k, u) to v(k-1, u).
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import KElt, tail_from_expansion
from .fq import Fq


@dataclass(frozen=True, order=True)
class Vertex:
    k: int
    tail: tuple = ()  # sorted ((j, a_j), ...) with j < k and a_j != 0

    def u(self, F: Fq) -> KElt:
        return KElt.from_tail(F, self.tail)

    def matrix(self, F: Fq) -> "Mat2":
        return Mat2(KElt.pi_power(F, self.k), self.u(F), KElt(F, ()), KElt(F, (1,)))

    def truncate(self, k: int) -> "Vertex":
        return Vertex(k, tuple((j, a) for j, a in self.tail if j < k))

    def to_json(self):
        return {"k": self.k, "u": [[j, a] for j, a in self.tail]}

    def __str__(self):
        return f"v({self.k},{list(self.tail)})"


@dataclass(frozen=True, order=True)
class Edge:
    """Oriented edge: base vertex of the positive representative e(k, u) plus a sign."""

    base: Vertex
    sign: int = 1

    @classmethod
    def between(cls, o: Vertex, t: Vertex) -> "Edge":
        if t.k == o.k - 1 and t == o.truncate(o.k - 1):
            return cls(o, 1)
        if o.k == t.k - 1 and o == t.truncate(t.k - 1):
            return cls(t, -1)
        raise ValueError(f"{o} and {t} are not adjacent")

    @property
    def origin(self) -> Vertex:
        return self.base if self.sign > 0 else self.base.truncate(self.base.k - 1)

    @property
    def terminus(self) -> Vertex:
        return self.base.truncate(self.base.k - 1) if self.sign > 0 else self.base

    def reverse(self) -> "Edge":
        return Edge(self.base, -self.sign)

    def to_json(self):
        return {"base": self.base.to_json(), "sign": self.sign}

    def __str__(self):
        return f"e{'+' if self.sign > 0 else '-'}({self.base.k},{list(self.base.tail)})"


class Mat2:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: KElt, b: KElt, c: KElt, d: KElt):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def from_polys(cls, F: Fq, a, b, c, d):
        return cls(KElt(F, a), KElt(F, b), KElt(F, c), KElt(F, d))

    @classmethod
    def identity(cls, F):
        return cls.from_polys(F, (1,), (), (), (1,))

    def __mul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def det(self) -> KElt:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        det = self.det()
        if not det:
            raise ValueError("singular matrix")
        inv = det.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, o):
        return isinstance(o, Mat2) and self.entries() == o.entries()

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def canonical_vertex(M: Mat2) -> Vertex:
    """The vertex M * v(0,0) in (k, u) form.

    Right multiplication by GL2(O_inf) permits column operations over O_inf,
    so the column whose lower entry has the largest absolute value can be used
    to clear the other lower entry; scaling by K_inf^* finishes the job.
    """
    det = M.det()
    if not det:
        raise ValueError("singular matrix has no vertex")
    oc, od = M.c.ord(), M.d.ord()
    top, bottom = (M.a, M.c) if oc < od else (M.b, M.d)
    k = det.ord() - 2 * bottom.ord()
    u = top / bottom
    return Vertex(k, tail_from_expansion(u.expansion(k)))


def act(M: Mat2, x, F: Fq):
    """Left action on a Vertex or an Edge."""
    if isinstance(x, Vertex):
        return canonical_vertex(M * x.matrix(F))
    o = act(M, x.origin, F)
    t = act(M, x.terminus, F)
    return Edge.between(o, t)


def neighbors(v: Vertex, F: Fq):
    out = [v.truncate(v.k - 1)]
    for a in range(1, F.q):
        out.append(Vertex(v.k + 1, tuple(sorted(v.tail + ((v.k, a),)))))
    out.insert(1, Vertex(v.k + 1, v.tail))
    return out


def edges_from(v: Vertex, F: Fq):
    return [Edge.between(v, w) for w in neighbors(v, F)]


def ball(center: Vertex, depth: int, F: Fq):
    """BFS ball: (vertices in BFS order, undirected edge list)."""
    seen = {center: 0}
    order = [center]
    edges = []
    frontier = [center]
    for r in range(depth):
        nxt = []
        for v in frontier:
            for w in neighbors(v, F):
                if w not in seen:
                    seen[w] = r + 1
                    order.append(w)
                    edges.append((v, w))
                    nxt.append(w)
        frontier = nxt
    return order, edges


def ball_dot(center: Vertex, depth: int, F: Fq) -> str:
    order, edges = ball(center, depth, F)
    ids = {v: i for i, v in enumerate(order)}
    lines = ["graph tree {"]
    for v in order:
        lines.append(f'  n{ids[v]} [label="{v.k}:{",".join(f"{j}/{a}" for j, a in v.tail)}"];')
    for v, w in edges:
        lines.append(f"  n{ids[v]} -- n{ids[w]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- reduction to the standard half-line ----------------------------------

def w_matrix(F):
    return Mat2.from_polys(F, (), (1,), (1,), ())


def translation(F, b):
    return Mat2.from_polys(F, (1,), b, (), (1,))


def standard_vertex(n: int) -> Vertex:
    """v_n = [pi^(-n) O + O] = v(-n, 0)."""
    return Vertex(-n, ())


def reduce_vertex(v: Vertex, F: Fq):
    """Return (n, gamma) with gamma in GL2(A) and v = gamma * v_n.

    Continued-fraction reduction: translate away the polynomial part of u,
    then invert with w; every inversion lowers k by at least 2.
    """
    gamma = Mat2.identity(F)
    k, tail = v.k, v.tail
    while True:
        int_part = [(j, a) for j, a in tail if j <= 0]
        frac = tuple((j, a) for j, a in tail if j > 0)
        if int_part:
            poly = [0] * (1 - min(j for j, _ in int_part))
            for j, a in int_part:
                poly[-j] = a
            gamma = gamma * translation(F, F.trim(poly))
        if not frac:
            if k <= 0:
                return -k, gamma
            return k, gamma * w_matrix(F)
        gamma = gamma * w_matrix(F)
        uf = KElt.from_tail(F, frac)
        j0 = frac[0][0]
        k = k - 2 * j0
        inv = uf.inverse()
        tail = tail_from_expansion(inv.expansion(k))
