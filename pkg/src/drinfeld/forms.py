"""Harmonic cochains on Gamma_0(I) \\ T: cusp forms, Hecke operators, eigenforms,
Fourier coefficients and the Petersson product."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import Divisor, Ideal, KElt, divisors_of_degree, is_irreducible
from .btree import Edge, Mat2, Vertex, act
from .numbers import Alg, Generator, conj, cyclotomic, eigen_generator, nullspace, rref
from .quotient import QuotientGraph, build_quotient


class FormsError(RuntimeError):
    pass


def _zero_like(x):
    return Alg() if isinstance(x, Alg) else Fraction(0)


class Cochain:
    """Alternating function on oriented edges, stored on positive edge classes.

    Cuspidal cochains vanish on the cusp rays, so they can be evaluated at any
    tree edge; general cochains only on classes inside the computed graph.
    """

    def __init__(self, graph: QuotientGraph, values: dict, cuspidal: bool = True):
        self.graph = graph
        self.values = {k: v for k, v in values.items() if v}
        self.cuspidal = cuspidal
        self._layers = {}

    @property
    def level(self) -> Ideal:
        return self.graph.I

    def at(self, eid: int):
        return self.values.get(eid, Fraction(0))

    def value(self, e: Edge):
        if self.cuspidal:
            coord = self.graph.cusp_coord(e)
            if coord is None:
                return Fraction(0)
            eid, sign = coord
        else:
            eid, sign = self.graph.classify_edge(e)
        v = self.at(eid)
        return v if sign > 0 else -v

    def __add__(self, o: "Cochain") -> "Cochain":
        vals = dict(self.values)
        for k, v in o.values.items():
            vals[k] = vals.get(k, 0) + v
        return Cochain(self.graph, vals, self.cuspidal and o.cuspidal)

    def scale(self, c) -> "Cochain":
        return Cochain(self.graph, {k: v * c for k, v in self.values.items()}, self.cuspidal)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, o):
        return self + (-o)

    def __eq__(self, o):
        if not isinstance(o, Cochain) or o.graph is not self.graph:
            return NotImplemented
        return not (self - o).values

    def is_zero(self):
        return not self.values

    def layer(self, k: int):
        """[(tail, f(e(k, u)))] over u in (pi)/(pi^k), cached."""
        if k not in self._layers:
            F = self.graph.F
            out = []
            for tail in _frac_tails(F.q, k):
                out.append((tail, self.value(Edge(Vertex(k, tail), 1))))
            self._layers[k] = out
        return self._layers[k]

    def to_json(self):
        return {str(k): (v.to_json() if isinstance(v, Alg) else str(v)) for k, v in sorted(self.values.items())}


@lru_cache(maxsize=None)
def _frac_tails(q: int, k: int):
    """Tails sum_{1 <= j < k} a_j pi^j."""
    tails = [()]
    for j in range(1, k):
        tails = [t + ((j, a),) if a else t for t in tails for a in range(q)]
    return tuple(tails)


def harmonic_residuals(f: Cochain):
    """Vertex classes where the outgoing edge values do not sum to zero."""
    g = f.graph
    bad = []
    top = g.stable_from if f.cuspidal else g.depth - 1
    for vc in g.vertices:
        if vc.n > top:
            continue
        total = _zero_like(next(iter(f.values.values()), Fraction(0)))
        for eid, sign in g.edges_at_vertex(vc.id):
            total = total + sign * f.at(eid) if eid is not None else total
        if total:
            bad.append((vc.id, total))
    return bad


# --- cusp forms -----------------------------------------------------------------

@dataclass
class CuspSpace:
    graph: QuotientGraph
    unknowns: list  # edge ids carrying values
    basis: list  # Cochains
    free: list  # edge id where basis[i] is 1 and the other basis vectors vanish

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, f: Cochain):
        c = [f.at(e) for e in self.free]
        rebuilt = self.combine(c)
        if rebuilt != f:
            raise FormsError("cochain is not in the cusp-form space")
        return c

    def combine(self, coeffs) -> Cochain:
        vals = {}
        for c, b in zip(coeffs, self.basis):
            if not c:
                continue
            for k, v in b.values.items():
                vals[k] = vals.get(k, 0) + c * v
        return Cochain(self.graph, vals)


def cusp_form_space(g: QuotientGraph) -> CuspSpace:
    """Harmonic cochains supported on the core, by exact nullspace over Q."""
    unknowns = [e.id for e in g.core_edges()]
    col = {eid: i for i, eid in enumerate(unknowns)}
    rows = []
    for vc in g.vertices:
        if vc.n > g.stable_from:
            continue
        row = [Fraction(0)] * len(unknowns)
        for eid, sign in g.edges_at_vertex(vc.id):
            if eid in col:
                row[col[eid]] += sign
        if any(row):
            rows.append(row)
    vecs = nullspace(rows, len(unknowns)) if unknowns else []
    basis, free = [], []
    pivot_free = []
    for v in vecs:
        basis.append(Cochain(g, {unknowns[i]: x for i, x in enumerate(v)}))
        pivot_free.append(next(i for i, x in enumerate(v) if x == 1 and
                               all(not w[i] for w in vecs if w is not v)))
    free = [unknowns[i] for i in pivot_free]
    return CuspSpace(g, unknowns, basis, free)


# --- Hecke operators ------------------------------------------------------------

def hecke_matrices(F, P, level: Ideal):
    """The matrices (a b; 0 d) entering T_P at the given level."""
    mats = []
    if F.pmod(level.gen, P):
        mats.append(Mat2.from_polys(F, P, (), (), (1,)))
    for r in F.polys_below(len(P) - 1):
        mats.append(Mat2.from_polys(F, (1,), r, (), P))
    return mats


def _hecke_table(g: QuotientGraph, P):
    cache = g.__dict__.setdefault("_hecke_cache", {})
    P = tuple(P)
    if P not in cache:
        F = g.F
        mats = hecke_matrices(F, P, g.I)
        table = {}
        for e in g.core_edges():
            table[e.id] = [c for M in mats if (c := g.cusp_coord(act(M, e.rep, F))) is not None]
        cache[P] = table
    return cache[P]


def apply_hecke(f: Cochain, P) -> Cochain:
    F = f.graph.F
    if not is_irreducible(F, P) or P[-1] != 1:
        raise FormsError(f"{F.fmt(P)} is not a monic prime")
    table = _hecke_table(f.graph, P)
    vals = {}
    for eid, terms in table.items():
        total = 0
        for e2, sign in terms:
            v = f.at(e2)
            if v:
                total = total + (v if sign > 0 else -v)
        if total:
            vals[eid] = total
    return Cochain(f.graph, vals)


def hecke_operator(P, space: CuspSpace):
    """Matrix of T_P on the basis (columns are images of basis vectors)."""
    cols = [space.coords(apply_hecke(b, P)) for b in space.basis]
    n = space.dim
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matmul(A, B):
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in zip(*B)] for row in A]


# --- the additive character and Fourier coefficients -----------------------------

def eta_value(F, m, tail):
    """eta(m u) = exp(2 pi i Tr(a_1(m u)) / p), exact."""
    a1 = 0
    for j, a in tail:
        i = j - 1  # coefficient of T^i in m meets pi^j to give pi^1
        if 0 <= i < len(m) and m[i]:
            a1 = F.add(a1, F.mul(m[i], a))
    t = F.trace(a1)
    if F.p == 2:
        return Fraction(-1) if t else Fraction(1)
    return Alg.gen(cyclotomic(F.p), t) if t else Alg.const(1)


def fourier_c0(f: Cochain, k: int):
    F = f.graph.F
    if k <= 0:
        return f.value(Edge(Vertex(k, ()), 1))
    total = Fraction(0)
    for _, v in f.layer(k):
        total = total + v
    return total * Fraction(F.q) ** (1 - k)


def fourier_c(f: Cochain, D: Divisor):
    """c(f, D) = q^(-1-deg D) sum_u f(e(2 + deg D, u)) eta(m u)."""
    F = f.graph.F
    k = 2 + D.degree
    total = Fraction(0)
    for tail, v in f.layer(k):
        if v:
            total = total + v * eta_value(F, D.m, tail)
    return total * Fraction(F.q) ** (-1 - D.degree)


def fourier_expand(f: Cochain, k: int, tail):
    """Rebuild f(e(k, u)) from its Fourier coefficients."""
    F = f.graph.F
    total = fourier_c0(f, k)
    for dm in range(0, k - 1):
        for m in F.monics(dm):
            D = Divisor(F.q, m, k - 2 - dm)
            c = fourier_c(f, D)
            if not c:
                continue
            for a in F.units:
                total = total + c * eta_value(F, F.pscale(a, m), tail)
    return total


# --- Petersson product, level change, Atkin-Lehner ----------------------------

def petersson(f: Cochain, g: Cochain):
    """Integral of f * conj(g) over all oriented edges of the quotient (both orientations)."""
    if not (f.cuspidal or g.cuspidal):
        raise FormsError("Petersson product needs a cusp form")
    if f.graph is not g.graph:
        raise FormsError("cochains live on different quotient graphs")
    total = Fraction(0)
    for e in f.graph.edges:
        a, b = f.at(e.id), g.at(e.id)
        if a and b:
            total = total + a * conj(b) * (2 * e.mu)
    return total


def pullback(f: Cochain, g: QuotientGraph, M: Mat2 = None) -> Cochain:
    """The cochain e -> f(M e) on the quotient g (M = identity raises the level)."""
    F = g.F
    vals = {}
    for e in g.core_edges() if f.cuspidal else g.edges:
        rep = e.rep if M is None else act(M, e.rep, F)
        v = f.value(rep)
        if v:
            vals[e.id] = v
    out = Cochain(g, vals, f.cuspidal)
    if f.cuspidal:
        # the pulled-back form must still vanish on the rays of g
        for e in g.edges:
            if e.n >= g.stable_from:
                rep = e.rep if M is None else act(M, e.rep, F)
                if f.value(rep):
                    raise FormsError("pulled-back form does not vanish on a cusp ray")
    return out


def raise_level(f: Cochain, g: QuotientGraph) -> Cochain:
    F = g.F
    if F.pmod(g.I.gen, f.level.gen):
        raise FormsError(f"level {f.level} does not divide {g.I}")
    if g is f.graph:
        return f
    return pullback(f, g)


def scale_up(f: Cochain, D, g: QuotientGraph) -> Cochain:
    """e -> f(diag(D, 1) e), a form of level D * level(f)."""
    F = g.F
    if F.pmod(g.I.gen, F.pmul(f.level.gen, D)):
        raise FormsError("D * level(f) must divide the target level")
    return pullback(f, g, Mat2.from_polys(F, D, (), (), (1,)))


def atkin_lehner_matrix(F, P, I):
    """beta = (a P, -b; I, P) with a P + b (I/P) = 1, so det beta = P."""
    Ip, r = F.pdivmod(I, P)
    if r:
        raise FormsError("P does not divide I")
    g, a, b = F.pxgcd(P, Ip)
    if g != (1,):
        raise FormsError("P and I/P are not coprime")
    return Mat2.from_polys(F, F.pmul(a, P), F.pneg(b), I, P)


def atkin_lehner(f: Cochain, P) -> Cochain:
    F = f.graph.F
    beta = atkin_lehner_matrix(F, P, f.level.gen)
    return pullback(f, f.graph, beta)


# --- new subspace and eigenforms -------------------------------------------------

def proper_divisor_levels(I: Ideal):
    return [Ideal(I.q, d) for d in I.divisors() if d != I.gen]


def old_space(g: QuotientGraph, cache=None):
    """Images at level I of cusp forms of lower levels J under f(D z), D | I/J."""
    F = g.F
    out = []
    for J in proper_divisor_levels(g.I):
        gJ = build_quotient(J) if cache is None else cache(J)
        S = cusp_form_space(gJ)
        if not S.dim:
            continue
        quot = F.pdivmod(g.I.gen, J.gen)[0]
        for D in Ideal(g.q, quot).divisors():
            for b in S.basis:
                out.append(scale_up(b, D, g) if D != (1,) else raise_level(b, g))
    return out


def new_space(space: CuspSpace, cache=None):
    """Petersson-orthogonal complement of the old space, as coordinate vectors."""
    old = old_space(space.graph, cache)
    n = space.dim
    if not old:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rows = [[petersson(b, o) for b in space.basis] for o in old]
    return nullspace(rows, n)


@dataclass
class EigenformData:
    form: Cochain
    eigenvalues: dict  # prime poly -> value
    generator: Generator = None
    new: bool = True
    minpoly: tuple = ()

    @property
    def level(self):
        return self.form.level

    def c(self, D: Divisor):
        return fourier_c(self.form, D)

    def field_name(self):
        if self.generator is None:
            return "Q"
        from .ratx import fmt_poly
        return fmt_poly(self.minpoly, var=self.generator.name)

    def to_json(self, fourier_degree: int = 3):
        F = self.form.graph.F
        val = lambda v: v.to_json() if isinstance(v, Alg) else str(v)
        four = {}
        for d in range(fourier_degree + 1):
            for D in divisors_of_degree(F.q, d):
                four[str(D)] = val(self.c(D))
        return {
            "level": str(self.level),
            "field": self.field_name(),
            "new": self.new,
            "eigenvalues": {F.fmt(P): val(v) for P, v in self.eigenvalues.items()},
            "fourier": four,
        }


def small_primes(F, count: int, avoid=()):
    out = []
    d = 1
    while len(out) < count:
        for P in F.monics(d):
            if is_irreducible(F, P) and P not in avoid:
                out.append(P)
                if len(out) == count:
                    break
        d += 1
    return out


def _charpoly_factors(M):
    import sympy

    lam = sympy.Symbol("lam")
    SM = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M])
    cp = SM.charpoly(lam).as_expr()
    _, facs = sympy.factor_list(cp, lam)
    out = []
    for fac, mult in facs:
        coeffs = sympy.Poly(fac, lam).all_coeffs()[::-1]
        out.append((tuple(Fraction(int(c.p), int(c.q)) for c in coeffs), mult))
    return out


def eigenforms(space: CuspSpace, primes=None, new_only=True, cache=None, tag="a"):
    """Simultaneous eigenforms of the Hecke operators on the (new) cusp space."""
    g = space.graph
    F = g.F
    if not space.dim:
        return []
    if primes is None:
        primes = small_primes(F, 3) + list(g.I.primes)
    primes = [tuple(P) for P in dict.fromkeys(tuple(P) for P in primes)]
    sub = new_space(space, cache) if new_only else [[Fraction(int(i == j)) for j in range(space.dim)]
                                                    for i in range(space.dim)]
    if not sub:
        return []
    # restrict the Hecke action to the subspace spanned by `sub`
    red, piv = rref(sub, space.dim)
    sub = red
    def restrict(T):
        imgs = [[sum((T[i][j] * v[j] for j in range(space.dim)), Fraction(0)) for i in range(space.dim)] for v in sub]
        # express each image in the rref basis via pivot columns
        return [[img[p] for p in piv] for img in imgs]  # rows = images
    mats = {P: hecke_operator(P, space) for P in primes}
    rmats = {P: [list(r) for r in zip(*restrict(mats[P]))] for P in primes}
    for P, T in rmats.items():
        for i, img in enumerate(restrict(mats[P])):
            recon = [sum((img[k] * sub[k][j] for k in range(len(sub))), Fraction(0)) for j in range(space.dim)]
            direct = [sum((mats[P][r][c] * sub[i][c] for c in range(space.dim)), Fraction(0)) for r in range(space.dim)]
            if recon != direct:
                raise FormsError("new subspace is not Hecke stable")
    n = len(sub)
    factors = None
    for weights in ([1] + [0] * (len(primes) - 1), list(range(1, len(primes) + 1)),
                    [3 ** i for i in range(len(primes))], [1, -2, 5, 7, -11, 13, 17][:len(primes)]):
        comb = [[sum((w * rmats[P][i][j] for w, P in zip(weights, primes)), Fraction(0))
                 for j in range(n)] for i in range(n)]
        facs = _charpoly_factors(comb)
        if all(mult == 1 for _, mult in facs):
            factors = facs
            break
    if factors is None:
        raise FormsError(f"Hecke algebra does not separate the space at level {g.I}; factors {facs}")
    out = []
    for idx, (mp, _) in enumerate(factors):
        deg = len(mp) - 1
        if deg == 1:
            gen = None
            lam = -mp[0] / mp[1]
            A = [[comb[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
            vecs = nullspace(A, n)
        else:
            gen = eigen_generator(f"{tag}{idx}", mp)
            if any(abs(r.imag) > 1e-9 for r in gen.roots):
                raise FormsError(f"non-real Hecke eigenvalues for {mp}")
            lam = Alg.gen(gen)
            A = [[Alg.const(comb[i][j]) - (lam if i == j else Alg()) for j in range(n)] for i in range(n)]
            vecs = nullspace(A, n, zero=Alg(), one=Alg.const(1))
        if len(vecs) != 1:
            raise FormsError("eigenspace is not one-dimensional")
        v = vecs[0]
        full = [sum((v[k] * sub[k][j] for k in range(n)), Fraction(0) if gen is None else Alg()) for j in range(space.dim)]
        f = space.combine(full)
        c1 = fourier_c(f, Divisor(F.q, (1,), 0))
        if not c1:
            raise FormsError("eigenform with vanishing first coefficient")
        f = f.scale(1 / c1)
        eig = {}
        for P in primes:
            eig[P] = eigenvalue(f, P)
        out.append(EigenformData(f, eig, gen, new_only, mp if gen else ()))
    return out


def eigenvalue(f: Cochain, P):
    """lambda with T_P f = lambda f, verified on every edge."""
    Tf = apply_hecke(f, P)
    eid = next(iter(sorted(f.values)))
    lam = Tf.at(eid) / f.at(eid)
    if Tf != f.scale(lam):
        raise FormsError(f"not an eigenform for T_{P}")
    return lam


# --- Fourier coefficient identities of eigenforms --------------------------------

def fourier_properties(ef: EigenformData, max_degree: int = 6) -> dict:
    """Check the Fourier identities of a normalized eigenform up to divisor degree max_degree.

    Returns {name: [failing instances]}; "p_divides_level" is the recurrence
    c(P^(n-1)) = lambda c(P^n) as usually printed, "p_divides_level_shifted"
    the relation lambda c(P^n) = |P| c(P^(n+1)) that a U_P-eigenform satisfies.
    """
    f = ef.form
    F = f.graph.F
    q = F.q
    I = f.level
    cache = {}

    def c(D):
        if D not in cache:
            cache[D] = fourier_c(f, D)
        return cache[D]

    def div(m, d=0):
        return Divisor(q, m, d)

    fails = {k: [] for k in ("normalization", "multiplicativity", "constant_term", "infinity",
                             "p_not_dividing_level", "p_divides_level", "p_divides_level_shifted")}
    if c(div((1,))) != 1:
        fails["normalization"].append("c(1)")
    divs = [D for d in range(max_degree + 1) for D in divisors_of_degree(q, d)]
    for i, D1 in enumerate(divs):
        for D2 in divs[i + 1:]:
            if D1.degree + D2.degree <= max_degree and D1.degree and D2.degree and D1.coprime(D2):
                if c(D1) * c(D2) != c(D1 * D2):
                    fails["multiplicativity"].append(f"{D1},{D2}")
    for k in range(-2, max_degree + 3):
        if fourier_c0(f, k):
            fails["constant_term"].append(k)
    for n in range(1, max_degree + 2):
        if c(div((1,), n - 1)) != Fraction(q) ** (1 - n) * c(div((1,))):
            fails["infinity"].append(n)
    for d in range(1, max_degree + 1):
        for P in F.monics(d):
            if not is_irreducible(F, P):
                continue
            lam = ef.eigenvalues.get(P)
            if lam is None:
                lam = eigenvalue(f, P)
            norm = q ** d
            divides = not F.pmod(I.gen, P)
            n = 1
            while d * (n + 1) <= max_degree or (divides and d * n <= max_degree):
                a, b = c(div(F.ppow(P, n - 1))), c(div(F.ppow(P, n)))
                nxt = c(div(F.ppow(P, n + 1))) if d * (n + 1) <= max_degree else None
                if not divides:
                    if a - lam * b + norm * nxt:
                        fails["p_not_dividing_level"].append(f"{F.fmt(P)}^{n}")
                else:
                    if a - lam * b:
                        fails["p_divides_level"].append(f"{F.fmt(P)}^{n}")
                    if nxt is not None and lam * b - norm * nxt:
                        fails["p_divides_level_shifted"].append(f"{F.fmt(P)}^{n}")
                n += 1
    return fails
