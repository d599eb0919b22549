"""Eisenstein series on the tree as exact rational functions of x = q^(-s).

For a vertex v(k, u) and monic m of degree M, the sum of phi_{m,n}(v) over
all n in A splits by N' = n + (polynomial part of m u):

* N' != 0 of degree D has ord(mu + n) = -D, and there are (q-1) q^D of them;
  the sum over D is finite data plus a geometric series in q x^2.
* N' = 0 gives w0 = ord of the fractional part of m u, which only needs
  enumeration when M < k - 1 (counted by ``kernels.omega_histogram``).

Summing over all monic m of degree M gives a per-degree term S_M which, once
M >= max(k, deg J), is an exact geometric progression in M with ratio
q^2 x^2.  The progression is checked on consecutive degrees before the tail
is summed in closed form.  Restricting to coprime (m, n) is a Moebius-type
inversion:  sum_{(m,n)=1} = (1 - q x^2) * sum_{all n}, and for level I

    zeta_I(2s) (E_I - x^k) = sum_{e | I} mu(e) x^(2 deg e) G_{I/e}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .algebra import Ideal, KElt, mobius, zeta_family
from .btree import Edge, Mat2, Vertex, act, reduce_vertex, standard_vertex
from .fq import Fq, field
from .ratx import RatX, X


class EisensteinError(RuntimeError):
    pass


def xpow(e, c=1):
    return RatX.monomial(e, c)


def _one_minus(c, e):
    """1 - c x^e."""
    return RatX.const(1) - xpow(e, c)


@dataclass
class EisensteinValue:
    value: RatX
    cutoff: int  # last degree summed term by term
    tail_ratio: RatX  # certified ratio of consecutive per-degree terms

    def to_json(self):
        out = self.value.to_json()
        out.update({"laurent_shift": 0, "cutoff": self.cutoff, "tail_pattern": str(self.tail_ratio)})
        return out


# --- single terms -----------------------------------------------------------------

def phi_term(F: Fq, k: int, tail, m, n, variant: str = "phi") -> RatX:
    """phi^s_{m,n}(v(k,u)) or psi^s_{m,n}(e(k,u)) as a monomial in x."""
    if not m and not n:
        raise EisensteinError("(m, n) = (0, 0) is excluded")
    u = KElt.from_tail(F, tail)
    z = KElt(F, m) * u + KElt(F, n)
    w = z.ord()
    degm = F.deg(m)
    if w >= k - degm:
        if variant == "psi":
            return xpow(2 * degm - k + 1, -1)
        return xpow(2 * degm - k)
    return xpow(k - 2 * w)


# --- per-degree sums ---------------------------------------------------------------

def _frac_coeffs(tail, k):
    """a[j] for 0 <= j < k with a[j] the coefficient of pi^j, j >= 1."""
    a = [0] * max(k, 0)
    for j, c in tail:
        if 1 <= j < k:
            a[j] = c
    return a


def per_degree(F: Fq, k: int, tail, J, M: int, variant: str = "phi") -> RatX:
    """Sum of phi_{m,n}(v(k,u)) over monic m of degree M with J | m and all n in A."""
    q = F.q
    dJ = len(J) - 1
    if M < dJ:
        return RatX.const(0)
    count = q ** (M - dJ)
    B = M - k
    first = xpow(2 * M - k + 1, -1) if variant == "psi" else xpow(2 * M - k)
    geo = _one_minus(q, 2)
    if B >= 0:
        nonzero = first * (q ** (B + 1) - 1) + xpow(k + 2 * B + 2, (q - 1) * q ** (B + 1)) / geo
    else:
        nonzero = xpow(k, q - 1) / geo
    total = nonzero * count
    if M >= k - 1:
        return total + first * count
    hist = kernels.omega_histogram(q, F.add_t, F.mul_t, _frac_coeffs(tail, k), list(J), M)
    total = total + first * hist[0]
    for t in range(1, len(hist)):
        if hist[t]:
            total = total + xpow(k - 2 * t, hist[t])
    return total


def series_G(F: Fq, k: int, tail, J=(1,), variant: str = "phi", window: int = 3) -> EisensteinValue:
    """sum over monic m with J | m and all n of phi (or psi), in closed form."""
    q = F.q
    dJ = len(J) - 1
    start = max(k, dJ, 0)
    cutoff = start + window - 1
    ratio = xpow(2, q * q)
    terms = [per_degree(F, k, tail, J, M, variant) for M in range(dJ, cutoff + 2)]
    # certify the geometric pattern on the last `window` consecutive ratios
    for M in range(cutoff - window + 1, cutoff + 1):
        a, b = terms[M - dJ], terms[M + 1 - dJ]
        if b != a * ratio:
            raise EisensteinError(f"per-degree terms are not geometric at degrees {M}, {M + 1}")
    total = RatX.const(0)
    for t in terms[: cutoff + 1 - dJ]:
        total = total + t
    total = total + terms[cutoff + 1 - dJ] / _one_minus(q * q, 2)
    return EisensteinValue(total, cutoff, ratio)


# --- E, E_I, F -----------------------------------------------------------------------

def eisenstein_E(v: Vertex, I: Ideal = None, q: int = None) -> EisensteinValue:
    """E_I(v, s) from the lattice-sum formula (I = None or (1) gives E)."""
    if I is None:
        F = field(q)
        I = Ideal(q, (1,))
    F = I.F
    q = F.q
    k, tail = v.k, v.tail
    lead = xpow(k)
    if I.degree == 0:
        G = series_G(F, k, tail)
        return EisensteinValue(lead + _one_minus(q, 2) * G.value, G.cutoff, G.tail_ratio)
    total = RatX.const(0)
    cutoff = 0
    for e in I.divisors():
        mu = mobius(F, e)
        if not mu:
            continue
        J = F.pdivmod(I.gen, e)[0]
        G = series_G(F, k, tail, J)
        cutoff = max(cutoff, G.cutoff)
        total = total + G.value * xpow(2 * (len(e) - 1), mu)
    zI = zeta_family("zeta_I", q, I, a=2)
    return EisensteinValue(lead + total / zI, cutoff, xpow(2, q * q))


def gekeler_F(e: Edge, q: int) -> EisensteinValue:
    """Gekeler's improper Eisenstein series F(e, s) at level 1."""
    F = field(q)
    k, tail = e.base.k, e.base.tail
    G = series_G(F, k, tail, variant="psi")
    val = xpow(k) + _one_minus(q, 2) * G.value
    if e.sign < 0:
        val = -val
    return EisensteinValue(val, G.cutoff, G.tail_ratio)


# --- cached level-one values through reduction to the standard half-line ------------

_E_CACHE = {}
_F_CACHE = {}


def E_reduced(v: Vertex, q: int) -> RatX:
    """E(v, s) using GL2(A)-invariance: E(gamma v_n) = E(v_n)."""
    n, _ = reduce_vertex(v, field(q))
    key = (q, n)
    if key not in _E_CACHE:
        _E_CACHE[key] = eisenstein_E(standard_vertex(n), q=q).value
    return _E_CACHE[key]


def F_reduced(e: Edge, q: int) -> RatX:
    """F(e, s) using GL2(A)-invariance on the level-one half-line."""
    from .quotient import build_quotient

    g = _level_one(q)
    n, _, sign = g.edge_key(e)
    key = (q, n)
    if key not in _F_CACHE:
        _F_CACHE[key] = gekeler_F(Edge(standard_vertex(n), 1), q).value
    val = _F_CACHE[key]
    return val if sign > 0 else -val


_LEVEL_ONE = {}


def _level_one(q):
    from .quotient import build_quotient

    if q not in _LEVEL_ONE:
        _LEVEL_ONE[q] = build_quotient(Ideal(q, (1,)), depth=2)
    return _LEVEL_ONE[q]


# --- completions ------------------------------------------------------------------------

def completion_factor(q: int, kind: str = "plain") -> RatX:
    """q^s L_inf(s) ("plain") or the antisymmetric completion 2/(1+q^s) q^s L_inf(s)."""
    base = xpow(-1) * zeta_family("L_infinity", q)
    if kind == "plain":
        return base
    if kind == "symmetric":
        return base * xpow(1, 2) / (X + 1)
    raise EisensteinError(f"unknown completion {kind!r}")


def lambda_completed(e, q: int, kind: str = "plain") -> RatX:
    """Lambda(e, s) = (completion factor) * E(o(e), s); vertices are accepted too."""
    v = e.origin if isinstance(e, Edge) else e
    return completion_factor(q, kind) * eisenstein_E(v, q=q).value


def reflect(f: RatX, q: int) -> RatX:
    """f(1 - s), i.e. f evaluated at 1/(q x)."""
    return f.substitute_inverse(Fraction(1, q))


def functional_equation_residual(f: RatX, q: int) -> RatX:
    """f(s) + f(1 - s); zero for an antisymmetric completion."""
    return f + reflect(f, q)


def x_residue_to_s(res_x, q):
    """Residue in s at s = 1 is -(q / log q) * residue in x at x = 1/q.

    Returned as the rational factor multiplying 1/log_e(q)."""
    return -q * res_x


# --- derivatives and log |Delta| ------------------------------------------------------

def partial(h, e: Edge):
    """d h(e) = h(t(e)) - h(o(e))."""
    return h(e.terminus) - h(e.origin)


def dlog_delta(e: Edge, q: int, scale=(1,)) -> Fraction:
    """d log_q |Delta(d z)|(e) = (1 - q)/q * F(diag(d, 1) e, 1)."""
    F = field(q)
    if scale != (1,):
        e = act(Mat2.from_polys(F, scale, (), (), (1,)), e, F)
    val = F_reduced(e, q).evaluate(Fraction(1, q))
    return Fraction(1 - q, q) * val


def dlog_delta_via_E(e: Edge, q: int) -> Fraction:
    """Second route: dE(., s)(e) (1-q) / (q (q^s - 1)) at s = 1."""
    dE = E_reduced(e.terminus, q) - E_reduced(e.origin, q)
    qs_minus_1 = xpow(-1) - 1
    return Fraction(1 - q, q) * (dE / qs_minus_1).evaluate(Fraction(1, q))


def tree_path(v: Vertex, w: Vertex):
    """Oriented edges of the unique path from v to w."""
    def chain(x):
        out = [x]
        while x.tail:
            x = x.truncate(x.k - 1)
            out.append(x)
        return out  # ends on the standard line v(j, 0)

    cv, cw = chain(v), chain(w)
    a, b = cv[-1], cw[-1]
    # walk the lower end of the standard line down to the other
    line = []
    if a.k > b.k:
        x = a
        while x.k > b.k:
            line.append(Edge.between(x, Vertex(x.k - 1)))
            x = Vertex(x.k - 1)
    else:
        x = b
        back = []
        while x.k > a.k:
            back.append(Edge.between(Vertex(x.k - 1), x))
            x = Vertex(x.k - 1)
        line = list(reversed(back))
    up = [Edge.between(cv[i], cv[i + 1]) for i in range(len(cv) - 1)]
    down = [Edge.between(cw[i + 1], cw[i]) for i in reversed(range(len(cw) - 1))]
    path = up + line + down
    # cancel backtracking
    out = []
    for e in path:
        if out and out[-1] == e.reverse():
            out.pop()
        else:
            out.append(e)
    return out


def log_delta(v: Vertex, q: int, scale=(1,), base: Vertex = Vertex(0)) -> Fraction:
    """log_q |Delta(d z)|(v) - log_q |Delta(d z)|(base), by integrating d log."""
    return sum((dlog_delta(e, q, scale) for e in tree_path(base, v)), Fraction(0))


def log_delta_I(v: Vertex, I: Ideal, base: Vertex = Vertex(0)) -> Fraction:
    """log_q |Delta_I|(v) with Delta_I = prod_{d | I} Delta(d z)^mu(I/d)."""
    if I.degree == 0:
        raise EisensteinError("Delta_I needs I != (1)")
    F = I.F
    total = Fraction(0)
    for d in I.divisors():
        mu = mobius(F, F.pdivmod(I.gen, d)[0])
        if mu:
            total += mu * log_delta(v, I.q, d, base)
    return total


# --- brute-force oracle -------------------------------------------------------------------

def brute_force_E(v: Vertex, I: Ideal, x0: float, m_max: int, n_max: int):
    """Truncated lattice sum for E_I(v) at a real x0, with a certified tail bound.

    Returns (value, bound) with |E_I(v)(x0) - value| <= bound."""
    F = I.F
    q = F.q
    k = v.k
    u = KElt.from_tail(F, v.tail)
    uord = u.ord() if v.tail else 0
    if m_max < max(k, 0):
        raise EisensteinError("m_max must be at least k")
    polypart_deg = m_max + max(0, -uord)
    if n_max < max(polypart_deg, m_max - k):
        raise EisensteinError("n_max too small for the tail bound")
    total = x0 ** k
    n_m = 0
    polys = list(F.polys_below(n_max + 1))
    for M in range(I.degree, m_max + 1):
        for r in F.monics(M - I.degree):
            m = F.pmul(r, I.gen)
            n_m += 1
            mu = KElt(F, m) * u
            for n in polys:
                if F.pgcd(m, n) != (1,):
                    continue
                w = (mu + KElt(F, n)).ord()
                if w >= k - M:
                    total += x0 ** (2 * M - k)
                else:
                    total += x0 ** (k - 2 * w)
    geo = 1 - q * x0 * x0
    bound = n_m * (q - 1) * q ** (n_max + 1) * x0 ** (k + 2 * n_max + 2) / geo
    # degrees beyond m_max: per-degree terms of the unrestricted sum
    M = m_max + 1
    tail = 0.0
    while True:
        cnt = q ** (M - I.degree)
        t = cnt * (q ** (M - k + 1) * x0 ** (2 * M - k) + (q - 1) * q ** (M - k + 1) * x0 ** (2 * M - k + 2) / geo)
        tail += t
        if t < 1e-18 * max(abs(total), 1e-300):
            break
        M += 1
    # the remaining geometric tail beyond M
    r = q * q * x0 * x0
    tail += t * r / (1 - r)
    return total, bound + tail
