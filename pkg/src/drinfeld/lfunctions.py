"""The Rankin-Selberg convolution L_{f,g}(s), the completed integral Phi(s),
its functional equation, and the special value Phi(0) <-> L'_{f,g}(0).

All series are in x = q^(-s).  Integrals over Y(Gamma_0(I) \\ T) run over
both orientations of every edge class with the Haar measure mu(e); for the
alternating product f(e) conj(g)(e) the two orientations carry the same
weight, so an integrand h(o(e)) contributes h(o(e)) + h(t(e)) per class.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Divisor, Ideal, divisors_of_degree, mobius, plcm, zeta_family
from .btree import Mat2, act
from .eisenstein import E_reduced, completion_factor, eisenstein_E, reflect, xpow
from .forms import Cochain, EigenformData, fourier_c, petersson, raise_level
from .numbers import Alg, LogScaled, conj
from .quotient import QuotientGraph
from .ratx import RatX, X


class LFunctionError(RuntimeError):
    pass


def _zero(*xs):
    return Alg() if any(isinstance(x, Alg) for x in xs) else Fraction(0)


def _coeffs(d: dict, lo: int, hi: int):
    return [d.get(j, 0) for j in range(lo, hi + 1)]


def _lmul(a: dict, b: dict, upto: int) -> dict:
    """Product of two Laurent expansions {power: coeff}, truncated at x^upto."""
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= upto and x and y:
                out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _residual(a: dict, b: dict, lo: int, hi: int):
    return [a.get(j, 0) - b.get(j, 0) for j in range(lo, hi + 1)]


def _is_zero_list(xs):
    return all(not x for x in xs)


def _fmt(c):
    return c.to_json() if isinstance(c, Alg) else str(c)


def pair_level(f: EigenformData, g: EigenformData) -> Ideal:
    F = f.level.F
    return Ideal(f.level.q, plcm(F, f.level.gen, g.level.gen))


# --- Dirichlet series -------------------------------------------------------------------

@dataclass
class DirichletSeriesX:
    N: int
    level: Ideal
    restricted: list  # sum over finite m of c(f,m) conj c(g,m) |m|, coefficient of x^deg m
    full: list  # the same sum over all non-negative divisors of K
    L: list  # zeta_I(2s) * restricted
    infinity_residual: list  # zeta_I(2s) * full + q^(s+1) L_inf(s+1) L, coefficientwise

    @property
    def ok(self):
        return _is_zero_list(self.infinity_residual)

    def to_json(self):
        return {
            "N": self.N,
            "level": str(self.level),
            "L": [_fmt(c) for c in self.L],
            "restricted": [_fmt(c) for c in self.restricted],
            "full": [_fmt(c) for c in self.full],
            "infinity_factor_residual": [_fmt(c) for c in self.infinity_residual],
        }


def fourier_table(f: EigenformData, N: int) -> dict:
    """{Divisor: c(f, D)} for every non-negative divisor of degree <= N."""
    out = {}
    for deg in range(N + 1):
        for D in divisors_of_degree(f.level.q, deg):
            out[D] = fourier_c(f.form, D)
    return out


def dirichlet_series(f: EigenformData, g: EigenformData, N: int = 6, tables=None) -> DirichletSeriesX:
    I = pair_level(f, g)
    q = I.q
    cf, cg = tables if tables else (fourier_table(f, N), fourier_table(g, N))
    restricted = [Fraction(0)] * (N + 1)
    full = [Fraction(0)] * (N + 1)
    for D, a in cf.items():
        if D.degree > N:
            continue
        term = a * conj(cg[D]) * Fraction(q) ** D.degree
        full[D.degree] = full[D.degree] + term
        if D.d == 0:
            restricted[D.degree] = restricted[D.degree] + term
    zI = zeta_family("zeta_I", q, I, a=2).series(N)
    L = _lmul(zI, dict(enumerate(restricted)), N)
    lhs = _lmul(zI, dict(enumerate(full)), N)
    # -q^(s+1) L_inf(s+1) = q / (q - x)
    inf = (RatX.const(q) / (RatX.const(q) - X)).series(N)
    rhs = _lmul(inf, L, N)
    return DirichletSeriesX(N, I, restricted, full, _coeffs(L, 0, N), _residual(lhs, rhs, 0, N))


# --- integrals over the quotient ---------------------------------------------------------

def delta_weights(f: Cochain, g: Cochain) -> dict:
    """{edge class id: f(e) conj(g)(e) mu(e)} on the common support."""
    if f.graph is not g.graph:
        raise LFunctionError("cochains live on different quotient graphs")
    out = {}
    for e in f.graph.edges:
        a, b = f.at(e.id), g.at(e.id)
        if a and b:
            out[e.id] = a * conj(b) * e.mu
    return out


def edge_integral(graph: QuotientGraph, delta: dict, h, M: Mat2 = None) -> RatX:
    """sum over oriented edges of h(o(M e)) delta(e); h maps vertices to RatX."""
    F = graph.F
    total = RatX.const(0)
    for eid, w in sorted(delta.items()):
        rep = graph.edges[eid].rep
        o, t = rep.origin, rep.terminus
        if M is not None:
            o, t = act(M, o, F), act(M, t, F)
        total = total + (h(o) + h(t)) * w
    return total


def _diag(F, d):
    return Mat2.from_polys(F, d, (), (), (1,))


@dataclass
class PhiFunction:
    kind: str  # completion used for Lambda
    level: Ideal
    mobius_form: RatX  # sum_d mu(d) |d|^(-s) int Lambda((I/d) e, s) delta(f, g)
    single_form: RatX  # int Lambda(I e, s) delta(f, g)
    integral_form: RatX  # prefactor * int E_I(o(e), s) delta(f, g)
    terms: dict = field(default_factory=dict)  # d -> int Lambda((I/d) e, s) delta

    @property
    def value(self) -> RatX:
        return self.mobius_form

    def fe_residual(self) -> RatX:
        return self.mobius_form + reflect(self.mobius_form, self.level.q)

    def to_json(self):
        F = self.level.F
        return {
            "completion": self.kind,
            "level": str(self.level),
            "phi": self.mobius_form.to_json(),
            "single_term_equal": self.single_form == self.mobius_form,
            "integral_form_equal": self.integral_form == self.mobius_form,
            "fe_residual": "0" if self.fe_residual().is_zero() else str(self.fe_residual()),
            "terms": {F.fmt(d): t.to_json() for d, t in self.terms.items()},
        }


def _raise(f, graph):
    form = f.form if isinstance(f, EigenformData) else f
    return raise_level(form, graph)


def phi_function(f, g, graph: QuotientGraph, kind: str = "symmetric", with_integral: bool = True) -> PhiFunction:
    """Phi(s) three ways: the Moebius sum over Lambda((I/d) e, s), the single
    term int Lambda(I e, s) delta(f, g), and the prefactor times int E_I."""
    I = graph.I
    F, q = I.F, I.q
    fr, gr = _raise(f, graph), _raise(g, graph)
    delta = delta_weights(fr, gr)
    comp = completion_factor(q, kind)
    E = lambda v: E_reduced(v, q)
    terms = {}
    total = RatX.const(0)
    for d in I.divisors():
        mu = mobius(F, d)
        if not mu:
            continue
        Id = F.pdivmod(I.gen, d)[0]
        term = comp * edge_integral(graph, delta, E, _diag(F, Id))
        terms[d] = term
        total = total + term * xpow(len(d) - 1, mu)
    single = comp * edge_integral(graph, delta, E, _diag(F, I.gen))
    integral = RatX.const(0)
    if with_integral:
        pref = zeta_family("zeta_I", q, I, a=2) * comp * xpow(-I.degree) / zeta_family("zeta", q, a=2)
        integral = pref * edge_integral(graph, delta, lambda v: eisenstein_E(v, I).value)
    return PhiFunction(kind, I, total, single, integral, terms)


def phi_from_L_prefactor(q: int, I: Ideal) -> RatX:
    """-q^2 L_inf(s) L_inf(s+1) |I|^s / zeta(2s)."""
    Linf = zeta_family("L_infinity", q)
    Linf1 = zeta_family("L_infinity", q, b=1)
    return RatX.const(-q * q) * Linf * Linf1 * xpow(-I.degree) / zeta_family("zeta", q, a=2)


def phi_series_residual(phi: PhiFunction, ds: DirichletSeriesX) -> list:
    """Phi expanded at x = 0 against -q^2 L_inf(s) L_inf(s+1) |I|^s / zeta(2s) * L, to order N."""
    pref = phi_from_L_prefactor(phi.level.q, phi.level)
    lo = min(pref.series(0))
    upto = lo + ds.N
    rhs = _lmul(pref.series(upto), dict(enumerate(ds.L)), upto)
    lhs = phi.value.series(upto)
    return _residual(lhs, rhs, min(lo, min(lhs, default=lo)), upto)


# --- Rankin's identity -------------------------------------------------------------------

@dataclass
class RankinReport:
    N: int
    lhs: dict
    rhs_literal: dict  # -q^(2-s) L_inf(s+1) L(s)
    rhs_corrected: dict  # the same times (1 + q^s)/2
    lo: int

    @property
    def residual_literal(self):
        return _residual(self.lhs, self.rhs_literal, self.lo, self.N)

    @property
    def residual_corrected(self):
        return _residual(self.lhs, self.rhs_corrected, self.lo, self.N)

    @staticmethod
    def _max(res):
        nz = [r for r in res if r]
        return "0" if not nz else _fmt(nz[0])

    def to_json(self):
        return {
            "N": self.N,
            "lhs": {j: _fmt(self.lhs.get(j, 0)) for j in range(self.lo, self.N + 1)},
            "literal_residual_zero": _is_zero_list(self.residual_literal),
            "corrected_residual_zero": _is_zero_list(self.residual_corrected),
            "first_literal_residual": self._max(self.residual_literal),
        }


def rankin_identity_check(f, g, graph: QuotientGraph, N: int = 6, ds: DirichletSeriesX = None) -> RankinReport:
    """zeta_I(2s) int E_I(o(e), s) f conj(g) dmu against -q^(2-s) L_inf(s+1) L_{f,g}(s)."""
    I = graph.I
    q = I.q
    fr, gr = _raise(f, graph), _raise(g, graph)
    delta = delta_weights(fr, gr)
    integral = edge_integral(graph, delta, lambda v: eisenstein_E(v, I).value)
    lhs_fn = zeta_family("zeta_I", q, I, a=2) * integral
    lhs = lhs_fn.series(N) if delta else {}
    if ds is None:
        if not isinstance(f, EigenformData) or not isinstance(g, EigenformData):
            raise LFunctionError("pass the Dirichlet series for non-eigenform cochains")
        ds = dirichlet_series(f, g, N)
    L = dict(enumerate(ds.L))
    lit = RatX.monomial(2, q * q) / (RatX.const(q) - X)
    cor = lit * (X + 1) / RatX.monomial(1, 2)
    lo = min([0] + list(lhs))
    return RankinReport(N, lhs, _lmul(lit.series(N), L, N), _lmul(cor.series(N), L, N), lo)


# --- the special value at s = 0 ------------------------------------------------------------

@dataclass
class SpecialValue:
    phi0: LogScaled
    L0: object  # L_{f,g}(0), expected 0
    Lprime0: LogScaled  # from the x-expansion of L
    Lprime0_from_phi: LogScaled  # q^-2 log(q) Phi(0)

    @property
    def consistent(self):
        return self.Lprime0 == self.Lprime0_from_phi

    def to_json(self):
        return {
            "phi_at_0": self.phi0.to_json(),
            "L_at_0": _fmt(self.L0),
            "L_prime_0": self.Lprime0.to_json(),
            "L_prime_0_from_phi": self.Lprime0_from_phi.to_json(),
            "consistent": self.consistent,
        }


def l_prime_at_zero(phi: PhiFunction) -> SpecialValue:
    """Phi(0) and L'_{f,g}(0), carrying log_e(q) as a formal unit.

    L(x) = Phi(x) / (-q^2 L_inf(s) L_inf(s+1) |I|^s / zeta(2s)); since
    dx/ds = -x log q, L'(0) = -log(q) dL/dx at x = 1."""
    q = phi.level.q
    try:
        phi0 = phi.value.evaluate(1)
    except ZeroDivisionError as exc:
        raise LFunctionError("Phi has a pole at s = 0 (f and g are not orthogonal)") from exc
    L = phi.value / phi_from_L_prefactor(q, phi.level)
    expansion = L.laurent_at(1, 1)
    if any(j < 0 for j in expansion):
        raise LFunctionError("L_{f,g} has a pole at s = 0")
    L0 = expansion.get(0, _zero(phi0))
    dL = expansion.get(1, _zero(phi0))
    return SpecialValue(LogScaled(phi0, 0), L0, LogScaled(-dL, 1), LogScaled(phi0 / (q * q), 1))
