"""Rational functions in x = q^(-s) with exact coefficients.

Numerators may carry coefficients in any exact ring supporting + and *
(``Fraction`` or ``Alg``); denominators are kept over Q so that reduction by
polynomial gcd is always available for them.
"""
from __future__ import annotations

from fractions import Fraction

from .numbers import Alg


def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def padd(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i < len(a) and i < len(b):
            out.append(a[i] + b[i])
        elif i < len(a):
            out.append(a[i])
        else:
            out.append(b[i])
    return _trim(out)


def pneg(a):
    return [-c for c in a]


def pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return _trim(out)


def pscale(c, a):
    return _trim([c * x for x in a])


def peval(a, x0):
    v = 0
    for c in reversed(a):
        v = v * x0 + c
    return v


def pdivmod_q(a, b):
    """Division over Q (b has Fraction coefficients, a may be over any Q-algebra)."""
    a = list(a)
    if len(a) < len(b):
        return [], _trim(a)
    inv = 1 / Fraction(b[-1])
    quo = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - 1, len(b) - 2, -1):
        c = a[i]
        if not c:
            continue
        c = c * inv
        quo[i - len(b) + 1] = c
        for j, y in enumerate(b):
            a[i - len(b) + 1 + j] = a[i - len(b) + 1 + j] - c * y
    return _trim(quo), _trim(a[: len(b) - 1])


def pgcd_q(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, pdivmod_q(a, b)[1]
    if not a:
        return a
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def _all_rational(a):
    return all(not isinstance(c, Alg) or c.is_rational() for c in a)


def _as_fraction(c):
    return c.rational() if isinstance(c, Alg) else Fraction(c)


class RatX:
    """num(x)/den(x); immutable."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,), reduce=True):
        num = _trim(num)
        den = _trim([Fraction(c) for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (Fraction(1),)
            return
        if reduce:
            # strip common powers of x
            while num and den and not num[0] and not den[0]:
                num, den = num[1:], den[1:]
            if _all_rational(num):
                fnum = [_as_fraction(c) for c in num]
                g = pgcd_q(fnum, den)
                if len(g) > 1:
                    num = pdivmod_q(num, g)[0]
                    den = pdivmod_q(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num = [c / lead for c in num]
                den = [c / lead for c in den]
        self.num, self.den = tuple(num), tuple(den)

    # ----- constructors --------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, e: int, c=1):
        """c * x^e for any integer e."""
        if e >= 0:
            return cls([0] * e + [c])
        return cls([c], [0] * (-e) + [1])

    @classmethod
    def poly(cls, coeffs):
        return cls(list(coeffs))

    # ----- arithmetic ----------------------------------------------------
    @staticmethod
    def lift(o):
        return o if isinstance(o, RatX) else RatX.const(o)

    def __add__(self, o):
        o = RatX.lift(o)
        if self.den == o.den:
            return RatX(padd(self.num, o.num), self.den)
        return RatX(padd(pmul(self.num, o.den), pmul(o.num, self.den)), pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatX(pneg(self.num), self.den, reduce=False)

    def __sub__(self, o):
        return self + (-RatX.lift(o))

    def __rsub__(self, o):
        return RatX.lift(o) - self

    def __mul__(self, o):
        if not isinstance(o, RatX):
            return RatX(pscale(o, self.num), self.den)
        return RatX(pmul(self.num, o.num), pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, o):
        if not isinstance(o, RatX):
            return self * (1 / Fraction(o)) if not isinstance(o, Alg) else self * o.inverse()
        if not _all_rational(o.num):
            raise TypeError("division by a rational function with irrational coefficients")
        return RatX(pmul(self.num, o.den), pmul(self.den, [_as_fraction(c) for c in o.num]))

    def __rtruediv__(self, o):
        return RatX.lift(o) / self

    def __pow__(self, e):
        out = RatX.const(1)
        base = self if e >= 0 else RatX.const(1) / self
        for _ in range(abs(e)):
            out = out * base
        return out

    def __eq__(self, o):
        if not isinstance(o, RatX):
            o = RatX.const(o)
        return not _trim(padd(pmul(self.num, o.den), pneg(pmul(o.num, self.den))))

    def __hash__(self):
        return hash((len(self.num), len(self.den)))

    def is_zero(self):
        return not self.num

    def __repr__(self):
        return f"RatX({fmt_poly(self.num)} / {fmt_poly(self.den)})"

    def __str__(self):
        return f"({fmt_poly(self.num)})/({fmt_poly(self.den)})"

    def map_coeffs(self, fn):
        return RatX([fn(c) for c in self.num], self.den)

    # ----- analysis ------------------------------------------------------
    def __call__(self, x0):
        return self.evaluate(x0)

    def evaluate(self, x0):
        """Value at x0, cancelling removable singularities."""
        x0 = Fraction(x0)
        num, den = list(self.num), list(self.den)
        while peval(den, x0) == 0:
            if peval(num, x0):
                raise ZeroDivisionError(f"pole at x={x0}")
            lin = [-x0, Fraction(1)]
            num, r1 = pdivmod_q(num, lin)
            den, r2 = pdivmod_q(den, lin)
            assert not r1 and not r2
        return peval(num, x0) / peval(den, x0)

    def substitute_inverse(self, a):
        """f(a/x) as a rational function (a rational); used for s -> 1 - s with a = 1/q."""
        a = Fraction(a)
        n = max(len(self.num), len(self.den)) - 1

        def flip(poly):
            # x^n * poly(a/x) = sum c_i a^i x^(n-i)
            out = [0] * (n + 1)
            for i, c in enumerate(poly):
                out[n - i] = c * a**i
            return out

        return RatX(flip(self.num), flip(self.den))

    def shift(self, x0):
        """Coefficient lists of num(x0 + t), den(x0 + t) in t."""
        x0 = Fraction(x0)

        def taylor(poly):
            poly = list(poly)
            out = []
            # repeated synthetic division by (x - x0)
            while poly:
                quo, rem = pdivmod_q(poly, [-x0, Fraction(1)])
                out.append(rem[0] if rem else 0)
                poly = quo
            return out

        return taylor(self.num), taylor(self.den)

    def laurent_at(self, x0, upto: int):
        """{j: c_j} with f = sum_j c_j (x - x0)^j, for j from the pole order up to ``upto``."""
        num, den = self.shift(x0)
        v = 0
        while v < len(den) and not den[v]:
            v += 1
        num_v = 0
        while num_v < len(num) and not num[num_v]:
            num_v += 1
        den = den[v:]
        series = power_series_div(num, den, upto + v + 1)
        return {j - v: c for j, c in enumerate(series) if j - v <= upto and c}

    def residue_at(self, x0):
        return self.laurent_at(x0, -1).get(-1, 0)

    def constant_term_at(self, x0):
        return self.laurent_at(x0, 0).get(0, 0)

    def series(self, order: int, start: int = None):
        """Laurent expansion at x = 0: {j: c_j} for j <= order."""
        return self.laurent_at(0, order)

    def to_json(self):
        return {"num": [_json_coeff(c) for c in self.num], "den": [str(c) for c in self.den]}


def power_series_div(num, den, n):
    """First n coefficients of num/den as power series (den[0] != 0)."""
    inv0 = 1 / Fraction(den[0])
    out = []
    rem = list(num) + [0] * max(0, n - len(num))
    for i in range(n):
        c = rem[i] * inv0 if rem[i] else 0
        out.append(c)
        if c:
            for j in range(1, len(den)):
                if i + j < len(rem) and den[j]:
                    rem[i + j] = rem[i + j] - c * den[j]
    return out


def _json_coeff(c):
    if isinstance(c, Alg):
        return c.to_json()
    return str(c)


def fmt_poly(coeffs, var="x"):
    if not coeffs:
        return "0"
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        cs = str(c)
        if isinstance(c, Alg) and not c.is_rational():
            cs = f"({cs})"
        elif isinstance(c, Alg):
            cs = str(c.rational())
        if i == 0:
            terms.append(cs)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if cs == "1" else f"{cs}*{mono}")
    return " + ".join(terms)


X = RatX.monomial(1)
