"""Exact algebraic numbers: Q adjoined finitely many roots of given minimal polynomials.

An ``Alg`` is a polynomial with rational coefficients in some generators,
reduced modulo each generator's minimal polynomial.  Generators from
different fields multiply freely (tensor product), which is all we need for
Fourier coefficients of two eigenforms with different Hecke fields together
with a root of unity from the additive character.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product


@dataclass(frozen=True, order=True)
class Generator:
    name: str
    minpoly: tuple  # monic, Fractions, lowest degree first
    conj_power: int = 1  # complex conjugation sends g -> g**conj_power
    roots: tuple = field(default=(), compare=False, hash=False)

    @property
    def degree(self):
        return len(self.minpoly) - 1


def cyclotomic(p: int) -> Generator:
    """zeta_p with minimal polynomial 1 + x + ... + x^(p-1)."""
    roots = tuple(cmath.exp(2j * cmath.pi * k / p) for k in range(1, p))
    return Generator(f"zeta{p}", tuple(Fraction(1) for _ in range(p)), p - 1, roots)


def eigen_generator(name: str, minpoly) -> Generator:
    import numpy as np

    mp = tuple(Fraction(c) for c in minpoly)
    lead = mp[-1]
    mp = tuple(c / lead for c in mp)
    roots = tuple(complex(r) for r in np.roots([float(c) for c in reversed(mp)]))
    return Generator(name, mp, 1, roots)


def _mono_mul(a, b):
    d = dict(a)
    for g, e in b:
        d[g] = d.get(g, 0) + e
    return tuple(sorted(d.items()))


class Alg:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: {monomial: Fraction}; monomial is a sorted tuple of (Generator, exponent)
        self.terms = {}
        if terms:
            for m, c in terms.items():
                self._acc(m, Fraction(c))

    # ----- construction ------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({(): c}) if c else cls()

    @classmethod
    def gen(cls, g: Generator, power=1):
        out = cls.const(1)
        for _ in range(power):
            out = out * cls({((g, 1),): 1})
        return out

    def _acc(self, mono, c):
        if not c:
            return
        # reduce exponents that reached the minimal-polynomial degree
        for i, (g, e) in enumerate(mono):
            if e >= g.degree:
                rest = mono[:i] + mono[i + 1:]
                # g^e = g^(e-deg) * g^deg, g^deg = -sum_{j<deg} mp[j] g^j
                for j in range(g.degree):
                    cj = g.minpoly[j]
                    if cj:
                        ex = e - g.degree + j
                        m2 = tuple(sorted(rest + (((g, ex),) if ex else ())))
                        self._acc(m2, -c * cj)
                return
        mono = tuple((g, e) for g, e in mono if e)
        v = self.terms.get(mono, 0) + c
        if v:
            self.terms[mono] = v
        else:
            self.terms.pop(mono, None)

    # ----- arithmetic --------------------------------------------------
    @staticmethod
    def coerce(x):
        if isinstance(x, Alg):
            return x
        return Alg.const(Fraction(x))

    def __add__(self, other):
        other = Alg.coerce(other)
        out = Alg()
        out.terms = dict(self.terms)
        for m, c in other.terms.items():
            v = out.terms.get(m, 0) + c
            if v:
                out.terms[m] = v
            else:
                out.terms.pop(m, None)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Alg()
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-Alg.coerce(other))

    def __rsub__(self, other):
        return Alg.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Alg):
            c = Fraction(other)
            out = Alg()
            if c:
                out.terms = {m: v * c for m, v in self.terms.items()}
            return out
        out = Alg()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out._acc(_mono_mul(m1, m2), c1 * c2)
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Alg):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Alg.coerce(other) * self.inverse()

    def __pow__(self, e):
        out = Alg.const(1)
        base = self if e >= 0 else self.inverse()
        for _ in range(abs(e)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Alg.const(other)
        if not isinstance(other, Alg):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: [(g.name, e) for g, e in t[0]]):
            mono = "*".join(g.name if e == 1 else f"{g.name}^{e}" for g, e in m)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # ----- structure ---------------------------------------------------
    def generators(self):
        return sorted({g for m in self.terms for g, _ in m})

    def is_rational(self):
        return all(m == () for m in self.terms)

    def rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.terms.get((), Fraction(0))

    def conj(self):
        out = Alg()
        for m, c in self.terms.items():
            m2 = tuple(sorted((g, e * g.conj_power) for g, e in m))
            out._acc(m2, c)
        return out

    def inverse(self, gens=None):
        """Inverse inside Q[gens]/(minpolys) by solving a linear system."""
        if not self.terms:
            raise ZeroDivisionError("inverse of 0")
        if self.is_rational():
            return Alg.const(1 / self.rational())
        gens = gens or self.generators()
        basis = [tuple((g, e) for g, e in zip(gens, exps) if e) for exps in product(*[range(g.degree) for g in gens])]
        index = {m: i for i, m in enumerate(basis)}
        n = len(basis)
        cols = []
        for m in basis:
            prod_ = self * Alg({m: 1})
            col = [Fraction(0)] * n
            for mm, c in prod_.terms.items():
                col[index[mm]] = c
            cols.append(col)
        rows = [[cols[j][i] for j in range(n)] for i in range(n)]
        rhs = [Fraction(1) if basis[i] == () else Fraction(0) for i in range(n)]
        sol = solve_rational(rows, rhs)
        return Alg({basis[i]: sol[i] for i in range(n)})

    def embed(self, choice: dict) -> complex:
        """Numerical value under the embedding g -> g.roots[choice[g.name]]."""
        total = 0j
        for m, c in self.terms.items():
            v = complex(float(c))
            for g, e in m:
                v *= g.roots[choice.get(g.name, 0)] ** e
            total += v
        return total

    def embeddings(self):
        gens = self.generators()
        for idx in product(*[range(len(g.roots)) for g in gens]):
            yield {g.name: i for g, i in zip(gens, idx)}

    def to_json(self):
        if self.is_rational():
            return str(self.rational())
        return repr(self)


def solve_rational(rows, rhs):
    """Solve a square system over Q by Gauss-Jordan elimination."""
    n = len(rows)
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def conj(x):
    return x.conj() if isinstance(x, Alg) else x


def is_zero(x):
    return not x


def rref(rows, ncols):
    """Reduced row echelon form over any exact field; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], Alg) else m[r][c].inverse()
        m[r] = [v * inv if v else v for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows, ncols, zero=Fraction(0), one=Fraction(1)):
    """Basis of {x : rows * x = 0}; each vector is 1 at its own free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for row, pc in zip(red, pivots):
            if row[fc]:
                v[pc] = -row[fc]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class LogScaled:
    """value * log_e(q)^power with value an exact (possibly algebraic) number."""

    value: object
    power: int = 0

    def __mul__(self, o):
        if isinstance(o, LogScaled):
            return LogScaled(self.value * o.value, self.power + o.power)
        return LogScaled(self.value * o, self.power)

    __rmul__ = __mul__

    def __neg__(self):
        return LogScaled(-self.value, self.power)

    def __add__(self, o):
        if not self.value:
            return o
        if not o.value:
            return self
        if o.power != self.power:
            raise ValueError("adding different powers of log q")
        return LogScaled(self.value + o.value, self.power)

    def __sub__(self, o):
        return self + (-o)

    def __eq__(self, o):
        if not isinstance(o, LogScaled):
            return NotImplemented
        if not self.value and not o.value:
            return True
        return self.power == o.power and self.value == o.value

    def __hash__(self):
        return hash((self.power, str(self.value)))

    def __str__(self):
        v = self.value.to_json() if isinstance(self.value, Alg) else str(self.value)
        return v if not self.power else f"({v})*log(q)^{self.power}"

    def to_json(self):
        v = self.value.to_json() if isinstance(self.value, Alg) else str(self.value)
        return {"value": v, "log_power": self.power}
