"""Arithmetic of A = F_q[T] and K = F_q(T): factorization, Moebius function,
ideals and divisors, the infinite valuation, and the zeta factors as rational
functions in x = q^(-s)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .fq import Fq, field
from .ratx import RatX


class AlgebraError(ValueError):
    pass


def is_monic(F: Fq, a) -> bool:
    return bool(a) and a[-1] == 1


def irreducibles(F: Fq, d: int):
    """Monic irreducible polynomials of degree d."""
    for m in F.monics(d):
        if is_irreducible(F, m):
            yield m


def is_irreducible(F: Fq, a) -> bool:
    d = F.deg(a)
    if d < 1:
        return False
    if d == 1:
        return True
    # Rabin-style test: a | T^(q^d) - T and gcd(a, T^(q^(d/r)) - T) = 1 for primes r | d
    def frob_power(k):
        x = (0, 1)
        for _ in range(k):
            x = _powmod(F, x, F.q, a)
        return x

    if F.psub(frob_power(d), (0, 1)) and F.pmod(F.psub(frob_power(d), (0, 1)), a):
        return False
    for r in _prime_divisors(d):
        g = F.pgcd(a, F.psub(frob_power(d // r), (0, 1)))
        if g != (1,):
            return False
    return True


def _powmod(F, base, e, mod):
    result = (1,)
    base = F.pmod(base, mod)
    while e:
        if e & 1:
            result = F.pmod(F.pmul(result, base), mod)
        base = F.pmod(F.pmul(base, base), mod)
        e >>= 1
    return result


def _prime_divisors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def factor_monic(F: Fq, m):
    """Factor a monic polynomial of degree >= 1 into [(prime, multiplicity)], primes sorted."""
    if not is_monic(F, m):
        raise AlgebraError("factor_monic needs a monic polynomial")
    if F.deg(m) < 1:
        raise AlgebraError("cannot factor a constant")
    out = []
    rest = m
    d = 1
    while F.deg(rest) >= 2 * d:
        for p in F.monics(d):
            if F.deg(rest) < 2 * d:
                break
            quo, r = F.pdivmod(rest, p)
            if r:
                continue
            e = 0
            while not r:
                rest, e = quo, e + 1
                quo, r = F.pdivmod(rest, p)
            out.append((p, e))
        d += 1
    if F.deg(rest) >= 1:
        for i, (p, e) in enumerate(out):
            if p == rest:
                out[i] = (p, e + 1)
                break
        else:
            out.append((rest, 1))
    return sorted(out, key=lambda pe: (len(pe[0]), pe[0][::-1]))


def mobius(F: Fq, m) -> int:
    if not m or not is_monic(F, m):
        raise AlgebraError("mobius needs a nonzero monic polynomial")
    if m == (1,):
        return 1
    fac = factor_monic(F, m)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


@dataclass(frozen=True)
class Ideal:
    """A nonzero ideal of A, stored by its monic generator."""

    q: int
    gen: tuple

    @classmethod
    def parse(cls, q: int, s: str):
        F = field(q)
        g = F.parse(s)
        if not g:
            raise AlgebraError("zero ideal")
        return cls(q, F.pmonic(g))

    @property
    def F(self) -> Fq:
        return field(self.q)

    @property
    def degree(self):
        return len(self.gen) - 1

    @property
    def norm(self):
        return self.q ** self.degree

    @property
    def factorization(self):
        if self.gen == (1,):
            return []
        return factor_monic(self.F, self.gen)

    @property
    def primes(self):
        return [p for p, _ in self.factorization]

    @property
    def squarefree(self):
        return all(e == 1 for _, e in self.factorization)

    def divisors(self):
        """Monic divisors, ordered by degree then coefficients."""
        F = self.F
        fac = self.factorization
        out = []
        for exps in product(*[range(e + 1) for _, e in fac]):
            d = (1,)
            for (p, _), e in zip(fac, exps):
                d = F.pmul(d, F.ppow(p, e))
            out.append(d)
        return sorted(out, key=lambda d: (len(d), d[::-1]))

    def contains(self, a):
        return not self.F.pmod(a, self.gen)

    def __str__(self):
        return self.F.fmt(self.gen)


def divisor_sum_mobius(F: Fq, I: Ideal) -> int:
    return sum(mobius(F, d) for d in I.divisors())


def pgcd(F, a, b):
    return F.pgcd(a, b)


def plcm(F, a, b):
    g = F.pgcd(a, b)
    return F.pmonic(F.pdivmod(F.pmul(a, b), g)[0])


# --- K = F_q(T) ------------------------------------------------------------

class KElt:
    """An element num/den of K = F_q(T), reduced with monic denominator."""

    __slots__ = ("F", "num", "den")

    def __init__(self, F: Fq, num, den=(1,)):
        num, den = F.trim(num), F.trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator in K")
        if not num:
            self.F, self.num, self.den = F, (), (1,)
            return
        g = F.pgcd(num, den)
        if g != (1,):
            num = F.pdivmod(num, g)[0]
            den = F.pdivmod(den, g)[0]
        c = F.inv(den[-1])
        self.F, self.num, self.den = F, F.pscale(c, num), F.pscale(c, den)

    @classmethod
    def from_poly(cls, F, a):
        return cls(F, a)

    @classmethod
    def pi_power(cls, F, k: int):
        """pi^k = T^(-k)."""
        mono = tuple([0] * abs(k) + [1])
        return cls(F, (1,), mono) if k > 0 else cls(F, mono)

    @classmethod
    def from_tail(cls, F, tail):
        """sum a_j pi^j for a tail {(j, a_j)}."""
        if not tail:
            return cls(F, ())
        shift = max(0, max(j for j, _ in tail))
        num = [0] * (shift - min(0, min(j for j, _ in tail)) + 1)
        for j, a in tail:
            num[shift - j] = F.add(num[shift - j], a)
        return cls(F, F.trim(num), tuple([0] * shift + [1]))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, o):
        return isinstance(o, KElt) and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, o):
        F = self.F
        if self.den == o.den:
            return KElt(F, F.padd(self.num, o.num), self.den)
        return KElt(F, F.padd(F.pmul(self.num, o.den), F.pmul(o.num, self.den)), F.pmul(self.den, o.den))

    def __neg__(self):
        return KElt(self.F, self.F.pneg(self.num), self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        F = self.F
        return KElt(F, F.pmul(self.num, o.num), F.pmul(self.den, o.den))

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of 0 in K")
        return KElt(self.F, self.den, self.num)

    def __truediv__(self, o):
        return self * o.inverse()

    def ord(self):
        """ord_inf = deg(den) - deg(num); +inf for 0."""
        if not self.num:
            return float("inf")
        return len(self.den) - len(self.num)

    def is_poly(self):
        return self.den == (1,)

    def expansion(self, upto: int):
        """{j: a_j} with self = sum_j a_j pi^j, for ord <= j < upto (nonzero a_j only)."""
        F = self.F
        v = self.ord()
        if v >= upto:
            return {}
        n = upto - v
        # self = pi^v * N(pi)/D(pi) where N, D are the reversed polynomials
        N = list(reversed(self.num))
        D = list(reversed(self.den))
        inv0 = F.inv(D[0])
        rem = N + [0] * max(0, n - len(N))
        out = {}
        for i in range(n):
            c = F.mul(rem[i], inv0) if rem[i] else 0
            if c:
                out[v + i] = c
                row = F.mul_t[c]
                for j in range(1, len(D)):
                    if i + j < len(rem) and D[j]:
                        rem[i + j] = F.sub(rem[i + j], row[D[j]])
        return out

    def __repr__(self):
        F = self.F
        if self.den == (1,):
            return F.fmt(self.num)
        return f"({F.fmt(self.num)})/({F.fmt(self.den)})"


def tail_from_expansion(exp: dict):
    return tuple(sorted(exp.items()))


# --- divisors of K ------------------------------------------------------------

@dataclass(frozen=True)
class Divisor:
    """Non-negative divisor div(m) * inf^d with m monic."""

    q: int
    m: tuple
    d: int = 0

    def __post_init__(self):
        if not is_monic(field(self.q), self.m) or self.d < 0:
            raise AlgebraError("divisor needs monic finite part and d >= 0")

    @property
    def degree(self):
        return len(self.m) - 1 + self.d

    @property
    def norm(self):
        return self.q ** self.degree

    def __mul__(self, o):
        F = field(self.q)
        return Divisor(self.q, F.pmul(self.m, o.m), self.d + o.d)

    def coprime(self, o):
        F = field(self.q)
        if self.d and o.d:
            return False
        return F.pgcd(self.m, o.m) == (1,)

    def finite(self):
        return Divisor(self.q, self.m, 0)

    def __str__(self):
        F = field(self.q)
        s = f"({F.fmt(self.m)})"
        return s + (f"*inf^{self.d}" if self.d else "")


def divisors_of_degree(q: int, deg: int):
    F = field(q)
    for dm in range(deg + 1):
        for m in F.monics(dm):
            yield Divisor(q, m, deg - dm)


# --- zeta factors in x = q^(-s) -----------------------------------------------

def zeta_family(kind: str, q: int, I: Ideal = None, a: int = 1, b: int = 0) -> RatX:
    """The zeta factor at s -> a*s + b as a rational function of x = q^(-s).

    kind: "zeta"  zeta(s) = 1/(1 - q^(1-s))
          "zeta_I" zeta(s) * prod_{P | I} (1 - |P|^(-s))
          "L_infinity" L_inf(s) = 1/(1 - q^s)
    q^(a s + b) is q^b * x^(-a).
    """
    def qpow(c, e):  # q^(c*(a s + b)) as RatX
        return RatX.monomial(-c * a, Fraction(q) ** (c * b))

    if kind == "zeta":
        return RatX.const(1) / (RatX.const(1) - qpow(-1, 0) * q)
    if kind == "L_infinity":
        return RatX.const(1) / (RatX.const(1) - qpow(1, 0))
    if kind == "zeta_I":
        if I is None:
            raise AlgebraError("zeta_I needs the ideal I")
        out = zeta_family("zeta", q, a=a, b=b)
        for p in I.primes:
            dp = len(p) - 1
            out = out * (RatX.const(1) - qpow(-dp, 0))
        return out
    raise AlgebraError(f"unknown zeta kind {kind!r}")
