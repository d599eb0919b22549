"""Finite fields F_q (q <= 9) and dense polynomials over them.

Field elements are small ints 0..q-1: the base-p digits of an int are the
coefficients of a polynomial over F_p reduced modulo a fixed irreducible.
Polynomials over F_q are tuples of such ints, lowest degree first, with no
trailing zeros (the zero polynomial is the empty tuple).
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

# modulus for F_{p^n}, low coefficient first, monic of degree n
_IRREDUCIBLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
}

_PRIME_POWERS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}


class FieldError(ValueError):
    pass


class Fq:
    """The field with q elements together with polynomial arithmetic over it."""

    def __init__(self, q: int):
        if q not in _PRIME_POWERS:
            raise FieldError(f"unsupported q={q}; expected a prime power <= 9")
        self.q = q
        self.p, self.n = _PRIME_POWERS[q]
        p, n = self.p, self.n
        modulus = _IRREDUCIBLE.get((p, n), (0, 1))

        def digits(a):
            return [(a // p**i) % p for i in range(n)]

        def undigits(ds):
            return sum(d * p**i for i, d in enumerate(ds))

        self.add_t = [[undigits([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q)] for a in range(q)]
        self.neg_t = [undigits([(-x) % p for x in digits(a)]) for a in range(q)]
        mul_t = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(q):
                da, db = digits(a), digits(b)
                prod = [0] * (2 * n - 1)
                for i, x in enumerate(da):
                    for j, y in enumerate(db):
                        prod[i + j] = (prod[i + j] + x * y) % p
                for top in range(2 * n - 2, n - 1, -1):
                    c = prod[top]
                    if c:
                        for i in range(n + 1):
                            prod[top - n + i] = (prod[top - n + i] - c * modulus[i]) % p
                mul_t[a][b] = undigits(prod[:n])
        self.mul_t = mul_t
        self.inv_t = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul_t[a][b] == 1:
                    self.inv_t[a] = b
        self.sub_t = [[self.add_t[a][self.neg_t[b]] for b in range(q)] for a in range(q)]
        # absolute trace F_q -> F_p, returned as an int in 0..p-1
        self.trace_t = []
        for a in range(q):
            t, x = 0, a
            for _ in range(n):
                t = self.add_t[t][x]
                x = self.pow(x, p)
            self.trace_t.append(t)
        self.units = list(range(1, q))
        self.generator = next(g for g in self.units if len({self.pow(g, i) for i in range(q - 1)}) == q - 1)

    def __repr__(self):
        return f"Fq({self.q})"

    def __eq__(self, other):
        return isinstance(other, Fq) and other.q == self.q

    def __hash__(self):
        return hash(("Fq", self.q))

    # --- scalars -----------------------------------------------------------
    def add(self, a, b):
        return self.add_t[a][b]

    def sub(self, a, b):
        return self.sub_t[a][b]

    def mul(self, a, b):
        return self.mul_t[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self.inv_t[a]

    def neg(self, a):
        return self.neg_t[a]

    def pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul_t[r][a]
        return r

    def frobenius(self, a):
        return self.pow(a, self.p)

    def trace(self, a):
        return self.trace_t[a]

    def from_int(self, c: int):
        """Embed an integer (prime-field element)."""
        return c % self.p

    # --- polynomials over F_q -------------------------------------------
    @staticmethod
    def trim(c):
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    @staticmethod
    def deg(a):
        return len(a) - 1 if a else -1

    def padd(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        add = self.add_t
        out = list(a)
        for i, y in enumerate(b):
            out[i] = add[out[i]][y]
        return self.trim(out)

    def pneg(self, a):
        return tuple(self.neg_t[x] for x in a)

    def psub(self, a, b):
        return self.padd(a, self.pneg(b))

    def pscale(self, c, a):
        if c == 0:
            return ()
        mul = self.mul_t[c]
        return tuple(mul[x] for x in a)

    def pmul(self, a, b):
        if not a or not b:
            return ()
        mul, add = self.mul_t, self.add_t
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                row = mul[x]
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add[out[i + j]][row[y]]
        return self.trim(out)

    def pdivmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        if len(a) < len(b):
            return (), a
        mul, sub = self.mul_t, self.sub_t
        r = list(a)
        lead_inv = self.inv_t[b[-1]]
        db = len(b) - 1
        quo = [0] * (len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i]
            if c:
                c = mul[c][lead_inv]
                quo[i - db] = c
                row = mul[c]
                for j, y in enumerate(b):
                    r[i - db + j] = sub[r[i - db + j]][row[y]]
        return self.trim(quo), self.trim(r[:db])

    def pmod(self, a, b):
        return self.pdivmod(a, b)[1]

    def pmonic(self, a):
        if not a:
            return a
        return self.pscale(self.inv_t[a[-1]], a)

    def pgcd(self, a, b):
        while b:
            a, b = b, self.pmod(a, b)
        return self.pmonic(a)

    def pxgcd(self, a, b):
        """Return (g, s, t) with s*a + t*b = g monic."""
        r0, r1 = a, b
        s0, s1 = (1,), ()
        t0, t1 = (), (1,)
        while r1:
            qt, r = self.pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.psub(s0, self.pmul(qt, s1))
            t0, t1 = t1, self.psub(t0, self.pmul(qt, t1))
        if not r0:
            return (), (), ()
        c = self.inv_t[r0[-1]]
        return self.pscale(c, r0), self.pscale(c, s0), self.pscale(c, t0)

    def ppow(self, a, e):
        r = (1,)
        for _ in range(e):
            r = self.pmul(r, a)
        return r

    def pinv_mod(self, a, m):
        g, s, _ = self.pxgcd(self.pmod(a, m), m)
        if g != (1,):
            raise ZeroDivisionError("not invertible modulo m")
        return self.pmod(s, m)

    def monics(self, d):
        """All monic polynomials of degree d, in a fixed order."""
        for low in product(range(self.q), repeat=d):
            yield tuple(low) + (1,)

    def polys_below(self, d):
        """All polynomials of degree < d (including 0)."""
        for c in product(range(self.q), repeat=d):
            yield self.trim(c)

    def abs(self, a):
        """|a| = q^deg(a) for nonzero a in A."""
        return self.q ** self.deg(a)

    # --- parsing / printing ---------------------------------------------
    def fmt(self, a, var="T"):
        if not a:
            return "0"
        terms = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = var if i == 1 else f"{var}^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms)

    def parse(self, s: str, var="T"):
        """Parse e.g. "T^3+T+1" or "2*T^2+1"; coefficients are field ints."""
        s = s.replace(" ", "")
        if s in ("", "0"):
            return ()
        if s.startswith("-"):
            s = "0" + s
        out = ()
        for chunk in _split_terms(s):
            sign, term = chunk
            c, e = _parse_term(term, var)
            if not 0 <= c < self.q:
                raise FieldError(f"coefficient {c} outside 0..{self.q - 1}")
            mono = self.pscale(c, tuple([0] * e + [1]))
            out = self.psub(out, mono) if sign < 0 else self.padd(out, mono)
        return out


def _split_terms(s):
    out, cur, sign = [], "", 1
    for ch in s:
        if ch in "+-":
            if cur:
                out.append((sign, cur))
            cur, sign = "", (1 if ch == "+" else -1)
        else:
            cur += ch
    if cur:
        out.append((sign, cur))
    return out


def _parse_term(term, var):
    if var not in term:
        return int(term), 0
    coef, _, mono = term.partition(var)
    coef = coef.rstrip("*")
    c = int(coef) if coef else 1
    if mono.startswith("^"):
        return c, int(mono[1:])
    if mono:
        raise FieldError(f"cannot parse term {term!r}")
    return c, 1


@lru_cache(maxsize=None)
def field(q: int) -> Fq:
    return Fq(q)
