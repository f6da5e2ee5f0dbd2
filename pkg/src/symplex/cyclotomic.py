"""Exact arithmetic in cyclotomic fields Q(zeta_e).

Elements are polynomials in zeta_e reduced modulo the e-th cyclotomic
polynomial, with Fraction coefficients.  One shared :class:`CyclotomicField`
instance per conductor e caches the reduction table, so element operations
stay cheap inside elimination loops.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache


def _poly_divmod_int(num, den):
    """Exact division of integer polynomials (lists, low degree first)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c, r = divmod(num[k + len(den) - 1], den[-1])
        assert r == 0, "non-exact cyclotomic polynomial division"
        q[k] = c
        for i, d in enumerate(den):
            num[k + i] -= c * d
    assert all(c == 0 for c in num), "non-zero remainder in cyclotomic division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e):
    """Integer coefficients of the e-th cyclotomic polynomial, low degree first."""
    if e == 1:
        return (-1, 1)
    poly = [-1] + [0] * (e - 1) + [1]  # x^e - 1
    for d in range(1, e):
        if e % d == 0:
            poly = _poly_divmod_int(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class CyclotomicField:
    """The field Q(zeta_e) with cached power-reduction data."""

    _instances = {}

    def __new__(cls, e):
        inst = cls._instances.get(e)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(e)
            cls._instances[e] = inst
        return inst

    def _init(self, e):
        self.e = e
        phi = cyclotomic_polynomial(e)
        self.degree = len(phi) - 1
        d = self.degree
        # rep[k] = coefficients of x^k reduced mod Phi_e, for k up to the
        # largest exponent produced by products and conjugation.
        top = max(2 * d - 2, e - 1, d)
        rep = [tuple(Fraction(1) if i == k else Fraction(0) for i in range(d))
               for k in range(d)]
        lead = Fraction(phi[d])
        reduced_top = tuple(Fraction(-phi[i]) / lead for i in range(d))
        for k in range(d, top + 1):
            prev = rep[k - 1]
            shifted = (Fraction(0),) + prev[: d - 1]
            overflow = prev[d - 1]
            if overflow:
                shifted = tuple(s + overflow * c for s, c in zip(shifted, reduced_top))
            rep.append(shifted)
        self._rep = rep
        self.zero = Cyclotomic(self, (Fraction(0),) * d)
        self.one = Cyclotomic(self, tuple(Fraction(1) if i == 0 else Fraction(0)
                                          for i in range(d)))

    def from_rational(self, q):
        q = Fraction(q)
        c = (q,) + (Fraction(0),) * (self.degree - 1)
        return Cyclotomic(self, c)

    def zeta_power(self, k):
        return Cyclotomic(self, self._rep[k % self.e])

    def from_coeffs(self, coeffs):
        c = tuple(Fraction(x) for x in coeffs)
        assert len(c) == self.degree
        return Cyclotomic(self, c)

    def __repr__(self):
        return f"CyclotomicField({self.e})"


class Cyclotomic:
    """An element of Q(zeta_e); immutable."""

    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        self.field = field
        self.c = coeffs

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.field is not self.field:
                raise ValueError("mixed cyclotomic fields; embed explicitly")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.field, tuple(b - a for a, b in zip(self.c, o.c)))

    def __neg__(self):
        return Cyclotomic(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.c, o.c
        d = self.field.degree
        if d == 1:
            return Cyclotomic(self.field, (a[0] * b[0],))
        conv = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
        rep = self.field._rep
        out = list(conv[:d])
        for k in range(d, 2 * d - 1):
            ck = conv[k]
            if ck:
                rk = rep[k]
                for i in range(d):
                    if rk[i]:
                        out[i] += ck * rk[i]
        return Cyclotomic(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("cyclotomic division by zero")
        d = self.field.degree
        if d == 1:
            return Cyclotomic(self.field, (1 / self.c[0],))
        # Extended Euclid for gcd(self, Phi_e) = 1 over Q[x].
        phi = [Fraction(x) for x in cyclotomic_polynomial(self.field.e)]
        r0, r1 = phi, list(self.c)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                inv = 1 / r1[0]
                coeffs = [x * inv for x in s1]
                coeffs += [Fraction(0)] * (d - len(coeffs))
                return Cyclotomic(self.field, tuple(coeffs[:d]))
            q, rem = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def conjugate(self):
        """Complex conjugation: zeta -> zeta^{-1}."""
        f = self.field
        d = f.degree
        out = [Fraction(0)] * d
        out[0] = self.c[0]
        for k in range(1, d):
            ck = self.c[k]
            if ck:
                rk = f._rep[(f.e - k) % f.e]
                for i in range(d):
                    if rk[i]:
                        out[i] += ck * rk[i]
        return Cyclotomic(f, tuple(out))

    def embed(self, target):
        """Image in Q(zeta_E) for e | E."""
        if target is self.field:
            return self
        assert target.e % self.field.e == 0
        step = target.e // self.field.e
        out = target.zero
        for k, ck in enumerate(self.c):
            if ck:
                out = out + target.zeta_power(k * step) * ck
        return out

    def is_rational(self):
        return all(not x for x in self.c[1:])

    def rational_part(self):
        """The element as a Fraction, or None if it is irrational."""
        if self.is_rational():
            return self.c[0]
        return None

    def to_complex(self):
        z = cmath.exp(2j * cmath.pi / self.field.e)
        total = 0j
        for k, ck in enumerate(self.c):
            if ck:
                total += float(ck) * z ** k
        return total

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        if isinstance(other, Cyclotomic):
            return self.field is other.field and self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash((self.field.e, self.c))

    def __repr__(self):
        e = self.field.e
        parts = []
        for k, ck in enumerate(self.c):
            if ck:
                parts.append(f"{ck}" if k == 0 else f"{ck}*z{e}^{k}")
        return " + ".join(parts) if parts else "0"


def _poly_divmod_frac(num, den):
    num = list(num)
    dn = len(den)
    while den and not den[-1]:
        den = den[:-1]
        dn -= 1
    q = [Fraction(0)] * max(len(num) - dn + 1, 0)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + dn - 1] / den[-1]
        q[k] = c
        if c:
            for i in range(dn):
                num[k + i] -= c * den[i]
    while num and not num[-1]:
        num.pop()
    return q, num


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]
