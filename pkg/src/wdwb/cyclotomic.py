"""Arithmetic in the cyclotomic field Q(zeta_m).

Elements are tuples of :class:`fractions.Fraction` of length phi(m), the
coordinates in the power basis 1, z, ..., z^(phi(m)-1) where z = zeta_m.
The field object owns the reduction tables; elements are plain tuples so
that the hot loops in :mod:`wdwb.scalars` stay cheap.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // lead
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    p = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p = _poly_divexact(p, list(cyclotomic_polynomial(d)))
    return tuple(p)


@lru_cache(maxsize=None)
def field(m: int) -> "CyclotomicField":
    return CyclotomicField(m)


class CyclotomicField:
    """The field Q(zeta_m) with canonical power-basis coordinates."""

    def __init__(self, m: int):
        self.m = m
        self.phi_poly = cyclotomic_polynomial(m)
        self.degree = len(self.phi_poly) - 1
        n = self.degree
        # z^k in the power basis for 0 <= k < max(m, 2n-1)
        table = []
        cur = [_ZERO] * n
        cur[0] = _ONE
        for _ in range(max(m, 2 * n - 1)):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [_ZERO] + cur[:-1]
            if top:
                for j in range(n):
                    cur[j] -= top * self.phi_poly[j]
        self._pow = table
        # roots of unity in Q(zeta_m): generated by z (m even) or -z (m odd)
        self.root_order = m if m % 2 == 0 else 2 * m
        gen = self._pow[1 % m] if n > 0 else (_ONE,)
        if m % 2:
            gen = self.neg(gen)
        roots = []
        cur = self.one
        for _ in range(self.root_order):
            roots.append(cur)
            cur = self.mul(cur, gen)
        self._roots = roots
        self._root_index = {r: k for k, r in enumerate(roots)}
        self._units = [j for j in range(1, m) if gcd(j, m) == 1] or [1]

    def __repr__(self):
        return f"CyclotomicField({self.m})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.m == self.m

    def __hash__(self):
        return hash(("cyclotomic", self.m))

    # constructors

    @property
    def zero(self) -> tuple:
        return (_ZERO,) * self.degree

    @property
    def one(self) -> tuple:
        return (_ONE,) + (_ZERO,) * (self.degree - 1)

    def rational(self, r) -> tuple:
        return (Fraction(r),) + (_ZERO,) * (self.degree - 1)

    def zeta_power(self, k: int) -> tuple:
        """zeta_m^k."""
        return self._pow[k % self.m]

    def root(self, k: int) -> tuple:
        """The k-th power of the generator of the roots of unity in the field."""
        return self._roots[k % self.root_order]

    # predicates

    @staticmethod
    def is_zero(a) -> bool:
        return not any(a)

    @staticmethod
    def is_rational(a) -> bool:
        return not any(a[1:])

    def root_index(self, a):
        """k with a == root(k), or None if a is not a root of unity."""
        return self._root_index.get(tuple(a))

    # arithmetic

    @staticmethod
    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    @staticmethod
    def sub(a, b):
        return tuple(x - y for x, y in zip(a, b))

    @staticmethod
    def neg(a):
        return tuple(-x for x in a)

    @staticmethod
    def scale(a, r):
        return tuple(x * r for x in a)

    def mul(self, a, b):
        n = self.degree
        if not any(a[1:]):
            r = a[0]
            return tuple(x * r for x in b)
        if not any(b[1:]):
            r = b[0]
            return tuple(x * r for x in a)
        prod = [_ZERO] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                red = self._pow[k]
                for j in range(n):
                    if red[j]:
                        out[j] += c * red[j]
        return tuple(out)

    def galois(self, a, j: int):
        """The automorphism zeta -> zeta^j applied to a (j coprime to m)."""
        out = [_ZERO] * self.degree
        for k, c in enumerate(a):
            if c:
                img = self._pow[(k * j) % self.m]
                for t in range(self.degree):
                    if img[t]:
                        out[t] += c * img[t]
        return tuple(out)

    def conj(self, a):
        return self.galois(a, -1 % self.m if self.m > 1 else 1)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if not any(a[1:]):
            return (1 / a[0],) + a[1:]
        rest = self.one
        for j in self._units:
            if j != 1:
                rest = self.mul(rest, self.galois(a, j))
        norm = self.mul(a, rest)
        assert not any(norm[1:]), "norm must be rational"
        return self.scale(rest, 1 / norm[0])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        out = self.one
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def sqrt(self, a):
        """An exact square root inside the field, or None.

        Only handles a = r * (root of unity) with r a rational square, which covers
        every Gram value produced from monomial eigenvectors.
        """
        if not any(a):
            return a
        for k, root in enumerate(self._roots):
            ratio = self.div(a, root)
            if not any(ratio[1:]):
                r = ratio[0]
                if k % 2 and self.root_order % 2 == 0:
                    continue
                s = _rational_sqrt(r)
                if s is None:
                    continue
                half = self.root(k // 2) if k % 2 == 0 else None
                if half is None:
                    continue
                return self.scale(half, s)
        return None


def _rational_sqrt(r: Fraction):
    from math import isqrt

    if r < 0:
        return None
    n, d = r.numerator, r.denominator
    sn, sd = isqrt(n), isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None
