"""Exact scalars: finite sums of c_e * q^e with c_e in Q(zeta_m) and e rational.

q is a formal transcendental, never given a numeric value.  The cyclotomic
order m and the bound on exponent denominators are fixed by the active
:class:`Session`; mixing scalars of different sessions raises
:class:`~wdwb.errors.OrderMismatch`.

:class:`RatFunc` is the field of fractions of the Scalar ring.  Linear algebra
runs over it and converts back to :class:`Scalar` at the boundary.
"""

from __future__ import annotations

import contextlib
import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cyclotomic import CyclotomicField, field
from .errors import NotInvertible, NotRepresentable, OrderMismatch, ParseError


@dataclass(frozen=True)
class Session:
    m: int = 4
    denominator_bound: int = 2

    @property
    def field(self) -> CyclotomicField:
        return field(self.m)


_current = Session()


def current_session() -> Session:
    return _current


def set_session(m: int = 4, denominator_bound: int = 2) -> Session:
    global _current
    if m < 1 or denominator_bound < 1:
        raise ValueError("cyclotomic order and denominator bound must be positive")
    _current = Session(m, denominator_bound)
    return _current


@contextlib.contextmanager
def session(m: int = 4, denominator_bound: int = 2):
    global _current
    prev = _current
    set_session(m, denominator_bound)
    try:
        yield _current
    finally:
        _current = prev


def _check_exponent(e: Fraction, sess: Session) -> Fraction:
    e = Fraction(e)
    if sess.denominator_bound % e.denominator:
        raise OrderMismatch(
            f"exponent {e} has denominator outside the session bound {sess.denominator_bound}"
        )
    return e


_ONES: dict = {}


class Scalar:
    """An immutable element of Q(zeta_m)[q^(1/D), q^(-1/D)]."""

    __slots__ = ("_terms", "_session", "_hash")

    def __init__(self, terms=None, sess: Session | None = None, _checked=False):
        sess = sess or _current
        self._session = sess
        if terms is None:
            self._terms = {}
        elif _checked:
            self._terms = terms
        else:
            F = sess.field
            clean = {}
            for e, c in terms.items():
                e = _check_exponent(e, sess)
                c = tuple(Fraction(x) for x in c)
                if len(c) != F.degree:
                    raise OrderMismatch("coefficient length does not match the cyclotomic degree")
                if any(c):
                    clean[e] = c
            self._terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, sess=None) -> Scalar:
        return cls({}, sess, _checked=True)

    @classmethod
    def one(cls, sess=None) -> Scalar:
        sess = sess or _current
        cached = _ONES.get(sess)
        if cached is None:
            cached = _ONES[sess] = cls.rational(1, sess)
        return cached

    @classmethod
    def rational(cls, r, sess=None) -> Scalar:
        sess = sess or _current
        r = Fraction(r)
        if not r:
            return cls.zero(sess)
        return cls({Fraction(0): sess.field.rational(r)}, sess, _checked=True)

    @classmethod
    def from_cyclo(cls, c, e=0, sess=None) -> Scalar:
        sess = sess or _current
        e = _check_exponent(e, sess)
        if not any(c):
            return cls.zero(sess)
        return cls({e: tuple(c)}, sess, _checked=True)

    @classmethod
    def zeta(cls, order: int, k: int = 1, sess=None) -> Scalar:
        """zeta_order^k, requiring order | m."""
        sess = sess or _current
        if sess.m % order:
            raise OrderMismatch(f"zeta_{order} is not in Q(zeta_{sess.m})")
        return cls.from_cyclo(sess.field.zeta_power(k * (sess.m // order)), 0, sess)

    @classmethod
    def q(cls, e=1, sess=None) -> Scalar:
        sess = sess or _current
        return cls.from_cyclo(sess.field.one, Fraction(e), sess)

    @classmethod
    def coerce(cls, x, sess=None) -> Scalar:
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x, sess)
        if isinstance(x, str):
            return parse_scalar(x, sess)
        raise TypeError(f"cannot interpret {x!r} as a Scalar")

    # accessors

    @property
    def session(self) -> Session:
        return self._session

    @property
    def field(self) -> CyclotomicField:
        return self._session.field

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def exponents(self) -> list[Fraction]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        """True when the scalar lies in Q(zeta_m) (no q-dependence)."""
        return not self._terms or set(self._terms) == {Fraction(0)}

    def constant(self):
        return self._terms.get(Fraction(0), self.field.zero)

    def is_rational(self) -> bool:
        return self.is_constant() and self.field.is_rational(self.constant())

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.constant()[0]

    # arithmetic

    def _other(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other._session.m != self._session.m:
                raise OrderMismatch("scalars from different cyclotomic orders")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.rational(other, self._session)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        F = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            if e in out:
                s = F.add(out[e], c)
                if any(s):
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return Scalar(out, self._session, _checked=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Scalar({e: F.neg(c) for e, c in self._terms.items()}, self._session, _checked=True)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return Scalar.zero(self._session)
        F = self.field
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                p = F.mul(c1, c2)
                if e in out:
                    s = F.add(out[e], p)
                    if any(s):
                        out[e] = s
                    else:
                        del out[e]
                elif any(p):
                    out[e] = p
        return Scalar(out, self._session, _checked=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar.one(self._session)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> Scalar:
        """Inverse of a single-term scalar; anything else raises NotInvertible."""
        if not self._terms:
            raise NotInvertible("inverse of zero")
        if len(self._terms) != 1:
            raise NotInvertible(f"{self} has several terms and is not a unit")
        ((e, c),) = self._terms.items()
        return Scalar({-e: self.field.inv(c)}, self._session, _checked=True)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def conj(self) -> Scalar:
        """Complex conjugation: zeta -> zeta^-1, q fixed."""
        F = self.field
        return Scalar({e: F.conj(c) for e, c in self._terms.items()}, self._session, _checked=True)

    def scale_exponents(self, k) -> Scalar:
        """Substitute q -> q^k (k rational)."""
        return Scalar({e * k: c for e, c in self._terms.items()}, self._session)

    # comparison

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.rational(other, self._session)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._session.m == other._session.m and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Scalar({render_scalar(self)!r})"

    def __str__(self):
        return render_scalar(self)

    # monomials

    def as_monomial(self) -> Monomial | None:
        """The (root of unity) * q^e factorisation, or None if the scalar is not of that form."""
        if len(self._terms) != 1:
            return None
        ((e, c),) = self._terms.items()
        k = self.field.root_index(c)
        if k is None:
            return None
        return Monomial(k, e, self._session)

    def is_monomial(self) -> bool:
        return self.as_monomial() is not None


@dataclass(frozen=True)
class Monomial:
    """zeta * q^exponent where zeta = root(k) is a root of unity in the session field."""

    k: int
    exponent: Fraction
    session: Session = None

    def __post_init__(self):
        sess = self.session or _current
        object.__setattr__(self, "session", sess)
        object.__setattr__(self, "k", self.k % sess.field.root_order)
        object.__setattr__(self, "exponent", Fraction(self.exponent))

    @classmethod
    def from_scalar(cls, s: Scalar) -> Monomial:
        m = s.as_monomial()
        if m is None:
            raise ValueError(f"{s} is not a monomial")
        return m

    @property
    def root_order(self) -> int:
        """Multiplicative order of the root-of-unity part."""
        from math import gcd

        w = self.session.field.root_order
        return w // gcd(w, self.k)

    def to_scalar(self) -> Scalar:
        return Scalar.from_cyclo(self.session.field.root(self.k), self.exponent, self.session)

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self.k + other.k, self.exponent + other.exponent, self.session)

    def __pow__(self, j: int) -> Monomial:
        return Monomial(self.k * j, self.exponent * j, self.session)

    def inverse(self) -> Monomial:
        return Monomial(-self.k, -self.exponent, self.session)

    @property
    def elliptic(self) -> Monomial:
        return Monomial(self.k, 0, self.session)

    @property
    def hyperbolic(self) -> Monomial:
        return Monomial(0, self.exponent, self.session)

    def sort_key(self):
        return (self.exponent, self.k)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return render_scalar(self.to_scalar())


# ---------------------------------------------------------------------------
# text grammar

def _fmt_fraction(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def render_scalar(s: Scalar) -> str:
    """Canonical text: terms by descending exponent, then by power-basis index."""
    if not s._terms:
        return "0"
    m = s.session.m
    pieces = []
    for e in sorted(s._terms, reverse=True):
        c = s._terms[e]
        for k, coef in enumerate(c):
            if not coef:
                continue
            factors = []
            if k:
                factors.append(f"z{m}^{k}")
            if e:
                if e == 1:
                    factors.append("q")
                elif e.denominator == 1:
                    factors.append(f"q^({e.numerator})")
                else:
                    factors.append(f"q^({e.numerator}/{e.denominator})")
            mag = abs(coef)
            if factors and mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_fmt_fraction(mag)] + factors)
            pieces.append((coef < 0, body))
    out = []
    for i, (neg, body) in enumerate(pieces):
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<z>z)|(?P<q>q)|(?P<op>[-+*/^()]))")


class _Parser:
    def __init__(self, text: str, sess: Session):
        self.text = text
        self.sess = sess
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            mt = _TOKEN.match(text, pos)
            if not mt or mt.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            kind = mt.lastgroup
            start = mt.start(kind)
            self.tokens.append((kind, mt.group(kind), start))
            pos = mt.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise ParseError(f"expected {want}", tok[2])
        self.i += 1
        return tok

    def at(self, kind, value=None):
        tok = self.peek()
        return tok[0] == kind and (value is None or tok[1] == value)

    def parse(self) -> Scalar:
        if not self.tokens:
            raise ParseError("empty scalar", 0)
        total = Scalar.zero(self.sess)
        sign = 1
        if self.at("op", "-") or self.at("op", "+"):
            sign = -1 if self.take()[1] == "-" else 1
        total = total + self.term() * sign
        while self.i < len(self.tokens):
            if self.at("op", "+") or self.at("op", "-"):
                sign = -1 if self.take()[1] == "-" else 1
                total = total + self.term() * sign
            else:
                raise ParseError("expected '+' or '-'", self.peek()[2])
        return total

    def signed_int(self) -> int:
        sign = 1
        if self.at("op", "-"):
            self.take()
            sign = -1
        elif self.at("op", "+"):
            self.take()
        return sign * int(self.take("num")[1])

    def exponent(self) -> Fraction:
        if self.at("op", "("):
            self.take()
            num = self.signed_int()
            den = 1
            if self.at("op", "/"):
                self.take()
                den = int(self.take("num")[1])
                if den == 0:
                    raise ParseError("zero denominator", self.peek()[2])
            self.take("op", ")")
            return Fraction(num, den)
        return Fraction(self.signed_int())

    def factor(self) -> Scalar:
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            r = Fraction(int(value))
            if self.at("op", "/"):
                self.take()
                den = int(self.take("num")[1])
                if den == 0:
                    raise ParseError("zero denominator", pos)
                r /= den
            return Scalar.rational(r, self.sess)
        if kind == "z":
            self.take()
            order = int(self.take("num")[1])
            k = 1
            if self.at("op", "^"):
                self.take()
                k = self.exponent()
                if k.denominator != 1:
                    raise ParseError("root-of-unity power must be an integer", pos)
                k = int(k)
            if order == 0:
                raise ParseError("zero cyclotomic order", pos)
            return Scalar.zeta(order, k, self.sess)
        if kind == "q":
            self.take()
            e = Fraction(1)
            if self.at("op", "^"):
                self.take()
                e = self.exponent()
            return Scalar.q(e, self.sess)
        if kind == "op" and value == "(":
            self.take()
            inner = self.sub_expression()
            self.take("op", ")")
            return inner
        raise ParseError("expected a coefficient, zM^k or q^e", pos)

    def sub_expression(self) -> Scalar:
        total = Scalar.zero(self.sess)
        sign = 1
        if self.at("op", "-") or self.at("op", "+"):
            sign = -1 if self.take()[1] == "-" else 1
        total = total + self.term() * sign
        while self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            total = total + self.term() * sign
        return total

    def term(self) -> Scalar:
        out = self.factor()
        while self.at("op", "*"):
            self.take()
            out = out * self.factor()
        return out


def parse_scalar(text: str, sess: Session | None = None) -> Scalar:
    """Parse the text grammar ``coef [* zM^k] [* q^(a/b)]`` joined by + and -."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}", 0)
    return _Parser(text, sess or _current).parse()


# ---------------------------------------------------------------------------
# Laurent polynomial view: s = t^shift * sum c_i t^i with t = q^(1/D)

def _to_poly(s: Scalar):
    D = s.session.denominator_bound
    ints = {int(e * D): c for e, c in s._terms.items()}
    lo, hi = min(ints), max(ints)
    zero = s.field.zero
    return lo, [ints.get(lo + i, zero) for i in range(hi - lo + 1)]


def _from_poly(shift: int, coeffs, sess: Session) -> Scalar:
    D = sess.denominator_bound
    return Scalar(
        {Fraction(shift + i, D): c for i, c in enumerate(coeffs) if any(c)}, sess, _checked=True
    )


def _poly_trim(p):
    while p and not any(p[-1]):
        p.pop()
    return p


def _poly_divmod(a, b, F):
    a = list(a)
    inv_lead = F.inv(b[-1])
    qt = [F.zero] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = F.mul(a[i + len(b) - 1], inv_lead)
        if not any(c):
            continue
        qt[i] = c
        for j, bj in enumerate(b):
            if any(bj):
                a[i + j] = F.sub(a[i + j], F.mul(c, bj))
    return qt, _poly_trim(a[: len(b) - 1])


def _poly_monic(p, F):
    inv = F.inv(p[-1])
    return [F.mul(c, inv) for c in p]


def laurent_gcd(a: Scalar, b: Scalar) -> Scalar:
    """Normalised gcd: a monic polynomial in q^(1/D) with nonzero constant term."""
    if a.is_zero() and b.is_zero():
        return Scalar.zero(a.session)
    F = a.field
    polys = []
    for s in (a, b):
        if not s.is_zero():
            _, p = _to_poly(s)
            polys.append(p)
    g = polys[0]
    for p in polys[1:]:
        x, y = g, p
        while y:
            _, r = _poly_divmod(x, y, F)
            x, y = y, r
        g = x
    g = _poly_monic(g, F)
    return _from_poly(0, g, a.session)


def exact_divide(a: Scalar, b: Scalar) -> Scalar:
    """a / b inside the Laurent ring; NotInvertible if b does not divide a."""
    if b.is_zero():
        raise NotInvertible("division by zero")
    if a.is_zero():
        return a
    if len(b._terms) == 1:
        return a * b.inverse()
    F = a.field
    sa, pa = _to_poly(a)
    sb, pb = _to_poly(b)
    qt, r = _poly_divmod(pa, pb, F)
    if r:
        raise NotInvertible(f"{b} does not divide {a}")
    return _from_poly(sa - sb, _poly_trim(qt), a.session)


def unit_part(s: Scalar) -> Scalar:
    """The unit c*q^e with s / unit monic in q^(1/D) with nonzero constant term."""
    e_lo = min(s._terms)
    lead = s._terms[max(s._terms)]
    return Scalar({e_lo: lead}, s.session, _checked=True)


class RatFunc:
    """Element of the fraction field of the Scalar ring, kept in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num: Scalar, den: Scalar | None = None, _reduced=False):
        if den is None or _reduced:
            self.num = num
            self.den = den if den is not None else Scalar.one(num.session)
            return
        if den.is_zero():
            raise NotInvertible("zero denominator")
        if num.is_zero():
            self.num, self.den = num, Scalar.one(num.session)
            return
        if len(den._terms) != 1:
            g = laurent_gcd(num, den)
            if len(g._terms) != 1:
                num = exact_divide(num, g)
                den = exact_divide(den, g)
        u = unit_part(den)
        uinv = u.inverse()
        self.num = num * uinv
        self.den = den * uinv

    @classmethod
    def of(cls, x) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        return cls(Scalar.coerce(x))

    @property
    def session(self):
        return self.num.session

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _trivial_den(self) -> bool:
        d = self.den._terms
        return len(d) == 1 and not next(iter(d))

    def to_scalar(self) -> Scalar:
        if self._trivial_den():
            return self.num
        raise NotRepresentable(f"({self.num})/({self.den}) is not a Laurent polynomial in q")

    def is_scalar(self) -> bool:
        return self._trivial_den()

    def __add__(self, other):
        other = RatFunc.of(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self._trivial_den() and other._trivial_den():
            return RatFunc(self.num + other.num, self.den, _reduced=True)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-RatFunc.of(other))

    def __rsub__(self, other):
        return RatFunc.of(other) + (-self)

    def __mul__(self, other):
        other = RatFunc.of(other)
        if self.is_zero() or other.is_zero():
            return RatFunc(Scalar.zero(self.session))
        if self._trivial_den() and other._trivial_den():
            return RatFunc(self.num * other.num, self.den, _reduced=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise NotInvertible("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFunc.of(other).inverse()

    def __rtruediv__(self, other):
        return RatFunc.of(other) * self.inverse()

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.of(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self._trivial_den():
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num})/({self.den}))"


def common_denominator(values) -> Scalar:
    """lcm of the denominators of a collection of RatFunc values (up to units)."""
    from functools import reduce

    dens = [v.den for v in values if not v.is_zero()]
    if not dens:
        return Scalar.one()

    def _lcm(a, b):
        if len(a._terms) == 1:
            return b if len(b._terms) == 1 else b
        if len(b._terms) == 1:
            return a
        g = laurent_gcd(a, b)
        return exact_divide(a * b, g)

    return reduce(_lcm, dens)


def lcm_int(values) -> int:
    out = 1
    for v in values:
        out = lcm(out, v)
    return out
