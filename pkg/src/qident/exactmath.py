"""Exact polynomial, rational-function, Laurent-polynomial and series arithmetic.

Everything here is immutable.  ``Fraction`` plays the role of the rational
coefficient field; ``QPoly`` is a dense polynomial in ``q`` with rational
coefficients; ``RatFun`` is an element of Q(q) kept in a unique canonical
form so that its string rendering can be diffed byte for byte; ``XPoly`` is a
Laurent polynomial in ``x`` over Q(q); ``TSeries`` is a power series in ``t``
truncated at a fixed order.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .errors import DivisionByZero, ExponentOverflow, NotAUnit, ParseError

Rational = Fraction

MAX_LAURENT_EXPONENT = 256

IntPoly = tuple  # tuple[int, ...], index = degree, no trailing zeros


# ---------------------------------------------------------------------------
# integer polynomial kernels (coefficient tuples, lowest degree first)


def _trim(c: Sequence[int]) -> tuple:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _padd(a: IntPoly, b: IntPoly) -> IntPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _psub(a: IntPoly, b: IntPoly) -> IntPoly:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _pmul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return ()
    if len(a) == 1:
        s = a[0]
        return tuple(s * c for c in b)
    if len(b) == 1:
        s = b[0]
        return tuple(s * c for c in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pscale(a: IntPoly, s) -> IntPoly:
    if not s:
        return ()
    return tuple(s * c for c in a)


def _content(a: IntPoly) -> int:
    return reduce(math.gcd, a, 0)


def _primitive(a: IntPoly) -> IntPoly:
    if not a:
        return a
    g = _content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return a
    return tuple(c // g for c in a)


def _prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder of ``a`` by ``b`` over the integers."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        lead = r[-1]
        g = math.gcd(lead, lb)
        mr, mb = lb // g, lead // g
        r = [mr * c for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= mb * c
        r = list(_trim(r))
    return tuple(r)


def _pgcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd (positive leading coefficient) by primitive remainder sequences."""
    a, b = _primitive(a), _primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return (1,)
        r = _prem(a, b)
        a, b = b, _primitive(r)
    return a


def _pdivexact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Quotient a/b when b divides a in Z[q] (b primitive or a divisible)."""
    if len(b) == 1:
        s = b[0]
        return tuple(c // s for c in a)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    quot = [0] * max(len(a) - db, 0)
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        coef, rem = divmod(r[-1], lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        quot[shift] = coef
        for i, c in enumerate(b):
            r[i + shift] -= coef * c
        r = list(_trim(r))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return _trim(quot)


def _pderiv(a: IntPoly) -> IntPoly:
    return _trim([i * c for i, c in enumerate(a)][1:])


def _clear_denominators(coeffs: Sequence[Fraction]) -> tuple[IntPoly, int]:
    """Return (integer poly, L) with coeffs = poly / L."""
    L = reduce(lambda acc, c: acc * c.denominator // math.gcd(acc, c.denominator), coeffs, 1)
    return tuple(int(c * L) for c in coeffs), L


# ---------------------------------------------------------------------------
# rendering


def _render_terms(coeffs: Sequence, var: str, latex: bool = False) -> str:
    parts: list[str] = []
    for i in range(len(coeffs) - 1, -1, -1):
        a = coeffs[i]
        if not a:
            continue
        mag = abs(a)
        if i == 0:
            body = str(mag)
        else:
            if latex:
                mono = var if i == 1 else f"{var}^{{{i}}}"
                body = mono if mag == 1 else f"{mag}{mono}"
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(f"-{body}" if a < 0 else body)
        else:
            parts.append(f" - {body}" if a < 0 else f" + {body}")
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# QPoly


class QPoly:
    """Dense polynomial in q with rational coefficients."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        c = [Fraction(x) for x in coefficients]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def q(cls) -> "QPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def _int_form(self) -> tuple[IntPoly, int]:
        return _clear_denominators(self.coefficients)

    def __add__(self, other):
        other = _as_qpoly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return QPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return QPoly(-c for c in self.coefficients)

    def __sub__(self, other):
        other = _as_qpoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_qpoly(other)
        if other is None:
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return QPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = QPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, value):
        acc = 0 * value
        for c in reversed(self.coefficients):
            acc = acc * value + c
        return acc

    def derivative(self) -> "QPoly":
        return QPoly([i * c for i, c in enumerate(self.coefficients)][1:])

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coefficients)
        d = other.coefficients
        quot = [Fraction(0)] * max(len(r) - len(d) + 1, 0)
        while len(r) >= len(d) and r:
            shift = len(r) - len(d)
            coef = r[-1] / d[-1]
            quot[shift] = coef
            for i, c in enumerate(d):
                r[i + shift] -= coef * c
            while r and not r[-1]:
                r.pop()
        return QPoly(quot), QPoly(r)

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive (0 for the zero polynomial)."""
        if not self.coefficients:
            return Fraction(0)
        ints, L = self._int_form()
        return Fraction(_content(ints), L)

    def primitive(self) -> "QPoly":
        if not self.coefficients:
            return self
        return QPoly(_primitive(self._int_form()[0]))

    def __eq__(self, other):
        other = _as_qpoly(other)
        return other is not None and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(("QPoly", self.coefficients))

    def __repr__(self):
        return f"QPoly({[str(c) for c in self.coefficients]})"

    def __str__(self):
        return _render_terms(self.coefficients, "q")


def _as_qpoly(v):
    if isinstance(v, QPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return QPoly((v,))
    return None


def qpoly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Greatest common divisor, normalised to be integer-primitive with positive leading coefficient."""
    return QPoly(_pgcd(a._int_form()[0], b._int_form()[0]))


# ---------------------------------------------------------------------------
# RatFun


def _canonical(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return (), (1,)
    if len(den) > 1 and len(num) > 1:
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivexact(num, g)
            den = _pdivexact(den, g)
    c = math.gcd(_content(num), _content(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, den


class RatFun:
    """Element of Q(q) in canonical form.

    Canonical form: integer numerator and denominator, no common polynomial
    factor, joint integer content 1, positive leading denominator coefficient.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, num=0, den=1):
        n, dn = _coerce_int_poly(num)
        d, dd = _coerce_int_poly(den)
        # num/dn over den/dd
        n = _pscale(n, dd)
        d = _pscale(d, dn)
        self._set(*_canonical(n, d))

    def _set(self, num, den):
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @classmethod
    def _raw(cls, num: IntPoly, den: IntPoly) -> "RatFun":
        obj = object.__new__(cls)
        obj._set(*_canonical(num, den))
        return obj

    @classmethod
    def _trusted(cls, num: IntPoly, den: IntPoly) -> "RatFun":
        obj = object.__new__(cls)
        obj._set(num, den)
        return obj

    @classmethod
    def q(cls) -> "RatFun":
        return cls._trusted((0, 1), (1,))

    @classmethod
    def const(cls, value) -> "RatFun":
        v = Fraction(value)
        return cls._raw((v.numerator,) if v else (), (v.denominator,))

    # -- accessors
    @property
    def num(self) -> QPoly:
        return QPoly(self._num)

    @property
    def den(self) -> QPoly:
        return QPoly(self._den)

    @property
    def int_num(self) -> IntPoly:
        return self._num

    @property
    def int_den(self) -> IntPoly:
        return self._den

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return len(self._num) <= 1 and len(self._den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self._num[0] if self._num else 0, self._den[0])

    # -- arithmetic
    def __add__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        if not other._num:
            return self
        if not self._num:
            return other
        if self._den == other._den:
            return RatFun._raw(_padd(self._num, other._num), self._den)
        if len(self._den) == 1 and len(other._den) == 1:
            a, b = self._den[0], other._den[0]
            return RatFun._raw(_padd(_pscale(self._num, b), _pscale(other._num, a)), (a * b,))
        g = _pgcd(self._den, other._den)
        if len(g) > 1:
            a = _pdivexact(self._den, g)
            b = _pdivexact(other._den, g)
            num = _padd(_pmul(self._num, b), _pmul(other._num, a))
            return RatFun._raw(num, _pmul(_pmul(a, b), g))
        num = _padd(_pmul(self._num, other._den), _pmul(other._num, self._den))
        return RatFun._raw(num, _pmul(self._den, other._den))

    __radd__ = __add__

    def __neg__(self):
        return RatFun._trusted(tuple(-c for c in self._num), self._den)

    def __sub__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        if not self._num or not other._num:
            return RatFun._trusted((), (1,))
        # cross-cancel first to keep intermediate degrees low
        n1, d1, n2, d2 = self._num, self._den, other._num, other._den
        if len(n1) > 1 and len(d2) > 1:
            g = _pgcd(n1, d2)
            if len(g) > 1:
                n1, d2 = _pdivexact(n1, g), _pdivexact(d2, g)
        if len(n2) > 1 and len(d1) > 1:
            g = _pgcd(n2, d1)
            if len(g) > 1:
                n2, d1 = _pdivexact(n2, g), _pdivexact(d1, g)
        num, den = _pmul(n1, n2), _pmul(d1, d2)
        c = math.gcd(_content(num), _content(den))
        if den[-1] < 0:
            c = -c
        if c != 1:
            num = tuple(x // c for x in num)
            den = tuple(x // c for x in den)
        return RatFun._trusted(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if not self._num:
            raise DivisionByZero("inverse of zero")
        num, den = self._den, self._num
        if den[-1] < 0:
            num, den = tuple(-c for c in num), tuple(-c for c in den)
        return RatFun._trusted(num, den)

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        n, d = (1,), (1,)
        for _ in range(k):
            n, d = _pmul(n, self._num), _pmul(d, self._den)
        # coprime, positive-leading factors stay coprime and positive-leading
        return RatFun._trusted(n, d)

    # -- calculus / substitution
    def derivative(self) -> "RatFun":
        """d/dq."""
        n, d = self._num, self._den
        num = _psub(_pmul(_pderiv(n), d), _pmul(n, _pderiv(d)))
        return RatFun._raw(num, _pmul(d, d))

    def substitute(self, image: "RatFun") -> "RatFun":
        return ratfun_substitute(self, image)

    def evaluate(self, value):
        """Evaluate at q = value (Fraction or anything supporting ring ops with ints)."""
        num = _horner(self._num, value)
        den = _horner(self._den, value)
        if den == 0:
            raise DivisionByZero(f"denominator of {self} vanishes at q={value}")
        return num / den if isinstance(den, (int, Fraction)) else num * den.inverse()

    # -- comparison and rendering
    def __eq__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self._num, self._den)))
        return self._hash

    def __bool__(self):
        return bool(self._num)

    def __repr__(self):
        return f"RatFun({str(self)!r})"

    def __str__(self):
        if self._den == (1,):
            return _render_terms(self._num, "q")
        return f"({_render_terms(self._num, 'q')})/({_render_terms(self._den, 'q')})"

    def latex(self) -> str:
        n = _render_terms(self._num, "q", latex=True)
        if self._den == (1,):
            return n
        return f"\\frac{{{n}}}{{{_render_terms(self._den, 'q', latex=True)}}}"


def _horner(coeffs: IntPoly, value):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * value + c
    return acc


def _coerce_int_poly(v) -> tuple[IntPoly, int]:
    """Return (integer coefficients, L) so that v = poly/L."""
    if isinstance(v, bool):
        v = int(v)
    if isinstance(v, int):
        return ((v,) if v else ()), 1
    if isinstance(v, Fraction):
        return ((v.numerator,) if v else ()), v.denominator
    if isinstance(v, QPoly):
        return v._int_form()
    if isinstance(v, (list, tuple)):
        return QPoly(v)._int_form()
    raise TypeError(f"cannot build a polynomial from {type(v).__name__}")


def _as_ratfun(v):
    if isinstance(v, RatFun):
        return v
    if isinstance(v, bool):
        v = int(v)
    if isinstance(v, int):
        return RatFun._trusted((v,) if v else (), (1,))
    if isinstance(v, Fraction):
        return RatFun.const(v)
    if isinstance(v, QPoly):
        return RatFun(v)
    return None


def as_ratfun(v) -> RatFun:
    r = _as_ratfun(v)
    if r is None:
        raise TypeError(f"cannot interpret {type(v).__name__} as a rational function")
    return r


def ratfun_normalize(num, den) -> RatFun:
    """Canonical representative of num/den; raises DivisionByZero for den = 0."""
    return RatFun(num, den)


def ratfun_substitute(f: RatFun, image) -> RatFun:
    """Compose f with q -> image."""
    image = as_ratfun(image)
    num = _horner_ratfun(f._num, image)
    den = _horner_ratfun(f._den, image)
    if den.is_zero():
        raise DivisionByZero(f"denominator of {f} vanishes identically under q -> {image}")
    return num / den


def _horner_ratfun(coeffs: IntPoly, image: RatFun) -> RatFun:
    # clear the image's denominator once: P(a/b) = sum c_i a^i b^(d-i) / b^d
    if not coeffs:
        return RatFun._trusted((), (1,))
    a, b = image._num, image._den
    d = len(coeffs) - 1
    apow = [(1,)]
    bpow = [(1,)]
    for _ in range(d):
        apow.append(_pmul(apow[-1], a))
        bpow.append(_pmul(bpow[-1], b))
    num: IntPoly = ()
    for i, c in enumerate(coeffs):
        if c:
            num = _padd(num, _pscale(_pmul(apow[i], bpow[d - i]), c))
    return RatFun._raw(num, bpow[d])


Q = RatFun.q()
ONE = RatFun(1)
ZERO = RatFun(0)
Q_INV = RatFun((1,), (0, 1))
Q_SQUARED = RatFun((0, 0, 1))


# ---------------------------------------------------------------------------
# XPoly


class XPoly:
    """Laurent polynomial in x with RatFun coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, RatFun] = {}
        for e, c in items:
            c = as_ratfun(c)
            if not c:
                continue
            e = int(e)
            acc[e] = acc[e] + c if e in acc else c
        self._freeze(acc)

    def _freeze(self, acc: dict):
        terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        for e, _ in terms:
            if abs(e) > MAX_LAURENT_EXPONENT:
                raise ExponentOverflow(f"x-exponent {e} exceeds {MAX_LAURENT_EXPONENT}")
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("XPoly is immutable")

    @classmethod
    def _from_dict(cls, acc: dict) -> "XPoly":
        obj = object.__new__(cls)
        obj._freeze(acc)
        return obj

    @classmethod
    def x(cls) -> "XPoly":
        return cls({1: ONE})

    @classmethod
    def monomial(cls, exponent: int, coefficient=1) -> "XPoly":
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, c) -> "XPoly":
        return cls({0: c})

    # -- accessors
    def terms(self) -> dict[int, RatFun]:
        return dict(self._terms)

    def coefficient(self, exponent: int) -> RatFun:
        for e, c in self._terms:
            if e == exponent:
                return c
        return ZERO

    @property
    def degree(self) -> int:
        return self._terms[-1][0] if self._terms else -1

    @property
    def min_exponent(self) -> int:
        return self._terms[0][0] if self._terms else 0

    def is_zero(self) -> bool:
        return not self._terms

    def is_polynomial(self) -> bool:
        return not self._terms or self._terms[0][0] >= 0

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def constant_term(self) -> RatFun:
        return self.coefficient(0)

    # -- arithmetic
    def __add__(self, other):
        other = _as_xpoly(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc[e] + c if e in acc else c
        return XPoly._from_dict(acc)

    __radd__ = __add__

    def __neg__(self):
        return XPoly._from_dict({e: -c for e, c in self._terms})

    def __sub__(self, other):
        other = _as_xpoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_xpoly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, TSeries):
            return NotImplemented
        scalar = _as_ratfun(other)
        if scalar is not None:
            if not scalar:
                return XPoly()
            return XPoly._from_dict({e: c * scalar for e, c in self._terms})
        if not isinstance(other, XPoly):
            return NotImplemented
        acc: dict[int, RatFun] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = e1 + e2
                p = c1 * c2
                acc[e] = acc[e] + p if e in acc else p
        return XPoly._from_dict(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        scalar = _as_ratfun(other)
        if scalar is None:
            return NotImplemented
        inv = scalar.inverse()
        return XPoly._from_dict({e: c * inv for e, c in self._terms})

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms
            return XPoly({-e * (-k): c.inverse() ** (-k)})
        out = XPoly({0: ONE})
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def derivative(self) -> "XPoly":
        """d/dx."""
        return XPoly._from_dict({e - 1: c * e for e, c in self._terms if e})

    def compose(self, inner: "XPoly") -> "XPoly":
        """Substitute x -> inner (self must be a polynomial)."""
        if not self.is_polynomial():
            raise ValueError("compose requires nonnegative exponents")
        out = XPoly()
        for e in range(self.degree, -1, -1):
            out = out * inner + self.coefficient(e)
        return out

    def evaluate(self, value) -> RatFun:
        """Value at x = value (RatFun, Fraction or int)."""
        value = as_ratfun(value)
        out = ZERO
        for e, c in self._terms:
            if e < 0 and value.is_zero():
                raise DivisionByZero("Laurent term evaluated at x = 0")
            out = out + c * value ** e
        return out

    def map_coefficients(self, fn) -> "XPoly":
        return XPoly((e, fn(c)) for e, c in self._terms)

    def substitute_q(self, image) -> "XPoly":
        return self.map_coefficients(lambda c: ratfun_substitute(c, image))

    # -- comparison and rendering
    def __eq__(self, other):
        other = _as_xpoly(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(("XPoly", self._terms)))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"XPoly({str(self)!r})"

    def __str__(self):
        return self._render(latex=False)

    def latex(self) -> str:
        return self._render(latex=True)

    def _render(self, latex: bool) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            cs = c.latex() if latex else str(c)
            if e == 0:
                parts.append(cs)
                continue
            if latex:
                mono = "x" if e == 1 else f"x^{{{e}}}"
            else:
                mono = "x" if e == 1 else (f"x^{e}" if e > 0 else f"x^({e})")
            if c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append(f"-{mono}")
            else:
                if not latex and c.int_den == (1,) and len([a for a in c.int_num if a]) > 1:
                    cs = f"({cs})"
                if latex and (c.int_den == (1,) and len([a for a in c.int_num if a]) > 1):
                    cs = f"\\left({cs}\\right)"
                parts.append(f"{cs}{' ' if latex else '*'}{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _as_xpoly(v):
    if isinstance(v, XPoly):
        return v
    r = _as_ratfun(v)
    if r is None:
        return None
    return XPoly._from_dict({0: r} if r else {})


X = XPoly.x()


# ---------------------------------------------------------------------------
# TSeries


class TSeries:
    """Power series in t truncated after t^order.

    Coefficients are RatFun or XPoly; mixed products promote to XPoly.
    """

    __slots__ = ("order", "coefficients")

    def __init__(self, coefficients: Sequence, order: int | None = None):
        coeffs = list(coefficients)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series order must be nonnegative")
        if not coeffs:
            coeffs = [ZERO]
        coeffs = [as_ratfun(c) if isinstance(c, (int, Fraction, QPoly)) else c for c in coeffs]
        zero = coeffs[0] * 0
        coeffs = coeffs[: order + 1] + [zero] * (order + 1 - len(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("TSeries is immutable")

    def __getitem__(self, n: int):
        return self.coefficients[n]

    def __len__(self):
        return self.order + 1

    def egf_coefficient(self, n: int):
        """n! times the coefficient of t^n."""
        return self.coefficients[n] * math.factorial(n)

    def truncate(self, order: int) -> "TSeries":
        return TSeries(self.coefficients[: order + 1], min(order, self.order))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, RatFun, XPoly)):
            return TSeries((self.coefficients[0] + other,) + self.coefficients[1:], self.order)
        if not isinstance(other, TSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return TSeries([a + b for a, b in zip(self.coefficients[: n + 1], other.coefficients)], n)

    __radd__ = __add__

    def __neg__(self):
        return TSeries([-c for c in self.coefficients], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TSeries):
            if isinstance(other, (int, Fraction, RatFun, XPoly)):
                return TSeries([c * other for c in self.coefficients], self.order)
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        out = []
        for k in range(n + 1):
            acc = a[0] * b[k]
            for i in range(1, k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return TSeries(out, n)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatFun, XPoly)):
            return TSeries([other * c for c in self.coefficients], self.order)
        return NotImplemented

    def shift(self, k: int = 1) -> "TSeries":
        """Multiply by t^k, keeping the order."""
        zero = self.coefficients[0] * 0
        return TSeries([zero] * k + list(self.coefficients[: self.order + 1 - k]), self.order)

    def __eq__(self, other):
        return (
            isinstance(other, TSeries)
            and self.order == other.order
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((self.order, self.coefficients))

    def __repr__(self):
        return f"TSeries({[str(c) for c in self.coefficients]})"


def series_reciprocal(s: TSeries) -> TSeries:
    """1/s truncated at the same order; s must have an invertible RatFun constant term."""
    c0 = s.coefficients[0]
    if isinstance(c0, XPoly):
        if not c0.is_constant():
            raise NotAUnit("constant term depends on x")
        c0 = c0.constant_term()
    if not c0:
        raise NotAUnit("series has zero constant term")
    inv0 = c0.inverse()
    out = [inv0]
    for n in range(1, s.order + 1):
        acc = ZERO
        for k in range(1, n + 1):
            if s.coefficients[k] and out[n - k]:
                acc = acc + s.coefficients[k] * out[n - k]
        out.append(-(acc * inv0))
    return TSeries(out, s.order)


def series_exp(order: int, scale=1) -> TSeries:
    """exp(scale * t) truncated at t^order."""
    scale = as_ratfun(scale)
    coeffs = []
    power = ONE
    for n in range(order + 1):
        coeffs.append(power * Fraction(1, math.factorial(n)))
        power = power * scale
    return TSeries(coeffs, order)


def series_exp_xt(order: int) -> TSeries:
    """exp(x t) truncated at t^order; the t^n coefficient is x^n / n!."""
    if order < 0:
        raise ValueError("series order must be nonnegative")
    return TSeries(
        [XPoly({n: Fraction(1, math.factorial(n))}) for n in range(order + 1)], order
    )


def default_series_order(max_n: int) -> int:
    return 2 * max_n + 4


# ---------------------------------------------------------------------------
# parsing canonical strings back into values

_TOKEN = re.compile(r"\s*(?:(\d+)|([qx])|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> XPoly:
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self) -> XPoly:
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self) -> XPoly:
        v = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op == "*":
                v = v * rhs
            elif rhs.is_constant():
                v = v / rhs.constant_term()
            elif len(rhs.terms()) == 1:
                v = v * rhs ** -1
            else:
                raise ParseError("division by a non-monomial in x")
        return v

    def unary(self) -> XPoly:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> XPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.unary()
            if not exp.is_constant():
                raise ParseError("exponent must be an integer")
            e = exp.constant_term()
            if not e.is_constant() or e.constant_value().denominator != 1:
                raise ParseError("exponent must be an integer")
            k = int(e.constant_value())
            if k < 0 and base.is_constant():
                return XPoly.constant(base.constant_term() ** k)
            return base ** k
        return base

    def atom(self) -> XPoly:
        tok = self.take()
        if tok == "(":
            v = self.expr()
            self.take(")")
            return v
        if tok == "q":
            return XPoly.constant(Q)
        if tok == "x":
            return X
        if tok.isdigit():
            return XPoly.constant(int(tok))
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


def parse_xpoly(text: str) -> XPoly:
    return _Parser(text).parse()


def parse_ratfun(text: str) -> RatFun:
    """Parse an expression in q (e.g. a canonical rendering) into a RatFun."""
    v = parse_xpoly(text)
    if not v.is_constant():
        raise ParseError(f"{text!r} depends on x")
    return v.constant_term()


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc
