"""Numeric p-adic checks of the Volkenborn and fermionic integrals.

The fermionic side sums ``(-1)^x q^x x^n`` over ``x < p^N`` with ``q = 1 + p``
inside Z/p^M.  The bosonic side sums ``zeta^x x^n / p^N`` with ``q = zeta`` a
primitive p-th root of unity, so everything lives in Q(zeta_p), where
``pi = zeta - 1`` is a uniformizer with ``v_p(pi) = 1/(p-1)``.

Partial sums use block recursion on the digit structure of x:
with ``T_k(P) = sum_{x<P} w^x x^k`` one has
``T_k(pP) = sum_{j<p} w^(jP) sum_i C(k,i) (jP)^(k-i) T_i(P)``,
so depth N costs O(N p n^2) instead of p^N.  Direct loops are kept as
independent checks.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor, lcm
from typing import Iterable, Sequence

from .errors import DivisionByZero, InvalidSpec, PrecisionLoss
from .exactmath import RatFun
from .moments import Measure
from .qfamilies import q_bernoulli, q_euler

MAX_SUMMANDS = 10**7


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def vp_int(x: int, p: int) -> int | None:
    """p-adic valuation of an integer; None for zero."""
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def vp_fraction(x: Fraction, p: int) -> int | None:
    if x == 0:
        return None
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


# ---------------------------------------------------------------------------
# exact arithmetic in Q(zeta_p)


def _fold(p: int, raw: Sequence) -> list:
    """Reduce a coefficient list in zeta modulo zeta^p = 1 and Phi_p(zeta) = 0."""
    a = [0] * p
    for i, c in enumerate(raw):
        if c:
            a[i % p] += c
    top = a[p - 1]
    if top:
        a = [c - top for c in a[: p - 1]]
    else:
        a = a[: p - 1]
    return a


def _convolve(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pi_basis(p: int, a: Sequence[int]) -> list[int]:
    """Coordinates of sum a_i zeta^i in the basis pi^j, pi = zeta - 1."""
    return [sum(a[i] * comb(i, j) for i in range(j, len(a))) for j in range(len(a))]


def _pi_valuation_int(p: int, a: Sequence[int], modulus_exp: int | None = None) -> int | None:
    """Valuation in pi-units of an integer vector, optionally known only mod p^modulus_exp."""
    best = None
    for j, b in enumerate(_pi_basis(p, a)):
        if modulus_exp is not None:
            b %= p**modulus_exp
        v = vp_int(b, p)
        if v is None:
            continue
        w = (p - 1) * v + j
        if best is None or w < best:
            best = w
    return best


class CycloElement:
    """Exact element of Q(zeta_p) in the basis 1, zeta, ..., zeta^(p-2)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable = ()):
        self.p = p
        self.coeffs = tuple(Fraction(c) for c in _fold(p, list(coeffs) or [0]))

    @classmethod
    def zeta(cls, p: int) -> "CycloElement":
        return cls(p, [0, 1])

    @classmethod
    def const(cls, p: int, c) -> "CycloElement":
        return cls(p, [c])

    def _lift(self, other) -> "CycloElement | None":
        if isinstance(other, CycloElement):
            if other.p != self.p:
                raise ValueError("mixing different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElement(self.p, [other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CycloElement(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CycloElement(self.p, _convolve(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = CycloElement.const(self.p, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self, a: int) -> "CycloElement":
        """Image under zeta -> zeta^a."""
        raw = [0] * self.p
        for i, c in enumerate(self.coeffs):
            raw[(a * i) % self.p] += c
        return CycloElement(self.p, raw)

    def norm(self) -> Fraction:
        out = CycloElement.const(self.p, 1)
        for a in range(1, self.p):
            out = out * self.conjugate(a)
        return out.coeffs[0]

    def inverse(self) -> "CycloElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(zeta_p)")
        others = CycloElement.const(self.p, 1)
        for a in range(2, self.p):
            others = others * self.conjugate(a)
        n = (self * others).coeffs[0]
        return others * (1 / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def pi_valuation(self) -> int | None:
        """Valuation in units of v(zeta - 1) = 1/(p-1); None for zero."""
        if self.is_zero():
            return None
        d = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * d) for c in self.coeffs]
        return _pi_valuation_int(self.p, ints) - (self.p - 1) * vp_int(d, self.p)

    def valuation(self) -> Fraction | None:
        w = self.pi_valuation()
        return None if w is None else Fraction(w, self.p - 1)

    def __repr__(self):
        return f"CycloElement({self.p}, {str(self)!r})"

    def __str__(self):
        return _render_zeta(self.coeffs)


def _render_zeta(coeffs: Sequence) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = "z" if i == 1 else f"z^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for s, body in parts[1:]:
        out += f" {s} {body}"
    return out


def evaluate_at_zeta(f: RatFun, p: int) -> CycloElement:
    """Exact value of a rational function of q at q = zeta_p."""
    value = f.evaluate(CycloElement.zeta(p))
    return value if isinstance(value, CycloElement) else CycloElement.const(p, value)


# ---------------------------------------------------------------------------
# finite-precision p-adic numbers


@dataclass(frozen=True)
class PadicNum:
    """digits / p^shift, known modulo p^abs_prec.

    ``digits`` has one entry over Z_p and p-1 entries (basis zeta^i) over
    Z_p[zeta_p]; entries are reduced modulo p^(abs_prec + shift).
    """

    p: int
    digits: tuple
    shift: int
    abs_prec: int

    def __post_init__(self):
        k = self.abs_prec + self.shift
        if k <= 0:
            raise PrecisionLoss("no significant p-adic digits left")
        if len(self.digits) not in (1, self.p - 1):
            raise ValueError("digit vector has wrong length")
        mod = self.p**k
        object.__setattr__(self, "digits", tuple(int(d) % mod for d in self.digits))

    @property
    def degree(self) -> int:
        return len(self.digits)

    @property
    def modulus_exp(self) -> int:
        return self.abs_prec + self.shift

    @classmethod
    def from_rational(cls, p: int, x: Fraction | int, prec: int, degree: int = 1) -> "PadicNum":
        x = Fraction(x)
        s = max(0, -(vp_fraction(x, p) or 0))
        y = x * p**s
        mod = p ** (prec + s)
        d = y.numerator * pow(y.denominator, -1, mod)
        return cls(p, (d,) + (0,) * (degree - 1), s, prec)

    @classmethod
    def from_cyclo(cls, x: CycloElement, prec: int) -> "PadicNum":
        p = x.p
        s = max([0] + [-vp_fraction(c, p) for c in x.coeffs if c])
        mod = p ** (prec + s)
        digits = []
        for c in x.coeffs:
            y = c * p**s
            digits.append(y.numerator * pow(y.denominator, -1, mod))
        return cls(p, tuple(digits), s, prec)

    def _check(self, other: "PadicNum"):
        if not isinstance(other, PadicNum):
            raise TypeError("PadicNum arithmetic needs PadicNum operands")
        if other.p != self.p or other.degree != self.degree:
            raise ValueError("mismatched p-adic rings")

    def _rescale(self, shift: int) -> list[int]:
        return [d * self.p ** (shift - self.shift) for d in self.digits]

    def __add__(self, other: "PadicNum") -> "PadicNum":
        self._check(other)
        s = max(self.shift, other.shift)
        digits = [a + b for a, b in zip(self._rescale(s), other._rescale(s))]
        return PadicNum(self.p, tuple(digits), s, min(self.abs_prec, other.abs_prec))

    def __neg__(self) -> "PadicNum":
        return PadicNum(self.p, tuple(-d for d in self.digits), self.shift, self.abs_prec)

    def __sub__(self, other: "PadicNum") -> "PadicNum":
        return self + (-other)

    def __mul__(self, other: "PadicNum") -> "PadicNum":
        self._check(other)
        va = self.valuation()
        vb = other.valuation()
        va = self.abs_prec if va is None else floor(va)
        vb = other.abs_prec if vb is None else floor(vb)
        prec = min(self.abs_prec + vb, other.abs_prec + va)
        if self.degree == 1:
            digits = (self.digits[0] * other.digits[0],)
        else:
            digits = tuple(_fold(self.p, _convolve(self.digits, other.digits)))
        return PadicNum(self.p, digits, self.shift + other.shift, prec)

    def div_p_power(self, k: int) -> "PadicNum":
        """Divide by p^k exactly; costs k digits of absolute precision."""
        if self.abs_prec - k < 1:
            raise PrecisionLoss("division by p^k exhausts the working precision")
        return PadicNum(self.p, self.digits, self.shift + k, self.abs_prec - k)

    def pi_valuation(self) -> int | None:
        """Valuation in units of 1/(p-1) (or of p over Z_p); None if zero to working precision."""
        if self.degree == 1:
            v = vp_int(self.digits[0], self.p)
            return None if v is None else v - self.shift
        w = _pi_valuation_int(self.p, self.digits, self.modulus_exp)
        return None if w is None else w - (self.p - 1) * self.shift

    def valuation(self) -> Fraction | None:
        w = self.pi_valuation()
        if w is None:
            return None
        return Fraction(w) if self.degree == 1 else Fraction(w, self.p - 1)

    def is_zero(self) -> bool:
        return not any(self.digits)

    def __str__(self):
        if self.degree == 1:
            body = str(self.digits[0])
        else:
            body = _render_zeta(self.digits)
            if sum(1 for d in self.digits if d) > 1:
                body = f"({body})"
        if self.shift:
            body = f"{body}/{self.p}^{self.shift}"
        return f"{body} + O({self.p}^{self.abs_prec})"


def render_distance(p: int, valuation: Fraction | None, bound: int | None = None) -> str:
    """|x|_p = p^(-v); "0" for an exact zero, "<=p^-A" when only a bound is known."""
    if valuation is None:
        return "0" if bound is None else f"<={p}^-{bound}"
    e = -Fraction(valuation)
    return f"{p}^{e}" if e.denominator == 1 else f"{p}^({e})"


# ---------------------------------------------------------------------------
# sum specifications


class QChoice(str, enum.Enum):
    OnePlusP = "1+p"
    ZetaP = "zeta_p"


@dataclass(frozen=True)
class SumSpec:
    p: int
    mode: Measure
    n: int
    N: int
    precision: int = 20
    q_choice: QChoice | None = None

    def __post_init__(self):
        try:
            mode = Measure(self.mode)
        except ValueError:
            raise InvalidSpec(f"unknown mode {self.mode!r}") from None
        object.__setattr__(self, "mode", mode)
        default = QChoice.ZetaP if mode is Measure.Bosonic else QChoice.OnePlusP
        try:
            choice = QChoice(self.q_choice) if self.q_choice is not None else default
        except ValueError:
            raise InvalidSpec(f"unknown q choice {self.q_choice!r}") from None
        object.__setattr__(self, "q_choice", choice)
        if choice is not default:
            raise InvalidSpec(f"{mode.value} sums use q = {default.value}, not {choice.value}")
        if not (isinstance(self.p, int) and self.p > 2 and _is_prime(self.p)):
            raise InvalidSpec(f"p must be an odd prime, got {self.p}")
        if not (isinstance(self.n, int) and self.n >= 0):
            raise InvalidSpec("moment n must be a nonnegative integer")
        if not (isinstance(self.N, int) and self.N >= 1):
            raise InvalidSpec("depth N must be >= 1")
        if not (isinstance(self.precision, int) and self.precision >= 1):
            raise InvalidSpec("precision must be >= 1")
        if self.p**self.N > MAX_SUMMANDS:
            raise InvalidSpec(f"p^N = {self.p}^{self.N} exceeds {MAX_SUMMANDS} summands")

    @property
    def q(self) -> int:
        return 1 + self.p


# ---------------------------------------------------------------------------
# block-recursive sums


def _block_power_sums(weight: int, p: int, N: int, n: int, mod: int | None) -> list[int]:
    """T_i(p^N) = sum_{x<p^N} weight^x x^i for i <= n, exactly or modulo mod."""
    red = (lambda v: v % mod) if mod else (lambda v: v)
    T = [1] + [0] * n
    P = 1
    for _ in range(N):
        wP = pow(weight, P, mod) if mod else weight**P
        new = [0] * (n + 1)
        wj = 1
        for j in range(p):
            jP = j * P
            for k in range(n + 1):
                acc = 0
                for i in range(k + 1):
                    if T[i]:
                        acc += comb(k, i) * jP ** (k - i) * T[i]
                new[k] = red(new[k] + wj * acc)
            wj = red(wj * wP)
        T = new
        P *= p
    return T


def fermionic_power_sums(p: int, N: int, n: int, precision: int) -> list[int]:
    """sum_{x<p^N} (-1)^x (1+p)^x x^i mod p^precision, for i <= n."""
    return _block_power_sums(-(1 + p), p, N, n, p**precision)


def _check_mode(spec: SumSpec, mode: Measure):
    if spec.mode is not mode:
        raise InvalidSpec(f"expected a {mode.value} spec, got {spec.mode.value}")


def fermionic_partial_sum(spec: SumSpec) -> PadicNum:
    """sum_{x<p^N} (-1)^x q^x x^n with q = 1+p, modulo p^M."""
    _check_mode(spec, Measure.Fermionic)
    T = fermionic_power_sums(spec.p, spec.N, spec.n, spec.precision)
    return PadicNum(spec.p, (T[spec.n],), 0, spec.precision)


def _fermionic_chunk(p: int, n: int, mod: int, start: int, stop: int) -> int:
    w = -(1 + p)
    wx = pow(w, start, mod)
    acc = 0
    for x in range(start, stop):
        acc = (acc + wx * pow(x, n, mod)) % mod
        wx = wx * w % mod
    return acc


def fermionic_partial_sum_direct(spec: SumSpec, workers: int = 1, chunks: int = 1) -> PadicNum:
    """Same sum by a direct loop, optionally split into chunks run concurrently."""
    _check_mode(spec, Measure.Fermionic)
    mod = spec.p**spec.precision
    total = spec.p**spec.N
    chunks = max(1, min(chunks, total))
    bounds = [total * i // chunks for i in range(chunks + 1)]
    jobs = [(spec.p, spec.n, mod, a, b) for a, b in zip(bounds, bounds[1:])]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda j: _fermionic_chunk(*j), jobs))
    else:
        parts = [_fermionic_chunk(*j) for j in jobs]
    return PadicNum(spec.p, (sum(parts) % mod,), 0, spec.precision)


def fermionic_shift_defect(p: int, n: int, N: int, precision: int = 20) -> PadicNum:
    """S(f_1) + S(f) - 2 f(0) for f(x) = q^x x^n, f_1(x) = f(x+1), q = 1+p.

    Telescoping shows the defect is exactly f(p^N) - f(0), so it vanishes
    p-adically as N grows, mirroring I(f_1) = -I(f) + 2 f(0).
    """
    SumSpec(p, Measure.Fermionic, n, N, precision)
    mod = p**precision
    q = 1 + p
    T = fermionic_power_sums(p, N, n, precision)
    shifted = q * sum(comb(n, i) * T[i] for i in range(n + 1))
    f0 = 1 if n == 0 else 0
    return PadicNum(p, ((shifted + T[n] - 2 * f0) % mod,), 0, precision)


def bosonic_residue_sums(p: int, N: int, n: int) -> list[int]:
    """c_r = sum_{x<p^N, x = r mod p} x^n, exactly, for r < p."""
    S = _block_power_sums(1, p, N - 1, n, None)  # sum_{y<p^(N-1)} y^i
    return [sum(comb(n, i) * r ** (n - i) * p**i * S[i] for i in range(n + 1)) for r in range(p)]


def volkenborn_partial_sum_exact(p: int, n: int, N: int) -> CycloElement:
    """(1/p^N) sum_{x<p^N} zeta^x x^n as an exact element of Q(zeta_p)."""
    SumSpec(p, Measure.Bosonic, n, N)
    return CycloElement(p, [Fraction(c, p**N) for c in bosonic_residue_sums(p, N, n)])


def volkenborn_partial_sum_direct(p: int, n: int, N: int) -> CycloElement:
    c = [0] * p
    for x in range(p**N):
        c[x % p] += x**n
    return CycloElement(p, [Fraction(v, p**N) for v in c])


def volkenborn_partial_sum(spec: SumSpec) -> PadicNum:
    """(1/p^N) sum_{x<p^N} zeta^x x^n in Z_p[zeta]/(p^M), with the p^-N factor as a shift."""
    _check_mode(spec, Measure.Bosonic)
    if spec.N >= spec.precision:
        raise PrecisionLoss(
            f"dividing by p^{spec.N} leaves no digits at precision {spec.precision}"
        )
    mod = spec.p**spec.precision
    raw = [c % mod for c in bosonic_residue_sums(spec.p, spec.N, spec.n)]
    whole = PadicNum(spec.p, tuple(_fold(spec.p, raw)), 0, spec.precision)
    return whole.div_p_power(spec.N)


# ---------------------------------------------------------------------------
# convergence report


def fermionic_target(p: int, n: int) -> Fraction:
    return q_euler(n).evaluate(Fraction(1 + p))


def bosonic_target(p: int, n: int) -> CycloElement:
    return evaluate_at_zeta(q_bernoulli(n), p)


@dataclass(frozen=True)
class WittRow:
    N: int
    partial: str
    target: str
    distance: str
    valuation: Fraction | None
    bound: int | None = None

    def to_record(self) -> dict:
        return {
            "N": self.N,
            "partial": self.partial,
            "target": self.target,
            "distance": self.distance,
            "valuation": None if self.valuation is None else str(self.valuation),
        }


def witt_convergence_report(spec: SumSpec, N_range: Iterable[int] | None = None) -> list[WittRow]:
    """Distance from each partial sum to the symbolic moment at the chosen q.

    Fermionic rows are computed modulo p^M; bosonic distances are exact
    (the partial sums live in Q(zeta_p) with small denominators).
    """
    Ns = list(N_range) if N_range is not None else list(range(1, spec.N + 1))
    rows = []
    for N in Ns:
        s = SumSpec(spec.p, spec.mode, spec.n, N, spec.precision)
        if s.mode is Measure.Fermionic:
            target = fermionic_target(s.p, s.n)
            partial = fermionic_partial_sum(s)
            diff = partial - PadicNum.from_rational(s.p, target, s.precision)
            v = diff.valuation()
            bound = diff.abs_prec if v is None else None
            rows.append(WittRow(N, str(partial), str(target), render_distance(s.p, v, bound), v, bound))
        else:
            target = bosonic_target(s.p, s.n)
            exact = volkenborn_partial_sum_exact(s.p, s.n, N)
            partial = volkenborn_partial_sum(s)
            v = (exact - target).valuation()
            rows.append(WittRow(N, str(partial), str(target), render_distance(s.p, v), v))
    return rows


def bosonic_stabilization(p: int, n: int, N_max: int) -> int | None:
    """Smallest N <= N_max from which the exact Volkenborn sum equals B_n(zeta) through N_max."""
    target = bosonic_target(p, n)
    first = None
    for N in range(1, N_max + 1):
        if volkenborn_partial_sum_exact(p, n, N) == target:
            first = N if first is None else first
        else:
            first = None
    return first
