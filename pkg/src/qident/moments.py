"""Symbolic p-adic moment calculus.

An integral of a polynomial integrand against ``q^(eps x) dmu`` (bosonic) or
``q^(eps x) dmu_{-1}`` (fermionic) is evaluated by expanding the integrand in
the monomial basis and sending ``x^j`` to ``B_j(q^eps)`` or ``E_j(q^eps)``
respectively (Witt's formulas).  An optional ``q^c`` prefactor covers
weights such as ``q^(1-x) = q * q^(-x)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb

from .errors import InvalidIndex, InvalidIntegrand, InvalidParams
from .exactmath import Q, ZERO, RatFun, XPoly, as_ratfun
from .qfamilies import (
    bernstein,
    q_bernoulli,
    q_bernoulli_inverse,
    q_euler,
    q_euler_inverse,
)


class Measure(str, enum.Enum):
    Bosonic = "bosonic"
    Fermionic = "fermionic"


@dataclass(frozen=True)
class MomentSpec:
    integrand: XPoly
    weight_exponent: int = 1
    measure: Measure = Measure.Bosonic
    prefactor_q_power: int = 0

    def __post_init__(self):
        if not isinstance(self.integrand, XPoly):
            object.__setattr__(self, "integrand", XPoly.constant(as_ratfun(self.integrand)))
        if not self.integrand.is_polynomial():
            raise InvalidIntegrand("integrand has negative powers of x")
        if self.weight_exponent not in (1, -1):
            raise InvalidParams(f"weight exponent must be +1 or -1, got {self.weight_exponent}")
        object.__setattr__(self, "measure", Measure(self.measure))


_TABLES = {
    (Measure.Bosonic, 1): q_bernoulli,
    (Measure.Bosonic, -1): q_bernoulli_inverse,
    (Measure.Fermionic, 1): q_euler,
    (Measure.Fermionic, -1): q_euler_inverse,
}


def _moment(spec: MomentSpec) -> RatFun:
    table = _TABLES[(spec.measure, spec.weight_exponent)]
    total = ZERO
    for j, c in spec.integrand.terms().items():
        total = total + c * table(j)
    if spec.prefactor_q_power:
        total = total * Q**spec.prefactor_q_power
    return total


def bosonic_moment(spec: MomentSpec) -> RatFun:
    if spec.measure is not Measure.Bosonic:
        raise InvalidParams("bosonic_moment needs a bosonic spec")
    return _moment(spec)


def fermionic_moment(spec: MomentSpec) -> RatFun:
    if spec.measure is not Measure.Fermionic:
        raise InvalidParams("fermionic_moment needs a fermionic spec")
    return _moment(spec)


def integrate(integrand, measure: Measure | str = Measure.Bosonic, weight_exponent: int = 1,
              prefactor_q_power: int = 0) -> RatFun:
    """Shorthand: integral of integrand * q^(prefactor + weight_exponent * x)."""
    if not isinstance(integrand, XPoly):
        integrand = XPoly.constant(as_ratfun(integrand))
    return _moment(MomentSpec(integrand, weight_exponent, Measure(measure), prefactor_q_power))


def double_moment(n: int) -> RatFun:
    """n-th moment of int int q^(x+y) e^((x+y)t) dmu_{-1}(x) dmu(y).

    Binomial expansion of (x+y)^n splits the iterated integral into
    sum_l C(n,l) E_l(q) B_{n-l}(q).
    """
    if n < 0:
        raise InvalidIndex("moment index must be nonnegative")
    total = ZERO
    for l in range(n + 1):
        total = total + q_euler(l) * q_bernoulli(n - l) * comb(n, l)
    return total


def bernstein_bosonic_moment(k: int, n: int) -> RatFun:
    """int B_{k,n}(x) q^x dmu(x) = C(n,k) sum_l C(n-k,l) (-1)^l B_{k+l}(q)."""
    if k < 0 or n < 0 or k > n:
        raise InvalidIndex(f"Bernstein index requires 0 <= k <= n, got k={k}, n={n}")
    total = ZERO
    for l in range(n - k + 1):
        total = total + q_bernoulli(k + l) * (comb(n - k, l) * (-1) ** l)
    return total * comb(n, k)


def bernstein_bosonic_moment_expanded(k: int, n: int) -> RatFun:
    """Same integral, through the generic moment map applied to the expanded basis polynomial."""
    return bosonic_moment(MomentSpec(bernstein(k, n)))
