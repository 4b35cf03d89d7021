"""q-Bernoulli, q-Euler, Frobenius-Euler and Bernstein families.

Every number/polynomial family has two independent constructions:

* the *recurrence* route (umbral recurrences and binomial sums), memoised
  and used by the rest of the package, and
* the *series* route, which expands the defining generating function in
  ``TSeries`` arithmetic and reads off ``n! [t^n]``.

The two must agree exactly; the test-suite checks that they do.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import InvalidIndex, InvalidInput
from .exactmath import (
    ONE,
    Q,
    Q_INV,
    ZERO,
    RatFun,
    TSeries,
    XPoly,
    X,
    ratfun_substitute,
    series_exp,
    series_exp_xt,
    series_reciprocal,
)


class Kind(str, enum.Enum):
    QBernoulliNum = "bernoulli"
    QEulerNum = "euler"
    FrobeniusEuler = "frobenius"
    QBernoulliPoly = "bernoulli-poly"
    QEulerPoly = "euler-poly"


class Route(str, enum.Enum):
    Recurrence = "recurrence"
    Series = "series"


@dataclass(frozen=True)
class FamilyTable:
    kind: Kind
    entries: tuple
    route: Route

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, n):
        return self.entries[n]


def _check_index(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise InvalidIndex(f"index must be a natural number, got {n!r}")


# ---------------------------------------------------------------------------
# memoised recurrence tables


class _Table:
    """Append-only memo; extended under a lock, read lock-free once built."""

    def __init__(self, step):
        self._step = step
        self._values: list = []
        self._lock = threading.Lock()

    def get(self, n: int):
        _check_index(n)
        if n < len(self._values):
            return self._values[n]
        with self._lock:
            while len(self._values) <= n:
                self._values.append(self._step(self._values, len(self._values)))
        return self._values[n]

    def upto(self, n: int) -> tuple:
        self.get(n)
        return tuple(self._values[: n + 1])


def _bernoulli_step(prev: list, n: int) -> RatFun:
    # q (B+1)^n - B_n = [n == 1]  =>  (q - 1) B_n = [n == 1] - q sum_{k<n} C(n,k) B_k
    if n == 0:
        return ZERO
    acc = ZERO
    for k in range(1, n):
        acc = acc + prev[k] * comb(n, k)
    rhs = (ONE if n == 1 else ZERO) - Q * acc
    return rhs / (Q - 1)


def _euler_step(prev: list, n: int) -> RatFun:
    # q (E+1)^n + E_n = 2 [n == 0]  =>  (q + 1) E_n = 2 [n == 0] - q sum_{k<n} C(n,k) E_k
    acc = ZERO
    for k in range(n):
        acc = acc + prev[k] * comb(n, k)
    rhs = (RatFun(2) if n == 0 else ZERO) - Q * acc
    return rhs / (Q + 1)


_LAMBDA = Q_INV


def _frobenius_step(prev: list, n: int) -> RatFun:
    # (H+1)^n - lam H_n = (1 - lam) [n == 0], with lam = 1/q
    if n == 0:
        return ONE
    acc = ZERO
    for k in range(n):
        acc = acc + prev[k] * comb(n, k)
    return -acc / (1 - _LAMBDA)


_BERNOULLI = _Table(_bernoulli_step)
_EULER = _Table(_euler_step)
_FROBENIUS = _Table(_frobenius_step)
_BERNOULLI_INV = _Table(lambda prev, n: ratfun_substitute(_BERNOULLI.get(n), Q_INV))
_EULER_INV = _Table(lambda prev, n: ratfun_substitute(_EULER.get(n), Q_INV))


def _appell(numbers: Sequence[RatFun], n: int) -> XPoly:
    return XPoly({n - l: numbers[l] * comb(n, l) for l in range(n + 1)})


_BERNOULLI_POLY = _Table(lambda prev, n: _appell(_BERNOULLI.upto(n), n))
_EULER_POLY = _Table(lambda prev, n: _appell(_EULER.upto(n), n))


def q_bernoulli(n: int) -> RatFun:
    """B_n(q), the coefficients of t/(q e^t - 1)."""
    return _BERNOULLI.get(n)


def q_bernoulli_inverse(n: int) -> RatFun:
    """B_n(1/q)."""
    return _BERNOULLI_INV.get(n)


def q_euler(n: int) -> RatFun:
    """E_n(q), the coefficients of 2/(q e^t + 1)."""
    return _EULER.get(n)


def q_euler_inverse(n: int) -> RatFun:
    return _EULER_INV.get(n)


def frobenius_euler(n: int) -> RatFun:
    """H_n(1/q): coefficients of (1 - lam)/(e^t - lam) at lam = 1/q."""
    return _FROBENIUS.get(n)


def q_bernoulli_poly(n: int) -> XPoly:
    """B_n(x|q) = sum_l C(n,l) x^(n-l) B_l(q)."""
    return _BERNOULLI_POLY.get(n)


def q_euler_poly(n: int) -> XPoly:
    """E_n(x|q) = sum_l C(n,l) x^(n-l) E_l(q)."""
    return _EULER_POLY.get(n)


# ---------------------------------------------------------------------------
# generating-series oracles


def _order_for(max_n: int, order: int | None) -> int:
    # extraction of n! [t^n] for n <= max_n needs nothing beyond t^max_n; the
    # generic default (2 max_n + 4) costs ~100x more here for no benefit
    order = max_n + 1 if order is None else order
    if order < max_n:
        raise InvalidInput(f"series order {order} too small for index {max_n}")
    return order


def bernoulli_series(max_n: int, order: int | None = None) -> TSeries:
    """t/(q e^t - 1) as a truncated series."""
    order = _order_for(max_n, order)
    denominator = Q * series_exp(order) - 1
    return series_reciprocal(denominator).shift(1)


def euler_series(max_n: int, order: int | None = None) -> TSeries:
    """2/(q e^t + 1)."""
    order = _order_for(max_n, order)
    return 2 * series_reciprocal(Q * series_exp(order) + 1)


def frobenius_series(max_n: int, order: int | None = None) -> TSeries:
    """(1 - lam)/(e^t - lam) with lam = 1/q."""
    order = _order_for(max_n, order)
    return (1 - _LAMBDA) * series_reciprocal(series_exp(order) - _LAMBDA)


def _egf_entries(series: TSeries, max_n: int) -> tuple:
    return tuple(series.egf_coefficient(n) for n in range(max_n + 1))


def family_table(kind: Kind | str, max_n: int, route: Route | str = Route.Recurrence,
                 order: int | None = None) -> FamilyTable:
    kind, route = Kind(kind), Route(route)
    _check_index(max_n)
    if route is Route.Recurrence:
        getter = {
            Kind.QBernoulliNum: q_bernoulli,
            Kind.QEulerNum: q_euler,
            Kind.FrobeniusEuler: frobenius_euler,
            Kind.QBernoulliPoly: q_bernoulli_poly,
            Kind.QEulerPoly: q_euler_poly,
        }[kind]
        return FamilyTable(kind, tuple(getter(n) for n in range(max_n + 1)), route)

    if kind is Kind.QBernoulliNum:
        entries = _egf_entries(bernoulli_series(max_n, order), max_n)
    elif kind is Kind.QEulerNum:
        entries = _egf_entries(euler_series(max_n, order), max_n)
    elif kind is Kind.FrobeniusEuler:
        entries = _egf_entries(frobenius_series(max_n, order), max_n)
    else:
        base = bernoulli_series if kind is Kind.QBernoulliPoly else euler_series
        gf = base(max_n, order).truncate(max_n)
        entries = _egf_entries(gf * series_exp_xt(max_n), max_n)
    return FamilyTable(kind, entries, route)


# ---------------------------------------------------------------------------
# Bernstein basis


def bernstein(k: int, n: int) -> XPoly:
    """B_{k,n}(x) = C(n,k) x^k (1-x)^(n-k), expanded."""
    if not (isinstance(k, int) and isinstance(n, int)) or k < 0 or n < 0 or k > n:
        raise InvalidIndex(f"Bernstein index requires 0 <= k <= n, got k={k}, n={n}")
    return _BERNSTEIN_CACHE.get((k, n)) or _bernstein_build(k, n)


_BERNSTEIN_CACHE: dict[tuple[int, int], XPoly] = {}


def _bernstein_build(k: int, n: int) -> XPoly:
    m = n - k
    poly = XPoly({k + j: comb(n, k) * comb(m, j) * (-1) ** j for j in range(m + 1)})
    _BERNSTEIN_CACHE[(k, n)] = poly
    return poly


def bernstein_value(k: int, n: int, x) -> RatFun:
    return bernstein(k, n).evaluate(x)


def bernstein_operator(samples: Sequence, n: int) -> XPoly:
    """sum_k samples[k] B_{k,n}(x), where samples[k] stands for f(k/n)."""
    if len(samples) != n + 1:
        raise InvalidInput(f"expected {n + 1} samples for order {n}, got {len(samples)}")
    out = XPoly()
    for k, s in enumerate(samples):
        out = out + bernstein(k, n) * s
    return out


def reflect(p: XPoly) -> XPoly:
    """p(1 - x)."""
    return p.compose(1 - X)


__all__ = [
    "FamilyTable",
    "Kind",
    "Route",
    "bernoulli_series",
    "bernstein",
    "bernstein_operator",
    "bernstein_value",
    "euler_series",
    "family_table",
    "frobenius_euler",
    "frobenius_series",
    "q_bernoulli",
    "q_bernoulli_inverse",
    "q_bernoulli_poly",
    "q_euler",
    "q_euler_inverse",
    "q_euler_poly",
    "reflect",
]
