"""Power sums sum_m q^m m^j and special values of the q-zeta function.

The closed form comes from repeatedly applying the Euler operator q d/dq to
1/(1-q); it never touches the Bernoulli tables, so it can serve as an
independent oracle for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import InvalidParams
from .exactmath import ONE, Q, RatFun, parse_rational
from .qfamilies import q_bernoulli, q_bernoulli_poly


@dataclass(frozen=True)
class QValue:
    q: Fraction

    def __post_init__(self):
        q = self.q
        if isinstance(q, str):
            q = parse_rational(q)
        q = Fraction(q)
        if not 0 < q < 1:
            raise InvalidParams(f"q must satisfy 0 < q < 1, got {q}")
        object.__setattr__(self, "q", q)


QLike = Union[QValue, Fraction, int, str]


def _qv(q: QLike) -> Fraction:
    return q.q if isinstance(q, QValue) else QValue(q).q


_CLOSED: list[RatFun] = [ONE / (1 - Q)]


def power_sum_closed(j: int) -> RatFun:
    """sum_{m>=0} m^j q^m = (q d/dq)^j 1/(1-q), as a rational function."""
    if j < 0:
        raise InvalidParams("power must be nonnegative")
    while len(_CLOSED) <= j:
        _CLOSED.append(Q * _CLOSED[-1].derivative())
    return _CLOSED[j]


def power_sum_truncated(j: int, q: QLike, terms: int) -> Fraction:
    """Exact partial sum sum_{0<=m<terms} q^m m^j."""
    if terms < 1:
        raise InvalidParams("terms must be at least 1")
    qv = _qv(q)
    total = Fraction(0)
    qm = Fraction(1)
    for m in range(terms):
        total += qm * m**j
        qm *= qv
    return total


def power_sum_tail_bound(j: int, q: QLike, terms: int) -> Fraction:
    """Upper bound q^M M^j / (1-q)^(j+1) on the tail beyond M = terms; valid when M > j/(1-q)."""
    qv = _qv(q)
    if not terms > j / (1 - qv):
        raise InvalidParams(f"tail bound needs terms > j/(1-q) = {j / (1 - qv)}")
    return qv**terms * terms**j / (1 - qv) ** (j + 1)


class ZetaPartial(NamedTuple):
    value: Fraction
    tail_bound: Fraction


def qzeta_series(s: int, q: QLike, terms: int) -> ZetaPartial:
    """sum_{1<=m<=terms} q^m / m^s with the geometric tail bound q^(terms+1)/(1-q)."""
    if not isinstance(s, int) or s < 2:
        raise InvalidParams("s must be an integer >= 2")
    if terms < 1:
        raise InvalidParams("terms must be at least 1")
    qv = _qv(q)
    total = Fraction(0)
    qm = Fraction(1)
    for m in range(1, terms + 1):
        qm *= qv
        total += qm / m**s
    return ZetaPartial(total, qv ** (terms + 1) / (1 - qv))


class ZetaSpecial(NamedTuple):
    printed: RatFun
    oracle: RatFun

    @property
    def agrees(self) -> bool:
        return self.printed == self.oracle


def qzeta_printed_formula(n: int) -> RatFun:
    """zeta_q(1-n) as printed: (-1)^n q B_n(1|q)/n, i.e. -(1+B_1(q)) at n=1 and (-1)^n B_n(q)/n beyond."""
    if n < 1:
        raise InvalidParams("zeta_q(1-n) needs n >= 1 (simple pole at s = 1)")
    return Q * q_bernoulli_poly(n).evaluate(1) * Fraction((-1) ** n, n)


def qzeta_oracle(n: int) -> RatFun:
    """zeta_q(1-n) = sum_{m>=1} q^m m^(n-1) from the operator closed form."""
    if n < 1:
        raise InvalidParams("zeta_q(1-n) needs n >= 1 (simple pole at s = 1)")
    value = power_sum_closed(n - 1)
    if n == 1:
        value = value - 1  # drop the m = 0 term 0^0
    return value


def qzeta_special(n: int) -> ZetaSpecial:
    return ZetaSpecial(qzeta_printed_formula(n), qzeta_oracle(n))


def bernoulli_power_sum(j: int) -> RatFun:
    """-B_{j+1}(q)/(j+1): what power_sum_closed(j) should equal."""
    return -q_bernoulli(j + 1) / (j + 1)
