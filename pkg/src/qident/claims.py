"""Catalog of identities and their exact residual audit.

Every claim is a pair of expression builders (left and right side) over the
family tables, the moment calculus and the Lerch oracle.  A claim may carry
several *variants*: the reading exactly as printed plus labelled repaired
readings where the printed statement is internally inconsistent.  A verdict
records ``LHS - RHS`` in canonical form; the status is HOLDS exactly when
that residual is zero.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, prod
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InvalidParams, UnknownClaim
from .exactmath import Q, Q_INV, Q_SQUARED, X, ZERO, RatFun, XPoly, ratfun_substitute
from .lerch import power_sum_closed, qzeta_oracle, qzeta_printed_formula
from .moments import double_moment, integrate
from .report import Report
from .qfamilies import (
    bernstein,
    frobenius_euler,
    q_bernoulli,
    q_bernoulli_inverse,
    q_bernoulli_poly,
    q_euler,
    q_euler_poly,
    reflect,
)

HOLDS = "HOLDS"
FAILS = "FAILS"

HALF = Fraction(1, 2)

Params = Mapping[str, object]
Value = RatFun | XPoly


# ---------------------------------------------------------------------------
# building blocks


B = q_bernoulli
E = q_euler
B_inv = q_bernoulli_inverse


@lru_cache(maxsize=None)
def B_sq(n: int) -> RatFun:
    return ratfun_substitute(B(n), Q_SQUARED)


@lru_cache(maxsize=None)
def E_sq(n: int) -> RatFun:
    return ratfun_substitute(E(n), Q_SQUARED)


@lru_cache(maxsize=None)
def bern_half(k: int, n: int) -> RatFun:
    """B_{k,n}(1/2) by evaluating the basis polynomial."""
    return bernstein(k, n).evaluate(HALF)


def bern_half_loose(k: int, n: int) -> RatFun:
    """B_{k,n}(1/2) with the binomial convention C(n,k) = 0 for k > n."""
    return bern_half(k, n) if k <= n else ZERO


@lru_cache(maxsize=None)
def power_sum_q2(j: int) -> RatFun:
    """sum_{m>=0} q^(2m) m^j from the operator closed form."""
    return ratfun_substitute(power_sum_closed(j), Q_SQUARED)


def rsum(terms: Iterable[RatFun]) -> RatFun:
    total = ZERO
    for t in terms:
        total = total + t
    return total


def euler_bernoulli_convolution(n: int) -> RatFun:
    """sum_l C(n,l) E_l(q) B_{n-l}(q), read off the family tables directly."""
    return rsum(E(l) * B(n - l) * comb(n, l) for l in range(n + 1))


def sign(k: int) -> int:
    return -1 if k % 2 else 1


# ---------------------------------------------------------------------------
# catalog data model


@dataclass(frozen=True)
class Bounds:
    max_n: int = 10
    max_k: int = 5
    max_s: int = 3

    def __post_init__(self):
        if min(self.max_n, self.max_k, self.max_s) < 1:
            raise InvalidParams("catalog bounds must be >= 1")


@dataclass(frozen=True)
class Variant:
    label: str
    params: tuple[str, ...]
    grid: Callable[[Bounds], Iterable[dict]]
    valid: Callable[..., bool]
    lhs: Callable[..., Value]
    rhs: Callable[..., Value]


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    variants: tuple[Variant, ...]

    def variant(self, label: str) -> Variant:
        for v in self.variants:
            if v.label == label:
                return v
        raise KeyError(label)


@dataclass(frozen=True)
class Verdict:
    claim: str
    variant: str
    params: dict
    status: str
    residual: str

    def to_record(self) -> dict:
        return {
            "claim": self.claim,
            "variant": self.variant,
            "params": dict(sorted(self.params.items())),
            "status": self.status,
            "residual": self.residual,
        }

    @classmethod
    def from_record(cls, record: Mapping) -> "Verdict":
        params = {k: tuple(v) if isinstance(v, list) else v for k, v in record["params"].items()}
        return cls(record["claim"], record["variant"], params, record["status"], record["residual"])

    def key(self) -> tuple:
        return (claim_sort_key(self.claim), params_sort_key(self.params), self.variant)


_ID = re.compile(r"([A-Z]+)(\d*)(.*)")


def claim_sort_key(claim_id: str) -> tuple:
    m = _ID.fullmatch(claim_id)
    if not m:
        return (claim_id, 0, "")
    return (m.group(1), int(m.group(2) or 0), m.group(3))


def params_sort_key(params: Mapping) -> tuple:
    return tuple((k, params[k]) for k in sorted(params))


# ---------------------------------------------------------------------------
# grids


def _n_grid(lo: int, hi_offset: int = 0, cond: Callable[[int], bool] = lambda n: True):
    def grid(b: Bounds):
        return [{"n": n} for n in range(lo, b.max_n + 1 - hi_offset) if cond(n)]
    return grid


def _nat(*values) -> bool:
    return all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in values)


def _nk_grid(cond):
    def grid(b: Bounds):
        return [
            {"n": n, "k": k}
            for n in range(b.max_n + 1)
            for k in range(min(b.max_k, n) + 1)
            if cond(n, k)
        ]
    return grid


def _nmk_grid(cond):
    def grid(b: Bounds):
        return [
            {"n": n, "m": m, "k": k}
            for n in range(b.max_n + 1)
            for m in range(b.max_n + 1)
            for k in range(b.max_k + 1)
            if cond(n, m, k)
        ]
    return grid


def _multi_max(b: Bounds) -> int:
    return max(1, b.max_n // 2)


def _multi_grid(cond):
    def grid(b: Bounds):
        out = []
        for s in range(2, b.max_s + 1):
            for ns in combinations_with_replacement(range(_multi_max(b) + 1), s):
                for k in range(b.max_k + 1):
                    if cond(s, k, ns):
                        out.append({"s": s, "k": k, "ns": ns})
        return out
    return grid


def _multi_valid(cond):
    def valid(s, k, ns):
        if not (_nat(s, k) and isinstance(ns, tuple) and len(ns) == s and _nat(*ns) and s >= 1):
            return False
        return cond(s, k, ns)
    return valid


# ---------------------------------------------------------------------------
# the catalog


def _v(label, params, grid, valid, lhs, rhs) -> Variant:
    return Variant(label, tuple(params), grid, valid, lhs, rhs)


def _build_catalog() -> dict[str, Claim]:
    claims: list[Claim] = []

    def add(cid, statement, *variants):
        claims.append(Claim(cid, statement, tuple(variants)))

    any_n = lambda n: _nat(n)  # noqa: E731
    n_gt1 = lambda n: _nat(n) and n > 1  # noqa: E731

    # -- Frobenius-Euler link
    add(
        "P1",
        "B_{n+1}(q)/(n+1) = H_n(q^-1)/(q(1-q^-1)) = H_n(q^-1)/(q-1)",
        _v("as-stated", "n", _n_grid(0, 1), any_n,
           lambda n: B(n + 1) / (n + 1),
           lambda n: frobenius_euler(n) / (Q * (1 - Q_INV))),
        _v("simplified", "n", _n_grid(0, 1), any_n,
           lambda n: B(n + 1) / (n + 1),
           lambda n: frobenius_euler(n) / (Q - 1)),
    )

    # -- reflection
    add(
        "T2",
        "q B_n(1-x|q) = (-1)^n B_n(x|q^-1)",
        _v("as-stated", "n", _n_grid(0), any_n,
           lambda n: reflect(q_bernoulli_poly(n)) * Q,
           lambda n: q_bernoulli_poly(n).substitute_q(Q_INV) * sign(n)),
    )

    add(
        "T3",
        "q^2 B_n(2|q) = B_n(q) for n > 1",
        _v("as-stated", "n", _n_grid(2), n_gt1,
           lambda n: q_bernoulli_poly(n).evaluate(2) * Q**2,
           lambda n: B(n)),
    )

    add(
        "T4",
        "int q^-x (1-x)^n dmu = q^-1 int x^n q^x dmu for n > 1",
        _v("as-stated", "n", _n_grid(2), n_gt1,
           lambda n: integrate((1 - X) ** n, weight_exponent=-1),
           lambda n: integrate(X**n) / Q),
    )

    add(
        "E26a",
        "q E_n(2|q) = 2 + q^-1 E_n(q)",
        _v("as-stated", "n", _n_grid(0), any_n,
           lambda n: q_euler_poly(n).evaluate(2) * Q,
           lambda n: 2 + E(n) / Q),
    )

    add(
        "E26b",
        "int q^-x (1-x)^n dmu_-1 = 2 + q^-1 int x^n q^x dmu_-1",
        _v("as-stated", "n", _n_grid(0), any_n,
           lambda n: integrate((1 - X) ** n, "fermionic", -1),
           lambda n: 2 + integrate(X**n, "fermionic") / Q),
    )

    add(
        "P5",
        "B_n(1-x|q) = sum_l B_{l,n}(x) B_l(q) x^-l",
        _v("as-stated", "n", _n_grid(0), any_n,
           lambda n: reflect(q_bernoulli_poly(n)),
           lambda n: _p5_rhs(n)),
    )

    # -- mixed bosonic/fermionic double integral
    add(
        "T6",
        "2^-n int int q^(x+y) (x+y)^(n+1) dmu_-1(x) dmu(y) = B_n(q^2)",
        _v("as-stated", "n", _n_grid(0, 1), any_n,
           lambda n: double_moment(n + 1) / 2**n,
           lambda n: B_sq(n)),
        _v("exponent-n", "n", _n_grid(0, 1), any_n,
           lambda n: double_moment(n) / 2**n,
           lambda n: B_sq(n)),
    )

    add(
        "C7",
        "2^-n sum_l C(n,l) E_l(q) B_{n-l}(q) = B_n(q^2)",
        _v("as-stated", "n", _n_grid(0), any_n,
           lambda n: euler_bernoulli_convolution(n) / 2**n,
           lambda n: B_sq(n)),
    )

    add(
        "L8",
        "B_{k,n}(1/2) = 2^-n C(n,k)",
        _v("as-stated", "nk", _nk_grid(lambda n, k: True), lambda n, k: _nat(n, k) and k <= n,
           lambda n, k: bern_half(k, n),
           lambda n, k: RatFun(Fraction(comb(n, k), 2**n))),
    )

    add(
        "C9",
        "B_n(q^2) = sum_l B_{l,n}(1/2) E_l(q) B_{n-l}(q)",
        _v("as-stated", "n", _n_grid(0), any_n,
           lambda n: B_sq(n),
           lambda n: rsum(bern_half(l, n) * E(l) * B(n - l) for l in range(n + 1))),
    )

    # -- power sums sum_m q^(2m) m^n
    add(
        "T10",
        "-(2^(n+1)(n+1))^-1 int int q^(x+y) (x+y)^n dmu_-1(x) dmu(y) = sum_m q^(2m) m^n",
        _v("as-stated", "n", _n_grid(0, 1), any_n,
           lambda n: -double_moment(n) / (2 ** (n + 1) * (n + 1)),
           lambda n: power_sum_q2(n)),
        _v("exponent-n+1", "n", _n_grid(0, 1), any_n,
           lambda n: -double_moment(n + 1) / (2 ** (n + 1) * (n + 1)),
           lambda n: power_sum_q2(n)),
    )

    add(
        "C11",
        "sum_m q^(2m) m^n = -(2^(n+1)(n+1))^-1 sum_{l<=n+1} C(n+1,l) E_l(q) B_{n+1-l}(q)",
        _v("as-stated", "n", _n_grid(0, 1), any_n,
           lambda n: power_sum_q2(n),
           lambda n: -euler_bernoulli_convolution(n + 1) / (2 ** (n + 1) * (n + 1))),
    )

    add(
        "C12",
        "sum_m q^(2m) m^n = -(n+1)^-1 sum_{l<=n+1} B_{n+1,l}(1/2) E_l(q) B_{n+1-l}(q)",
        _v("as-stated", "n", _n_grid(0, 1), any_n,
           lambda n: power_sum_q2(n),
           lambda n: -rsum(bern_half_loose(n + 1, l) * E(l) * B(n + 1 - l)
                           for l in range(n + 2)) / (n + 1)),
        _v("index-swapped", "n", _n_grid(0, 1), any_n,
           lambda n: power_sum_q2(n),
           lambda n: -rsum(bern_half(l, n + 1) * E(l) * B(n + 1 - l)
                           for l in range(n + 2)) / (n + 1)),
    )

    # -- Bernstein integrals
    t13_ok = lambda n, k: _nat(n, k) and k <= n and n > k + 1  # noqa: E731
    t13_rhs = lambda n, k: rsum(  # noqa: E731
        bern_half(l, k) * B(n - l) * sign(k - l) for l in range(k + 1)
    ) * (2**k * comb(n, k))
    add(
        "T13",
        "int B_{k,n}(x) q^(1-x) dmu = 2^k C(n,k) sum_{l<=k} B_{l,k}(1/2) (-1)^(k-l) B_{n-l}(q), n > k+1",
        _v("as-stated", "nk", _nk_grid(t13_ok), t13_ok,
           lambda n, k: integrate(bernstein(k, n), weight_exponent=-1, prefactor_q_power=1),
           t13_rhs),
        _v("weight-q^x", "nk", _nk_grid(t13_ok), t13_ok,
           lambda n, k: integrate(bernstein(k, n)),
           t13_rhs),
    )

    c14_rhs = lambda n, k: rsum(  # noqa: E731
        bern_half(l, n - k) * B(k + l) * sign(l) for l in range(n - k + 1)
    ) * (Q * 2**n)

    def c14_grid_l(b: Bounds):
        return [dict(p, l=l) for p in _nk_grid(t13_ok)(b) for l in range(p["k"] + 1)]

    add(
        "C14",
        "2^(2k) C(n,k) B_{l,k}(1/2) (-1)^(k-l) B_{n-l}(q) = 2^n q sum_{l<=n-k} B_{l,n-k}(1/2) (-1)^l B_{k+l}(q), n > k+1",
        _v("as-stated", ("n", "k", "l"), c14_grid_l,
           lambda n, k, l: t13_ok(n, k) and _nat(l) and l <= k,
           lambda n, k, l: bern_half(l, k) * B(n - l) * (sign(k - l) * 4**k * comb(n, k)),
           lambda n, k, l: c14_rhs(n, k)),
        _v("sum-restored", "nk", _nk_grid(t13_ok), t13_ok,
           lambda n, k: rsum(bern_half(l, k) * B(n - l) * sign(k - l)
                             for l in range(k + 1)) * (4**k * comb(n, k)),
           c14_rhs),
    )

    t15_ok = lambda n, m, k: _nat(n, m, k) and k <= n and k <= m and n + m > k + 1  # noqa: E731
    add(
        "T15",
        "int B_{k,n}(x) B_{k,m}(x) q^(1-x) dmu = C(n,k) C(m,k) 2^(2k) sum_{l<=2k} B_{l,2k}(1/2) (-1)^(l+2k) B_{n+m-l}(q), n+m > k+1",
        _v("as-stated", "nmk", _nmk_grid(t15_ok), t15_ok,
           lambda n, m, k: integrate(bernstein(k, n) * bernstein(k, m),
                                     weight_exponent=-1, prefactor_q_power=1),
           lambda n, m, k: rsum(bern_half(l, 2 * k) * B(n + m - l) * sign(l)
                                for l in range(2 * k + 1)) * (comb(n, k) * comb(m, k) * 4**k)),
    )

    c16_ok = lambda n, m, k: _nat(n, m, k) and n + m > 2 * k + 1  # noqa: E731
    add(
        "C16",
        "2^(4k) sum_{l<=2k} (-1)^(l+2k) B_{l,2k}(1/2) B_{n+m-l}(q) = 2^(n+m) q sum_{l<=n+m-2k} (-1)^l B_{l,n+m-2k}(1/2) B_{l+2k}(q^-1), n+m > 2k+1",
        _v("as-stated", "nmk", _nmk_grid(c16_ok), c16_ok,
           lambda n, m, k: rsum(bern_half(l, 2 * k) * B(n + m - l) * sign(l)
                                for l in range(2 * k + 1)) * 16**k,
           lambda n, m, k: rsum(bern_half(l, n + m - 2 * k) * B_inv(l + 2 * k) * sign(l)
                                for l in range(n + m - 2 * k + 1)) * (Q * 2 ** (n + m))),
    )

    t17_ok = _multi_valid(lambda s, k, ns: k <= min(ns) and sum(ns) > s * k + 1)
    add(
        "T17",
        "int prod_i B_{k,n_i}(x) q^(1-x) dmu = prod_i C(n_i,k) 2^(sk) sum_{l<=sk} (-1)^(sk+l) B_{l,sk}(1/2) B_{N-l}(q), N = sum n_i > sk+1",
        _v("as-stated", ("s", "k", "ns"), _multi_grid(t17_ok), t17_ok,
           lambda s, k, ns: integrate(_bernstein_product(k, ns), weight_exponent=-1,
                                      prefactor_q_power=1),
           lambda s, k, ns: rsum(bern_half(l, s * k) * B(sum(ns) - l) * sign(s * k + l)
                                 for l in range(s * k + 1))
           * (prod(comb(n, k) for n in ns) * 2 ** (s * k))),
    )

    c18_ok = _multi_valid(lambda s, k, ns: sum(ns) > s * k + 1)
    add(
        "C18",
        "2^(N-2sk) q sum_{l<=N-sk} (-1)^l B_{l,N-sk}(1/2) B_{l+sk}(q^-1) = sum_{l<=sk} B_{l,sk}(1/2) (-1)^(l+sk) B_{N-l}(q), N = sum n_i > sk+1",
        _v("as-stated", ("s", "k", "ns"), _multi_grid(c18_ok), c18_ok,
           lambda s, k, ns: rsum(bern_half(l, sum(ns) - s * k) * B_inv(l + s * k) * sign(l)
                                 for l in range(sum(ns) - s * k + 1))
           * (Q * Fraction(2) ** (sum(ns) - 2 * s * k)),
           lambda s, k, ns: rsum(bern_half(l, s * k) * B(sum(ns) - l) * sign(l + s * k)
                                 for l in range(s * k + 1))),
    )

    # -- q-zeta special values
    n_ge1 = lambda n: _nat(n) and n >= 1  # noqa: E731
    add(
        "Z40",
        "zeta_q(1-n) = (-1)^n q B_n(1|q)/n",
        _v("as-stated", "n", _n_grid(1), n_ge1,
           qzeta_printed_formula, qzeta_oracle),
        _v("unsigned", "n", _n_grid(1), n_ge1,
           lambda n: Q * q_bernoulli_poly(n).evaluate(1) / n, qzeta_oracle),
        _v("negated", "n", _n_grid(1), n_ge1,
           lambda n: -Q * q_bernoulli_poly(n).evaluate(1) / n, qzeta_oracle),
    )

    add(
        "Z42",
        "2^n B_n(q^2) = sum_l C(n,l) B_l(q) E_{n-l}(q)",
        _v("as-stated", "n", _n_grid(0), any_n,
           lambda n: B_sq(n) * 2**n,
           lambda n: rsum(B(l) * E(n - l) * comb(n, l) for l in range(n + 1))),
    )

    add(
        "Z43",
        "B_n(q^2) = 2^-n sum_l C(n,l) B_l(q) E_{n-l}(q)",
        _v("as-stated", "n", _n_grid(0), any_n,
           lambda n: B_sq(n),
           lambda n: rsum(B(l) * E(n - l) * comb(n, l) for l in range(n + 1)) / 2**n),
    )

    zeta_q2 = lambda n: power_sum_q2(n) - (1 if n == 0 else 0)  # noqa: E731
    add(
        "ZF",
        "zeta_{q^2}(-n) = (-1)^(n+1) q^2 B_{n+1}(q^2)/(n+1) = -(-1)^n B_{n+1}(q^2)/(n+1) "
        "= -(-1)^n (2^(n+1)(n+1))^-1 sum_l C(n+1,l) B_l(q^2) E_{n+1-l}(q^2)",
        _v("as-stated", "n", _n_grid(0, 1), any_n,
           lambda n: B_sq(n + 1) * Q**2 * Fraction(sign(n + 1), n + 1),
           zeta_q2),
        _v("middle-form", "n", _n_grid(0, 1), any_n,
           lambda n: B_sq(n + 1) * Fraction(-sign(n), n + 1),
           zeta_q2),
        _v("sum-form", "n", _n_grid(0, 1), any_n,
           lambda n: rsum(B_sq(l) * E_sq(n + 1 - l) * comb(n + 1, l) for l in range(n + 2))
           * Fraction(-sign(n), 2 ** (n + 1) * (n + 1)),
           zeta_q2),
    )

    return {c.id: c for c in claims}


def _p5_rhs(n: int) -> XPoly:
    total = XPoly()
    for l in range(n + 1):
        total = total + bernstein(l, n) * B(l) * X ** (-l)
    return total


def _bernstein_product(k: int, ns: Sequence[int]) -> XPoly:
    out = XPoly.constant(1)
    for n in ns:
        out = out * bernstein(k, n)
    return out


CATALOG: dict[str, Claim] = _build_catalog()
CLAIM_IDS: tuple[str, ...] = tuple(sorted(CATALOG, key=claim_sort_key))


def get_claim(claim_id: str) -> Claim:
    try:
        return CATALOG[claim_id]
    except KeyError:
        raise UnknownClaim(claim_id) from None


# ---------------------------------------------------------------------------
# evaluation


def _normalize_params(params: Params) -> dict:
    out = {}
    for k, v in params.items():
        out[k] = tuple(v) if isinstance(v, list) else v
    return out


def _evaluate(claim: Claim, variant: Variant, params: dict) -> Verdict:
    args = [params[name] for name in variant.params]
    if not variant.valid(*args):
        raise InvalidParams(f"{claim.id}/{variant.label}: parameters {params} out of range")
    diff = variant.lhs(*args) - variant.rhs(*args)
    status = FAILS if diff else HOLDS
    return Verdict(claim.id, variant.label, {k: params[k] for k in variant.params}, status, str(diff))


def verify_claim(claim_id: str, params: Params | None = None, **kwargs) -> list[Verdict]:
    """Evaluate every variant of a claim whose parameters are all supplied."""
    claim = get_claim(claim_id)
    params = _normalize_params({**(params or {}), **kwargs})
    verdicts = [
        _evaluate(claim, v, params) for v in claim.variants if set(v.params) <= set(params)
    ]
    if not verdicts:
        needed = sorted({p for v in claim.variants for p in v.params})
        raise InvalidParams(f"{claim_id} needs parameters {needed}, got {sorted(params)}")
    return verdicts


def residual(claim_id: str, params: Params | None = None, **kwargs) -> str:
    """Canonical residual of the as-stated reading."""
    return verify_claim(claim_id, params, **kwargs)[0].residual


def catalog_tasks(bounds: Bounds, claim_ids: Sequence[str] | None = None):
    ids = CLAIM_IDS if claim_ids is None else claim_ids
    tasks = []
    for cid in ids:
        claim = get_claim(cid)
        for v in claim.variants:
            for params in v.grid(bounds):
                tasks.append((claim, v, params))
    return tasks


def summarize(verdicts: Sequence[Verdict]) -> dict:
    per_claim: dict[str, dict[str, int]] = {}
    totals = {HOLDS: 0, FAILS: 0}
    for v in verdicts:
        key = f"{v.claim}/{v.variant}"
        counts = per_claim.setdefault(key, {HOLDS: 0, FAILS: 0})
        counts[v.status] += 1
        totals[v.status] += 1
    return {"total": totals, "by_variant": dict(sorted(per_claim.items(),
                                                       key=lambda kv: (claim_sort_key(kv[0].split("/")[0]), kv[0])))}


def run_catalog(max_n: int = 10, max_k: int = 5, max_s: int = 3,
                claims: Sequence[str] | None = None, workers: int = 1) -> Report:
    bounds = Bounds(max_n, max_k, max_s)
    if claims is not None:
        for cid in claims:
            get_claim(cid)
    tasks = catalog_tasks(bounds, claims)

    def run(task):
        claim, variant, params = task
        return _evaluate(claim, variant, params)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(run, tasks))
    else:
        verdicts = [run(t) for t in tasks]
    verdicts.sort(key=Verdict.key)
    return Report(
        subcommand="verify",
        parameters={
            "claims": list(claims) if claims is not None else "all",
            "max_k": max_k,
            "max_n": max_n,
            "max_s": max_s,
        },
        records=verdicts,
        summary=summarize(verdicts),
    )
