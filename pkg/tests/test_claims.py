import json

import pytest

from qident.claims import (
    CATALOG,
    CLAIM_IDS,
    FAILS,
    HOLDS,
    Verdict,
    claim_sort_key,
    residual,
    run_catalog,
    verify_claim,
)
from qident.errors import InvalidParams, UnknownClaim
from qident.exactmath import Q, Q_SQUARED, ratfun_substitute
from qident.lerch import power_sum_closed
from qident.qfamilies import q_bernoulli

q = Q


def statuses(cid, **params):
    return {v.variant: v.status for v in verify_claim(cid, params)}


def test_catalog_ids():
    assert set(CATALOG) == {
        "P1", "T2", "T3", "T4", "P5", "T6", "C7", "L8", "C9", "T10", "C11", "C12",
        "E26a", "E26b", "T13", "C14", "T15", "C16", "T17", "C18", "Z40", "Z42", "Z43", "ZF",
    }
    for c in CATALOG.values():
        assert c.variants[0].label == "as-stated"


def test_examples():
    [v] = verify_claim("T2", n=2)
    assert (v.status, v.residual) == (HOLDS, "0")
    [v] = verify_claim("T3", n=2)
    assert (v.status, v.residual) == (FAILS, "2*q")
    [v] = verify_claim("C7", n=1)
    assert v.status == HOLDS
    [v] = verify_claim("L8", n=6, k=2)
    assert v.status == HOLDS
    assert residual("T3", n=3) == "3*q"
    assert residual("T2", n=5) == "0"
    assert residual("Z40", n=2) == "(-2*q)/(q^2 - 2*q + 1)"


def test_errors():
    with pytest.raises(UnknownClaim):
        verify_claim("T99", n=1)
    with pytest.raises(InvalidParams):
        verify_claim("T3", n=1)
    with pytest.raises(InvalidParams):
        verify_claim("L8", n=2, k=3)
    with pytest.raises(InvalidParams):
        verify_claim("T13", n=3, k=2)
    with pytest.raises(InvalidParams):
        verify_claim("L8", n=2)
    with pytest.raises(InvalidParams):
        verify_claim("T2", n=-1)


@pytest.mark.parametrize("cid", ["P1", "T2", "P5", "C7", "C9", "C11", "Z42", "Z43"])
@pytest.mark.parametrize("n", range(13))
def test_holding_claims(cid, n):
    assert set(statuses(cid, n=n).values()) == {HOLDS}


@pytest.mark.parametrize("n", range(13))
def test_lemma8_grid(n):
    for k in range(n + 1):
        assert statuses("L8", n=n, k=k) == {"as-stated": HOLDS}


@pytest.mark.parametrize("n", range(13))
def test_c12_readings(n):
    s = statuses("C12", n=n)
    assert s["index-swapped"] == HOLDS
    assert s["as-stated"] == FAILS


@pytest.mark.parametrize("n", range(1, 13))
def test_e26a(n):
    assert statuses("E26a", n=n)["as-stated"] == HOLDS


def test_e26a_at_zero():
    assert residual("E26a", n=0) == "(-2)/(q)"


@pytest.mark.parametrize("n", range(2, 13))
def test_t3_residual_is_nq(n):
    assert residual("T3", n=n) == str(n * q)


@pytest.mark.parametrize("n", range(2, 13))
def test_t4_residual(n):
    assert residual("T4", n=n) == str(n)


@pytest.mark.parametrize("n", range(1, 13))
def test_z40(n):
    s = statuses("Z40", n=n)
    assert s["as-stated"] == (FAILS if n % 2 == 0 else HOLDS)
    assert s["negated"] == HOLDS


@pytest.mark.parametrize("n", range(13))
def test_t6_exactly_one_reading(n):
    s = statuses("T6", n=n)
    assert s == {"as-stated": FAILS, "exponent-n": HOLDS}
    assert statuses("C7", n=n) == {"as-stated": HOLDS}


@pytest.mark.parametrize("n", range(11))
def test_t10_readings(n):
    assert statuses("T10", n=n) == {"as-stated": FAILS, "exponent-n+1": HOLDS}


@pytest.mark.parametrize("n", range(11))
def test_c11_sum_is_bernoulli(n):
    target = -ratfun_substitute(q_bernoulli(n + 1), Q_SQUARED) / (n + 1)
    assert target == ratfun_substitute(power_sum_closed(n), Q_SQUARED)
    assert statuses("C11", n=n) == {"as-stated": HOLDS}


def test_c14_variant_selection():
    assert set(statuses("C14", n=5, k=2)) == {"sum-restored"}
    assert set(statuses("C14", n=5, k=2, l=1)) == {"as-stated", "sum-restored"}


def test_multi_params_accept_lists():
    a = verify_claim("T17", s=2, k=1, ns=[2, 3])
    b = verify_claim("T17", s=2, k=1, ns=(2, 3))
    assert a == b
    with pytest.raises(InvalidParams):
        verify_claim("T17", s=3, k=1, ns=[2, 3])


def test_xpoly_residual_renders():
    assert residual("P5", n=4) == "0"


def test_minimal_run():
    r = run_catalog(1, 1, 2)
    keys = {(v.claim, tuple(sorted(v.params.items()))) for v in r.records}
    assert ("P1", (("n", 0),)) in keys
    assert {("C7", (("n", n),)) for n in (0, 1)} <= keys
    assert {("T2", (("n", n),)) for n in (0, 1)} <= keys
    assert {("L8", (("k", k), ("n", n))) for n in (0, 1) for k in range(n + 1)} <= keys
    assert ("P1", (("n", 1),)) not in keys


def test_run_sorted_and_deterministic():
    a = run_catalog(4, 2, 2)
    b = run_catalog(4, 2, 2, workers=4)
    assert a.records == b.records
    assert a.records == sorted(a.records, key=Verdict.key)
    ids = [v.claim for v in a.records]
    assert ids == sorted(ids, key=claim_sort_key)
    assert sum(a.summary["total"].values()) == len(a.records)


def test_status_matches_residual():
    for v in run_catalog(5, 2, 2).records:
        assert (v.status == HOLDS) == (v.residual == "0")
        json.dumps(v.to_record())


def test_record_roundtrip():
    [v] = verify_claim("T17", s=2, k=1, ns=(2, 3))
    rec = json.loads(json.dumps(v.to_record()))
    assert Verdict.from_record(rec) == v


def test_claim_order():
    assert CLAIM_IDS.index("C7") < CLAIM_IDS.index("C11")
    assert CLAIM_IDS.index("E26a") < CLAIM_IDS.index("E26b")


def test_shipped_manifest_agrees_with_oracles():
    from qident.cli import golden_manifest_path

    recs = [json.loads(line) for line in golden_manifest_path().read_text().splitlines()]
    verdicts = [Verdict.from_record(r) for r in recs if "claim" in r]
    assert verdicts == sorted(verdicts, key=Verdict.key)
    for v in verdicts:
        assert (v.status == HOLDS) == (v.residual == "0")
        if v.claim == "T3":
            assert v.residual == str(v.params["n"] * q)
        if v.claim in ("P1", "T2", "P5", "C7", "L8", "C9", "C11", "Z42", "Z43"):
            assert v.status == HOLDS
        if v.claim == "Z40" and v.variant == "as-stated":
            assert v.status == (FAILS if v.params["n"] % 2 == 0 else HOLDS)
