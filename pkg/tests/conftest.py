from fractions import Fraction

from hypothesis import strategies as st

from qident.exactmath import QPoly, RatFun, XPoly

small_ints = st.integers(min_value=-6, max_value=6)

qpolys = st.lists(small_ints, min_size=0, max_size=4).map(QPoly)
nonzero_qpolys = qpolys.filter(lambda p: not p.is_zero())


@st.composite
def ratfuns(draw, nonzero=False):
    num = draw(nonzero_qpolys if nonzero else qpolys)
    den = draw(nonzero_qpolys)
    return RatFun(num, den)


@st.composite
def xpolys(draw, max_degree=3):
    terms = draw(st.dictionaries(st.integers(0, max_degree), ratfuns(), max_size=3))
    return XPoly(terms)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def F(a, b=1):
    return Fraction(a, b)


# -- acceptance reporting: one PASS/FAIL line per criterion in the terminal summary

import pytest  # noqa: E402

_ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


class _Criterion:
    def __init__(self, number, title):
        self.number, self.title, self.detail = number, title, ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        detail = self.detail if exc_type is None else f"{exc_type.__name__}: {exc}"
        _ACCEPTANCE[self.number] = (status, self.title, detail.splitlines()[0] if detail else "")
        print(f"[criterion {self.number:2d}] {status}  {self.title}  {detail}")
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}  {detail}".rstrip())
