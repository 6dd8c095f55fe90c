from __future__ import annotations

from hypothesis import HealthCheck, settings, strategies as st

from motivic.exactalg import EPoly

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def epolys(max_terms: int = 4, span: int = 6, coeff: int = 9, integral: bool = False):
    """Random EPoly with doubled exponents in [-span, span] and coefficients in [-coeff, coeff]."""
    exps = st.integers(-span, span)
    if integral:
        exps = exps.map(lambda e: 2 * (e // 2))
    key = st.tuples(exps, exps)
    return st.dictionaries(key, st.integers(-coeff, coeff), max_size=max_terms).map(EPoly)


def nonzero_epolys(**kw):
    return epolys(**kw).filter(bool)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
