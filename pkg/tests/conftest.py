import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nielsen_h1.automorphisms import SYMBOLS, GenWord

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def letters(n, max_size=14):
    return st.lists(st.integers(1, n).flatmap(lambda i: st.sampled_from([i, -i])), max_size=max_size)


def genwords(max_size=10):
    letter = st.tuples(st.sampled_from(SYMBOLS), st.sampled_from([1, -1]))
    return st.lists(letter, max_size=max_size).map(GenWord)


# acceptance criteria report: one line per criterion at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {text}")
