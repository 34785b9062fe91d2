import functools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from fiax.cli import builtin_text, load_algebra, run  # noqa: E402
from fiax.engine import DA  # noqa: E402

VALID = ("dual_numbers", "kx3", "fp_cp", "brauer_line_n2")

# criterion number -> (verdict, text); filled by test_acceptance, printed at the end
ACCEPTANCE = {}


@functools.lru_cache(maxsize=None)
def algebra(name, field=None):
    return load_algebra(builtin_text(name), field)


@functools.lru_cache(maxsize=None)
def ctx_for(name, field=None):
    return DA(algebra(name, field))


@functools.lru_cache(maxsize=None)
def full_report(name, field=None, seed=0):
    """All suites on a builtin; shared across test modules (the slow part)."""
    return run(name, "all", field, seed)


@pytest.fixture(params=VALID)
def builtin(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line("criterion %2d: %s  %s" % (k, "PASS" if ok else "FAIL", text))
