import itertools
import time

import pytest

from knotflag.complex import build_complex

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, seconds, note = ACCEPTANCE[key]
        terminalreporter.write_line("criterion %s: %s (%.1f s) %s" % (key, "PASS" if ok else "FAIL",
                                                                     seconds, note))


@pytest.fixture
def octahedron():
    return build_complex([[a, b, c] for a in "xX" for b in "yY" for c in "zZ"])


@pytest.fixture
def four_cycle():
    return build_complex([["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]])


@pytest.fixture
def k23():
    return build_complex([[a, x] for a in "ab" for x in "xyz"])


@pytest.fixture
def boundary_4simplex():
    return build_complex([list(s) for s in itertools.combinations("abcde", 4)])


class _Pipeline:
    """The built-in unknot run, computed once per session."""

    def __init__(self):
        from knotflag.assembly import assemble_sigma, builtin_unknot, step3_subdivide

        t = time.perf_counter()
        ext, fx = builtin_unknot()
        self.sigma0 = assemble_sigma(ext, fx)
        self.sigma = step3_subdivide(self.sigma0)
        self.build_seconds = time.perf_counter() - t
        self._cert = None
        self.verify_seconds = None

    @property
    def certificate(self):
        if self._cert is None:
            from knotflag.assembly import verify_theorem3

            t = time.perf_counter()
            self._cert = verify_theorem3(self.sigma)
            self.verify_seconds = time.perf_counter() - t
        return self._cert


@pytest.fixture(scope="session")
def unknot_pipeline():
    return _Pipeline()
