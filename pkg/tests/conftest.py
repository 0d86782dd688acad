import numpy as np
import pytest

from sdcodes import codes, hadamard


@pytest.fixture(scope="session")
def qr20():
    return codes.extend_qr20()


@pytest.fixture(scope="session")
def s1():
    return hadamard.paley_skew_hadamard(19)


@pytest.fixture(scope="session")
def s2():
    return hadamard.load_s2()


@pytest.fixture(scope="session")
def code_s1(s1):
    return hadamard.hadamard_code(s1)


@pytest.fixture(scope="session")
def code_s2(s2):
    return hadamard.hadamard_code(s2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_self_dual_4_2(rng, p=7):
    """Random self-dual [4, 2] code over GF(7): (I | M) with M M^T = -I."""
    while True:
        M = rng.integers(0, p, size=(2, 2))
        if not ((M @ M.T + np.eye(2, dtype=np.int64)) % p).any():
            return codes.LinearCode.from_generator(np.hstack([np.eye(2, dtype=np.int64), M]), p)


# acceptance criteria report: (id, passed, detail), printed after the run
ACCEPTANCE = []


def record(cid, passed, detail):
    ACCEPTANCE.append((cid, bool(passed), detail))
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, passed, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {cid:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
