import itertools

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SQ2 = np.sqrt(2.0)
SQ3 = np.sqrt(3.0)


def brute_minors(X):
    """Every 2x2 minor by explicit loops, keyed by 0-based (s, t, u, v)."""
    X = np.asarray(X)
    n, m = X.shape
    out = {}
    for s, t in itertools.combinations(range(n), 2):
        for u, v in itertools.combinations(range(m), 2):
            out[(s, t, u, v)] = X[s, u] * X[t, v] - X[s, v] * X[t, u]
    return out


def haar_unitary(k, rng):
    Z = (rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


@pytest.fixture
def bell():
    return np.eye(2) / SQ2


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def record_criterion(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
