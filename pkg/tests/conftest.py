from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from cyclesmith.perm import Cycle, ECGroup, ECKind

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CORPUS = Path(__file__).parent / "corpus"


def naive_apply(cycles, t):
    """Push one term through cycles applied left to right, straight from the definition."""
    for c in cycles:
        terms = list(c)
        if t in terms:
            t = terms[(terms.index(t) + 1) % len(terms)]
    return t


def random_group(kind: ECKind, n: int, rng: np.random.Generator) -> ECGroup:
    terms = [int(x) for x in rng.choice(1 << n, size=kind.term_count, replace=False)]
    cycles, i = [], 0
    for length in kind.shape:
        cycles.append(Cycle(tuple(terms[i:i + length])))
        i += length
    return ECGroup(kind, tuple(cycles))


@pytest.fixture
def corpus():
    return CORPUS


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion; printed in the summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        lines.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines, key=lambda x: x[0]):
            terminalreporter.write_line(line)
