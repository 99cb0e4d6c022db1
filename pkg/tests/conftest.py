import numpy as np
import pytest

from qudist.oracle import InstanceSpec

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_case2_spec(rng: np.random.Generator, max_dim: int = 12, max_points: int = 3,
                      t_range=(0.02, 0.98), seed=None) -> InstanceSpec:
    """Random Case 2 instance spec (no M00/M11) with at most ``max_points`` distinct eigenvalues."""
    while True:
        k = int(rng.integers(1, max_points + 1))
        values = np.sort(rng.uniform(*t_range, size=k))
        if k > 1 and np.min(np.diff(values)) < 1e-3:
            continue
        mults = rng.integers(1, 3, size=k)
        m01, m10 = (int(x) for x in rng.integers(0, 3, size=2))
        spec = InstanceSpec(0, m01, m10, 0, tuple(zip(values.tolist(), mults.tolist())),
                            seed=int(rng.integers(0, 2**31)) if seed is None else seed)
        if spec.dim <= max_dim:
            return spec


@pytest.fixture
def t08_pair():
    """Canonical pair at t = 0.8."""
    e = np.array([[0.8, 0.4], [0.4, 0.2]], dtype=complex)
    u = np.diag([1.0, -1.0]).astype(complex)
    return e, u


@pytest.fixture
def diag_pair():
    """Three-dimensional diagonal example where ran(e) lies in the +1 eigenspace."""
    return np.diag([1.0, 0, 0]).astype(complex), np.diag([1.0, 1, -1]).astype(complex)
