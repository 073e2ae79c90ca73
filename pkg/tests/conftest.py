import numpy as np
import pytest

from cyclodetect.harness import Hypothesis, ScenarioConfig, simulate

NULL_TRIALS = 10_000
NULL_USERS = 5


@pytest.fixture(scope="session")
def paper_config():
    """Default OFDM scenario: 4000 samples, lags +-32, frequencies 1/40 and 2/40."""
    return ScenarioConfig()


@pytest.fixture(scope="session")
def null_stats(paper_config):
    """Local statistics under H0, shape ``(10000, 5, 2)`` (trial, user, frequency)."""
    config = paper_config.replace(num_users=NULL_USERS, num_trials=NULL_TRIALS, master_seed=7)
    stats, _ = simulate(config, Hypothesis.H0)
    assert stats.shape == (NULL_TRIALS, 1, NULL_USERS, 2)
    return stats[:, 0]


def ks_distance(samples, cdf):
    """Kolmogorov-Smirnov distance between an empirical sample and a model CDF."""
    x = np.sort(np.asarray(samples))
    n = x.size
    model = cdf(x)
    upper = np.arange(1, n + 1) / n - model
    lower = model - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


ACCEPTANCE_LINES: dict[int, str] = {}


def record_verdict(criterion: int, passed: bool, detail: str) -> None:
    """Record (and print) one acceptance line; the terminal summary lists them in order."""
    line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
