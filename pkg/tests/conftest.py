import os
import tempfile

# Keep every table the suite builds away from the user's real cache.
os.environ["PRIMES_CACHE_DIR"] = tempfile.mkdtemp(prefix="primestrings-tests-")

import pytest  # noqa: E402

import primestrings as ps  # noqa: E402

import _oracles  # noqa: E402
from _acceptance_log import RESULTS  # noqa: E402


@pytest.fixture(scope="session")
def table_1m():
    return ps.load_or_build(1_000_000)


@pytest.fixture(scope="session")
def b_pi():
    return ps.SpecialSetSpec.beatty(ps.named_constant("pi"))


@pytest.fixture(scope="session")
def primes_100k():
    return _oracles.simple_sieve(100_000)


@pytest.fixture(scope="session")
def spf_100k():
    return _oracles.spf_sieve(100_000)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        label, status = RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}  {status:4s}  {label}")
