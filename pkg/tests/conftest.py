from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

from antlion_fs.dataset import load_dataset

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

_CRITERIA: dict = {}


@lru_cache(maxsize=None)
def dataset(name: str):
    return load_dataset(DATA_DIR / f"{name}.csv", name=name)


@pytest.fixture(scope="session")
def breastcancer():
    return dataset("Breastcancer")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


class ScriptedRng:
    """Stand-in for ``numpy.random.Generator.random`` that replays given draws."""

    def __init__(self, draws):
        self.draws = list(draws)

    def random(self, size=None):
        if size is None:
            return self.draws.pop(0)
        shape = (size,) if np.isscalar(size) else tuple(size)
        count = int(np.prod(shape))
        out, self.draws = self.draws[:count], self.draws[count:]
        if len(out) != count:
            raise AssertionError("scripted draws exhausted")
        return np.array(out, dtype=float).reshape(shape)


@pytest.fixture
def record_criterion():
    def record(number: int, passed: bool, detail: str):
        _CRITERIA[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[number])
