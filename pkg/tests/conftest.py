import functools

import pytest

from sl4branch.branching import compute_series
from sl4branch.chartab import dixon_character_table
from sl4branch.matgroup import BUILTIN_GROUPS, builtin_group
from sl4branch.tensorrep import build_tensor_matrices


class Built:
    def __init__(self, name):
        self.name = name
        self.G = builtin_group(name)
        self.T = dixon_character_table(self.G)
        self.M = build_tensor_matrices(self.T, self.G)
        self._series = None

    @property
    def S(self):
        if self._series is None:
            self._series = compute_series(self.T, self.M, self.G, check_degree=5, name=self.name)
        return self._series


@functools.lru_cache(maxsize=None)
def built(name):
    return Built(name)


@pytest.fixture(params=BUILTIN_GROUPS)
def group_data(request):
    return built(request.param)


@pytest.fixture
def type2():
    return built("typeII")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
