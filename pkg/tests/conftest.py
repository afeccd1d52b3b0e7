from pathlib import Path

import pytest

from twolayer.network import Network, two_layer

DATA = Path(__file__).parent / "data"


def four_channel(*second):
    return two_layer(4, second)


# the ten second layers on four channels, named as in the usual figure
NETS4 = {
    "a": four_channel((1, 2), (3, 4)),
    "b": four_channel((1, 2)),
    "c": four_channel((3, 4)),
    "d": four_channel((1, 3)),
    "e": four_channel((1, 4)),
    "f": four_channel((2, 3)),
    "g": four_channel((2, 4)),
    "h": four_channel(),
    "i": four_channel((1, 3), (2, 4)),
    "j": four_channel((1, 4), (2, 3)),
}

# a four-layer network and the one obtained from it by (1 3)(2 4) plus untangling
SHUFFLED = Network(4, (frozenset({(1, 2), (3, 4)}), frozenset({(1, 4)}), frozenset({(1, 3), (2, 4)}),
                       frozenset({(2, 3)})))
UNSHUFFLED = Network(4, (frozenset({(1, 2), (3, 4)}), frozenset({(2, 3)}), frozenset({(1, 2), (3, 4)}),
                         frozenset({(2, 3)})))


@pytest.fixture
def nets4():
    return NETS4


@pytest.fixture
def knuth_path():
    return DATA / "knuth10.net"


_ACCEPTANCE = []


def record_criterion(name: str, passed: bool, detail: str = ""):
    _ACCEPTANCE.append((name, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}" + (f"  ({detail})" if detail else ""))
