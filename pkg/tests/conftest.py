import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from opennets.multiset import Multiset
from opennets.opennet import mk_open
from opennets.petri import PetriNet

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


def gluing_pair():
    """Two nets sharing the boundary {4, 5}; both points land on E in Q."""
    p = mk_open(
        {"1", "2", "3"},
        {"4", "5"},
        PetriNet.build("ABCD", {"α": ("AB", "CD")}),
        {"1": "A", "2": "B", "3": "B"},
        {"4": "C", "5": "D"},
    )
    q = mk_open(
        {"4", "5"},
        {"6"},
        PetriNet.build("EF", {"β": ("E", "F"), "γ": ("F", "E")}),
        {"4": "E", "5": "E"},
        {"6": "F"},
    )
    return p, q


def glued_by_hand():
    """The gluing of ``gluing_pair`` drawn directly: C, D, E all become one place."""
    return mk_open(
        {"1", "2", "3"},
        {"6"},
        PetriNet.build("ABCF", {"α": ("AB", "CC"), "β": ("C", "F"), "γ": ("F", "C")}),
        {"1": "A", "2": "B", "3": "B"},
        {"6": "F"},
    )


def lax_pair():
    """Nets whose separate relations compose to almost nothing but whose gluing is connected."""
    p = mk_open(
        {"1"},
        {"2", "3", "4"},
        PetriNet.build("ABCD", {"α": ("A", "B"), "β": ("C", "D")}),
        {"1": "A"},
        {"2": "B", "3": "C", "4": "D"},
    )
    q = mk_open(
        {"2", "3", "4"},
        {"5"},
        PetriNet.build("BCDE", {"γ": ("B", "C"), "δ": ("D", "E")}),
        {"2": "B", "3": "C", "4": "D"},
        {"5": "E"},
    )
    return p, q


def primed_pair():
    """A net with a redundant primed copy of one input route, and its simplification."""
    big = mk_open(
        {"1", "1'"},
        {"2"},
        PetriNet.build(["A", "A'", "B"], {"α": ("A", "B"), "α'": (["A'"], "B")}),
        {"1": "A", "1'": "A'"},
        {"2": "B"},
    )
    small = mk_open({"1"}, {"2"}, PetriNet.build("AB", {"α": ("A", "B")}), {"1": "A"}, {"2": "B"})
    return big, small


@pytest.fixture
def gluing():
    return gluing_pair()


@pytest.fixture
def lax():
    return lax_pair()


def multisets(carrier, max_count=3):
    carrier = sorted(carrier)
    return st.dictionaries(st.sampled_from(carrier), st.integers(0, max_count), max_size=len(carrier)).map(
        lambda d: Multiset(carrier, d)
    ) if carrier else st.just(Multiset(()))


seeds = st.integers(0, 2**32 - 1)
