import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gpdkit.catalog import cyclic_group
from gpdkit.cli import build_klein_example
from gpdkit.core import GroupoidFunctor, action_groupoid, terminal_groupoid, trivial_group


@pytest.fixture(scope="session")
def swap_action():
    """Z/2 exchanging two points: free and transitive."""
    c2 = cyclic_group(2)
    return action_groupoid(
        c2, ("0", "1"),
        {("r0", "0"): "0", ("r0", "1"): "1", ("r1", "0"): "1", ("r1", "1"): "0"},
    )


@pytest.fixture(scope="session")
def point_action():
    """The trivial group on one point; its groupoid is terminal-shaped."""
    return action_groupoid(trivial_group(), ("*",), {("e", "*"): "*"})


@pytest.fixture(scope="session")
def loop_action():
    """Z/2 fixing one point: a single object with a 2-element isotropy group."""
    c2 = cyclic_group(2)
    return action_groupoid(c2, ("p",), {("r0", "p"): "p", ("r1", "p"): "p"})


@pytest.fixture(scope="session")
def terminal():
    return terminal_groupoid()


@pytest.fixture(scope="session")
def klein_action():
    """The two-reflection Klein-four action on the four compass points."""
    action, _ = build_klein_example()
    return action


@pytest.fixture(scope="session")
def klein_half_turn():
    return ("(e,e)", "(t,t)")


@pytest.fixture(scope="session")
def collapse_swap(swap_action, terminal):
    """The unique functor from the swap groupoid to the terminal groupoid."""
    return GroupoidFunctor(
        swap_action.induced,
        terminal,
        {x: "*" for x in swap_action.induced.objects},
        {a: "u" for a in swap_action.induced.arrows},
    )


@pytest.fixture(scope="session")
def swap_to_loop(swap_action, loop_action):
    """Swap groupoid onto the one-point Z/2 groupoid.

    Surjective and essentially surjective but not fully faithful (the free
    orbit collapses onto a loop), so not a weak equivalence.
    """
    return GroupoidFunctor(
        swap_action.induced,
        loop_action.induced,
        {x: "p" for x in swap_action.induced.objects},
        {a: loop_action.arrow_id(swap_action.arrow_pairs[a][0], "p") for a in swap_action.induced.arrows},
    )
