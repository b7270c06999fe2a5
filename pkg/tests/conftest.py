import random

import pytest

from khtwist.diagram import LinkDiagram, TwistRegion, braid_closure, parse_pd
from khtwist.errors import AmbiguousOrientation

LEFT_TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
TREFOIL_TABLE = {(0, -1): 1, (0, -3): 1, (-2, -5): 1, (-3, -9): 1}

# acceptance tests append one "[PASS]/[FAIL] criterion N: ..." line each;
# printed in the terminal summary so they survive output capture
ACCEPTANCE_VERDICTS = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)


def marked_left_trefoil():
    """Left trefoil with a coherent marked pair for half-twist scans."""
    return LinkDiagram([(1, 2, 4, 3), (3, 4, 6, 5), (5, 6, 2, 1)],
                       marked_region=TwistRegion((1, 4)))


def random_braid_closures(count, max_crossings=12, seed=20240915):
    """Deterministic list of random braid-closure diagrams, c <= max_crossings."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        strands = rng.randint(2, 4)
        length = rng.randint(3, max_crossings)
        word = [rng.choice([-1, 1]) * rng.randint(1, strands - 1)
                for _ in range(length)]
        try:
            out.append(braid_closure(word, strands))
        except AmbiguousOrientation:
            # a component lying entirely over the rest has no inferable
            # direction and is rejected by design; draw another word
            continue
    return out


@pytest.fixture(scope="session")
def left_trefoil():
    return parse_pd(LEFT_TREFOIL_PD)


@pytest.fixture(scope="session")
def trefoil_marked():
    return marked_left_trefoil()
