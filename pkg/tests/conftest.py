from itertools import permutations

import pytest

from braidfan import Fan, Preposet, braid_fan
from braidfan.oracle import intersection_preposet, tree_posets


def rel(n, *pairs):
    return Preposet.from_relations(n, pairs)


@pytest.fixture
def fig2():
    """The tree poset 4 < 2 < 1, 2 < 3."""
    return rel(4, (4, 2), (2, 1), (2, 3))


@pytest.fixture
def star():
    return rel(3, (1, 3), (2, 3))


@pytest.fixture
def chain3():
    return Preposet.chain([1, 2, 3])


@pytest.fixture
def diamond():
    return rel(4, (1, 2), (1, 3), (2, 4), (3, 4))


def p2_labels():
    return [rel(3, (1, 3), (2, 3)), rel(3, (3, 1), (2, 1)), rel(3, (1, 2), (3, 2))]


@pytest.fixture
def p2_fan():
    return Fan.from_labels(3, p2_labels())


@pytest.fixture
def p2_opposite_fan():
    return Fan.from_labels(3, [p.opposite() for p in p2_labels()])


def merged_fan4():
    """B(4) with 1234, 1243 merged into 1 < 2 < 3, 4 and 2134, 2143 into 2 < 1 < 3, 4."""
    return braid_with_merges(4, [rel(4, (1, 2), (2, 3), (2, 4)), rel(4, (2, 1), (1, 3), (1, 4))])


def overlapping_fan4():
    """Chambers 1234 and 2134 merged alone: counts are right but 1243 meets it badly."""
    return braid_with_merges(4, [rel(4, (1, 3), (2, 3), (3, 4))])


@pytest.fixture
def merged4():
    return merged_fan4()


def braid_with_merges(n, labels):
    """B(n) with the chambers of each label in ``labels`` merged into one cone."""
    covered = {o for p in labels for o in p.linear_extensions()}
    chambers = [Preposet.chain(o) for o in permutations(range(1, n + 1)) if o not in covered]
    return Fan.from_labels(n, chambers + list(labels))


def detour_fan4():
    """A valid n = 4 fan whose first branched class is not a usable center."""
    return braid_with_merges(
        4,
        [
            rel(4, (1, 2), (2, 3), (2, 4)),
            rel(4, (1, 4), (2, 1), (2, 3)),
            rel(4, (2, 3), (2, 4), (4, 1)),
            rel(4, (2, 1), (2, 3), (4, 2)),
        ],
    )


_BLOCKS = {}


def random_coarsening(n, rng, max_nodes=5000):
    """A random complete smooth coarsening of B(n) by randomised exact cover.

    Returns None when the search gives up.
    """
    if n not in _BLOCKS:
        chambers = list(permutations(range(1, n + 1)))
        index = {c: i for i, c in enumerate(chambers)}
        by_first = {}
        for p in tree_posets(n):
            exts = p.linear_extensions()
            mask = sum(1 << index[o] for o in exts)
            by_first.setdefault(index[exts[0]], []).append((mask, p, len(exts)))
        _BLOCKS[n] = (len(chambers), by_first)
    size, by_first = _BLOCKS[n]
    full = (1 << size) - 1
    chosen, nodes = [], [0]

    def meets(p, q):
        m = intersection_preposet(p, q)
        return m.is_contraction_of(p) and m.is_contraction_of(q)

    def go(covered):
        nodes[0] += 1
        if nodes[0] > max_nodes:
            return False
        if covered == full:
            return True
        first = (~covered & (covered + 1)).bit_length() - 1
        options = [b for b in by_first[first] if not b[0] & covered]
        options.sort(key=lambda b: -b[2] * rng.random() ** 0.3)
        for mask, p, _ in options:
            if all(meets(p, q) for q in chosen):
                chosen.append(p)
                if go(covered | mask):
                    return True
                chosen.pop()
        return False

    return Fan.from_labels(n, chosen) if go(0) else None


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
