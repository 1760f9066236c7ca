from itertools import chain, combinations

import pytest

from roughmatroid import ApproximationSpace, BinaryRelation, Universe
from roughmatroid.builtin import example_space


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


_ACCEPTANCE = []
_NOTES = []


@pytest.fixture
def acceptance_note():
    """Append a line to the acceptance summary printed at the end of the run."""
    return _NOTES.append


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        _ACCEPTANCE.append((number, title, item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, name, outcome in sorted(_ACCEPTANCE, key=lambda r: (r[0], r[2])):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number} [{verdict}] {title} ({name})")
    for note in _NOTES:
        terminalreporter.write_line(note)


# -- spaces ---------------------------------------------------------------

@pytest.fixture
def ex_space():
    return example_space()


@pytest.fixture
def u4():
    return Universe(4)


def identity_space(n):
    return ApproximationSpace(BinaryRelation.identity(Universe(n)))


def full_space(n):
    return ApproximationSpace(BinaryRelation.full(Universe(n)))


def S(u, *labels):
    """Subset of ``u`` from element labels."""
    return u.subset_of_labels(str(x) for x in labels)


# -- frozenset oracles, independent of the bitmask code paths -------------

def powerset(items):
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))]


def oracle_neighborhoods(pairs, n):
    return {x: frozenset(y for a, y in pairs if a == x) for x in range(n)}


def oracle_lower(nb, X):
    return frozenset(x for x, r in nb.items() if r <= X)


def oracle_upper(nb, X):
    return frozenset(x for x, r in nb.items() if r & X)


def oracle_regular(pairs, n):
    nb = oracle_neighborhoods(pairs, n)
    return [X for X in powerset(range(n)) if oracle_lower(nb, oracle_upper(nb, X)) == X]


def oracle_covers(family):
    family = list(family)
    return {
        (a, b) for a in family for b in family
        if a < b and not any(a < c < b for c in family)
    }


def oracle_chains(family, top):
    """All maximal chains from the least member to ``top``, by recursion over covers."""
    covers = oracle_covers(family)
    bottom = min(family, key=len)

    def walk(path):
        if path[-1] == top:
            yield path
            return
        for a, b in covers:
            if a == path[-1] and b <= top:
                yield from walk(path + [b])

    return list(walk([bottom]))


def oracle_heights(family):
    return {x: max(len(c) - 1 for c in oracle_chains(family, x)) for x in family}


def oracle_independent(reg_heights, n):
    return [X for X in powerset(range(n)) if all(h >= len(X & Y) for Y, h in reg_heights.items())]


def oracle_rank(indep, X):
    return max(len(I) for I in indep if I <= X)


def to_bits(fs):
    return sum(1 << e for e in fs)
