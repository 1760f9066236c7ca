import itertools

import pytest
from hypothesis import given, settings, strategies as st

from roughmatroid import BinaryRelation, Universe, random_serial_transitive

from conftest import S


def rel(n, pairs):
    """Relation from 1-based pairs."""
    return BinaryRelation.from_pairs(Universe(n), [(x - 1, y - 1) for x, y in pairs])


def test_example_neighborhoods(ex_space):
    r = ex_space.relation
    u = r.universe
    assert r.successor_neighborhood(0) == S(u, 1, 3)
    assert r.successor_neighborhood(2) == S(u, 1, 3)
    assert r.successor_neighborhood(1) == S(u, 1, 3, 4)
    assert r.successor_neighborhood(3) == S(u, 4)


def test_identity_neighborhoods():
    r = BinaryRelation.identity(Universe(5))
    for x in range(5):
        assert list(r.successor_neighborhood(x)) == [x]
    with pytest.raises(IndexError):
        r.successor_neighborhood(5)


def test_predicates_on_reference_relations(ex_space):
    u = Universe(3)
    assert ex_space.relation.is_serial() and ex_space.relation.is_transitive()
    assert not BinaryRelation.empty(u).is_serial()
    assert BinaryRelation.full(u).is_serial()
    assert not rel(3, [(1, 2), (2, 3)]).is_transitive()
    assert BinaryRelation.identity(u).is_transitive()
    assert BinaryRelation.identity(u).is_reflexive() and BinaryRelation.identity(u).is_symmetric()
    assert not ex_space.relation.is_reflexive() and not ex_space.relation.is_symmetric()


def test_transitive_closure_examples():
    closed = rel(3, [(1, 2), (2, 3)]).transitive_closure()
    assert closed == rel(3, [(1, 2), (2, 3), (1, 3)])
    full = BinaryRelation.full(Universe(4))
    assert full.transitive_closure() == full


def test_matrix_roundtrip(ex_space):
    r = ex_space.relation
    assert BinaryRelation.from_matrix(r.universe, r.matrix()) == r
    for x in range(4):
        assert [y for y, v in enumerate(r.matrix()[x]) if v] == list(r.successor_neighborhood(x))


def _naive_closure(pairs, n):
    # repeat composition until nothing changes
    cur = set(pairs)
    while True:
        new = cur | {(a, d) for a, b in cur for c, d in cur if b == c}
        if new == cur:
            return cur
        cur = new


@pytest.mark.parametrize("n", [1, 2, 3])
def test_transitive_closure_exhaustive(n):
    u = Universe(n)
    all_pairs = list(itertools.product(range(n), repeat=2))
    for mask in range(1 << len(all_pairs)):
        pairs = [p for i, p in enumerate(all_pairs) if mask >> i & 1]
        r = BinaryRelation.from_pairs(u, pairs)
        c = r.transitive_closure()
        assert c.is_transitive()
        assert set(c.pairs()) == _naive_closure(pairs, n)
        assert set(r.pairs()) <= set(c.pairs())
        assert c.transitive_closure() == c
        # transitivity predicate agrees with the fixed-point characterization
        assert r.is_transitive() == (c == r)


relations = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n).map(
        lambda pairs: BinaryRelation.from_pairs(Universe(n), pairs)
    )
)


@given(relations)
def test_transitive_closure_properties(r):
    c = r.transitive_closure()
    assert c.is_transitive()
    assert set(r.pairs()) <= set(c.pairs())
    assert c.transitive_closure() == c


def test_generator_density_extremes():
    for n in (1, 3, 6):
        assert random_serial_transitive(n, 0.0, 11) == BinaryRelation.identity(Universe(n))
        assert random_serial_transitive(n, 1.0, 11) == BinaryRelation.full(Universe(n))


def test_generator_deterministic():
    assert random_serial_transitive(7, 0.2, 42) == random_serial_transitive(7, 0.2, 42)


def test_generator_rejects_bad_density():
    with pytest.raises(ValueError):
        random_serial_transitive(3, 1.5, 0)


def test_generator_outputs_serial_transitive():
    count = 0
    for n in range(2, 11):
        for density in (0.05, 0.1, 0.2, 0.4):
            for seed in range(6):
                r = random_serial_transitive(n, density, seed)
                assert r.is_serial() and r.is_transitive()
                count += 1
    assert count >= 200


@settings(max_examples=60)
@given(st.integers(1, 10), st.floats(0, 1), st.integers(0, 2**64 - 1))
def test_generator_property(n, density, seed):
    r = random_serial_transitive(n, density, seed)
    assert r.is_serial() and r.is_transitive()


def test_fingerprint_stable_and_distinguishing(ex_space):
    r = ex_space.relation
    assert r.fingerprint() == BinaryRelation(r.universe, r.rows).fingerprint()
    assert r.fingerprint() != BinaryRelation.identity(r.universe).fingerprint()
