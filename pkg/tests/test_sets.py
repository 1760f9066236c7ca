import pytest

from roughmatroid import CapacityError, SetFamily, Subset, Universe, UniverseMismatchError, enumerate_subsets, family_from
from roughmatroid.sets import iter_bits, submasks

from conftest import S


def test_universe_defaults_and_validation():
    u = Universe(4)
    assert u.labels == ("1", "2", "3", "4")
    assert Universe.of_labels(["a", "b"]).labels == ("a", "b")
    with pytest.raises(ValueError):
        Universe(0)
    with pytest.raises(ValueError):
        Universe(2, ("a", "a"))
    with pytest.raises(ValueError):
        Universe(3, ("a", "b"))


def test_subset_rejects_out_of_range_bits():
    with pytest.raises(ValueError):
        Subset(Universe(2), 0b100)


@pytest.mark.parametrize(
    "n, expected",
    [
        (1, [[], ["1"]]),
        (2, [[], ["1"], ["2"], ["1", "2"]]),
    ],
)
def test_enumerate_subsets_small(n, expected):
    assert [s.labels() for s in enumerate_subsets(Universe(n))] == expected


def test_enumerate_subsets_n4():
    subs = enumerate_subsets(Universe(4))
    assert len(subs) == 16
    assert len({s.bits for s in subs}) == 16
    assert str(subs[0]) == "∅" and str(subs[-1]) == "{1,2,3,4}"
    keys = [s.sort_key() for s in subs]
    assert keys == sorted(keys)


def test_enumerate_subsets_cap():
    with pytest.raises(CapacityError):
        enumerate_subsets(Universe(21))
    with pytest.raises(CapacityError):
        enumerate_subsets(Universe(5), cap=4)


def test_family_from_canonical_order():
    u = Universe(4)
    fam = family_from([S(u, 4), S(u, 1, 3), u.empty(), u.full()])
    assert [str(s) for s in fam] == ["∅", "{4}", "{1,3}", "{1,2,3,4}"]


def test_family_from_dedup_and_empty():
    u = Universe(4)
    assert list(family_from([u.empty(), u.empty()])) == [u.empty()]
    assert len(family_from([])) == 0


def test_family_rejects_mixed_universes():
    with pytest.raises(UniverseMismatchError):
        family_from([Universe(2).empty(), Universe(3).empty()])


def test_subset_ops_reject_mixed_universes():
    with pytest.raises(UniverseMismatchError):
        Universe(2).full() | Universe(3).full()


def test_family_set_algebra():
    u = Universe(3)
    a = family_from([u.empty(), S(u, 1), S(u, 2)])
    b = family_from([S(u, 2), u.full()])
    assert list(a | b) == [u.empty(), S(u, 1), S(u, 2), u.full()]
    assert list(a & b) == [S(u, 2)]
    assert list(a - b) == [u.empty(), S(u, 1)]
    assert list(a ^ b) == [u.empty(), S(u, 1), u.full()]
    assert S(u, 2) in a and S(u, 3) not in a


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_set_algebra_laws_exhaustive(n):
    u = Universe(n)
    subs = enumerate_subsets(u)
    for a in subs:
        assert a.complement().complement() == a
        assert len(a) == bin(a.bits).count("1")
        for b in subs:
            assert a | b == b | a and a & b == b & a
            assert (a | b).complement() == a.complement() & b.complement()
            assert (a & b).complement() == a.complement() | b.complement()
            assert a - b == a & b.complement()
            for c in subs:
                assert (a | b) | c == a | (b | c)
                assert (a & b) & c == a & (b & c)
                assert a & (b | c) == (a & b) | (a & c)


def test_bit_helpers():
    assert list(iter_bits(0b10110)) == [1, 2, 4]
    assert sorted(submasks(0b101)) == [0, 1, 4, 5]
