import pytest
from hypothesis import given
from hypothesis import strategies as st

from gmebound.errors import InvalidInputError
from gmebound.indices import (
    Bipartition,
    IndexPair,
    MultiIndex,
    differing_positions,
    enumerate_bipartitions,
    pair_is_fixed,
    permute_pair,
)

# the canonical n=4 ordering every downstream module relies on
N4_ORDER = [(1,), (1, 2), (1, 3), (1, 4), (1, 2, 3), (1, 2, 4), (1, 3, 4)]


def test_multiindex_string_roundtrip():
    eta = MultiIndex.from_string("0211", 3)
    assert eta.digits == (0, 2, 1, 1)
    assert str(eta) == "0211"
    assert eta.n == 4 and eta.d == 3


def test_multiindex_rank_roundtrip():
    eta = MultiIndex.from_string("102", 3)
    assert eta.rank == 1 * 9 + 0 * 3 + 2
    assert MultiIndex.from_rank(eta.rank, 3, 3) == eta


@given(st.integers(2, 4), st.integers(1, 4), st.data())
def test_rank_bijection(d, n, data):
    digits = tuple(data.draw(st.integers(0, d - 1)) for _ in range(n))
    eta = MultiIndex(digits, d)
    assert MultiIndex.from_rank(eta.rank, n, d) == eta


def test_multiindex_rejects_digit_out_of_range():
    with pytest.raises(InvalidInputError):
        MultiIndex.from_string("021", 2)
    with pytest.raises(InvalidInputError):
        MultiIndex.from_string("01", 2, n=3)


def test_indexpair_canonical_order():
    a = MultiIndex.from_string("10", 2)
    b = MultiIndex.from_string("01", 2)
    pair = IndexPair.of(a, b)
    assert str(pair.first) == "01" and str(pair.second) == "10"
    assert pair == IndexPair.of(b, a)


def test_indexpair_rejects_equal_strings():
    a = MultiIndex.from_string("01", 2)
    with pytest.raises(InvalidInputError):
        IndexPair.of(a, a)


def test_enumerate_bipartitions_n4_order():
    got = [b.sorted_parties() for b in enumerate_bipartitions(4)]
    assert got == N4_ORDER


@given(st.integers(2, 6))
def test_enumerate_bipartitions_count(n):
    bips = enumerate_bipartitions(n)
    assert len(bips) == 2 ** (n - 1) - 1
    assert all(1 in b.parties for b in bips)
    assert len(set(bips)) == len(bips)


def test_bipartition_complement_and_canonical():
    g = Bipartition.of({2, 3}, 4)
    assert not g.is_canonical
    assert g.complement().sorted_parties() == (1, 4)
    assert g.canonical().sorted_parties() == (1, 4)


def test_permute_pair_exchanges_gamma_digits():
    g = Bipartition.of({1}, 3)
    pair = (MultiIndex.from_string("001", 2), MultiIndex.from_string("110", 2))
    img = permute_pair(g, pair)
    assert (str(img[0]), str(img[1])) == ("101", "010")


@given(st.integers(2, 3), st.integers(2, 4), st.data())
def test_permute_pair_is_involution(d, n, data):
    digits = st.integers(0, d - 1)
    e1 = MultiIndex(tuple(data.draw(digits) for _ in range(n)), d)
    e2 = MultiIndex(tuple(data.draw(digits) for _ in range(n)), d)
    parties = data.draw(st.sets(st.integers(1, n), min_size=1, max_size=n - 1))
    g = Bipartition.of(parties, n)
    once = permute_pair(g, (e1, e2))
    assert permute_pair(g, once) == (e1, e2)


def test_differing_positions():
    pair = IndexPair.of(
        MultiIndex.from_string("0011", 2), MultiIndex.from_string("0101", 2)
    )
    assert differing_positions(pair.as_tuple()) == frozenset({2, 3})


@given(st.integers(2, 4), st.data())
def test_pair_is_fixed_matches_direct_image(n, data):
    """gamma fixes a pair iff the exchanged pair is the same unordered pair."""
    digits = st.integers(0, 1)
    e1 = MultiIndex(tuple(data.draw(digits) for _ in range(n)), 2)
    e2 = MultiIndex(tuple(data.draw(digits) for _ in range(n)), 2)
    if e1 == e2:
        return
    pair = IndexPair.of(e1, e2)
    parties = data.draw(st.sets(st.integers(1, n), min_size=1, max_size=n - 1))
    g = Bipartition.of(parties, n)
    img = IndexPair.of(*permute_pair(g, pair.as_tuple()))
    assert pair_is_fixed(g, pair) == (img == pair)
