import pytest
from hypothesis import given
from hypothesis import strategies as st

from opennets.errors import CarrierMismatch
from opennets.multiset import Multiset, add, bounded, empty, format_counts, leq, map_multiset, subtract

from conftest import multisets

S = ["A", "B", "C"]
T = ["x", "y"]


def ms(**kw):
    return Multiset(S, kw)


def test_empty_is_zero_everywhere():
    e = empty(S)
    assert e.total() == 0 and all(e[a] == 0 for a in S)
    assert format_counts(e) == "0"


def test_add_and_subtract_pointwise():
    assert add(ms(A=1), ms(A=1, B=2)) == ms(A=2, B=2)
    assert subtract(ms(A=2, B=1), ms(A=1)) == ms(A=1, B=1)
    assert subtract(ms(A=1), ms(B=1)) is None


def test_carrier_mismatch_raises():
    with pytest.raises(CarrierMismatch):
        ms(A=1) + Multiset(["A"], {"A": 1})


def test_rejects_bad_counts():
    with pytest.raises(ValueError):
        Multiset(S, {"A": -1})
    with pytest.raises(ValueError):
        Multiset(S, {"Z": 1})
    with pytest.raises(TypeError):
        Multiset(S, {"A": 1.5})


def test_zero_counts_are_dropped():
    assert Multiset(S, {"A": 0}) == empty(S)
    assert hash(Multiset(S, {"A": 0, "B": 1})) == hash(ms(B=1))


def test_map_sums_fibres():
    f = {"A": "x", "B": "x", "C": "y"}
    assert map_multiset(f, ms(A=1, B=2, C=1), T) == Multiset(T, {"x": 3, "y": 1})


def test_map_must_be_total():
    with pytest.raises(ValueError):
        ms(A=1).map({"A": "x"}, T)


def test_format():
    assert format_counts(ms(B=1, A=2)) == "A:2,B:1"


def test_bounded_enumeration_counts():
    # multisets of size <= n over k atoms: C(n + k, k)
    assert len(bounded(S, 3)) == 20
    assert len(bounded([], 3)) == 1
    assert bounded(S, 1)[0] == empty(S)


@given(multisets(S), multisets(S), multisets(S))
def test_commutative_monoid(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + empty(S) == a


@given(multisets(S), multisets(S))
def test_subtract_inverts_add(a, b):
    assert (a + b).subtract(b) == a
    assert leq(b, a + b)


@given(multisets(S), multisets(S))
def test_leq_matches_subtract(a, b):
    assert leq(a, b) == (b.subtract(a) is not None)


@given(multisets(S), multisets(S), st.dictionaries(st.sampled_from(S), st.sampled_from(T), min_size=3))
def test_map_is_a_monoid_homomorphism(a, b, f):
    assert (a + b).map(f, T) == a.map(f, T) + b.map(f, T)
    assert empty(S).map(f, T) == empty(T)
    assert a.map(f, T).total() == a.total()


@given(multisets(S), st.dictionaries(st.sampled_from(S), st.sampled_from(T), min_size=3))
def test_map_is_functorial(a, f):
    g = {"x": "u", "y": "u"}
    assert a.map(f, T).map(g, ["u"]) == a.map(lambda s: g[f[s]], ["u"])
    assert a.map({s: s for s in S}, S) == a
