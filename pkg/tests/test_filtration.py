import io

import pytest
from hypothesis import given, strategies as st

from sparse_delaunay.filtration import FiltrationEntry, FiltrationStore, FormatError
from sparse_delaunay.kernel import SqScale, mpq


def test_empty_store_valid():
    assert FiltrationStore().validate() == []


def test_face_absent():
    s = FiltrationStore.from_births({(0,): 0, (0, 1): 1})
    assert any(p.startswith("face absent") for p in s.validate())


def test_face_after_coface():
    s = FiltrationStore.from_births({(0,): 0, (1,): 2, (0, 1): 1})
    assert any(p.startswith("face after coface") for p in s.validate())


def test_header_only_file():
    s = FiltrationStore.loads("sdf v1 d=2 n=0 eps=1/1\n")
    assert len(s) == 0 and s.eps == 1


def test_sort_order_birth_then_dim_then_ids():
    s = FiltrationStore.from_births({(0, 1): 1, (1,): 0, (0,): 0, (0, 2): 1, (2,): 0})
    assert s.simplices() == [(0,), (1,), (2,), (0, 1), (0, 2)]


def test_surd_birth_round_trip():
    s = FiltrationStore.from_births({(0,): 0, (1,): 0, (0, 1): SqScale(1, 1, 2)}, eps=mpq(1, 2))
    text = s.dumps()
    assert "1/1+1/1*sqrt(2) 0 1" in text
    assert FiltrationStore.loads(text) == s


@pytest.mark.parametrize("text", [
    "",
    "sdf v2 d=2 n=0 eps=1/1\n",
    "sdf v1 d=2 n=2 eps=1/1\nabc 0\n",
    "sdf v1 d=2 n=2 eps=1/1\n0/1 1 0\n",
    "sdf v1 d=2 n=2 eps=1/1\n0/1\n",
    "sdf v1 d=2 n=2 eps=1/1\n0/1 0\n0/1 0\n",
])
def test_malformed_rejected(text):
    with pytest.raises(FormatError):
        FiltrationStore.loads(text)


def test_error_carries_line_number():
    with pytest.raises(FormatError, match="line 3"):
        FiltrationStore.loads("sdf v1 d=2 n=2 eps=1/1\n0/1 0\nx 1\n")


births = st.fractions(min_value=0, max_value=100, max_denominator=30)


@given(st.dictionaries(
    st.lists(st.integers(0, 6), min_size=1, max_size=3, unique=True).map(lambda l: tuple(sorted(l))),
    births, max_size=30))
def test_write_read_round_trip(d):
    s = FiltrationStore.from_births(d, n=7, eps=mpq(1, 3))
    text = s.dumps()
    back = FiltrationStore.loads(text)
    assert back == s
    assert back.dumps() == text
    keys = [e.sort_key() for e in back]
    assert keys == sorted(keys)
