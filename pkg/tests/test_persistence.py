import math
import random

import pytest
from hypothesis import given, strategies as st

from sparse_delaunay.filtration import FiltrationStore
from sparse_delaunay.kernel import SqScale
from sparse_delaunay.oracles import exact_alpha_filtration, naive_persistence
from sparse_delaunay.persistence import (
    Diagram, LogScaleError, bottleneck, bottleneck_log, reduce)

from conftest import UNIT_SQUARE
from filtrations import random_filtration, relabel


def test_single_vertex():
    d = reduce(FiltrationStore.from_births({(0,): 0}))
    assert d.pairs == ((0, 0.0, math.inf),)


def test_two_vertices_and_edge():
    d = reduce(FiltrationStore.from_births({(0,): 0, (1,): 0, (0, 1): 1}))
    assert sorted(d.pairs) == [(0, 0.0, 1.0), (0, 0.0, math.inf)]


def test_unit_square_alpha_diagram():
    d = reduce(exact_alpha_filtration(UNIT_SQUARE))
    assert d.dim(0) == [(0.0, 0.5)] * 3 + [(0.0, math.inf)]
    (b, e), = d.dim(1)
    assert abs(b - 0.5) < 1e-15 and abs(e - math.sqrt(2) / 2) < 1e-15
    assert d.exact[-1][1:] == (SqScale("1/4"), SqScale("1/2"))


def test_reduce_rejects_invalid():
    with pytest.raises(ValueError, match="invalid filtration"):
        reduce(FiltrationStore.from_births({(0,): 0, (0, 1): 1}))


def test_zero_length_pairs_dropped():
    d = reduce(FiltrationStore.from_births({(0,): 0, (1,): 0, (0, 1): 0}))
    assert d.pairs == ((0, 0.0, math.inf),)


@pytest.mark.parametrize("seed", range(100))
def test_reduce_matches_naive(seed):
    store = random_filtration(seed)
    assert len(store) <= 200
    assert reduce(store) == naive_persistence(store)


@pytest.mark.parametrize("seed", range(20))
def test_reordering_equal_births(seed):
    store = random_filtration(1000 + seed, n_vertices=8)
    perm = list(range(8))
    random.Random(seed).shuffle(perm)
    assert reduce(store).exact == reduce(relabel(store, perm)).exact


def test_diagram_text_round_trip():
    d = reduce(exact_alpha_filtration(UNIT_SQUARE))
    back = Diagram.loads(d.dumps())
    assert back == Diagram(d.pairs)


# -- bottleneck ------------------------------------------------------------

def D(*pairs):
    return Diagram(tuple(sorted(pairs)))


def test_bottleneck_identical():
    d = D((0, 0.0, 1.0), (1, 1.0, 2.0), (0, 0.0, math.inf))
    assert bottleneck_log(d, d) == 0 and bottleneck(d, d) == 0


def test_bottleneck_log_forced_match():
    assert bottleneck_log(D((1, 1.0, 2.0)), D((1, 1.0, 4.0))) == pytest.approx(math.log(2))


def test_bottleneck_log_diagonal():
    assert bottleneck_log(D((1, 1.0, 2.0)), D()) == pytest.approx(math.log(2) / 2)


def test_bottleneck_additive():
    # diagonal costs 0.5 and 1.5 beat the direct match cost 2
    assert bottleneck(D((1, 1.0, 2.0)), D((1, 1.0, 4.0))) == pytest.approx(1.5)
    assert bottleneck(D((1, 1.0, 3.0)), D((1, 1.0, 3.5))) == pytest.approx(0.5)


def test_bottleneck_essential_mismatch():
    assert bottleneck_log(D((0, 0.0, math.inf)), D()) == math.inf


def test_bottleneck_log_undefined_for_zero_birth_cycles():
    with pytest.raises(LogScaleError):
        bottleneck_log(D((1, 0.0, 1.0)), D())


pos = st.floats(min_value=0.01, max_value=100)


def diagrams():
    pair = st.tuples(st.integers(0, 1), pos, pos).map(lambda t: (t[0], min(t[1:]), max(t[1:])))
    return st.lists(pair, max_size=6).map(lambda l: D(*l))


@given(diagrams(), diagrams(), diagrams())
def test_bottleneck_log_pseudometric(a, b, c):
    ab, ba = bottleneck_log(a, b), bottleneck_log(b, a)
    assert ab == pytest.approx(ba)
    assert bottleneck_log(a, c) <= ab + bottleneck_log(b, c) + 1e-9
    assert bottleneck_log(a, a) == 0
