import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypermin.core import (
    EdgeSet,
    MultiHypergraph,
    count_distinct,
    dumps,
    incidence_from_words,
    loads,
    masks_from_words,
    read_hypergraph,
    words_from_incidence,
    words_from_masks,
    write_hypergraph,
)
from hypermin.errors import UsageError
from hypermin.sampler import sample_hypergraph, ModelParams


def E(n, *vs):
    return EdgeSet.from_vertices(n, vs)


def test_subset_examples():
    assert E(4).is_subset(E(4, 1, 3))
    assert not E(4, 1, 3).is_proper_subset(E(4, 1, 3))
    assert E(4, 2).is_proper_subset(E(4, 1, 2, 4))
    assert E(4, 2) < E(4, 1, 2, 4)
    assert E(4, 1, 3) <= E(4, 1, 3)


def test_universe_mismatch_is_usage_error():
    with pytest.raises(UsageError):
        E(3, 1).is_subset(E(4, 1))
    with pytest.raises(UsageError):
        MultiHypergraph(3, (E(4, 1),))


def test_bits_outside_universe_rejected():
    with pytest.raises(UsageError):
        EdgeSet(3, 0b1000)
    with pytest.raises(UsageError):
        E(3, 4)
    with pytest.raises(UsageError):
        EdgeSet(0)


def test_cardinality_and_iteration():
    e = E(70, 1, 64, 65, 70)
    assert e.cardinality == len(e) == 4
    assert e.vertices() == (1, 64, 65, 70)
    assert e.complement().cardinality == 66
    assert EdgeSet.full(5).vertices() == (1, 2, 3, 4, 5)


def test_count_distinct_examples():
    assert count_distinct(MultiHypergraph(3, (E(3, 1), E(3, 1), E(3, 2)))) == 2
    assert count_distinct(MultiHypergraph(3)) == 0


def test_count_distinct_matches_sort_unique():
    H = sample_hypergraph(ModelParams(4, 1000, 0.5, seed=11))
    assert count_distinct(H) == len(np.unique(H.to_incidence(), axis=0))
    assert count_distinct(H) <= len(H)


masks = st.integers(min_value=0, max_value=(1 << 12) - 1)


@given(masks, masks, masks)
def test_subset_is_partial_order(a, b, c):
    x, y, z = EdgeSet(12, a), EdgeSet(12, b), EdgeSet(12, c)
    assert x <= x and not x < x
    if x <= y and y <= x:
        assert x == y
    if x <= y and y <= z:
        assert x <= z


@given(st.lists(st.integers(min_value=0, max_value=(1 << 70) - 1), max_size=20))
def test_text_and_word_roundtrip(ms):
    H = MultiHypergraph.from_masks(70, ms)
    assert loads(dumps(H)) == H
    assert masks_from_words(words_from_masks(ms, 70)) == ms
    assert MultiHypergraph.from_incidence(H.to_incidence()) == H


def test_incidence_word_conversion():
    X = np.array([[1, 0, 1], [0, 0, 0]], dtype=bool)
    w = words_from_incidence(X)
    assert w.tolist() == [[5], [0]]
    assert (incidence_from_words(w, 3) == X).all()


def test_text_format(tmp_path):
    H = MultiHypergraph(4, (E(4), E(4, 1, 3), E(4, 1, 3)))
    text = dumps(H)
    assert text == "n 4\n-\n1 3\n1 3\n"
    path = tmp_path / "h.txt"
    write_hypergraph(H, path)
    assert read_hypergraph(path) == H


@pytest.mark.parametrize("bad", ["n 4\n3 1\n", "n 4\n1 1\n", "n 4\n5\n", "", "4\n1\n", "n 4\nx\n"])
def test_parser_rejects_bad_input(bad):
    with pytest.raises(UsageError):
        loads(bad)


def test_complement_hypergraph():
    H = MultiHypergraph(3, (E(3, 1), E(3)))
    assert H.complement().edges == (E(3, 2, 3), E(3, 1, 2, 3))
