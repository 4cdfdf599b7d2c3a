import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcislab.errors import GadgetContractError, ParameterError
from lcislab.gadgets import (X, Y, CombineParams, Combiner, combine, combine_k,
                             coordinate_gadget, grouped_gadget, vector_gadget,
                             vector_gadget_k)
from lcislab.instances import dot, product_sum
from lcislab.seqcore import AlphabetSpan, shift
from lcislab.solvers import (WEAK, lcis_dp2, lcis_dpk, lcis_oracle,
                             lis_length)

bits = st.integers(1, 4).flatmap(lambda d: st.tuples(
    st.lists(st.integers(0, 1), min_size=d, max_size=d),
    st.lists(st.integers(0, 1), min_size=d, max_size=d)))


def test_vector_gadget_examples():
    assert vector_gadget((1, 0), X) == (1, 1, 3, 4)
    assert vector_gadget((0, 1), Y) == (2, 1, 4, 4)
    assert lcis_dp2((1, 1, 3, 4), (2, 1, 4, 4)).length == 2
    assert vector_gadget((0, 1), X) == (1, 2, 3, 3)
    assert vector_gadget((1, 1), Y) == (2, 2, 4, 4)
    assert lcis_dp2((1, 2, 3, 3), (2, 2, 4, 4)).length == 1
    with pytest.raises(ParameterError):
        vector_gadget((), X)
    with pytest.raises(ParameterError):
        vector_gadget((2,), X)
    with pytest.raises(ParameterError):
        vector_gadget((1,), "Z")


@given(bits)
def test_vector_gadget_identity(uv):
    u, v = uv
    gx, gy = vector_gadget(u, X), vector_gadget(v, Y)
    assert len(gx) == len(gy) == 2 * len(u)
    assert lcis_oracle([gx, gy]).length == len(u) - dot(u, v)
    assert lis_length(gx) <= 2 * len(u)


def test_coordinate_gadget_examples():
    assert coordinate_gadget(1, 0, 0, 3) == (3, 2, 1)
    assert coordinate_gadget(2, 1, 1, 3) == (6, 4)
    assert vector_gadget_k(1, (1,), 3) == coordinate_gadget(1, 0, 1, 3)
    with pytest.raises(ParameterError):
        coordinate_gadget(4, 0, 0, 3)


def test_coordinate_triples():
    for b in itertools.product((0, 1), repeat=3):
        gs = [coordinate_gadget(i, 0, bit, 3) for i, bit in enumerate(b, 1)]
        assert lcis_dpk(gs).length == lcis_oracle(gs).length == 1 - b[0] * b[1] * b[2]


@given(st.integers(1, 3).flatmap(lambda d: st.lists(
    st.lists(st.integers(0, 1), min_size=d, max_size=d), min_size=3, max_size=3)))
def test_vector_gadget_k_identity(vecs):
    d = len(vecs[0])
    gs = [vector_gadget_k(i, v, 3) for i, v in enumerate(vecs, 1)]
    assert lcis_dpk(gs).length == d - product_sum(vecs)
    assert all(lis_length(g) <= d for g in gs)


def test_vector_gadget_k_all_zero():
    for k in (2, 3, 4):
        gs = [vector_gadget_k(i, (0, 0, 0), k) for i in range(1, k + 1)]
        assert lcis_dpk(gs).length == 3


def test_grouped_gadget():
    g = vector_gadget((1, 0), X)
    assert grouped_gadget(X, [g], 1, 2) == shift(g, 4)
    us = [(1, 1), (0, 1)]
    v = (1, 0)
    gu = grouped_gadget(X, [vector_gadget(u, X) for u in us], 2, 2)
    gv = grouped_gadget(Y, vector_gadget(v, Y), 2, 2)
    assert lcis_oracle([gu, gv]).length == max(2 - dot(u, v) for u in us) == 2
    assert lis_length(gu) <= 4
    with pytest.raises(ParameterError):
        grouped_gadget(X, [], 0, 2)
    with pytest.raises(ParameterError):
        grouped_gadget(X, [g], 2, 2)


def test_combine_single():
    sx, sy, params = combine([[5]], [[5]], 1)
    assert params == CombineParams(1, 1, 1, 1) and params.constant == 2
    assert lcis_dp2(sx, sy).length == 3
    assert sx == (4, 5, 6)


def test_combine_empty_gadgets():
    for n in (1, 2, 3, 5):
        sx, sy, params = combine([()] * n, [()] * n, 2)
        assert lcis_dp2(sx, sy).length == params.constant == params.ell * (4 * params.n_blocks - 2)


def test_combine_exhaustive_small():
    gadgets = [(), (1,), (2, 1), (1, 2), (2,)]
    for xs in itertools.product(gadgets, repeat=2):
        for ys in itertools.product(gadgets, repeat=2):
            sx, sy, params = combine(xs, ys, 2)
            best = max(lcis_oracle([a, b]).length for a in xs for b in ys)
            assert lcis_dp2(sx, sy).length == params.constant + best


def test_combine_contract():
    with pytest.raises(GadgetContractError):
        combine([(1, 2, 3)], [(1,)], 2)
    with pytest.raises(ParameterError):
        combine([], [(1,)], 2)
    comb = Combiner(2, 2, AlphabetSpan(1, 4))
    with pytest.raises(GadgetContractError):
        comb.side(0, [(0,)])
    with pytest.raises(ParameterError):
        comb.side(0, [(), (), ()])


def test_combine_k_constants():
    xs = [vector_gadget_k(1, u, 2) for u in [(0, 1), (1, 1), (1, 0)]]
    ys = [vector_gadget_k(2, u, 2) for u in [(1, 1), (0, 1), (1, 1)]]
    seqs, params = combine_k([xs, ys], 2)
    assert params.constant == params.ell * (4 * params.n_blocks - 2)
    _, _, p2 = combine(xs, ys, 2)
    assert p2.constant == params.constant
    best = max(lcis_oracle([a, b]).length for a in xs for b in ys)
    assert lcis_dp2(*seqs).length == params.constant + best


def test_combine_k_three():
    rows = [[(1,), (2, 1)], [(2,), (1,)], [(1, 2), ()]]
    seqs, params = combine_k(rows, 2)
    assert params.constant == params.ell * (3 * (2 - 1) + 2 * 2)
    best = max(lcis_oracle(list(t)).length for t in itertools.product(*rows))
    assert lcis_dpk(seqs).length == params.constant + best
    seqs, params = combine_k([[()], [()], [()]], 1)
    assert lcis_dpk(seqs).length == params.constant


def test_combine_k_weak():
    rows = [[(1, 1), (2,)], [(1, 1), (2, 2)]]
    seqs, params = combine_k(rows, 2, weak=True)
    best = max(lcis_oracle([a, b], WEAK).length for a in rows[0] for b in rows[1])
    assert lcis_dp2(*seqs, WEAK).length == params.constant + best


def test_combine_k_errors():
    with pytest.raises(ParameterError):
        combine_k([[()]] * 6, 1)
    with pytest.raises(ParameterError):
        combine_k([[()], []], 1)
    with pytest.raises(GadgetContractError):
        combine_k([[(1, 2)], [()]], 1)
