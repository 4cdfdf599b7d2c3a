import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcislab.errors import InstanceTooLarge, ParameterError, ShapeError
from lcislab.instances import (BranchingProgram, KOVInstance, OVInstance,
                               bp_eval, bp_sat_bruteforce, emit_bp, emit_kov,
                               emit_ov, gen_bp, gen_kov, gen_ov, k_min_product,
                               min_inner_product, parse_bp, parse_kov,
                               parse_ov, product_sum)

seeds = st.integers(0, 10**6)


def single_edge_bp():
    return BranchingProgram(1, 1, 2, [1], [[(0, 0, 1)]], 0, 0)


def test_min_inner_product():
    inst = OVInstance([(1, 1), (1, 0)], [(1, 1), (0, 1)], 2)
    assert min_inner_product(inst) == 0
    assert min_inner_product(OVInstance([(1, 1, 1)] * 2, [(1, 1, 1)], 3)) == 3
    assert min_inner_product(OVInstance([(0, 0)], [(1, 1), (1, 0)], 2)) == 0


def test_k_min_product():
    assert k_min_product(KOVInstance([[(1, 1)]] * 3, 2)) == 2
    assert k_min_product(KOVInstance([[(1, 1), (0, 0)], [(1, 1), (1, 1)], [(1, 0), (1, 1)]], 2)) == 0
    with pytest.raises(InstanceTooLarge):
        k_min_product(KOVInstance([[(1,)] * 101] * 3, 1))


@given(seeds)
def test_k_min_product_reversed_order(seed):
    inst = gen_kov(3, 4, 4, seed)
    rev = min(product_sum(t) for t in itertools.product(*reversed(inst.sets)))
    assert k_min_product(inst) == rev


def test_instance_shapes():
    with pytest.raises(ShapeError):
        OVInstance([(1, 0)], [(1,)], 2)
    with pytest.raises(ShapeError):
        OVInstance([], [(1,)], 1)
    with pytest.raises(ShapeError):
        KOVInstance([[(1,)], [(1,), (0,)]], 1)
    with pytest.raises(ShapeError):
        KOVInstance([[(1,)]], 1)


def test_bp_eval_examples():
    bp = single_edge_bp()
    assert bp_eval(bp, (1,)) and not bp_eval(bp, (0,))
    empty = BranchingProgram(2, 2, 3, [1, 2], [[], []], 0, 1)
    assert not any(bp_eval(empty, x) for x in itertools.product((0, 1), repeat=2))
    with pytest.raises(ParameterError):
        bp_eval(bp, (1, 1))


def _paths_oracle(bp, x):
    def walk(layer, node):
        if layer == bp.length - 1:
            return node == bp.accept
        var = x[bp.layer_var[layer] - 1]
        return any(walk(layer + 1, b) for a, b, lab in bp.edges[layer] if a == node and lab == var)
    return walk(0, bp.start)


@given(st.integers(1, 5), st.integers(1, 3), st.integers(0, 2), seeds)
def test_bp_eval_matches_path_enumeration(n, w, t, seed):
    bp = gen_bp(n, w, t, 0.5, seed)
    assert bp.length == 2**t + 1
    sat = bp_sat_bruteforce(bp)
    accepted = [x for x in itertools.product((0, 1), repeat=n) if _paths_oracle(bp, x)]
    assert all(bp_eval(bp, x) == (x in accepted) for x in itertools.product((0, 1), repeat=n))
    assert sat == (accepted[0] if accepted else None)


@given(st.integers(1, 4), st.integers(1, 3), seeds, st.integers(0, 20))
def test_bp_monotone_in_edges(n, w, seed, extra):
    bp = gen_bp(n, w, 1, 0.3, seed)
    full = [(a, b, lab) for a in range(w) for b in range(w) for lab in (0, 1)]
    grown = BranchingProgram(bp.n_vars, w, bp.length, bp.layer_var,
                             [list(bp.edges[0]) + full[:extra], bp.edges[1]], bp.start, bp.accept)
    for x in itertools.product((0, 1), repeat=n):
        assert bp_eval(grown, x) >= bp_eval(bp, x)


def test_bp_sat_bruteforce_examples():
    both = BranchingProgram(3, 1, 3, [1, 2], [[(0, 0, 0), (0, 0, 1)]] * 2, 0, 0)
    assert bp_sat_bruteforce(both) == (0, 0, 0)
    assert bp_sat_bruteforce(BranchingProgram(2, 1, 2, [1], [[]], 0, 0)) is None
    big = BranchingProgram(21, 1, 2, [1], [[]], 0, 0)
    with pytest.raises(InstanceTooLarge):
        bp_sat_bruteforce(big)


MINIMAL_BP = """\
# a two-layer program
bp 1 1 2
start 0
accept 0
layer v=1
0 0 1
"""


def test_parse_bp_minimal_and_errors():
    assert parse_bp(MINIMAL_BP) == single_edge_bp()
    assert parse_bp(MINIMAL_BP.replace("0 0 1", "0 0 1 1")) == single_edge_bp()
    with pytest.raises(ShapeError, match="line 6.*non-adjacent"):
        parse_bp(MINIMAL_BP.replace("0 0 1", "0 0 1 2"))
    with pytest.raises(ShapeError, match="line 2"):
        parse_bp(MINIMAL_BP.replace("bp 1 1 2", "bq 1 1 2"))
    with pytest.raises(ShapeError, match="line 6"):
        parse_bp(MINIMAL_BP.replace("0 0 1", "0 3 1"))
    with pytest.raises(ShapeError):
        parse_bp(MINIMAL_BP.replace("bp 1 1 2", "bp 1 1 3"))
    with pytest.raises(ShapeError):
        parse_bp("")


@given(st.integers(1, 6), st.integers(1, 3), st.integers(0, 2), seeds)
def test_bp_round_trip(n, w, t, seed):
    bp = gen_bp(n, w, t, 0.5, seed)
    assert parse_bp(emit_bp(bp)) == bp


@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), seeds)
def test_ov_round_trip(n, m, d, seed):
    inst = gen_ov(n, m, d, seed)
    assert parse_ov(emit_ov(inst)) == inst


@given(st.integers(2, 4), st.integers(1, 4), st.integers(1, 4), seeds)
def test_kov_round_trip(k, n, d, seed):
    inst = gen_kov(k, n, d, seed)
    assert parse_kov(emit_kov(inst)) == inst


def test_ov_parse_errors():
    with pytest.raises(ShapeError, match="line 2"):
        parse_ov("ov 1 1 2\n012\n--\n01\n")
    with pytest.raises(ShapeError):
        parse_ov("ov 2 1 2\n01\n--\n01\n")
    with pytest.raises(ShapeError):
        parse_kov("ov 1 1 1\n1\n--\n1\n")


def test_generators_deterministic():
    assert gen_ov(2, 2, 2, seed=1) == gen_ov(2, 2, 2, seed=1)
    assert all(len(v) == 3 for s in gen_kov(3, 2, 3, seed=5).sets for v in s)
    assert gen_bp(4, 2, 2, 0.5, 9) == gen_bp(4, 2, 2, 0.5, 9)
    with pytest.raises(ParameterError):
        gen_ov(0, 1, 1)
    with pytest.raises(ParameterError):
        gen_bp(1, 1, 0, 1.5)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), seeds)
def test_min_dot_zero_iff_orthogonal(n, m, d, seed):
    inst = gen_ov(n, m, d, seed)
    orth = any(all(a * b == 0 for a, b in zip(u, v)) for u in inst.u_set for v in inst.v_set)
    assert (min_inner_product(inst) == 0) == orth
