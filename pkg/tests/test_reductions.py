import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcislab.errors import ParameterError, ShapeError, UnsupportedArity
from lcislab.instances import (BranchingProgram, KOVInstance, OVInstance,
                               bp_sat_bruteforce, gen_bp, gen_kov, gen_ov,
                               k_min_product, min_inner_product)
from lcislab.reductions import (ReductionOutput, bpsat_to_lcis, kov_to_klcis,
                                kov_to_klcwis, lcs_to_lcis, ov_to_lcis,
                                ov_to_lcis_unbalanced, reachability_gadgets)
from lcislab.solvers import (WEAK, lcis_dp2, lcis_dpk, lcis_oracle,
                             lcs_bruteforce, lis_length)

seeds = st.integers(0, 10**6)


def value(out):
    return lcis_dp2(*out.sequences).length


def test_ov_examples():
    out = ov_to_lcis(OVInstance([(1,)], [(1,)], 1))
    assert value(out) == out.constant
    out = ov_to_lcis(OVInstance([(1,)], [(0,)], 1))
    assert value(out) == out.constant + 1 == out.threshold
    assert out.target_identity == "ov-lcis"


@given(st.integers(1, 6), st.integers(1, 4), seeds)
def test_ov_identity(n, d, seed):
    inst = gen_ov(n, n, d, seed)
    out = ov_to_lcis(inst)
    assert value(out) == out.constant + d - min_inner_product(inst)
    assert out.constant == out.details["ell"] * (4 * out.details["n_blocks"] - 2)


@given(st.integers(1, 5), st.integers(1, 3), seeds)
def test_orthogonal_pair_reaches_max(n, d, seed):
    inst = gen_ov(n, n, d, seed, density=0.9)
    planted = OVInstance(inst.u_set + ((0,) * d,), inst.v_set + ((1,) * d,), d)
    out = ov_to_lcis(planted)
    assert value(out) == out.constant + d


@given(st.integers(1, 4), st.integers(1, 8), st.integers(1, 3), seeds)
def test_unbalanced_identity(m, extra, d, seed):
    inst = gen_ov(m + extra, m, d, seed)
    out = ov_to_lcis_unbalanced(inst)
    assert value(out) == out.constant + d - min_inner_product(inst)
    assert out.details["m"] == m


def test_unbalanced_examples():
    inst = gen_ov(4, 4, 3, seed=3)
    a, b = ov_to_lcis(inst), ov_to_lcis_unbalanced(inst)
    assert value(a) - a.constant == value(b) - b.constant
    inst = OVInstance([(1, 1), (1, 0), (0, 1), (1, 1)], [(1, 1), (0, 1)], 2)
    out = ov_to_lcis_unbalanced(inst)
    assert value(out) == out.constant + 2
    swapped = OVInstance(inst.v_set, inst.u_set, 2)
    assert value(ov_to_lcis_unbalanced(swapped)) - out.constant == 2


def test_kov_examples():
    out = kov_to_klcis(KOVInstance([[(1,)]] * 3, 1))
    assert out.constant == out.details["ell"] * 2
    assert lcis_dpk(out.sequences).length == out.constant
    inst = gen_kov(2, 3, 2, seed=4)
    out = kov_to_klcis(inst)
    assert out.constant == out.details["ell"] * (4 * out.details["n_blocks"] - 2)
    assert value(out) == out.constant + 2 - k_min_product(inst)
    with pytest.raises(UnsupportedArity):
        kov_to_klcis(KOVInstance([[(1,)]] * 6, 1))
    with pytest.raises(ParameterError):
        kov_to_klcis(inst, k=3)


@pytest.mark.parametrize("seed", range(6))
def test_kov_three_identity(seed):
    inst = gen_kov(3, 2, 2, seed, density=0.7)
    out = kov_to_klcis(inst)
    assert lcis_dpk(out.sequences).length == out.constant + 2 - k_min_product(inst)


def test_kov_padding_keeps_minimum():
    # three vectors pad to four; the padding must not create a smaller product sum
    inst = KOVInstance([[(1, 1), (1, 1), (1, 0)], [(1, 1), (0, 1), (1, 1)], [(1, 1)] * 3], 2)
    out = kov_to_klcis(inst)
    assert lcis_dpk(out.sequences).length == out.constant + 2 - k_min_product(inst)


def test_klcwis_examples():
    for bits in [(0,), (1,)]:
        inst = KOVInstance([[bits], [(1,)]], 1)
        out = kov_to_klcwis(inst)
        got = lcis_dp2(*out.sequences, WEAK).length
        assert got == lcis_oracle(out.sequences, WEAK).length
        assert (got == out.threshold) == (k_min_product(inst) == 0)
    assert out.details["alphabet"] == len(set(out.sequences[0]) | set(out.sequences[1]))
    with pytest.raises(UnsupportedArity):
        kov_to_klcwis(KOVInstance([[(1,)]] * 5, 1))


@given(st.integers(1, 4), st.integers(1, 3), seeds)
def test_klcwis_decision(n, d, seed):
    inst = gen_kov(2, n, d, seed)
    out = kov_to_klcwis(inst)
    got = lcis_dp2(*out.sequences, WEAK).length
    assert got <= out.threshold
    assert (got == out.threshold) == (k_min_product(inst) == 0)


def test_klcwis_three_sequences():
    for seed in range(3):
        inst = gen_kov(3, 2, 2, seed, density=0.7)
        out = kov_to_klcwis(inst)
        got = lcis_dpk(out.sequences, WEAK).length
        assert (got == out.threshold) == (k_min_product(inst) == 0)


def test_lcs_examples():
    assert lcs_to_lcis([[7], [7]]) == [(0,)]
    out = lcs_to_lcis([[1, 2], [2, 1]])
    assert lis_length(out[0]) == 1
    with pytest.raises(ParameterError):
        lcs_to_lcis([[1]])


@given(st.lists(st.integers(1, 4), max_size=8), st.lists(st.integers(1, 4), max_size=8))
def test_lcs_identity(a, b):
    out = lcs_to_lcis([a, b])
    assert lis_length(out[0]) == lcs_bruteforce([a, b])
    assert len(out[0]) <= len(a) * len(b)


@given(st.lists(st.lists(st.integers(1, 3), max_size=6), min_size=3, max_size=3))
def test_lcs_identity_three(seqs):
    out = lcs_to_lcis(seqs)
    assert lcis_dp2(*out).length == lcs_bruteforce(seqs)


def test_bp_single_edge():
    sat = BranchingProgram(1, 1, 2, [1], [[(0, 0, 1)]], 0, 0)
    out = bpsat_to_lcis(sat)
    assert value(out) == out.threshold
    unsat = BranchingProgram(1, 1, 2, [1], [[]], 0, 0)
    out = bpsat_to_lcis(unsat)
    assert value(out) < out.threshold


@given(st.integers(1, 5), st.integers(1, 3), st.integers(0, 1), seeds)
def test_bp_decision(n, w, t, seed):
    bp = gen_bp(n, w, t, 0.5, seed)
    out = bpsat_to_lcis(bp)
    got = value(out)
    assert got <= out.threshold
    assert (got == out.threshold) == (bp_sat_bruteforce(bp) is not None)


def test_bp_levels():
    bp = gen_bp(3, 2, 2, 0.6, seed=11)
    build = reachability_gadgets(bp)
    assert build.n_vars == 4
    info = build.level_info
    assert info[0]["constant"] == 1
    for prev, cur in zip(info, info[1:]):
        assert cur["constant"] == cur["combine_constant"] + 2 * prev["constant"]
    for k in (0, 1):
        for (layer, u, v), g in build.levels[k].items():
            for a, b in itertools.product(range(len(build.lefts)), range(len(build.rights))):
                x = build.assignment(a, b)[:3]
                path = v in bp.reachable(layer, layer + 2**k, u, x)
                got = lcis_dp2(g.x[a], g.y[b]).length
                assert got <= g.constant and (got == g.constant) == path


def test_bp_shape_errors():
    with pytest.raises(ShapeError):
        bpsat_to_lcis(BranchingProgram(1, 1, 4, [1] * 3, [[]] * 3, 0, 0))
    with pytest.raises(ShapeError):
        bpsat_to_lcis(BranchingProgram(9, 1, 2, [1], [[]], 0, 0))
    with pytest.raises(ShapeError):
        bpsat_to_lcis(BranchingProgram(1, 4, 2, [1], [[]], 0, 0))
    with pytest.raises(ShapeError):
        bpsat_to_lcis(BranchingProgram(1, 1, 9, [1] * 8, [[]] * 8, 0, 0))


def test_output_serialization():
    out = ov_to_lcis(gen_ov(2, 2, 2, seed=1))
    back = ReductionOutput.loads(out.dumps())
    assert back == out
    plain = ReductionOutput([(1, 2)], 0, "lcs-lcis")
    assert ReductionOutput.loads(plain.dumps()) == plain
    with pytest.raises(ShapeError):
        ReductionOutput.loads("1 2\n")
    with pytest.raises(ShapeError):
        ReductionOutput.loads("# identity=x\n1\n")
    with pytest.raises(ValueError):
        ReductionOutput([], 0, "x")
