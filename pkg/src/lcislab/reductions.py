"""End-to-end reductions to LCIS / LCWIS.

Every reduction returns a :class:`ReductionOutput` whose ``constant`` is the
additive term of the identity it certifies:

``ov2lcis``, ``ov2lcis-unbalanced``
    ``lcis(X, Y) = constant + d - min_{i,j} u_i . v_j``
``kov2klcis``
    ``lcis(X_1..X_k) = constant + d - min over k-tuples of sum_j prod_i u_i[j]``
``kov2klcwis``
    same shape for LCWIS; ``threshold`` is measured on an all-zero reference
    instance of the same shape
``lcs2lcis``
    ``lcis(outputs) = LCS(inputs)`` (constant 0)
``bp2lcis``
    ``lcis(X, Y) == threshold`` iff the program is satisfiable, smaller otherwise
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ParameterError, ShapeError, UnsupportedArity
from .gadgets import (X, Y, Combiner, combine, combine_k, grouped_gadget,
                      vector_gadget, vector_gadget_k)
from .instances import BranchingProgram, KOVInstance, OVInstance
from .seqcore import dumps_seqs, loads_seqs, shift, span_of
from .solvers import WEAK, lcis_dp2, lcis_dpk, lis_length

BP_MAX_VARS = 8
BP_MAX_WIDTH = 3
BP_MAX_T = 2


@dataclass(frozen=True)
class ReductionOutput:
    sequences: list
    constant: int
    target_identity: str
    threshold: int | None = None
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.sequences:
            raise ValueError("a reduction must produce at least one sequence")

    def dumps(self) -> str:
        thr = "none" if self.threshold is None else str(self.threshold)
        head = f"# identity={self.target_identity} constant={self.constant} threshold={thr}\n"
        return head + dumps_seqs(self.sequences)

    @classmethod
    def loads(cls, text: str) -> "ReductionOutput":
        first = text.splitlines()[0] if text else ""
        if not first.startswith("# "):
            raise ShapeError("missing reduction header", 1)
        try:
            fields = dict(tok.split("=", 1) for tok in first[2:].split())
            thr = None if fields["threshold"] == "none" else int(fields["threshold"])
            return cls(loads_seqs(text), int(fields["constant"]), fields["identity"], thr)
        except (KeyError, ValueError):
            raise ShapeError("malformed reduction header", 1) from None


def _pow2_ceil(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


# -- OV ------------------------------------------------------------------------------

def ov_to_lcis(inst: OVInstance) -> ReductionOutput:
    """Vector gadgets threaded through the combiner with ``delta = 2d``."""
    xs = [vector_gadget(u, X) for u in inst.u_set]
    ys = [vector_gadget(v, Y) for v in inst.v_set]
    sx, sy, params = combine(xs, ys, 2 * inst.d)
    return ReductionOutput(
        [sx, sy], params.constant, "ov-lcis", params.constant + inst.d,
        {"d": inst.d, "ell": params.ell, "n_blocks": params.n_blocks, "delta": params.delta})


def ov_to_lcis_unbalanced(inst: OVInstance) -> ReductionOutput:
    """Group the larger side into ``m`` bundles of ``q`` shifted gadgets.

    The smaller side's gadgets are repeated ``q`` times with the same shift
    ladder, so only ``m`` gadget pairs reach the combiner and the LCIS value
    stays ``O(md)``.  Sets are swapped if ``|V| > |U|``; the larger set is
    padded to ``q*m`` with all-ones vectors, which never undercut the minimum.
    """
    us, vs, d = list(inst.u_set), list(inst.v_set), inst.d
    if len(vs) > len(us):
        us, vs = vs, us
    n, m = len(us), len(vs)
    q = -(-n // m)
    us += [(1,) * d] * (q * m - n)
    bundles_x = [grouped_gadget(X, [vector_gadget(u, X) for u in us[l * q:(l + 1) * q]], q, d)
                 for l in range(m)]
    bundles_y = [grouped_gadget(Y, vector_gadget(v, Y), q, d) for v in vs]
    sx, sy, params = combine(bundles_x, bundles_y, 2 * d)
    return ReductionOutput(
        [sx, sy], params.constant, "ov-lcis-unbalanced", params.constant + d,
        {"d": d, "q": q, "m": m, "ell": params.ell, "n_blocks": params.n_blocks})


# -- k-OV --------------------------------------------------------------------------

def _padded_sets(inst: KOVInstance):
    # pad by repeating a real vector: a duplicate never changes the minimum,
    # whereas an all-ones dummy can for k >= 3
    size = _pow2_ceil(inst.n)
    return [list(s) + [s[-1]] * (size - len(s)) for s in inst.sets]


def _kov_gadgets(sets, k):
    return [[vector_gadget_k(i, u, k) for u in s] for i, s in enumerate(sets, 1)]


def kov_to_klcis(inst: KOVInstance, k: int | None = None) -> ReductionOutput:
    k = inst.k if k is None else k
    if k != inst.k:
        raise ParameterError(f"instance has {inst.k} sets, asked for arity {k}")
    if not 2 <= k <= 5:
        raise UnsupportedArity(f"k-OV reduction supports arity 2..5, got {k}")
    seqs, params = combine_k(_kov_gadgets(_padded_sets(inst), k), inst.d, k)
    return ReductionOutput(
        seqs, params.constant, "kov-klcis", params.constant + inst.d,
        {"d": inst.d, "k": k, "ell": params.ell, "n_blocks": params.n_blocks})


def _weak_value(seqs) -> int:
    if len(seqs) == 2:
        return lcis_dp2(seqs[0], seqs[1], WEAK).length
    return lcis_dpk(seqs, WEAK).length


def kov_to_klcwis(inst: KOVInstance, k: int | None = None) -> ReductionOutput:
    """Same assembly with duplicating inflation, certified for LCWIS.

    The alphabet is ``O(log n + d)``.  No closed form is relied on: the
    threshold is the LCWIS of the same construction on an all-zero instance
    (which has an orthogonal tuple), and ``constant = threshold - d``.
    """
    k = inst.k if k is None else k
    if k != inst.k:
        raise ParameterError(f"instance has {inst.k} sets, asked for arity {k}")
    if not 2 <= k <= 4:
        raise UnsupportedArity(f"k-LCWIS reduction supports arity 2..4, got {k}")
    sets = _padded_sets(inst)
    seqs, params = combine_k(_kov_gadgets(sets, k), inst.d, k, weak=True)
    zero = [[(0,) * inst.d] * len(sets[0]) for _ in range(k)]
    ref, ref_params = combine_k(_kov_gadgets(zero, k), inst.d, k, weak=True)
    assert ref_params == params
    top = _weak_value(ref)
    alphabet = len(set().union(*map(set, seqs)))
    return ReductionOutput(
        seqs, top - inst.d, "kov-klcwis", top,
        {"d": inst.d, "k": k, "ell": params.ell, "n_blocks": params.n_blocks,
         "alphabet": alphabet, "strict_analog_constant": params.constant})


# -- LCS ---------------------------------------------------------------------------

def lcs_to_lcis(seqs: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Replace every symbol of inputs ``2..k`` by its positions in input 1, descending.

    Increasing common subsequences of the outputs correspond one-to-one to
    common subsequences of the inputs, so their LCIS equals the LCS.
    """
    if len(seqs) < 2:
        raise ParameterError("lcs_to_lcis needs at least two sequences")
    positions: dict[int, list[int]] = {}
    for p, v in enumerate(seqs[0]):
        positions.setdefault(v, []).append(p)
    desc = {v: tuple(reversed(ps)) for v, ps in positions.items()}
    return [tuple(p for v in s for p in desc.get(v, ())) for s in seqs[1:]]


# -- branching programs --------------------------------------------------------------

@dataclass(frozen=True)
class ReachabilityGadgetPair:
    """Gadgets for node ``u`` in ``layer`` and node ``v`` in ``layer + 2**level``.

    ``x[a]`` / ``y[b]`` are indexed by the position of the half-assignment in
    lexicographic order.  ``lcis(x[a], y[b]) == constant`` iff some path
    ``u -> v`` is satisfied by ``a + b``; otherwise it is smaller.
    """

    level: int
    layer: int
    u: int
    v: int
    x: tuple
    y: tuple
    constant: int
    offsets: tuple = ()


@dataclass
class ReachabilityBuild:
    bp: BranchingProgram
    n_vars: int                      # after padding to an even count
    lefts: list
    rights: list
    levels: list = field(default_factory=list)   # per level: {(layer, u, v): pair}
    level_info: list = field(default_factory=list)

    @property
    def top(self) -> ReachabilityGadgetPair:
        return self.levels[-1][(0, self.bp.start, self.bp.accept)]

    def assignment(self, a: int, b: int) -> tuple:
        return self.lefts[a] + self.rights[b]


def _check_bp_shape(bp: BranchingProgram) -> int:
    t = (bp.length - 1).bit_length() - 1
    if bp.length - 1 != 2 ** t:
        raise ShapeError(f"length T={bp.length} is not 2^t + 1")
    if bp.n_vars > BP_MAX_VARS or bp.width > BP_MAX_WIDTH or t > BP_MAX_T:
        raise ShapeError(f"program exceeds desk caps N<={BP_MAX_VARS}, W<={BP_MAX_WIDTH}, t<={BP_MAX_T}")
    return t


def _base_pair(bp, layer, u, v, half, lefts, rights):
    var = bp.layer_var[layer]
    labels = {lab for a, b, lab in bp.edges[layer] if a == u and b == v}
    if var <= half:
        xs = tuple((0,) if a[var - 1] in labels else () for a in lefts)
        ys = tuple((0,) for _ in rights)
    else:
        xs = tuple((0,) for _ in lefts)
        ys = tuple((0,) if b[var - half - 1] in labels else () for b in rights)
    return ReachabilityGadgetPair(0, layer, u, v, xs, ys, 1)


def _branch(first: ReachabilityGadgetPair, second: ReachabilityGadgetPair):
    # second half lifted strictly above everything in the first half
    lo_span = span_of(first.x + first.y)
    hi_span = span_of(second.x + second.y)
    lift = 0 if lo_span.is_empty or hi_span.is_empty else lo_span.hi + 1 - hi_span.lo
    bx = [a + shift(b, lift) for a, b in zip(first.x, second.x)]
    by = [a + shift(b, lift) for a, b in zip(first.y, second.y)]
    return bx, by


def reachability_gadgets(bp: BranchingProgram) -> ReachabilityBuild:
    """Build reachability gadgets level by level up to the start/accept pair."""
    t = _check_bp_shape(bp)
    n_vars = bp.n_vars + (bp.n_vars % 2)
    half = n_vars // 2
    lefts = list(itertools.product((0, 1), repeat=half))
    rights = list(itertools.product((0, 1), repeat=half))
    build = ReachabilityBuild(bp, n_vars, lefts, rights)
    W = bp.width
    cur = {(p, u, v): _base_pair(bp, p, u, v, half, lefts, rights)
           for p in range(bp.length - 1) for u in range(W) for v in range(W)}
    build.levels.append(cur)
    build.level_info.append({"level": 0, "constant": 1})
    for k in range(1, t + 1):
        step, mid = 2 ** k, 2 ** (k - 1)
        prev_const = build.level_info[-1]["constant"]
        branches = {}
        for p in range(0, bp.length - 1, step):
            for u in range(W):
                for v in range(W):
                    per_w, offsets, top = [], [], None
                    for w in range(W):
                        bx, by = _branch(cur[(p, u, w)], cur[(p + mid, w, v)])
                        sp = span_of(bx + by)
                        q = 0 if (sp.is_empty or top is None) else top + 1 - sp.lo
                        if not sp.is_empty:
                            top = sp.hi + q
                        offsets.append(q)
                        per_w.append(([shift(g, q) for g in bx], [shift(g, q) for g in by]))
                    branches[(p, u, v)] = (per_w, tuple(offsets))
        delta = max([1] + [lis_length(g) for per_w, _ in branches.values()
                           for bx, by in per_w for g in bx + by])
        nxt = {}
        comb_constant = None
        for key, (per_w, offsets) in branches.items():
            sp = span_of(g for bx, by in per_w for g in bx + by)
            comb = Combiner(W, delta, sp)
            comb_constant = comb.constant
            xs = tuple(comb.side(0, [bx[a] for bx, _ in per_w]) for a in range(len(lefts)))
            ys = tuple(comb.side(1, [by[b] for _, by in per_w]) for b in range(len(rights)))
            nxt[key] = ReachabilityGadgetPair(k, key[0], key[1], key[2], xs, ys,
                                              comb_constant + 2 * prev_const, offsets)
        build.levels.append(nxt)
        build.level_info.append({"level": k, "combine_constant": comb_constant,
                                 "constant": comb_constant + 2 * prev_const,
                                 "delta": delta, "ell": comb.params.ell})
        cur = nxt
    return build


def bpsat_to_lcis(bp: BranchingProgram) -> ReductionOutput:
    """Split-and-list: one reachability gadget per half-assignment, then combine.

    ``lcis(X, Y) = threshold`` iff the program accepts some assignment.
    """
    build = reachability_gadgets(bp)
    top = build.top
    xs, ys = list(top.x), list(top.y)
    delta = max([1] + [lis_length(g) for g in xs + ys])
    comb = Combiner(len(xs), delta, span_of(xs + ys))
    sx, sy = comb.side(0, xs), comb.side(1, ys)
    info = {"levels": build.level_info, "final_delta": delta, "final_ell": comb.params.ell,
            "top_constant": top.constant, "n_vars": build.n_vars,
            "gadget_length": max(len(g) for g in xs + ys)}
    return ReductionOutput([sx, sy], comb.constant, "bp-sat", comb.constant + top.constant, info)
