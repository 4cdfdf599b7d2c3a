"""Exact and approximate solvers for LCIS, LCWIS and LIS.

``mode`` is ``"strict"`` (strictly increasing, LCIS) or ``"weak"``
(non-decreasing, LCWIS) everywhere.
"""
from __future__ import annotations

import itertools
import math
from bisect import bisect_left, bisect_right
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InstanceTooLarge, ParameterError, UnsupportedArity

ORACLE_CAP = 20
DPK_MAX_ARITY = 5

STRICT = "strict"
WEAK = "weak"


def _check_mode(mode):
    if mode not in (STRICT, WEAK):
        raise ParameterError(f"mode must be 'strict' or 'weak', got {mode!r}")


@dataclass(frozen=True)
class SolveResult:
    length: int
    witness: tuple[int, ...] | None = None
    meta: dict = field(default_factory=dict, compare=False)


# -- independent checks ------------------------------------------------------

def is_subsequence(z: Sequence[int], s: Sequence[int]) -> bool:
    it = iter(s)
    return all(any(v == w for w in it) for v in z)


def is_increasing(z: Sequence[int], mode: str = STRICT) -> bool:
    if mode == STRICT:
        return all(a < b for a, b in zip(z, z[1:]))
    return all(a <= b for a, b in zip(z, z[1:]))


def check_witness(z: Sequence[int], seqs: Sequence[Sequence[int]], mode: str = STRICT) -> bool:
    """True iff ``z`` is a common subsequence of ``seqs``, monotone per ``mode``."""
    return is_increasing(list(z), mode) and all(is_subsequence(z, s) for s in seqs)


# -- brute force -------------------------------------------------------------

def lcis_oracle(seqs: Sequence[Sequence[int]], mode: str = STRICT) -> SolveResult:
    """Exhaustive search over increasing subsequences of a shortest input.

    A depth-first walk extends candidates index by index and keeps a candidate
    only while it still embeds (greedily) into every other input.  Shortest
    input is capped at ``ORACLE_CAP`` elements.
    """
    _check_mode(mode)
    if len(seqs) < 1:
        raise ParameterError("need at least one sequence")
    seqs = [list(s) for s in seqs]
    base_idx = min(range(len(seqs)), key=lambda t: len(seqs[t]))
    base = seqs[base_idx]
    if len(base) > ORACLE_CAP:
        raise InstanceTooLarge(f"oracle cap is {ORACLE_CAP}, shortest input has {len(base)}")
    others = [s for t, s in enumerate(seqs) if t != base_idx]
    ok = (lambda a, b: a < b) if mode == STRICT else (lambda a, b: a <= b)

    best: list[int] = []

    def advance(pos, v):
        # next embedding positions after matching v greedily, or None
        nxt = []
        for s, p in zip(others, pos):
            while p < len(s) and s[p] != v:
                p += 1
            if p == len(s):
                return None
            nxt.append(p + 1)
        return nxt

    def walk(start, chosen, pos):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        for t in range(start, len(base)):
            v = base[t]
            if chosen and not ok(chosen[-1], v):
                continue
            nxt = advance(pos, v)
            if nxt is None:
                continue
            chosen.append(v)
            walk(t + 1, chosen, nxt)
            chosen.pop()

    walk(0, [], [0] * len(others))
    return SolveResult(len(best), tuple(best))


def lcs_bruteforce(seqs: Sequence[Sequence[int]]) -> int:
    """Longest common subsequence length by subset enumeration of a shortest input."""
    seqs = [list(s) for s in seqs]
    base = min(seqs, key=len)
    if len(base) > ORACLE_CAP:
        raise InstanceTooLarge(f"LCS brute force cap is {ORACLE_CAP}")
    for size in range(len(base), 0, -1):
        for idx in itertools.combinations(range(len(base)), size):
            z = [base[i] for i in idx]
            if all(is_subsequence(z, s) for s in seqs):
                return size
    return 0


# -- LIS ---------------------------------------------------------------------

def lis_length(s: Sequence[int], mode: str = STRICT) -> int:
    """Patience sorting: ``tails[l]`` is the smallest tail of a length-(l+1) run."""
    _check_mode(mode)
    place = bisect_left if mode == STRICT else bisect_right
    tails: list[int] = []
    for v in s:
        p = place(tails, v)
        if p == len(tails):
            tails.append(v)
        else:
            tails[p] = v
    return len(tails)


# -- quadratic DP for two sequences --------------------------------------------

def lcis_dp2(x: Sequence[int], y: Sequence[int], mode: str = STRICT,
             witness: bool = False) -> SolveResult:
    """O(|x|·|y|) LCIS/LCWIS of two sequences.

    ``f[j]`` is the longest common run ending at ``y[j]`` using the rows of
    ``x`` seen so far.  For a row with symbol ``c`` the best predecessor of a
    match at ``j`` is the prefix maximum of ``f`` over earlier columns whose
    symbol compares below ``c``; rows are vectorised over columns.
    """
    _check_mode(mode)
    if witness:
        return _dp2_links(x, y, mode)
    if len(x) == 0 or len(y) == 0:
        return SolveResult(0)
    ya = np.asarray(y, dtype=np.int64)
    f = np.zeros(len(ya), dtype=np.int64)
    where_sym = defaultdict(list)
    for j, v in enumerate(y):
        where_sym[v].append(j)
    cache = {}
    for c in x:
        hits = where_sym.get(c)
        if hits is None:
            continue
        if c not in cache:
            last = hits[-1]
            below = (ya[:last] < c) if mode == STRICT else (ya[:last] <= c)
            cache[c] = (np.asarray(hits), last, below)
        hits_a, last, below = cache[c]
        if last == 0:
            f[0] = max(f[0], 1)
            continue
        pm = np.maximum.accumulate(np.where(below, f[:last], 0))
        before = np.concatenate(([0], pm))[hits_a]
        f[hits_a] = np.maximum(f[hits_a], before + 1)
    return SolveResult(int(f.max()))


def _dp2_links(x, y, mode):
    # Same recurrence, scalar loop, each improvement stored as an immutable
    # (value, previous-node) link so the chain stays valid in both inputs.
    f = [0] * len(y)
    node = [None] * len(y)
    for c in x:
        best, best_node = 0, None
        for j, v in enumerate(y):
            if v == c:
                cand = best + 1
                if mode == WEAK and f[j] > best:
                    best, best_node = f[j], node[j]
                if cand > f[j]:
                    f[j], node[j] = cand, (v, best_node)
            elif v < c and f[j] > best:
                best, best_node = f[j], node[j]
    if not f:
        return SolveResult(0, ())
    j = max(range(len(f)), key=f.__getitem__)
    return SolveResult(f[j], _unwind(node[j]))


def _unwind(link):
    out = []
    while link is not None:
        out.append(link[0])
        link = link[1]
    return tuple(reversed(out))


# -- k sequences ---------------------------------------------------------------

def lcis_dpk(seqs: Sequence[Sequence[int]], mode: str = STRICT) -> SolveResult:
    """O(n^k) DP over all prefix tuples.

    ``R[i_1..i_k]`` is the longest common run of the prefixes that ends with
    the last element of the ``k``-th prefix.  If some earlier input's last
    element differs from it, the value is copied from the table with that
    index decremented.  Otherwise all last elements equal a common symbol and
    the value is one plus a running maximum ``D`` over the table row
    ``(i_1-1, ..., i_{k-1}-1, ·)`` restricted to smaller (weak: not larger)
    symbols of the ``k``-th input.  The innermost index is handled as one
    vector operation; only two slabs of the first index are kept.
    """
    _check_mode(mode)
    k = len(seqs)
    if not 2 <= k <= DPK_MAX_ARITY:
        raise UnsupportedArity(f"lcis_dpk supports 2..{DPK_MAX_ARITY} sequences, got {k}")
    seqs = [list(s) for s in seqs]
    if any(len(s) == 0 for s in seqs):
        return SolveResult(0)
    last = np.asarray(seqs[-1], dtype=np.int64)
    nk = len(last)
    outer = seqs[:-1]
    slab_shape = tuple(len(s) + 1 for s in outer[1:]) + (nk + 1,)
    prev = np.zeros(slab_shape, dtype=np.int64)
    below_cache = {}
    eq_cache = {}

    def masks(sigma):
        if sigma not in eq_cache:
            eq_cache[sigma] = last == sigma
            below_cache[sigma] = (last < sigma) if mode == STRICT else (last <= sigma)
        return eq_cache[sigma], below_cache[sigma]

    ranges = [range(1, len(s) + 1) for s in outer[1:]]
    for i1 in range(1, len(outer[0]) + 1):
        cur = np.zeros(slab_shape, dtype=np.int64)
        v1 = outer[0][i1 - 1]
        for rest in itertools.product(*ranges):
            vals = [v1] + [outer[s + 1][r - 1] for s, r in enumerate(rest)]
            row = cur[rest]
            up = prev[rest][1:]  # first index decremented
            odd = next((s for s in range(1, len(vals)) if vals[s] != v1), None)
            if odd is None:
                eq, below = masks(v1)
                diag = prev[tuple(r - 1 for r in rest)][1:]
                pm = np.maximum.accumulate(np.where(below, diag, 0))
                d = np.concatenate(([0], pm[:-1]))
                row[1:] = np.where(eq, d + 1, up)
            else:
                back = list(rest)
                back[odd - 1] -= 1
                other = cur[tuple(back)][1:]
                row[1:] = np.where(last != v1, up, other)
        prev = cur
    top = tuple(len(s) for s in outer[1:])
    return SolveResult(int(prev[top].max()))


# -- sparse solver over matching pairs -------------------------------------------

class _DominanceMax:
    """Prefix-maximum over points ``(column, value)`` with point raises.

    Outer Fenwick tree over columns; each node keeps the sorted values of the
    columns it covers and an inner Fenwick tree (max) over their ranks.
    Queries ask for the best payload among columns ``< col`` whose value is
    ``< bound`` (or ``<= bound``).
    """

    def __init__(self, values):
        m = len(values)
        self.m = m
        self.keys = [None] * (m + 1)
        for t in range(1, m + 1):
            lo = t - (t & -t)
            self.keys[t] = sorted(set(values[lo:t]))
        self.best = [[0] * (len(self.keys[t]) + 1) if t else None for t in range(m + 1)]
        self.link = [[None] * (len(self.keys[t]) + 1) if t else None for t in range(m + 1)]

    def raise_to(self, col, value, length, link):
        t = col + 1
        while t <= self.m:
            keys, best, links = self.keys[t], self.best[t], self.link[t]
            r = bisect_left(keys, value) + 1
            while r < len(best):
                if length > best[r]:
                    best[r], links[r] = length, link
                r += r & -r
            t += t & -t

    def query(self, col, bound, inclusive):
        place = bisect_right if inclusive else bisect_left
        out, out_link = 0, None
        t = col
        while t > 0:
            keys, best, links = self.keys[t], self.best[t], self.link[t]
            r = place(keys, bound)
            while r > 0:
                if best[r] > out:
                    out, out_link = best[r], links[r]
                r -= r & -r
            t -= t & -t
        return out, out_link


def lcis_matching_pairs(x: Sequence[int], y: Sequence[int], mode: str = STRICT,
                        witness: bool = False) -> SolveResult:
    """Exact LCIS touching only the matching pairs ``x[i] == y[j]``.

    Rows of ``x`` are scanned in order; the matches of a row are visited right
    to left so that a row never extends its own matches.  Each match asks a
    two-dimensional dominance structure for the best run ending at an earlier
    column with a smaller symbol.  Cost is O((n + M) log^2 n) for M matches.
    """
    _check_mode(mode)
    where_sym = defaultdict(list)
    for j, v in enumerate(y):
        where_sym[v].append(j)
    cols = [j for j, v in enumerate(y)]
    # only columns whose symbol occurs in x can ever hold a run
    xs = set(x)
    live = [j for j in cols if y[j] in xs]
    if not live:
        return SolveResult(0, () if witness else None, {"matches": 0})
    pos = {j: t for t, j in enumerate(live)}
    tree = _DominanceMax([y[j] for j in live])
    inclusive = mode == WEAK
    best_len, best_link, matches = 0, None, 0
    for c in x:
        hits = where_sym.get(c)
        if not hits:
            continue
        for j in reversed(hits):
            matches += 1
            p = pos[j]
            length, link = tree.query(p, c, inclusive)
            length += 1
            link = (c, link) if witness else None
            tree.raise_to(p, c, length, link)
            if length > best_len:
                best_len, best_link = length, link
    wit = _unwind(best_link) if witness else None
    return SolveResult(best_len, wit, {"matches": matches})


# -- approximation ---------------------------------------------------------------

@dataclass(frozen=True)
class ApproxParams:
    eps: Fraction
    n: int

    def __post_init__(self):
        if self.eps <= 0:
            raise ParameterError(f"eps must be positive, got {self.eps}")
        if self.n < 1:
            raise ParameterError("approximation needs n >= 1")

    @property
    def freq_threshold(self) -> int:
        return math.ceil(2 * math.sqrt(self.n / self.eps))

    def too_frequent(self, count: int) -> bool:
        # count > 2 sqrt(n/eps), compared exactly
        return count * count * self.eps > 4 * self.n

    def long_enough(self, length: int) -> bool:
        # length > sqrt(n/eps), compared exactly
        return length * length * self.eps > self.n


def lcis_approx(x: Sequence[int], y: Sequence[int], eps) -> SolveResult:
    """(1+eps)-approximate LCIS.

    Symbols occurring more than ``2 sqrt(n/eps)`` times in total are dropped,
    the thinned instance is solved exactly over its matching pairs, and that
    run is returned if it is longer than ``sqrt(n/eps)``.  Otherwise the true
    optimum is short and an exact quadratic solve on the original inputs is
    returned.  ``meta['branch']`` records which path produced the answer.
    """
    eps = Fraction(eps).limit_denominator(10**9) if not isinstance(eps, Fraction) else eps
    if eps <= 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    x, y = list(x), list(y)
    n = max(len(x), len(y))
    if n == 0:
        return SolveResult(0, (), {"branch": "fallback"})
    params = ApproxParams(eps, n)
    # pad the shorter input with symbols that occur nowhere
    fresh = min(x + y) - 1
    while len(x) < n:
        x.append(fresh)
        fresh -= 1
    while len(y) < n:
        y.append(fresh)
        fresh -= 1
    counts = Counter(x) + Counter(y)
    drop = {v for v, cnt in counts.items() if params.too_frequent(cnt)}
    fx = [v for v in x if v not in drop]
    fy = [v for v in y if v not in drop]
    thin = lcis_matching_pairs(fx, fy, witness=True)
    meta = {"dropped": len(drop), "matches": thin.meta["matches"],
            "freq_threshold": params.freq_threshold}
    if params.long_enough(thin.length) and check_witness(thin.witness, (x, y)):
        return SolveResult(thin.length, thin.witness, {**meta, "branch": "early"})
    exact = lcis_dp2(x, y, witness=True)
    return SolveResult(exact.length, exact.witness, {**meta, "branch": "fallback"})
