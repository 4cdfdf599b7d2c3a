"""Vector gadgets, coordinate gadgets and the separator-based combiner."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import GadgetContractError, ParameterError
from .seqcore import AlphabetSpan, concat, shift, span_of
from .separators import (hat, inflate, inflate_blocked, inflate_weak,
                         separator_family)
from .solvers import STRICT, WEAK, lis_length

X, Y = "X", "Y"


def as_bits(v: Sequence[int]) -> tuple[int, ...]:
    bits = tuple(int(b) for b in v)
    if not bits:
        raise ParameterError("bit vectors need dimension >= 1")
    if any(b not in (0, 1) for b in bits):
        raise ParameterError(f"not a 0/1 vector: {v!r}")
    return bits


def vector_gadget(v: Sequence[int], side: str) -> tuple[int, ...]:
    """Length-2d gadget with LCIS(gadget(u, X), gadget(v, Y)) = d - u.v.

    Coordinate ``p`` (1-based) uses symbols ``2p-1, 2p``.  Side X emits
    ``(2p-1, 2p)`` for a 0 bit and ``(2p-1, 2p-1)`` for a 1 bit; side Y emits
    ``(2p, 2p-1)`` and ``(2p, 2p)``.
    """
    bits = as_bits(v)
    out = []
    for p, b in enumerate(bits, 1):
        lo, hi = 2 * p - 1, 2 * p
        if side == X:
            out += (lo, hi) if b == 0 else (lo, lo)
        elif side == Y:
            out += (hi, lo) if b == 0 else (hi, hi)
        else:
            raise ParameterError(f"side must be 'X' or 'Y', got {side!r}")
    return tuple(out)


def coordinate_gadget(i: int, j: int, bit: int, k: int) -> tuple[int, ...]:
    """Decreasing run ``kj+k, ..., kj+1``; a 1 bit drops ``kj+i``."""
    if not 1 <= i <= k:
        raise ParameterError(f"sequence index {i} outside 1..{k}")
    return tuple(k * j + r for r in range(k, 0, -1) if not (bit and r == i))


def vector_gadget_k(i: int, v: Sequence[int], k: int) -> tuple[int, ...]:
    bits = as_bits(v)
    return concat(coordinate_gadget(i, j, b, k) for j, b in enumerate(bits))


def grouped_gadget(side: str, gadgets, q: int, d: int) -> tuple[int, ...]:
    """Shift ladder ``2qd, 2qd-2d, ..., 2d`` so later copies sit strictly lower.

    Side X takes ``q`` gadgets; side Y takes one gadget and repeats it ``q``
    times.  Any increasing run then lives inside a single shifted copy.
    """
    if q <= 0:
        raise ParameterError(f"group size must be positive, got {q}")
    if side == X:
        gadgets = list(gadgets)
        if len(gadgets) != q:
            raise ParameterError(f"side X needs {q} gadgets, got {len(gadgets)}")
    elif side == Y:
        gadgets = [tuple(gadgets)] * q
    else:
        raise ParameterError(f"side must be 'X' or 'Y', got {side!r}")
    return concat(shift(g, 2 * d * (q - t)) for t, g in enumerate(gadgets))


# -- combiner --------------------------------------------------------------------

def _ceil_log2(x: int) -> int:
    return max(0, math.ceil(math.log2(x))) if x > 1 else 0


@dataclass(frozen=True)
class CombineParams:
    delta: int
    ell: int
    n: int          # gadgets per sequence before padding
    n_blocks: int   # padded to a power of two
    arity: int = 2
    weak: bool = False

    @property
    def levels(self) -> int:
        return self.n_blocks.bit_length() - 1

    @property
    def constant(self) -> int:
        # prefix separators contribute ell*(sum j + N), suffix ones
        # ell*(sum (N-1-j) + N); the total is independent of the chosen j's
        k, n = self.arity, self.n_blocks
        return self.ell * (k * (n - 1) + 2 * n)

    C = constant


class Combiner:
    """Fixed separator scaffold that many gadget lists can be threaded through.

    Every sequence is ``a_0 G_0 â_0 a_1 G_1 â_1 ...`` where the ``a`` blocks
    come from an inflated separator family shifted below ``span`` and the
    ``â`` blocks from its reversed-negated image shifted above ``span``.
    Sequences built by one combiner for different sides share all separator
    symbols, so the scaffold can be reused across gadgets computed separately
    (as the branching-program reduction does).
    """

    def __init__(self, n: int, delta: int, span: AlphabetSpan, arity: int = 2,
                 weak: bool = False):
        if n < 1:
            raise ParameterError("combiner needs at least one gadget per sequence")
        if delta < 1:
            raise ParameterError("delta must be a positive integer")
        levels = _ceil_log2(n)
        reps = _ceil_log2(delta)
        self.params = CombineParams(delta, 2 ** reps, n, 2 ** levels, arity, weak)
        fam = separator_family(levels, arity, weak=weak)
        inflater = inflate_weak if weak else inflate
        lower = [inflate_blocked(bs, reps, inflater) for bs in fam.seqs]
        upper = [inflate_blocked(hat(bs), reps, inflater) for bs in fam.seqs]
        lo, hi = (0, 0) if span.is_empty else (span.lo, span.hi)
        top = max(max(bs.seq) for bs in lower)
        bottom = min(min(bs.seq) for bs in upper)
        self.lower = [bs.shifted(lo - 1 - top) for bs in lower]
        self.upper = [bs.shifted(hi + 1 - bottom) for bs in upper]
        self.span = span

    @property
    def constant(self) -> int:
        return self.params.constant

    def check(self, gadgets) -> None:
        mode = WEAK if self.params.weak else STRICT
        for g in gadgets:
            if lis_length(g, mode) > self.params.delta:
                raise GadgetContractError(
                    f"gadget has an increasing run longer than delta={self.params.delta}")
            if g and (self.span.is_empty or min(g) < self.span.lo or max(g) > self.span.hi):
                raise GadgetContractError("gadget leaves the alphabet span of the combiner")

    def side(self, i: int, gadgets) -> tuple[int, ...]:
        """Thread ``gadgets`` (at most ``n``, padded with empties) into sequence ``i``."""
        gadgets = [tuple(g) for g in gadgets]
        if len(gadgets) > self.params.n_blocks:
            raise ParameterError("more gadgets than separator blocks")
        self.check(gadgets)
        gadgets += [()] * (self.params.n_blocks - len(gadgets))
        lo, up = self.lower[i], self.upper[i]
        parts = []
        for j, g in enumerate(gadgets):
            parts += (lo.block(j), g, up.block(j))
        return concat(parts)


def combine(xs, ys, delta: int):
    """Thread two gadget lists between separators.

    Returns ``(X, Y, params)`` with
    ``lcis(X, Y) = params.constant + max_{i,j} lcis(xs[i], ys[j])``
    provided no gadget has an increasing run longer than ``delta``.
    Shorter lists are padded with empty gadgets.
    """
    xs, ys = [tuple(g) for g in xs], [tuple(g) for g in ys]
    if not xs or not ys:
        raise ParameterError("combine needs at least one gadget per side")
    for g in xs + ys:
        if lis_length(g) > delta:
            raise GadgetContractError(f"gadget {g!r} has LIS above delta={delta}")
    c = Combiner(max(len(xs), len(ys)), delta, span_of(xs + ys))
    return c.side(0, xs), c.side(1, ys), c.params


def combine_k(gadget_matrix, delta: int, k: int | None = None, weak: bool = False):
    """k-sequence combiner.

    ``gadget_matrix[i]`` is the gadget list for sequence ``i``.  Returns
    ``(seqs, params)`` with ``lcis(seqs) = params.constant + max`` over all
    ``k``-tuples that pick one gadget from each list (LCWIS when ``weak``).
    """
    rows = [[tuple(g) for g in row] for row in gadget_matrix]
    if k is None:
        k = len(rows)
    if len(rows) != k or not 2 <= k <= 5:
        raise ParameterError(f"combine_k needs k in 2..5 gadget lists, got {len(rows)}")
    if any(not row for row in rows):
        raise ParameterError("every gadget list must be nonempty")
    mode = WEAK if weak else STRICT
    for row in rows:
        for g in row:
            if lis_length(g, mode) > delta:
                raise GadgetContractError(f"gadget {g!r} has an increasing run above delta={delta}")
    c = Combiner(max(len(r) for r in rows), delta, span_of(g for r in rows for g in r), k, weak)
    return [c.side(i, row) for i, row in enumerate(rows)], c.params
