"""Inflation and separator sequences.

A separator family is a tuple of blocked sequences whose prefix-wise LCIS is
a fixed linear function of the prefix block indices.  Families are built
level by level: every level inflates the previous sequences block-wise and
appends a small sorted tail gadget after each old block, doubling the block
count.  The two-sequence case is exposed separately as :func:`separator_pair`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import InstanceTooLarge, ParameterError
from .seqcore import BlockedSeq, checked, reverse_negate

MAX_PAIR_LEVEL = 20
# total elements per sequence a family build may produce
MAX_FAMILY_LENGTH = 2**25


def inflate(s: Sequence[int]) -> tuple[int, ...]:
    """Replace each ``a`` by ``2a-1, 2a``; doubles every LCIS value."""
    out = []
    for a in s:
        out.append(2 * a - 1)
        out.append(2 * a)
    return checked(out)


def inflate_weak(s: Sequence[int]) -> tuple[int, ...]:
    """Replace each ``a`` by ``a, a``; doubles LCWIS and keeps the alphabet."""
    out = []
    for a in s:
        out.append(a)
        out.append(a)
    return tuple(out)


def inflate_blocked(bs: BlockedSeq, times: int = 1, inflater: Callable = inflate) -> BlockedSeq:
    for _ in range(times):
        bs = bs.map_blocks(inflater)
    return bs


def hat(bs: BlockedSeq) -> BlockedSeq:
    """Reverse and negate; hat block ``j`` is the image of original block ``N-1-j``.

    Prefix laws of a separator family turn into the matching suffix laws.
    """
    return BlockedSeq.from_blocks(reverse_negate(b) for b in reversed(bs.blocks()))


@dataclass(frozen=True)
class SeparatorFamily:
    seqs: tuple[BlockedSeq, ...]
    levels: int
    s: int  # largest element
    weak: bool = False

    @property
    def arity(self) -> int:
        return len(self.seqs)

    @property
    def n_blocks(self) -> int:
        return 2 ** self.levels

    def alphabet(self) -> set[int]:
        out = set()
        for bs in self.seqs:
            out.update(bs.seq)
        return out


@dataclass(frozen=True)
class SeparatorPair:
    a: BlockedSeq
    b: BlockedSeq
    k: int
    s: int

    @property
    def n_blocks(self) -> int:
        return 2 ** self.k


def tail_gadgets(s: int, arity: int, i: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Tail gadgets ``(T_i^0, T_i^1)`` for sequence ``i`` (1-based).

    Values ``2s + x`` for ``x`` in ``1 .. 2^arity - 1``, split by bit ``i`` of
    ``x`` (bit 1 is the least significant), each sorted increasingly.
    """
    zero, one = [], []
    for x in range(1, 2 ** arity):
        (one if (x >> (i - 1)) & 1 else zero).append(2 * s + x)
    return tuple(zero), tuple(one)


def separator_family(levels: int, arity: int, weak: bool = False) -> SeparatorFamily:
    """Family of ``arity`` sequences with ``2**levels`` blocks each.

    For every prefix index tuple ``(j_1, ..., j_m)`` the LCIS of the prefixes
    is ``j_1 + ... + j_m + 2**levels``.  With ``weak=True`` the duplicating
    inflation is used instead, giving the same law for LCWIS over an alphabet
    that only grows by ``2**arity - 1`` symbols per level.
    """
    if levels < 0:
        raise ParameterError("levels must be >= 0")
    if not 2 <= arity <= 5:
        raise ParameterError(f"arity must be in 2..5, got {arity}")
    length = 1
    for lv in range(levels):
        length = 2 * length + (2 ** arity - 1) * 2 ** lv
    if length > MAX_FAMILY_LENGTH:
        raise InstanceTooLarge(f"separator family would have {length} elements per sequence")
    inflater = inflate_weak if weak else inflate
    blocks = [[(1,)] for _ in range(arity)]
    s = 1
    for _ in range(levels):
        nxt = []
        for i, bl in enumerate(blocks, 1):
            t0, t1 = tail_gadgets(s, arity, i)
            new = []
            for b in bl:
                new.append(inflater(b) + t0)
                new.append(t1)
            nxt.append(new)
        blocks = nxt
        s = 2 * s + 2 ** arity - 1
        checked([s])
    seqs = tuple(BlockedSeq.from_blocks(bl) for bl in blocks)
    return SeparatorFamily(seqs, levels, s, weak)


def separator_pair(k: int) -> SeparatorPair:
    """The two-sequence family; prefix LCIS of blocks ``0..i`` and ``0..j`` is ``i + j + 2**k``."""
    if k < 0:
        raise ParameterError("level must be >= 0")
    if k > MAX_PAIR_LEVEL:
        raise InstanceTooLarge(f"separator level {k} exceeds cap {MAX_PAIR_LEVEL}")
    fam = separator_family(k, 2)
    return SeparatorPair(fam.seqs[0], fam.seqs[1], k, fam.s)
