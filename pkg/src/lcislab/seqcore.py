"""Integer sequences, blocked sequences and the line-oriented text format.

Sequences are plain tuples of Python ints.  Every transformation that can grow
values goes through :func:`checked`, which enforces the signed 64-bit range so
that an overflowing construction fails instead of silently producing a
sequence with the wrong order structure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ShapeError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

IntSeq = tuple  # tuple[int, ...]


def checked(values: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(v) for v in values)
    for v in out:
        if v < INT64_MIN or v > INT64_MAX:
            raise OverflowError(f"value {v} outside signed 64-bit range")
    return out


def as_seq(values: Iterable[int]) -> tuple[int, ...]:
    return checked(values)


def shift(s: Sequence[int], c: int) -> tuple[int, ...]:
    """Add ``c`` to every element."""
    return checked(v + c for v in s)


def reverse_negate(s: Sequence[int]) -> tuple[int, ...]:
    return checked(-v for v in reversed(s))


def concat(parts: Iterable[Sequence[int]]) -> tuple[int, ...]:
    out: list[int] = []
    for p in parts:
        out.extend(p)
    return tuple(out)


@dataclass(frozen=True)
class AlphabetSpan:
    """Closed value range ``[lo, hi]``; both ends are ``None`` for the empty span."""

    lo: int | None = None
    hi: int | None = None

    def __post_init__(self):
        if (self.lo is None) != (self.hi is None):
            raise ValueError("span endpoints must both be set or both be None")
        if self.lo is not None and self.lo > self.hi:
            raise ValueError(f"span lo={self.lo} > hi={self.hi}")

    @property
    def is_empty(self) -> bool:
        return self.lo is None

    def union(self, other: "AlphabetSpan") -> "AlphabetSpan":
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        return AlphabetSpan(min(self.lo, other.lo), max(self.hi, other.hi))


EMPTY_SPAN = AlphabetSpan()


def span(s: Sequence[int]) -> AlphabetSpan:
    if len(s) == 0:
        return EMPTY_SPAN
    return AlphabetSpan(min(s), max(s))


def span_of(seqs: Iterable[Sequence[int]]) -> AlphabetSpan:
    out = EMPTY_SPAN
    for s in seqs:
        out = out.union(span(s))
    return out


@dataclass(frozen=True)
class BlockedSeq:
    """A flat sequence partitioned into contiguous, possibly empty blocks.

    ``block_starts[b]`` is the offset of block ``b``; the first offset is 0.
    Offsets are non-decreasing (equal offsets encode empty blocks).
    """

    seq: tuple[int, ...]
    block_starts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))
        object.__setattr__(self, "block_starts", tuple(self.block_starts))
        bs = self.block_starts
        if not bs or bs[0] != 0:
            raise ValueError("block_starts must start with offset 0")
        if any(b > a for a, b in zip(bs[1:], bs)) or bs[-1] > len(self.seq):
            raise ValueError("block_starts must be non-decreasing offsets into seq")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Sequence[int]]) -> "BlockedSeq":
        seq: list[int] = []
        starts: list[int] = []
        for b in blocks:
            starts.append(len(seq))
            seq.extend(b)
        if not starts:
            raise ValueError("a blocked sequence needs at least one block")
        return cls(tuple(seq), tuple(starts))

    @property
    def num_blocks(self) -> int:
        return len(self.block_starts)

    def _end(self, b: int) -> int:
        return self.block_starts[b + 1] if b + 1 < self.num_blocks else len(self.seq)

    def block(self, b: int) -> tuple[int, ...]:
        if not 0 <= b < self.num_blocks:
            raise IndexError(b)
        return self.seq[self.block_starts[b]:self._end(b)]

    def blocks(self) -> list[tuple[int, ...]]:
        return [self.block(b) for b in range(self.num_blocks)]

    def prefix(self, i: int) -> tuple[int, ...]:
        """Blocks ``0..i`` inclusive."""
        return self.seq[:self._end(i)]

    def suffix(self, j: int) -> tuple[int, ...]:
        """Blocks ``j..end`` inclusive."""
        return self.seq[self.block_starts[j]:]

    def map_blocks(self, fn) -> "BlockedSeq":
        return BlockedSeq.from_blocks(fn(b) for b in self.blocks())

    def shifted(self, c: int) -> "BlockedSeq":
        return BlockedSeq(shift(self.seq, c), self.block_starts)


# -- text format -------------------------------------------------------------
# One sequence per line, elements as signed decimals separated by single
# spaces; an empty line is the empty sequence.  Lines starting with '#' are
# metadata and are skipped by the reader.

def format_seq(s: Sequence[int]) -> str:
    return " ".join(str(v) for v in s)


def parse_seq(line: str) -> tuple[int, ...]:
    line = line.strip()
    if not line:
        return ()
    return checked(int(tok) for tok in line.split())


def dumps_seqs(seqs: Iterable[Sequence[int]]) -> str:
    return "".join(format_seq(s) + "\n" for s in seqs)


def loads_seqs(text: str) -> list[tuple[int, ...]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith("#"):
            continue
        try:
            out.append(parse_seq(line))
        except (ValueError, OverflowError) as exc:
            raise ShapeError(f"bad sequence element: {exc}", lineno) from None
    return out
