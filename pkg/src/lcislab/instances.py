"""Source problems: (k-)orthogonal vectors and branching programs.

File formats
------------
OV::

    ov n m d
    <n rows of d characters in {0,1}>
    --
    <m rows>

k-OV::

    kov k n d
    <n rows>        (k blocks separated by '--')

Branching program::

    bp N W T
    start i
    accept j
    layer v=<1-based variable>      (T-1 blocks, one per layer with out-edges)
    <from> <to> <label>             (to is a node of the next layer)

``#`` starts a comment anywhere on a line.  An edge line may carry an
optional fourth field naming the 0-based target layer, which must be the
next layer.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import InstanceTooLarge, ParameterError, ShapeError

KOV_TUPLE_CAP = 10**6
BP_BRUTEFORCE_CAP = 20


def _bits(v) -> tuple[int, ...]:
    return tuple(int(b) for b in v)


@dataclass(frozen=True)
class OVInstance:
    u_set: tuple[tuple[int, ...], ...]
    v_set: tuple[tuple[int, ...], ...]
    d: int

    def __post_init__(self):
        object.__setattr__(self, "u_set", tuple(_bits(u) for u in self.u_set))
        object.__setattr__(self, "v_set", tuple(_bits(v) for v in self.v_set))
        if self.d < 1:
            raise ShapeError("dimension must be >= 1")
        if not self.u_set or not self.v_set:
            raise ShapeError("both vector sets must be nonempty")
        for v in self.u_set + self.v_set:
            if len(v) != self.d or any(b not in (0, 1) for b in v):
                raise ShapeError(f"vector {v} is not a 0/1 vector of dimension {self.d}")

    @property
    def n(self) -> int:
        return len(self.u_set)

    @property
    def m(self) -> int:
        return len(self.v_set)


@dataclass(frozen=True)
class KOVInstance:
    sets: tuple[tuple[tuple[int, ...], ...], ...]
    d: int

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(tuple(_bits(u) for u in s) for s in self.sets))
        if self.d < 1:
            raise ShapeError("dimension must be >= 1")
        if len(self.sets) < 2:
            raise ShapeError("k-OV needs at least two sets")
        sizes = {len(s) for s in self.sets}
        if len(sizes) != 1 or 0 in sizes:
            raise ShapeError("all k-OV sets must be nonempty and of equal size")
        for s in self.sets:
            for v in s:
                if len(v) != self.d or any(b not in (0, 1) for b in v):
                    raise ShapeError(f"vector {v} is not a 0/1 vector of dimension {self.d}")

    @property
    def k(self) -> int:
        return len(self.sets)

    @property
    def n(self) -> int:
        return len(self.sets[0])


def dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def min_inner_product(inst: OVInstance) -> int:
    return min(dot(u, v) for u in inst.u_set for v in inst.v_set)


def product_sum(vectors) -> int:
    """``sum_j prod_i vectors[i][j]``."""
    return sum(all(col) for col in zip(*vectors))


def k_min_product(inst: KOVInstance) -> int:
    if inst.n ** inst.k > KOV_TUPLE_CAP:
        raise InstanceTooLarge(f"{inst.n}^{inst.k} tuples exceed cap {KOV_TUPLE_CAP}")
    return min(product_sum(t) for t in itertools.product(*inst.sets))


# -- branching programs -------------------------------------------------------------

@dataclass(frozen=True)
class BranchingProgram:
    """Layered program: ``edges[l]`` leave layer ``l`` and test ``x[layer_var[l]]``.

    ``layer_var`` is 1-based; ``edges[l]`` holds ``(from, to, label)`` triples
    with ``from`` in layer ``l`` and ``to`` in layer ``l+1``.
    """

    n_vars: int
    width: int
    length: int
    layer_var: tuple[int, ...]
    edges: tuple[tuple[tuple[int, int, int], ...], ...]
    start: int
    accept: int

    def __post_init__(self):
        object.__setattr__(self, "layer_var", tuple(self.layer_var))
        object.__setattr__(self, "edges", tuple(tuple(tuple(e) for e in layer) for layer in self.edges))
        if self.n_vars < 1 or self.width < 1 or self.length < 2:
            raise ShapeError("need N >= 1, W >= 1 and T >= 2")
        if len(self.layer_var) != self.length - 1 or len(self.edges) != self.length - 1:
            raise ShapeError(f"expected {self.length - 1} edge layers")
        for var in self.layer_var:
            if not 1 <= var <= self.n_vars:
                raise ShapeError(f"layer variable {var} outside 1..{self.n_vars}")
        for layer in self.edges:
            for a, b, lab in layer:
                if not (0 <= a < self.width and 0 <= b < self.width):
                    raise ShapeError(f"edge ({a},{b}) leaves width {self.width}")
                if lab not in (0, 1):
                    raise ShapeError(f"edge label {lab} is not 0/1")
        if not (0 <= self.start < self.width and 0 <= self.accept < self.width):
            raise ShapeError("start/accept node outside width")

    def step(self, layer: int, nodes, x) -> set[int]:
        want = x[self.layer_var[layer] - 1]
        return {b for a, b, lab in self.edges[layer] if a in nodes and lab == want}

    def reachable(self, first: int, last: int, u: int, x) -> set[int]:
        """Nodes of layer ``last`` reachable from node ``u`` of layer ``first``."""
        nodes = {u}
        for layer in range(first, last):
            nodes = self.step(layer, nodes, x)
        return nodes


def bp_eval(bp: BranchingProgram, x: Sequence[int]) -> bool:
    if len(x) != bp.n_vars:
        raise ParameterError(f"assignment has {len(x)} bits, program has {bp.n_vars} variables")
    return bp.accept in bp.reachable(0, bp.length - 1, bp.start, x)


def bp_sat_bruteforce(bp: BranchingProgram):
    """First accepted assignment in lexicographic order, or ``None``."""
    if bp.n_vars > BP_BRUTEFORCE_CAP:
        raise InstanceTooLarge(f"{bp.n_vars} variables exceed brute-force cap {BP_BRUTEFORCE_CAP}")
    for x in itertools.product((0, 1), repeat=bp.n_vars):
        if bp_eval(bp, x):
            return x
    return None


def emit_bp(bp: BranchingProgram) -> str:
    lines = [f"bp {bp.n_vars} {bp.width} {bp.length}", f"start {bp.start}", f"accept {bp.accept}"]
    for var, layer in zip(bp.layer_var, bp.edges):
        lines.append(f"layer v={var}")
        lines += [f"{a} {b} {lab}" for a, b, lab in layer]
    return "\n".join(lines) + "\n"


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(tokens, lineno, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ShapeError(f"expected integers in {what}", lineno) from None


def parse_bp(text: str) -> BranchingProgram:
    lines = list(_content_lines(text))
    if len(lines) < 3:
        raise ShapeError("truncated branching program header", lines[-1][0] if lines else 1)
    lineno, head = lines[0]
    tok = head.split()
    if len(tok) != 4 or tok[0] != "bp":
        raise ShapeError("expected 'bp N W T'", lineno)
    n_vars, width, length = _ints(tok[1:], lineno, "header")
    nodes = {}
    for (lineno, line), key in zip(lines[1:3], ("start", "accept")):
        tok = line.split()
        if len(tok) != 2 or tok[0] != key:
            raise ShapeError(f"expected '{key} <node>'", lineno)
        nodes[key] = _ints(tok[1:], lineno, key)[0]
    layer_var, edges = [], []
    for lineno, line in lines[3:]:
        tok = line.split()
        if tok[0] == "layer":
            if len(tok) != 2 or not tok[1].startswith("v="):
                raise ShapeError("expected 'layer v=<var>'", lineno)
            layer_var.append(_ints([tok[1][2:]], lineno, "layer header")[0])
            edges.append([])
            continue
        if not edges:
            raise ShapeError("edge before the first layer header", lineno)
        if len(tok) not in (3, 4):
            raise ShapeError("expected '<from> <to> <label> [target-layer]'", lineno)
        vals = _ints(tok, lineno, "edge")
        if len(vals) == 4 and vals[3] != len(edges):
            raise ShapeError(f"edge from layer {len(edges) - 1} into non-adjacent layer {vals[3]}", lineno)
        a, b, lab = vals[:3]
        if not (0 <= a < width and 0 <= b < width):
            raise ShapeError(f"edge ({a},{b}) leaves width {width}", lineno)
        if lab not in (0, 1):
            raise ShapeError(f"edge label {lab} is not 0/1", lineno)
        edges[-1].append((a, b, lab))
    if len(edges) != length - 1:
        last = lines[-1][0]
        raise ShapeError(f"expected {length - 1} layer blocks, found {len(edges)}", last)
    return BranchingProgram(n_vars, width, length, layer_var, edges, nodes["start"], nodes["accept"])


def _rows(vecs):
    return ["".join(str(b) for b in v) for v in vecs]


def emit_ov(inst: OVInstance) -> str:
    lines = [f"ov {inst.n} {inst.m} {inst.d}", *_rows(inst.u_set), "--", *_rows(inst.v_set)]
    return "\n".join(lines) + "\n"


def emit_kov(inst: KOVInstance) -> str:
    lines = [f"kov {inst.k} {inst.n} {inst.d}"]
    for t, s in enumerate(inst.sets):
        if t:
            lines.append("--")
        lines += _rows(s)
    return "\n".join(lines) + "\n"


def _parse_vector_blocks(lines, counts, d):
    blocks, cur = [], []
    for lineno, line in lines:
        if line == "--":
            blocks.append(cur)
            cur = []
            continue
        if len(line) != d or set(line) - {"0", "1"}:
            raise ShapeError(f"expected a row of {d} characters in {{0,1}}", lineno)
        cur.append(tuple(int(c) for c in line))
    blocks.append(cur)
    if [len(b) for b in blocks] != list(counts):
        last = lines[-1][0] if lines else 1
        raise ShapeError(f"expected vector blocks of sizes {list(counts)}, got {[len(b) for b in blocks]}", last)
    return blocks


def parse_ov(text: str) -> OVInstance:
    lines = list(_content_lines(text))
    if not lines:
        raise ShapeError("empty OV file", 1)
    lineno, head = lines[0]
    tok = head.split()
    if len(tok) != 4 or tok[0] != "ov":
        raise ShapeError("expected 'ov n m d'", lineno)
    n, m, d = _ints(tok[1:], lineno, "header")
    u, v = _parse_vector_blocks(lines[1:], (n, m), d)
    return OVInstance(u, v, d)


def parse_kov(text: str) -> KOVInstance:
    lines = list(_content_lines(text))
    if not lines:
        raise ShapeError("empty k-OV file", 1)
    lineno, head = lines[0]
    tok = head.split()
    if len(tok) != 4 or tok[0] != "kov":
        raise ShapeError("expected 'kov k n d'", lineno)
    k, n, d = _ints(tok[1:], lineno, "header")
    return KOVInstance(_parse_vector_blocks(lines[1:], (n,) * k, d), d)


# -- generators ------------------------------------------------------------------------

def _vectors(rng, count, d, density):
    return [tuple(int(rng.random() < density) for _ in range(d)) for _ in range(count)]


def gen_ov(n: int, m: int, d: int, seed: int = 0, density: float = 0.5) -> OVInstance:
    if n < 1 or m < 1 or d < 1:
        raise ParameterError("gen_ov needs n, m, d >= 1")
    rng = random.Random(seed)
    return OVInstance(_vectors(rng, n, d, density), _vectors(rng, m, d, density), d)


def gen_kov(k: int, n: int, d: int, seed: int = 0, density: float = 0.5) -> KOVInstance:
    if k < 2 or n < 1 or d < 1:
        raise ParameterError("gen_kov needs k >= 2 and n, d >= 1")
    rng = random.Random(seed)
    return KOVInstance([_vectors(rng, n, d, density) for _ in range(k)], d)


def gen_bp(n_vars: int, width: int, t: int, edge_density: float = 0.5, seed: int = 0) -> BranchingProgram:
    """Random program with ``2**t + 1`` layers; each possible labelled edge kept with ``edge_density``."""
    if n_vars < 1 or width < 1 or t < 0 or not 0 <= edge_density <= 1:
        raise ParameterError("gen_bp needs N >= 1, W >= 1, t >= 0, density in [0, 1]")
    rng = random.Random(seed)
    length = 2 ** t + 1
    layer_var = [rng.randint(1, n_vars) for _ in range(length - 1)]
    edges = []
    for _ in range(length - 1):
        edges.append([(a, b, lab) for a in range(width) for b in range(width) for lab in (0, 1)
                      if rng.random() < edge_density])
    return BranchingProgram(n_vars, width, length, layer_var, edges,
                            rng.randrange(width), rng.randrange(width))
