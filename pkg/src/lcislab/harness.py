"""Verification grids and the solver benchmark.

Each grid checks one construction identity exactly against independent
oracles (brute-force enumeration on the source instance, and an LCIS solver
on the produced sequences).  ``verify_lemma`` runs a grid under a budget and
returns a :class:`Report`; any failure is a defect in the construction.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
import os
import random
import statistics
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParameterError
from .gadgets import (X, Y, coordinate_gadget, combine, grouped_gadget,
                      vector_gadget, vector_gadget_k)
from .instances import (bp_sat_bruteforce, dot, gen_bp, gen_kov, gen_ov,
                        k_min_product, min_inner_product, product_sum)
from .reductions import (bpsat_to_lcis, kov_to_klcis, kov_to_klcwis,
                         lcs_to_lcis, ov_to_lcis, ov_to_lcis_unbalanced,
                         reachability_gadgets)
from .separators import (hat, inflate, inflate_weak, separator_family,
                         separator_pair)
from .seqcore import shift
from .solvers import (STRICT, WEAK, check_witness, lcis_approx, lcis_dp2,
                      lcis_dpk, lcis_matching_pairs, lcis_oracle,
                      lcs_bruteforce, lis_length)

DEFAULT_SEED = 20170501


def default_seed() -> int:
    env = os.environ.get("LCISLAB_SEED")
    return int(env) if env else DEFAULT_SEED


@dataclass
class Report:
    lemma: str
    seed: int
    budget: dict
    instances: int = 0
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, what: str) -> None:
        self.failures.append(what)

    def check(self, cond: bool, what) -> None:
        self.instances += 1
        if not cond:
            self.fail(what() if callable(what) else what)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [f"{status} {self.lemma}: {self.instances} instances, "
                 f"{len(self.failures)} failures, {self.seconds:.2f}s (seed={self.seed})"]
        for k in sorted(self.stats):
            lines.append(f"  {k}={self.stats[k]}")
        for f in sorted(self.failures)[:20]:
            lines.append(f"  failure: {f}")
        return "\n".join(lines)


def _rand_seq(rng, n_max, lo, hi, n_min=0):
    return [rng.randint(lo, hi) for _ in range(rng.randint(n_min, n_max))]


# -- grids ---------------------------------------------------------------------------

def _inflation(rep, rng, trials=200, n_max=10, lo=-5, hi=5):
    for t in range(trials):
        a, b = _rand_seq(rng, n_max, lo, hi), _rand_seq(rng, n_max, lo, hi)
        base = lcis_oracle([a, b]).length
        got = lcis_dp2(inflate(a), inflate(b)).length
        rep.check(got == 2 * base, lambda: f"inflate: A={a} B={b} got {got} want {2 * base}")
        wbase = lcis_oracle([a, b], WEAK).length
        wgot = lcis_dp2(inflate_weak(a), inflate_weak(b), WEAK).length
        rep.check(wgot == 2 * wbase, lambda: f"inflate_weak: A={a} B={b} got {wgot} want {2 * wbase}")


def _sep_len(rep, rng, k_max=10):
    for k in range(k_max + 1):
        p = separator_pair(k)
        want = (3 * k + 2) * 2 ** k // 2
        rep.check(len(p.a.seq) == len(p.b.seq) == want,
                  f"k={k}: lengths {len(p.a.seq)},{len(p.b.seq)} want {want}")
        rep.check(p.s == 2 ** (k + 2) - 3 == max(p.a.seq + p.b.seq), f"k={k}: s={p.s}")
        rep.check(p.a.num_blocks == p.b.num_blocks == 2 ** k, f"k={k}: block count")


def _sep_lcis(rep, rng, k_max=4):
    for k in range(k_max + 1):
        p = separator_pair(k)
        n = 2 ** k
        c = rng.randint(-50, 50)
        for i in range(n):
            for j in range(n):
                got = lcis_dp2(p.a.prefix(i), p.b.prefix(j)).length
                rep.check(got == i + j + n, f"k={k} i={i} j={j}: {got} != {i + j + n}")
        # shifting both sequences by one constant keeps the law
        for i in range(n):
            j = rng.randrange(n)
            got = lcis_dp2(shift(p.a.prefix(i), c), shift(p.b.prefix(j), c)).length
            rep.check(got == i + j + n, f"shift {c}: k={k} i={i} j={j}: {got}")


def _hat_suffix(rep, rng, k_max=3):
    for k in range(k_max + 1):
        p = separator_pair(k)
        ha, hb = hat(p.a), hat(p.b)
        n = 2 ** k
        for i in range(n):
            for j in range(n):
                got = lcis_dp2(ha.suffix(i), hb.suffix(j)).length
                want = 2 * (n - 1) - i - j + n
                rep.check(got == want, f"k={k} i={i} j={j}: {got} != {want}")


def _vector_gadget(rep, rng, d_max=4):
    for d in range(1, d_max + 1):
        vecs = list(itertools.product((0, 1), repeat=d))
        for u in vecs:
            for v in vecs:
                gx, gy = vector_gadget(u, X), vector_gadget(v, Y)
                res = lcis_dp2(gx, gy, witness=d <= 3)
                rep.check(res.length == d - dot(u, v), f"u={u} v={v}: {res.length}")
                if d <= 3:
                    w = set(res.witness)
                    bad = [p for p in range(1, d + 1) if {2 * p - 1, 2 * p} <= w]
                    rep.check(check_witness(res.witness, (gx, gy)) and not bad,
                              f"u={u} v={v}: witness {res.witness} uses both symbols of {bad}")


def _coordinate_gadget(rep, rng, k=3, d_max=3):
    for bits in itertools.product((0, 1), repeat=k):
        gs = [coordinate_gadget(i, 0, b, k) for i, b in enumerate(bits, 1)]
        got = lcis_dpk(gs).length
        rep.check(got == 1 - math.prod(bits), f"bits={bits}: {got}")
    for d in range(1, d_max + 1):
        vecs = list(itertools.product((0, 1), repeat=d))
        for tup in itertools.product(vecs, repeat=k):
            gs = [vector_gadget_k(i, u, k) for i, u in enumerate(tup, 1)]
            got = lcis_dpk(gs).length
            rep.check(got == d - product_sum(tup), f"vectors={tup}: {got}")
            rep.check(all(lis_length(g) <= d for g in gs), f"vectors={tup}: gadget LIS above d")


def _combiner(rep, rng, trials=100, n_max=4, len_max=6, lo=1, hi=6):
    for t in range(trials):
        n = rng.randint(1, n_max)
        xs = [_rand_seq(rng, len_max, lo, hi) for _ in range(n)]
        ys = [_rand_seq(rng, len_max, lo, hi) for _ in range(n)]
        delta = max([1] + [lis_length(g) for g in xs + ys]) + rng.randint(0, 2)
        best = max(lcis_oracle([a, b]).length for a in xs for b in ys)
        sx, sy, params = combine(xs, ys, delta)
        want = params.ell * (4 * params.n_blocks - 2) + best
        got = lcis_dp2(sx, sy).length
        rep.check(got == want and params.constant == want - best,
                  lambda: f"xs={xs} ys={ys} delta={delta}: {got} != {want}")
        perm = ys[:]
        rng.shuffle(perm)
        px, py, _ = combine(xs, perm, delta)
        got2 = lcis_dp2(px, py).length
        rep.check(got2 == got, lambda: f"permuted ys changed value {got} -> {got2}")


def _thm1(rep, rng, trials=100, n_max=8, d_max=5):
    for t in range(trials):
        n, d = rng.randint(1, n_max), rng.randint(1, d_max)
        inst = gen_ov(n, n, d, seed=rng.randrange(2**31), density=rng.choice([0.3, 0.5, 0.7]))
        out = ov_to_lcis(inst)
        got = lcis_dp2(*out.sequences).length
        want = out.constant + d - min_inner_product(inst)
        rep.check(got == want, lambda: f"n={n} d={d}: {got} != {want}")
        rep.stats["max_length"] = max(rep.stats.get("max_length", 0), len(out.sequences[0]))
        # length envelope c * n log n * d with the padded n
        n_pad = out.details["n_blocks"]
        ratio = len(out.sequences[0]) / (max(1, n_pad * max(1, math.log2(n_pad))) * d)
        rep.stats["length_ratio_max"] = round(max(rep.stats.get("length_ratio_max", 0), ratio), 3)


def _thm2(rep, rng, trials=50, n_max=8, m_max=4, d_max=3):
    for t in range(trials):
        m = rng.randint(1, m_max)
        n, d = rng.randint(m, max(m, n_max)), rng.randint(1, d_max)
        inst = gen_ov(n, m, d, seed=rng.randrange(2**31), density=rng.choice([0.3, 0.5, 0.7]))
        out = ov_to_lcis_unbalanced(inst)
        got = lcis_dp2(*out.sequences).length
        want = out.constant + d - min_inner_product(inst)
        rep.check(got == want, lambda: f"n={n} m={m} d={d}: {got} != {want}")
        rep.check(got <= out.constant + d, "value above C + d")
    # grouped gadgets isolate a single inner pairing
    for t in range(trials):
        q, d = rng.randint(1, 3), rng.randint(1, 3)
        us = [tuple(rng.randint(0, 1) for _ in range(d)) for _ in range(q)]
        v = tuple(rng.randint(0, 1) for _ in range(d))
        gu = grouped_gadget(X, [vector_gadget(u, X) for u in us], q, d)
        gv = grouped_gadget(Y, vector_gadget(v, Y), q, d)
        got = lcis_dp2(gu, gv).length
        want = max(d - dot(u, v) for u in us)
        rep.check(got == want, lambda: f"grouped q={q} us={us} v={v}: {got} != {want}")
        rep.check(lis_length(gu) <= 2 * d and lis_length(gv) <= 2 * d, "grouped gadget LIS above 2d")


def _thm3(rep, rng, trials=30, k=3, n_max=4, d_max=3):
    for t in range(trials):
        n, d = rng.randint(1, n_max), rng.randint(1, d_max)
        inst = gen_kov(k, n, d, seed=rng.randrange(2**31), density=rng.choice([0.5, 0.7, 0.85]))
        out = kov_to_klcis(inst)
        got = lcis_dpk(out.sequences).length
        ell, n_pad = out.details["ell"], out.details["n_blocks"]
        closed = ell * (k * (n_pad - 1) + 2 * n_pad)
        want = closed + d - k_min_product(inst)
        rep.check(got == want and out.constant == closed, lambda: f"k={k} n={n} d={d}: {got} != {want}")


def _k_sep(rep, rng, levels_max=2, arity=3, pair_levels=6):
    for lv in range(levels_max + 1):
        fam = separator_family(lv, arity)
        n = 2 ** lv
        for js in itertools.product(range(n), repeat=arity):
            got = lcis_dpk([bs.prefix(j) for bs, j in zip(fam.seqs, js)]).length
            rep.check(got == sum(js) + n, f"levels={lv} js={js}: {got}")
    for lv in range(pair_levels + 1):
        fam, pair = separator_family(lv, 2), separator_pair(lv)
        rep.check(fam.seqs[0] == pair.a and fam.seqs[1] == pair.b, f"levels={lv}: arity-2 family differs from pair")
    for m in (2, 3, 4):
        sizes = [len(separator_family(lv, m).alphabet()) for lv in range(5)]
        ok = all(b == 2 * a + 2 ** m - 1 for a, b in zip(sizes, sizes[1:]))
        rep.check(ok, f"arity={m}: alphabet sizes {sizes} break S(2N)=2S(N)+2^m-1")


def _thm4(rep, rng, trials=30, k=2, n_max=4, d_max=3, c_max=8):
    fit = 0.0
    for t in range(trials):
        n, d = rng.randint(1, n_max), rng.randint(1, d_max)
        inst = gen_kov(k, n, d, seed=rng.randrange(2**31), density=rng.choice([0.3, 0.5, 0.7]))
        out = kov_to_klcwis(inst)
        seqs = out.sequences
        got = lcis_dp2(*seqs, WEAK).length if k == 2 else lcis_dpk(seqs, WEAK).length
        has_orth = k_min_product(inst) == 0
        rep.check((got == out.threshold) == has_orth and got <= out.threshold,
                  lambda: f"k={k} n={n} d={d}: value {got} threshold {out.threshold} orth={has_orth}")
        n_pad = out.details["n_blocks"]
        fit = max(fit, out.details["alphabet"] / (math.log2(n_pad) + d))
    rep.stats["alphabet_c"] = round(fit, 3)
    rep.check(fit <= c_max, f"alphabet constant {fit:.3f} above {c_max}")


def _obs1(rep, rng, trials=100, len_max=8, alphabet=4):
    for t in range(trials):
        a = _rand_seq(rng, len_max, 1, alphabet)
        b = _rand_seq(rng, len_max, 1, alphabet)
        out = lcs_to_lcis([a, b])
        want = lcs_bruteforce([a, b])
        got = lis_length(out[0])
        rep.check(got == want, lambda: f"A={a} B={b}: {got} != LCS {want}")
        rep.check(len(out[0]) <= len(a) * len(b), "output longer than |X1||X2|")
    for t in range(trials // 4):
        seqs = [_rand_seq(rng, 6, 1, alphabet) for _ in range(3)]
        out = lcs_to_lcis(seqs)
        got = lcis_dp2(*out).length
        want = lcs_bruteforce(seqs)
        rep.check(got == want, lambda: f"3 sequences {seqs}: {got} != LCS {want}")


def _dp_k(rep, rng, trials=200, n_max=8, dp2_trials=50, dp2_n_max=200):
    for t in range(trials):
        k = rng.choice([2, 3])
        seqs = [_rand_seq(rng, n_max, 1, rng.randint(2, 8)) for _ in range(k)]
        for mode in (STRICT, WEAK):
            got = lcis_dpk(seqs, mode).length
            want = lcis_oracle(seqs, mode).length
            rep.check(got == want, lambda: f"{mode} {seqs}: {got} != {want}")
    for t in range(dp2_trials):
        x = _rand_seq(rng, dp2_n_max, 1, rng.randint(2, 60))
        y = _rand_seq(rng, dp2_n_max, 1, rng.randint(2, 60))
        got, want = lcis_dpk([x, y]).length, lcis_dp2(x, y).length
        rep.check(got == want, lambda: f"k=2 n={len(x)},{len(y)}: dpk {got} != dp2 {want}")


def _approx_instance(rng, n_max):
    n = rng.randint(1, n_max)
    if rng.random() < 0.5:
        sigma = rng.randint(1, 30)
        return [rng.randint(1, sigma) for _ in range(n)], [rng.randint(1, sigma) for _ in range(n)]
    # planted long common increasing run plus noise
    base = sorted(rng.sample(range(4 * n), n))
    noise = rng.uniform(0, 0.4)

    def blur(seq):
        return [v if rng.random() > noise else rng.randrange(4 * n) for v in seq]

    return blur(base), blur(base)


def _approx(rep, rng, trials=100, n_max=100, eps_values=(Fraction(1, 10), Fraction(1, 2), Fraction(1))):
    branches = {"early": 0, "fallback": 0}
    for t in range(trials):
        x, y = _approx_instance(rng, n_max)
        eps = eps_values[t % len(eps_values)]
        res = lcis_approx(x, y, eps)
        exact = lcis_dp2(x, y).length
        branches[res.meta["branch"]] += 1
        rep.check(check_witness(res.witness, (x, y)) and len(res.witness) == res.length,
                  lambda: f"invalid witness n={len(x)} eps={eps}")
        rep.check((1 + eps) * res.length >= exact,
                  lambda: f"n={len(x)} eps={eps}: |Z|={res.length} L={exact}")
    rep.stats.update({f"branch_{k}": v for k, v in branches.items()})
    rep.check(all(branches.values()), f"both branches must run at least once: {branches}")


# (N, W, t) families for the branching-program grid.  At t=2, W=3 or N>=5 with
# W=2 gives final sequences of 50k-400k symbols, too long for a quadratic check.
BP_FAMILY = ([(n, w, 0) for n in (1, 2, 3, 4, 5, 6) for w in (1, 2, 3)]
             + [(n, w, 1) for n in (1, 2, 3, 4, 5, 6) for w in (1, 2, 3)]
             + [(n, 1, 2) for n in (1, 2, 3, 4, 5, 6)]
             + [(n, 2, 2) for n in (1, 2, 3, 4)])


def _bp_sat(rep, rng, per_shape=2, family=None, level_pairs_cap=64):
    family = BP_FAMILY if family is None else family
    sat_count = 0
    for shape in family:
        for r in range(per_shape):
            n, w, t = shape
            bp = gen_bp(n, w, t, edge_density=rng.choice([0.25, 0.4, 0.6]), seed=rng.randrange(2**31))
            build = reachability_gadgets(bp)
            info = build.level_info
            rep.check(info[0]["constant"] == 1 and all(
                cur["constant"] == cur["combine_constant"] + 2 * prev["constant"]
                for prev, cur in zip(info, info[1:])), f"{shape}: level constants {info}")
            _check_levels(rep, bp, build, shape, level_pairs_cap)
            out = bpsat_to_lcis(bp)
            got = lcis_dp2(*out.sequences).length
            sat = bp_sat_bruteforce(bp) is not None
            sat_count += sat
            rep.check((got == out.threshold) == sat and got <= out.threshold,
                      lambda: f"{shape}: value {got} threshold {out.threshold} sat={sat}")
    rep.stats["programs"] = per_shape * len(family)
    rep.stats["satisfiable"] = sat_count


def _check_levels(rep, bp, build, shape, pairs_cap):
    pad = build.n_vars - bp.n_vars
    pairs = list(itertools.product(range(len(build.lefts)), range(len(build.rights))))
    if len(pairs) > pairs_cap:
        pairs = random.Random(len(pairs)).sample(pairs, pairs_cap)
    for k, gadgets in enumerate(build.levels):
        for (layer, u, v), g in gadgets.items():
            for a, b in pairs:
                x = build.assignment(a, b)[:len(build.assignment(a, b)) - pad]
                path = v in bp.reachable(layer, layer + 2 ** k, u, x)
                got = lcis_dp2(g.x[a], g.y[b]).length
                rep.check((got == g.constant) == path and got <= g.constant,
                          lambda: f"{shape} level {k} ({layer},{u},{v}) a={a} b={b}: {got} vs C_k={g.constant}")


def _solvers(rep, rng, trials=500, n_max=200):
    for t in range(trials):
        sigma = rng.choice([2, 5, 20, 100, 400])
        x = _rand_seq(rng, n_max, 1, sigma)
        y = _rand_seq(rng, n_max, 1, sigma)
        want = lcis_dp2(x, y).length
        res = lcis_matching_pairs(x, y, witness=True)
        rep.check(res.length == want, lambda: f"n={len(x)},{len(y)} sigma={sigma}: {res.length} != {want}")
        rep.check(check_witness(res.witness, (x, y)) and len(res.witness) == res.length,
                  "matching-pairs witness invalid")
        if t % 10 == 0:
            w = lcis_dp2(x, y, witness=True)
            rep.check(w.length == want and check_witness(w.witness, (x, y)), "dp2 witness invalid")


GRIDS = {
    "inflation": _inflation,
    "sep-len": _sep_len,
    "sep-lcis": _sep_lcis,
    "hat-suffix": _hat_suffix,
    "vector-gadget": _vector_gadget,
    "coordinate-gadget": _coordinate_gadget,
    "combiner": _combiner,
    "thm1": _thm1,
    "thm2": _thm2,
    "thm3": _thm3,
    "k-sep": _k_sep,
    "thm4": _thm4,
    "obs1": _obs1,
    "dp-k": _dp_k,
    "approx": _approx,
    "bp-sat": _bp_sat,
    "solvers": _solvers,
}

LEMMAS = tuple(GRIDS)


def verify_lemma(name: str, budget: dict | None = None, seed: int | None = None) -> Report:
    """Run one verification grid; ``budget`` overrides the grid's keyword defaults."""
    if name not in GRIDS:
        raise ParameterError(f"unknown lemma {name!r}; choose from {', '.join(LEMMAS)}")
    seed = default_seed() if seed is None else seed
    budget = dict(budget or {})
    rep = Report(name, seed, budget)
    start = time.perf_counter()
    try:
        GRIDS[name](rep, random.Random(seed), **budget)
    except TypeError as exc:
        raise ParameterError(f"bad budget for {name}: {exc}") from None
    rep.seconds = time.perf_counter() - start
    return rep


# -- benchmark ---------------------------------------------------------------------

def _bench_instance(family, n, rng, k=2):
    if family == "sparse":
        sigma = 4 * n
    elif family == "dense":
        sigma = 4
    elif family == "planted":
        base = sorted(rng.sample(range(4 * n), n))
        return [[v if rng.random() > 0.2 else rng.randrange(4 * n) for v in base] for _ in range(k)]
    else:
        sigma = n
    return [[rng.randint(1, max(1, sigma)) for _ in range(n)] for _ in range(k)]


SOLVERS = {
    "dp2": lambda seqs: lcis_dp2(seqs[0], seqs[1]).length,
    "matching": lambda seqs: lcis_matching_pairs(seqs[0], seqs[1]).length,
    "dpk": lambda seqs: lcis_dpk(seqs).length,
    "approx": lambda seqs, eps=Fraction(1, 2): lcis_approx(seqs[0], seqs[1], eps).length,
}


def bench(solvers=("dp2", "matching"), family="sparse", sizes=(50, 100, 200),
          repetitions=3, seed: int | None = None, k=2, eps=Fraction(1, 2)):
    """Time solvers on generated instances; rows carry the exact value for cross-checking."""
    seed = default_seed() if seed is None else seed
    rows = []
    for n in sizes:
        seqs = _bench_instance(family, n, random.Random(seed * 1000003 + n), k)
        exact = lcis_dpk(seqs).length if k > 2 else lcis_dp2(*seqs).length
        for name in solvers:
            if name not in SOLVERS:
                raise ParameterError(f"unknown solver {name!r}")
            if k != 2 and name != "dpk":
                raise ParameterError(f"solver {name} handles two sequences only")
            fn = SOLVERS[name]
            times, results = [], []
            for _ in range(repetitions):
                t0 = time.perf_counter()
                results.append(fn(seqs, eps) if name == "approx" else fn(seqs))
                times.append(time.perf_counter() - t0)
            result = results[0]
            ratio = result / exact if exact else 1.0
            rows.append({"solver": name, "family": family, "k": k, "n": n,
                         "median_s": round(statistics.median(times), 6),
                         "result": result, "stable": int(len(set(results)) == 1),
                         "exact": exact, "ratio": round(ratio, 6)})
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    fields = ["solver", "family", "k", "n", "median_s", "result", "stable", "exact", "ratio"]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
