"""
Branching-program satisfiability
================================

Reachability gadgets are built level by level: a path over 2^k layers
splits at a middle node, and the combiner picks the best middle node.  The
final LCIS reaches the threshold exactly when some assignment is accepted.
"""
from lcislab import (bp_sat_bruteforce, bpsat_to_lcis, gen_bp, lcis_dp2,
                     reachability_gadgets)

for seed in range(6):
    bp = gen_bp(4, 2, 1, edge_density=0.4, seed=seed)
    out = bpsat_to_lcis(bp)
    value = lcis_dp2(*out.sequences).length
    print(f"seed {seed}: length {len(out.sequences[0]):5d}  lcis {value}  threshold {out.threshold}"
          f"  satisfiable {bp_sat_bruteforce(bp) is not None}")

build = reachability_gadgets(gen_bp(2, 2, 2, 0.6, seed=1))
for info in build.level_info:
    print("level", info)
