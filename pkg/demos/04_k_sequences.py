"""
k-OV to k-LCIS and to LCWIS
===========================

Coordinate gadgets make the joint LCIS of k vector gadgets equal to d minus
the number of coordinates where all k vectors have a one.  The weak variant
reuses the construction with duplicating inflation, which keeps the
alphabet logarithmic.
"""
import math

from lcislab import (gen_kov, k_min_product, kov_to_klcis, kov_to_klcwis,
                     lcis_dp2, lcis_dpk, vector_gadget_k)

vecs = [(1, 1, 0), (1, 0, 1), (1, 1, 1)]
gs = [vector_gadget_k(i, u, 3) for i, u in enumerate(vecs, 1)]
print("gadgets", gs, "lcis", lcis_dpk(gs).length)

inst = gen_kov(3, 2, 2, seed=4, density=0.7)
out = kov_to_klcis(inst)
print(f"\n3-OV n=2 d=2: lengths {[len(s) for s in out.sequences]}")
print("lcis", lcis_dpk(out.sequences).length, "= constant + d - m =",
      out.constant + 2 - k_min_product(inst))

print("\nLCWIS alphabet against log2 n + d:")
for n, d in [(2, 2), (4, 3), (8, 3), (16, 4)]:
    inst = gen_kov(2, n, d, seed=n, density=0.8)
    out = kov_to_klcwis(inst)
    got = lcis_dp2(*out.sequences, "weak").length
    bound = math.log2(out.details["n_blocks"]) + d
    print(f"  n={n:2d} d={d}: alphabet {out.details['alphabet']:3d}  ratio {out.details['alphabet'] / bound:.2f}"
          f"  decision {got == out.threshold} (orthogonal: {k_min_product(inst) == 0})")
