"""
Orthogonal vectors to LCIS
==========================

Each vector becomes a short gadget; the combiner threads the gadgets
between separator blocks, so the LCIS of the two output sequences is a
known constant plus d minus the smallest inner product.
"""
from lcislab import (OVInstance, gen_ov, lcis_dp2, min_inner_product,
                     ov_to_lcis, ov_to_lcis_unbalanced, vector_gadget)

u, v = (1, 0, 1), (0, 1, 0)
gx, gy = vector_gadget(u, "X"), vector_gadget(v, "Y")
print("gadgets", gx, gy, "lcis", lcis_dp2(gx, gy).length, "= d - u.v =", 3 - 0)

inst = gen_ov(6, 6, 4, seed=3, density=0.6)
out = ov_to_lcis(inst)
value = lcis_dp2(*out.sequences).length
print(f"\nn=6 d=4: sequence length {len(out.sequences[0])}, constant {out.constant}")
print(f"lcis = {value}, constant + d - min dot = {out.constant + 4 - min_inner_product(inst)}")
print("orthogonal pair present:", value == out.threshold)

# plant an orthogonal pair and watch the value reach the threshold
planted = OVInstance(inst.u_set + ((0, 0, 0, 0),), inst.v_set + ((1, 1, 1, 1),), 4)
out = ov_to_lcis(planted)
print("after planting:", lcis_dp2(*out.sequences).length, "threshold", out.threshold)

# unbalanced sets: group the larger side so the LCIS value depends on m only
inst = gen_ov(12, 3, 3, seed=5)
out = ov_to_lcis_unbalanced(inst)
print(f"\nunbalanced n=12 m=3: q={out.details['q']}, lcis - constant =",
      lcis_dp2(*out.sequences).length - out.constant, "= d - min dot =", 3 - min_inner_product(inst))
