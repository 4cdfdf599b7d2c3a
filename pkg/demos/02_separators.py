"""
Separator sequences
===================

A separator pair (A_k, B_k) has 2^k blocks, and the LCIS of the first i+1
blocks of A_k with the first j+1 blocks of B_k is exactly i + j + 2^k.
Reversing and negating (``hat``) turns this into a suffix law.
"""
from lcislab import hat, lcis_dp2, separator_family, separator_pair

for k in range(3):
    p = separator_pair(k)
    print(f"k={k}  s={p.s}")
    print("  A blocks:", p.a.blocks())
    print("  B blocks:", p.b.blocks())

# the prefix law as a table; row i, column j
p = separator_pair(2)
print("\nprefix LCIS for k=2 (expected i + j + 4):")
for i in range(4):
    print("  ", [lcis_dp2(p.a.prefix(i), p.b.prefix(j)).length for j in range(4)])

ha, hb = hat(p.a), hat(p.b)
print("suffix LCIS of the hat sequences (expected 2*3 - i - j + 4):")
for i in range(4):
    print("  ", [lcis_dp2(ha.suffix(i), hb.suffix(j)).length for j in range(4)])

# families for more sequences grow the alphabet by 2^m - 1 per level
for m in (2, 3, 4):
    sizes = [len(separator_family(lv, m).alphabet()) for lv in range(5)]
    weak = [len(separator_family(lv, m, weak=True).alphabet()) for lv in range(5)]
    print(f"arity {m}: alphabet {sizes}, duplicating variant {weak}")
