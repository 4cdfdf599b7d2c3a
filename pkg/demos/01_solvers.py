"""
Solving LCIS four ways
======================

The quadratic DP, the matching-pairs solver, the k-sequence DP and the
brute-force oracle all agree; the approximation trades exactness for
skipping frequent symbols.
"""
import random
from fractions import Fraction

from lcislab import (check_witness, lcis_approx, lcis_dp2, lcis_dpk,
                     lcis_matching_pairs, lcis_oracle)

x = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5]
y = [2, 7, 1, 8, 2, 8, 1, 8, 2, 8, 4, 5, 9]

# every exact solver gives the same length
res = lcis_dp2(x, y, witness=True)
print("dp2       ", res.length, res.witness)
print("matching  ", lcis_matching_pairs(x, y).length)
print("dp-k (k=2)", lcis_dpk([x, y]).length)
print("oracle    ", lcis_oracle([x, y]).length)
assert check_witness(res.witness, [x, y])

# weak mode allows repeated values
print("lcwis     ", lcis_dp2([1, 1, 2], [1, 2, 1, 1], "weak").length)

# three sequences at once
z = [1, 4, 5, 9, 0]
print("lcis(x,y,z) =", lcis_dpk([x, y, z]).length)

# the approximation: either an early answer from the thinned instance,
# or an exact fallback when the answer is short anyway
rng = random.Random(0)
base = sorted(rng.sample(range(400), 100))
a = [v if rng.random() > 0.2 else rng.randrange(400) for v in base]
b = [v if rng.random() > 0.2 else rng.randrange(400) for v in base]
for eps in (Fraction(1, 10), Fraction(1, 2), Fraction(1)):
    approx = lcis_approx(a, b, eps)
    exact = lcis_dp2(a, b).length
    print(f"eps={eps}: |Z|={approx.length} exact={exact} branch={approx.meta['branch']}")

# a single symbol repeated everywhere is filtered out, so the exact
# fallback answers
print("all sevens:", lcis_approx([7] * 50, [7] * 50, 1).meta["branch"])
