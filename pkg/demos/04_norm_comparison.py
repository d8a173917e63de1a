"""
Rearranged norm versus selection norm
=====================================

The rearranged norm sorts |b| decreasingly and pairs it with the weights.
The selection norm keeps the original order but may skip entries: it takes
the best order-preserving selection, pairing the j-th chosen entry with
weight j.  Skipping can never beat sorting, so selection <= rearranged,
with equality exactly when the vector is already non-increasing.
"""

import numpy as np

from seqspace import HarmonicWeights, garling_norm, lorentz_norm

H = HarmonicWeights()

for b in ([2.0, 1.0], [1.0, 2.0], [2.0, 0.0, 1.0], [1.0, 3.0, 2.0]):
    lor = lorentz_norm(b, H, 1.0)
    gar = garling_norm(b, H, 1.0)
    chosen = [int(i) for i in gar.selector]
    print(
        f"b = {b!s:<16} rearranged = {lor.value:.4f}   "
        f"selection = {gar.value:.4f}   picks indices {chosen}"
    )

# the selector certifies the value: re-scoring it reproduces the norm
b = [0.5, 2.0, 0.25, 1.0]
gar = garling_norm(b, H, 1.0)
score = sum(abs(b[i - 1]) * H.weight_at(j + 1) for j, i in enumerate(gar.selector))
print(f"\nrecomputed from the selector: {score:.6f} == {gar.value:.6f}")

# p > 1 raises entries to the p-th power before weighting
gar2 = garling_norm([3.0, 4.0], H, 2.0)
print(f"p = 2 on [3, 4]: {gar2.value:.6f} (= sqrt(9*1 + 16*0.5))")

# on a thousand random vectors the domination never fails
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(1000):
    v = rng.uniform(-4.0, 4.0, size=rng.integers(1, 40))
    worst = max(worst, garling_norm(v, H, 1.0).value - lorentz_norm(v, H, 1.0).value)
print(f"\nmax(selection - rearranged) over 1000 random vectors: {worst:.3e}")
