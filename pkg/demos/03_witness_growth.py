"""
Block witnesses: certified lower bounds that grow without limit
===============================================================

For a vanishing, non-summable family the pairing ratio A/B is unbounded.
The witness machinery makes that concrete: it searches for block lengths
d_1 < d_2 < ... satisfying two prefix-sum inequalities, builds the flat
block sequence taking value 1/W(d_k) on block k, and certifies A >= r/2
with B <= 3, hence a ratio above r/6, from r blocks.
"""

import json

from seqspace import (
    PowerWeights,
    build_witness,
    find_block_lengths,
    lower_bound_S,
    verify_certificate,
)

fam = PowerWeights(0.5)

print("r   d_r        support    A          B         ratio")
d = []
for r in range(1, 6):
    d = find_block_lengths(fam, r, initial=d)  # reuses the earlier blocks
    cert = verify_certificate(fam, d)
    print(
        f"{r}   {d[-1]:<10} {cert.n[-1]:<10} {cert.A_value:<10.6f} "
        f"{cert.B_value:<9.6f} {cert.ratio:.6f}"
    )

# the ratio beats the conservative floor r/6 by a wide margin here
certified, exact = lower_bound_S(fam, 5)
print(f"\ncertified lower bound r/6 = {certified:.6f}, exact ratio = {exact:.6f}")

# witnesses are plain step sequences; blocks shrink in value as they widen
f = build_witness(fam, [1, 4])
print("\nwitness for d = [1, 4]:", f.runs)

# certificates serialize with enough digits to re-verify bit for bit
print("\n" + json.dumps(verify_certificate(fam, [1, 4]).to_json_dict(), indent=2))
