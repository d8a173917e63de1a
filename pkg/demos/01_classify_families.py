"""
Sorting weight families into three behavioural branches
========================================================

Every weight family here is a non-increasing positive sequence starting at
w_1 = 1.  The ratio of aligned to reversed-window pairing sums stays bounded
exactly when the weights are summable or bounded below; it blows up when the
weights vanish without being summable.  `classify` reports which case holds
and, when bounded, the constant that does the bounding.
"""

from seqspace import (
    ConstantTailWeights,
    HarmonicWeights,
    PowerWeights,
    parse_weight_spec,
)

families = [
    PowerWeights(2.0),        # summable: sum of 1/i^2 converges
    PowerWeights(1.0),        # borderline: vanishes but the sum diverges
    PowerWeights(0.5),        # vanishes slowly, the interesting branch
    HarmonicWeights(),        # the classic 1/i family
    ConstantTailWeights(0.5), # max(1/2, 1/i): eventually constant
]

for fam in families:
    c = fam.classify()
    constant = "-" if c.constant is None else f"{float(c.constant):.6f}"
    print(f"{fam.spec:<12} {c.branch.value:<16} constant={constant}")
    print(f"             {c.evidence}")

# specs round-trip through the same strings the CLI accepts
fam = parse_weight_spec("power:0.5")
print("\nparsed back:", fam.spec, "->", fam.classify().branch.value)

# the first few weights of each family, for a feel of the decay
print("\n  i   " + "  ".join(f"{f.spec:>10}" for f in families))
for i in (1, 2, 4, 8, 64, 4096):
    row = "  ".join(f"{f.weight_at(i):>10.6f}" for f in families)
    print(f"{i:>5}   {row}")
