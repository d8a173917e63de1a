"""
Aligned and reversed-window pairing sums on run-length sequences
================================================================

A StepSequence stores a non-increasing, eventually-zero sequence as runs of
equal values, so a million-term plateau costs one tuple.  The aligned sum A
pairs value i with weight i; the reversed-window sum B(n) pairs the first n
values with the top n weights in opposite order, and B takes the best n.
"""

from fractions import Fraction

from seqspace import HarmonicWeights, StepSequence, functional_A, functional_B, ratio

H = HarmonicWeights()

# two ones followed by zeros: A = 1*1 + 1*(1/2), B peaks at n = 2
f = StepSequence(((2, 1.0),))
print("runs:", f.runs, "support:", f.support)
print("A =", functional_A(f, H))
print("B =", functional_B(f, H))  # (value, best n)

# the same numbers in exact arithmetic, no rounding anywhere
f_exact = StepSequence(((2, Fraction(1)),))
print("exact A =", functional_A(f_exact, H, mode="rational"))

# a staircase: runs of 3, 2, 1 with decreasing heights
stairs = StepSequence.from_values([1.0, 1.0, 1.0, 0.6, 0.6, 0.25])
report = ratio(stairs, H)
print("\nstairs:", stairs.runs)
print(f"A = {report.A:.6f}  B = {report.B:.6f} at n = {report.argmax_n}")
print(f"ratio A/B = {report.ratio:.6f}")

# plateaus are free: ten million equal entries, still three runs
wide = StepSequence(((10**7, 1e-3), (5, 5e-4), (1, 1e-7)))
wide_report = ratio(wide, H)
print("\nwide support:", wide.support)
print(f"A = {wide_report.A:.6f}  B = {wide_report.B:.6f} at n = {wide_report.argmax_n}")
