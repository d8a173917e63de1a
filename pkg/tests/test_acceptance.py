"""Acceptance gate: seven headline guarantees, one printed verdict each.

Every test prints a single "PASS: criterion N ..." or "FAIL: criterion N ..."
line (surfaced by the -rA summary) and then asserts, so a red run still
reports which guarantee broke and by how much.
"""

from __future__ import annotations

import functools
import time

import numpy as np

from seqspace.functionals import StepSequence, functional_B, ratio
from seqspace.norms import garling_norm, inclusion_gap, lorentz_norm, symmetric_defect
from seqspace.oracles import garling_norm_bruteforce, rearrangement_check
from seqspace.weights import ConstantTailWeights, HarmonicWeights, PowerWeights
from seqspace.witness import build_witness, find_block_lengths, verify_certificate

P12 = PowerWeights(0.5)
R_RANGE = range(1, 6)


def _verdict(num: int, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'}: criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


@functools.lru_cache(maxsize=1)
def _p12_witnesses():
    """Blocks, certificate, and witness sequence for r = 1..5, built once."""
    out = []
    d: list[int] = []
    for r in R_RANGE:
        d = find_block_lengths(P12, r, initial=d)
        cert = verify_certificate(P12, d)
        out.append((r, tuple(d), cert, build_witness(P12, d)))
    return tuple(out)


def _random_step_sequence(rng, max_runs: int, max_run_len: int) -> StepSequence:
    t = int(rng.integers(1, max_runs + 1))
    values = np.unique(rng.uniform(0.05, 3.0, size=t))[::-1]
    lengths = rng.integers(1, max_run_len + 1, size=values.size)
    return StepSequence(tuple(zip(map(int, lengths), map(float, values))))


def test_criterion_1_certified_witnesses_within_time_budget():
    """Five certificates for the inverse-square-root family, under a minute."""
    start = time.monotonic()
    witnesses = _p12_witnesses()
    elapsed = time.monotonic() - start
    worst_a = min(cert.A_value - r / 2.0 for r, _, cert, _ in witnesses)
    worst_b = max(cert.B_value for _, _, cert, _ in witnesses)
    ok = (
        elapsed <= 60.0
        and all(cert.A_value >= (r / 2.0) * (1 - 1e-6) for r, _, cert, _ in witnesses)
        and all(cert.B_value <= 3.0 * (1 + 1e-6) for _, _, cert, _ in witnesses)
    )
    _verdict(
        1,
        ok,
        f"r = 1..5 certificates: min(A - r/2) = {worst_a:.6f}, "
        f"max B = {worst_b:.6f} (<= 3), built and checked in {elapsed:.4f}s",
    )


def test_criterion_2_ratio_growth():
    """Certified ratios strictly increase with r and clear r/6."""
    ratios = [float(cert.ratio) for _, _, cert, _ in _p12_witnesses()]
    increasing = all(b > a for a, b in zip(ratios, ratios[1:]))
    above = all(v > r / 6.0 for r, v in zip(R_RANGE, ratios))
    _verdict(
        2,
        increasing and above,
        f"ratios {[f'{v:.4f}' for v in ratios]} strictly increase and exceed r/6",
    )


def test_criterion_3_ratio_bounds_on_random_sequences():
    """10^4 random step sequences never beat the classification constants."""
    ctail = ConstantTailWeights(0.5)
    power2 = PowerWeights(2.0)
    const2 = power2.classify().constant
    rng = np.random.default_rng(2026)
    worst_ctail = 0.0
    worst_power = 0.0
    for _ in range(10_000):
        f = _random_step_sequence(rng, max_runs=8, max_run_len=25)
        worst_ctail = max(worst_ctail, ratio(f, ctail).ratio)
        worst_power = max(worst_power, ratio(f, power2).ratio)
    ok = worst_ctail <= 2.0 + 1e-9 and worst_power <= const2 + 1e-9
    _verdict(
        3,
        ok,
        f"max ratio {worst_ctail:.6f} <= 2 (floor 1/2 tail), "
        f"{worst_power:.6f} <= {const2:.6f} (summable constant)",
    )


def test_criterion_4_pairing_extremality():
    """All n! pairings of 10^3 random sorted pairs stay between the extremes."""
    rng = np.random.default_rng(411)
    violations = 0
    for _ in range(1_000):
        n = int(rng.integers(1, 8))
        a = np.sort(rng.uniform(0.0, 5.0, size=n))[::-1]
        b = np.sort(rng.uniform(0.0, 5.0, size=n))[::-1]
        ok, _, _ = rearrangement_check(a, b, n)
        violations += 0 if ok else 1
    _verdict(4, violations == 0, f"{violations} violations across 1000 pairs, n <= 7")


def test_criterion_5_selection_norm_against_enumeration():
    """DP equals subset enumeration, and never beats the rearranged norm."""
    fams = [HarmonicWeights(), P12, ConstantTailWeights(0.25)]
    ps = [1.0, 1.5, 2.0]
    rng = np.random.default_rng(5)
    worst_rel = 0.0
    for trial in range(3_000):
        m = int(rng.integers(1, 17))
        b = rng.uniform(-3.0, 3.0, size=m)
        b[rng.uniform(size=m) < 0.2] = 0.0
        fam = fams[trial % 3]
        p = ps[(trial // 3) % 3]
        fast = garling_norm(b, fam, p, method="dp").value
        brute = garling_norm_bruteforce(b, fam, p)
        worst_rel = max(worst_rel, abs(fast - brute) / max(1.0, abs(brute)))
    agree = worst_rel <= 1e-12

    dominated = True
    for trial in range(10_000):
        m = int(rng.integers(1, 65))
        b = rng.uniform(-5.0, 5.0, size=m)
        fam = fams[trial % 3]
        p = ps[trial % 3]
        gar = garling_norm(b, fam, p).value
        lor = lorentz_norm(b, fam, p).value
        if gar > lor * (1 + 1e-10) + 1e-12:
            dominated = False
            break
    _verdict(
        5,
        agree and dominated,
        f"3000 enumeration checks (worst rel err {worst_rel:.2e} <= 1e-12), "
        "10000 domination checks",
    )


def test_criterion_6_symmetry_defect():
    """Reversal defects of the witnesses grow past r/6; reversed selection
    norms never exceed the window supremum."""
    defects = []
    for r, _, _, f in _p12_witnesses():
        defect, _, _ = symmetric_defect(f, P12, 1.0, f.support)
        defects.append((r, defect))
    grows = all(defect > r / 6.0 for r, defect in defects)

    fams = [HarmonicWeights(), P12, ConstantTailWeights(0.25)]
    ps = [1.0, 1.5, 2.0]
    rng = np.random.default_rng(66)
    bounded = True
    for trial in range(1_000):
        f = _random_step_sequence(rng, max_runs=8, max_run_len=8)
        fam = fams[trial % 3]
        p = ps[trial % 3]
        b_val, _ = functional_B(f, fam)
        rev = f.expand() ** (1.0 / p)
        sel = garling_norm(rev[::-1], fam, p, method="dp").value
        if sel**p > b_val + 1e-10:
            bounded = False
            break
    _verdict(
        6,
        grows and bounded,
        f"defects {[f'{v:.4f}' for _, v in defects]} exceed r/6; "
        "1000 reversed selections stay within the window supremum",
    )


def test_criterion_7_inclusion_gap_growth():
    """The rearranged-over-selection gap clears r/6 for r = 1..5."""
    gaps = [inclusion_gap(P12, 1.0, r) for r in R_RANGE]
    ok = all(g >= r / 6.0 for r, g in zip(R_RANGE, gaps))
    _verdict(7, ok, f"gaps {[f'{v:.4f}' for v in gaps]} all >= r/6")
