"""Weighted sequence-space norms, pairing functionals, and block witnesses.

The package revolves around one dichotomy: pairing a non-increasing
sequence with a normalized non-increasing weight either aligned (largest
entries meet largest weights) or reversed (largest entries meet the
smallest weights of a finite window).  The quotient of the two pairings is
uniformly bounded exactly when the weight is summable or bounded below;
otherwise explicit block witnesses push it past r/6 for every r, and the
same witnesses separate the rearrangement-invariant norm from the
order-preserving selection norm.
"""

from .exceptions import (
    CapExceededError,
    CertificationError,
    InputError,
    SeqspaceError,
)
from .functionals import (
    FunctionalReport,
    StepSequence,
    functional_A,
    functional_B,
    functional_B_at,
    ratio,
)
from .norms import (
    NormResult,
    garling_norm,
    inclusion_gap,
    lorentz_norm,
    symmetric_defect,
    witness_gap,
)
from .weights import (
    Branch,
    Classification,
    ConstantTailWeights,
    ExplicitRationalWeights,
    HarmonicWeights,
    PowerWeights,
    WeightFamily,
    parse_weight_spec,
)
from .witness import (
    WitnessCertificate,
    build_witness,
    find_block_lengths,
    lower_bound_S,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "CapExceededError",
    "CertificationError",
    "Classification",
    "ConstantTailWeights",
    "ExplicitRationalWeights",
    "FunctionalReport",
    "HarmonicWeights",
    "InputError",
    "NormResult",
    "PowerWeights",
    "SeqspaceError",
    "StepSequence",
    "WeightFamily",
    "WitnessCertificate",
    "build_witness",
    "find_block_lengths",
    "functional_A",
    "functional_B",
    "functional_B_at",
    "garling_norm",
    "inclusion_gap",
    "lorentz_norm",
    "lower_bound_S",
    "parse_weight_spec",
    "ratio",
    "symmetric_defect",
    "verify_certificate",
    "witness_gap",
]
