"""Strongly pi-clean decompositions in I-adically complete rings.

Exact-arithmetic computation of x = e + u (e idempotent, u a unit, eu = ue,
(exe)^n in I) in complete rings represented at a finite precision cap, with
a brute-force oracle for independent validation on small rings.
"""

from adicclean import errors
from adicclean.adic import (
    AdicElem,
    AdicRing,
    CompleteRingSpec,
    PeirceBlocks,
    canonical_lift,
    construct_ring,
    ideal_valuation,
    invert_in_corner,
    invert_unit,
    padic_matrix,
    peirce_blocks,
    residue,
    skew_series,
    truncate,
)
from adicclean.engine import (
    CleanCertificate,
    EngineStats,
    SylvesterSolution,
    VerificationResult,
    decompose,
    refine_idempotent,
    solve_sylvester,
    verify_certificate,
)
from adicclean.finite import (
    DUAL_PROJECTION,
    IDENTITY,
    EndoTag,
    FiniteElem,
    FiniteRingSpec,
    arith,
    dual,
    invert_finite,
    matrix,
    power,
    sigma_apply,
    triangular2,
    zmod,
)
from adicclean.lifting import hensel_lift_idempotent
from adicclean.oracle import (
    brute_force_pi_clean,
    brute_force_strongly_clean,
    enumerate_idempotents,
    minimal_pi_regular_degree,
)
from adicclean.regularity import (
    SpectralData,
    nilpotency_index,
    spectral_idempotent,
    spectral_idempotent_matrix,
)

__version__ = "0.1.0"
