"""Hensel lifting of approximate idempotents.

The iteration a <- 3a^2 - 2a^3 uses only powers of a, so it is valid in
noncommutative rings, and the defect d = a^2 - a transforms as

    d' = (4a^2 - 4a - 3) d^2

so its ideal valuation at least doubles each step and the iterate is
unchanged modulo I^v where v is the current defect valuation.  Iteration
runs to an exact fixed point at the cap (idempotents are exactly the fixed
points), which takes at most ceil(log2 cap) + 1 steps.
"""

from __future__ import annotations

from adicclean.adic import AdicElem, ideal_valuation
from adicclean.errors import NoConvergence, NotApproximateIdempotent

__all__ = ["hensel_lift_idempotent"]


def hensel_lift_idempotent(a: AdicElem, record=None) -> AdicElem:
    """Lift a, with a^2 - a in I, to an exact idempotent at the cap.

    The result agrees with a modulo I^v, v = valuation of the input defect.
    If record is a list, the defect valuation after each iteration is
    appended (for convergence diagnostics and tests).
    """
    cap = a.spec.cap
    defect = a * a - a
    v = ideal_valuation(defect)
    if v < 1:
        raise NotApproximateIdempotent("a*a - a is not in the ideal")
    budget = cap.bit_length() + 2
    while v < cap:
        if budget == 0:
            raise NoConvergence("idempotent lift failed to converge; internal bug")
        budget -= 1
        sq = a * a
        a = sq + sq + sq - (sq * a + sq * a)  # 3a^2 - 2a^3
        defect = a * a - a
        new_v = ideal_valuation(defect)
        if new_v < min(2 * v, cap):
            raise NoConvergence(
                f"defect valuation did not double: {v} -> {new_v}; internal bug")
        v = new_v
        if record is not None:
            record.append(new_v)
    return a
