"""Brute-force ground truth on small rings.

Everything here is decided by exhaustion: idempotents by scanning all
elements, unit tests by the power orbit, ideal membership by direct scans.
The oracle shares only element arithmetic with the engine; it never calls
the spectral, lifting, or refinement code, so it can referee them.

All outputs are in canonical enumeration order and independent of any
partitioning of the scans, so repeated runs are byte-identical.  Budgets
are explicit; exceeding one raises BudgetExceeded rather than silently
truncating a search.
"""

from __future__ import annotations

from typing import List, Tuple

from adicclean.adic import AdicElem, ideal_valuation
from adicclean.errors import BudgetExceeded, PostconditionViolated
from adicclean.finite import FiniteElem, FiniteRingSpec, invert_finite
from adicclean.errors import NotUnit

__all__ = [
    "DEFAULT_BUDGET",
    "enumerate_idempotents",
    "brute_force_strongly_clean",
    "brute_force_pi_clean",
    "minimal_pi_regular_degree",
]

DEFAULT_BUDGET = 1 << 24


def _check_budget(cardinality: int, budget: int, what: str) -> None:
    if cardinality > budget:
        raise BudgetExceeded(f"{what}: ring has {cardinality} elements, budget {budget}")


def enumerate_idempotents(spec: FiniteRingSpec, budget: int = DEFAULT_BUDGET) -> List[FiniteElem]:
    """All e with e*e == e, in canonical enumeration order."""
    _check_budget(spec.cardinality, budget, "enumerate_idempotents")
    return [e for e in spec.elements() if e.is_idempotent()]


def brute_force_strongly_clean(x: FiniteElem, budget: int = DEFAULT_BUDGET) -> List[FiniteElem]:
    """All idempotents e with ex == xe and x - e a unit."""
    spec = x.spec
    _check_budget(spec.cardinality, budget, "brute_force_strongly_clean")
    found = []
    for e in spec.elements():
        if not e.is_idempotent():
            continue
        if e * x != x * e:
            continue
        try:
            invert_finite(x - e)
        except NotUnit:
            continue
        found.append(e)
    return found


def _is_unit_by_orbit(x: AdicElem) -> bool:
    """Power-orbit unit test on the represented quotient, independent of
    the engine's Newton lifting."""
    spec = x.spec
    one_p = spec.one().payload
    seen = set()
    cur = x
    for _ in range(spec.cardinality + 1):
        if cur.payload == one_p:
            return True
        if cur.payload in seen:
            return False
        seen.add(cur.payload)
        cur = cur * x
    return False


def brute_force_pi_clean(x: AdicElem, budget: int = DEFAULT_BUDGET) -> List[Tuple[AdicElem, int]]:
    """All (e, n) with e an exact idempotent at cap, ex == xe, x - e a unit
    in the quotient, and n minimal with (exe)^n in I.

    Candidates whose corner (exe) never enters I are not pi-clean
    witnesses and are skipped, not errors.
    """
    spec = x.spec
    _check_budget(spec.cardinality, budget, "brute_force_pi_clean")
    degree_bound = spec.residue_spec.cardinality + 1
    found = []
    for i in range(spec.cardinality):
        e = spec.element_at(i)
        if (e * e).payload != e.payload:
            continue
        if (e * x).payload != (x * e).payload:
            continue
        if not _is_unit_by_orbit(x - e):
            continue
        w = e * x * e
        acc = w
        degree = None
        for j in range(1, degree_bound + 1):
            if ideal_valuation(acc) >= 1:
                degree = j
                break
            acc = acc * w
        if degree is None:
            continue
        found.append((e, degree))
    return found


def minimal_pi_regular_degree(xbar: FiniteElem, budget: int = DEFAULT_BUDGET) -> int:
    """Minimal n >= 1 with xbar^n in xbar^(n+1)R and in R xbar^(n+1),
    decided by exhaustive one-sided membership scans.

    Exists for every element of a finite ring; agrees with the spectral
    degree (both are the Fitting degree), which the test suite asserts.
    """
    spec = xbar.spec
    _check_budget(spec.cardinality, budget, "minimal_pi_regular_degree")
    target = xbar                 # xbar^n
    nxt = xbar * xbar             # xbar^(n+1)
    for n in range(1, spec.cardinality + 1):
        right = any((nxt * r).payload == target.payload for r in spec.elements())
        if right:
            left = any((l * nxt).payload == target.payload for l in spec.elements())
            if left:
                return n
        target = nxt
        nxt = nxt * xbar
    raise PostconditionViolated("no degree found within the cardinality bound; bug")
