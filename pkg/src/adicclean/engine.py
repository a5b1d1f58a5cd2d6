"""Strongly pi-clean decomposition by iterated Peirce refinement.

Given x in a complete ring represented at cap N, the residue of x in the
finite ring R/I is strongly pi-regular, witnessed by a spectral idempotent
z of degree n.  The engine lifts z to an exact idempotent e_1, then runs
N - 1 refinement rounds: at level m the Peirce blocks

    a = exe   b = exf   c = fxe   d = fxf      (f = 1 - e)

have a nilpotent modulo I^(m+1), d invertible in its corner, and b, c in
I^m; the corrections

    r = - sum_{i=1..k} a^(i-1) b dinv^i
    s = - sum_{i=1..k} dinv^i c a^(i-1)

(k the index with a^k in I^(m+1), dinv the corner inverse of d) satisfy
ar - rd = b and ds - sa = -c modulo I^(m+1), so e + r + s commutes with x
one level deeper; Hensel lifting restores exact idempotency without
disturbing anything modulo I^(2m).  After the last round e commutes with x
exactly at cap, u = x - e is a unit, and (exe)^n lies in I.

The certificate stores u^(-1) rather than u, so verification needs
multiplication only.  verify_certificate recomputes every defining
identity from scratch and is independent of the construction path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from adicclean.adic import (
    AdicElem,
    CompleteRingSpec,
    PeirceBlocks,
    canonical_lift,
    ideal_valuation,
    invert_in_corner,
    invert_unit,
    peirce_blocks,
    residue,
    truncate,
)
from adicclean.errors import (
    CertificateInvalid,
    CommutationNotAchieved,
    CornerNotUnit,
    NotUnit,
    NotUnitInCorner,
    PostconditionViolated,
    ResidualNonzero,
)
from adicclean.lifting import hensel_lift_idempotent
from adicclean.regularity import nilpotency_index, spectral_dispatch

__all__ = [
    "SylvesterSolution",
    "CleanCertificate",
    "VerificationResult",
    "EngineStats",
    "solve_sylvester",
    "refine_idempotent",
    "decompose",
    "verify_certificate",
]


@dataclass
class EngineStats:
    """Counters for the always-on Sylvester residual checks and the
    optional per-level loop invariant checks."""

    sylvester_checks: int = 0
    sylvester_failures: int = 0
    invariant_checks: int = 0
    invariant_failures: int = 0


@dataclass(frozen=True)
class SylvesterSolution:
    """Off-diagonal corrections at one refinement level: r in eRf, s in fRe,
    both of valuation >= the level; k is the nilpotency index used."""

    r: AdicElem
    s: AdicElem
    k: int


@dataclass(frozen=True)
class CleanCertificate:
    """Machine-checkable decomposition: x = e + u with e idempotent
    commuting with x, u_inv the two-sided inverse of u, and (exe)^n in I."""

    ring: CompleteRingSpec
    x: AdicElem
    e: AdicElem
    u_inv: AdicElem
    n: int
    cap: int


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    failures: tuple

    def __bool__(self):
        return self.ok


def solve_sylvester(blocks: PeirceBlocks, k: int, level: int,
                    stats: Optional[EngineStats] = None) -> SylvesterSolution:
    """Solve ar - rd = b and ds - sa = -c modulo I^(level+1) by the finite
    geometric series in a and the corner inverse of d.

    Requires a**k in I^(level+1) and b, c in I^level.  Both identities are
    re-checked before returning; a failed check raises ResidualNonzero.
    """
    a, b, c, d, e, f = blocks.a, blocks.b, blocks.c, blocks.d, blocks.e, blocks.f
    try:
        dinv = invert_in_corner(d, f)
    except NotUnitInCorner as exc:
        raise CornerNotUnit(f"unit corner is not invertible at level {level}: {exc}") from exc
    spec = a.spec
    r = spec.zero()
    s = spec.zero()
    apow = e          # a^(i-1) restricted to the corner; e acts as its unity
    dpow = dinv       # dinv^i
    for i in range(1, k + 1):
        r = r - apow * b * dpow
        s = s - dpow * c * apow
        if i < k:
            apow = apow * a
            dpow = dpow * dinv
    if (e * r * f).payload != r.payload or (f * s * e).payload != s.payload:
        raise PostconditionViolated("corrections escaped their corners")
    if ideal_valuation(r) < level or ideal_valuation(s) < level:
        raise PostconditionViolated("corrections not in I^level")
    if stats is not None:
        stats.sylvester_checks += 2
    if ideal_valuation(a * r - r * d - b) <= level:
        if stats is not None:
            stats.sylvester_failures += 1
        raise ResidualNonzero(f"ar - rd != b modulo I^{level + 1}")
    if ideal_valuation(d * s - s * a + c) <= level:
        if stats is not None:
            stats.sylvester_failures += 1
        raise ResidualNonzero(f"ds - sa != -c modulo I^{level + 1}")
    return SylvesterSolution(r=r, s=s, k=k)


def refine_idempotent(x: AdicElem, e: AdicElem, level: int, degree: int,
                      stats: Optional[EngineStats] = None) -> AdicElem:
    """One induction step: from e commuting with x modulo I^level to an
    exact idempotent commuting modulo I^(level+1) and congruent to e
    modulo I^level.

    degree is the certified residue degree n; it only sizes the nilpotency
    search bound n*(level+1), which is valid because (exe)^n in I forces
    (exe)^(n*(level+1)) into I^(level+1).
    """
    blocks = peirce_blocks(x, e)
    k = nilpotency_index(blocks.a, level + 1, degree * (level + 1))
    sol = solve_sylvester(blocks, k, level, stats)
    candidate = e + sol.r + sol.s
    refined = hensel_lift_idempotent(candidate)
    if ideal_valuation(refined * x - x * refined) <= level:
        raise CommutationNotAchieved(
            f"refined idempotent does not commute with x modulo I^{level + 1}")
    if ideal_valuation(refined - e) < level:
        raise PostconditionViolated("refined idempotent moved below I^level")
    return refined


def _check_level_invariants(x: AdicElem, e: AdicElem, m: int, n: int,
                            stats: Optional[EngineStats]) -> None:
    """The proof's conditions (1) and (2) restated at level m: e is an exact
    idempotent, commutes with x modulo I^m, x - e is a unit in R/I^m, and
    (exe)^n lies in I."""

    def fail(msg):
        if stats is not None:
            stats.invariant_failures += 1
        raise PostconditionViolated(f"loop invariant broken at level {m}: {msg}")

    if stats is not None:
        stats.invariant_checks += 4
    if not e.is_idempotent():
        fail("e*e != e")
    if ideal_valuation(e * x - x * e) < m:
        fail("ex - xe not in I^m")
    try:
        invert_unit(truncate(x - e, m))
    except NotUnit:
        fail("x - e not a unit in R/I^m")
    if ideal_valuation((e * x * e) ** n) < 1:
        fail("(exe)^n not in I")


def decompose(x: AdicElem, *, check_invariants: bool = True,
              stats: Optional[EngineStats] = None) -> CleanCertificate:
    """Strongly pi-clean certificate for x at its ring's cap.

    Seeds with the spectral idempotent of the residue (rank-stabilization
    fast path for matrix residues over prime fields), Hensel-lifts it, then
    refines once per level.  The returned certificate has been verified;
    check_invariants additionally asserts the per-level loop invariants.
    """
    spec = x.spec
    cap = spec.cap
    sd = spectral_dispatch(residue(x))
    n = sd.n
    e = hensel_lift_idempotent(canonical_lift(sd.z, spec))
    for m in range(1, cap):
        if check_invariants:
            _check_level_invariants(x, e, m, n, stats)
        e = refine_idempotent(x, e, m, n, stats)
    if check_invariants:
        _check_level_invariants(x, e, cap, n, stats)
    if (e * x).payload != (x * e).payload:
        raise CommutationNotAchieved("final idempotent does not commute exactly")
    u_inv = invert_unit(x - e)
    w = e * x * e
    acc = w
    minimal = None
    for j in range(1, n + 1):
        if ideal_valuation(acc) >= 1:
            minimal = j
            break
        acc = acc * w
    if minimal != n:
        raise CertificateInvalid(
            f"degree drifted: residue degree {n}, minimal power in I is {minimal}")
    cert = CleanCertificate(ring=spec, x=x, e=e, u_inv=u_inv, n=n, cap=cap)
    verdict = verify_certificate(cert)
    if not verdict.ok:
        raise CertificateInvalid(f"certificate failed checks: {verdict.failures}")
    return cert


def verify_certificate(cert: CleanCertificate) -> VerificationResult:
    """Recompute every certificate identity by multiplication alone.

    Returns pass, or the complete list of violated checks among
    NotIdempotent, NotCommuting, NotUnit, DegreeWrong, SpecMismatch.
    Foreign certificates are accepted if valid; degree minimality is an
    engine guarantee, not a validity condition.
    """
    spec = cert.ring
    structural = (
        isinstance(cert.n, int) and cert.n >= 1
        and isinstance(spec, CompleteRingSpec)
        and cert.x.spec == spec and cert.e.spec == spec and cert.u_inv.spec == spec
        and cert.cap == spec.cap
    )
    if not structural:
        return VerificationResult(ok=False, failures=("SpecMismatch",))
    x, e, u_inv = cert.x, cert.e, cert.u_inv
    failures: List[str] = []
    if (e * e).payload != e.payload:
        failures.append("NotIdempotent")
    if (e * x).payload != (x * e).payload:
        failures.append("NotCommuting")
    one_ = spec.one()
    u = x - e
    if (u * u_inv).payload != one_.payload or (u_inv * u).payload != one_.payload:
        failures.append("NotUnit")
    if ideal_valuation((e * x * e) ** cert.n) < 1:
        failures.append("DegreeWrong")
    return VerificationResult(ok=not failures, failures=tuple(failures))
