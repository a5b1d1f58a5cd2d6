"""Strong pi-regularity in finite rings: the spectral idempotent and degree.

Every element of a finite ring is strongly pi-regular: some power is
idempotent, and the complementary idempotent z splits the ring so that
z*x*z is nilpotent while x - z is a unit.  Two independent algorithms
compute (z, n):

    spectral_idempotent          power-orbit method, any finite ring
    spectral_idempotent_matrix   rank stabilization over F_p (Fitting's
                                 Lemma), matrix rings over prime fields

Conventions fixed here: z projects onto the nilpotent part (z = 1 - x**m
for the orbit method), and the degree n >= 1 is the minimal exponent with
(z*x*z)**n == 0, so z*x*z == 0 gives n = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from adicclean import _linalg
from adicclean.adic import AdicElem, ideal_valuation
from adicclean.errors import (
    BudgetExceeded,
    NotNilpotentAtLevel,
    NotPrimeField,
    NotUnit,
    PostconditionViolated,
)
from adicclean.finite import FiniteElem, invert_finite, is_prime

__all__ = [
    "SpectralData",
    "spectral_idempotent",
    "spectral_idempotent_matrix",
    "spectral_dispatch",
    "nilpotency_index",
]


@dataclass(frozen=True)
class SpectralData:
    """Residue witness for strong pi-regularity of x: idempotent z, degree n,
    and the power m with x**m idempotent (internal to the orbit method)."""

    z: FiniteElem
    n: int
    m: int


def spectral_idempotent(xbar: FiniteElem) -> SpectralData:
    """Spectral data of xbar by the power orbit.

    Finds the minimal m >= 1 with xbar**m == xbar**(2m); g = xbar**m is
    then idempotent and z = 1 - g commutes with xbar, z*xbar*z is nilpotent
    of some minimal degree n <= m, and xbar - z is a unit.  The unit claim
    is re-verified before returning.
    """
    spec = xbar.spec
    budget = spec.cardinality + 1
    m = None
    xm = xbar  # xbar**cand
    for cand in range(1, budget + 1):
        # x**m == x**(2m) is exactly idempotency of x**m
        if (xm * xm).payload == xm.payload:
            m = cand
            break
        xm = xm * xbar
    if m is None:
        raise BudgetExceeded(
            f"no m <= {budget} with x**m == x**(2m); ring not finite or bug")
    g = xm
    z = spec.one() - g
    nu = z * xbar * z
    zero = spec.zero()
    n = None
    acc = nu
    for j in range(1, m + 1):
        if acc == zero:
            n = j
            break
        acc = acc * nu
    if n is None:
        raise PostconditionViolated(f"(z*x*z)**j nonzero for all j <= {m}")
    if (z * z) != z or (z * xbar) != (xbar * z):
        raise PostconditionViolated("spectral idempotent failed z*z == z or commutation")
    try:
        invert_finite(xbar - z)
    except NotUnit as exc:
        raise PostconditionViolated(f"x - z is not a unit: {exc}") from exc
    return SpectralData(z=z, n=n, m=m)


def spectral_idempotent_matrix(xbar: FiniteElem) -> SpectralData:
    """Spectral data for a matrix over a prime field, via rank stabilization.

    n is minimal with rank(x**n) == rank(x**(n+1)); z is the projector onto
    ker(x**n) along im(x**n), assembled from deterministic echelon bases.
    Agrees with spectral_idempotent on (z, n).
    """
    spec = xbar.spec
    if not (spec.kind == "matrix" and spec.base.kind == "zmod" and is_prime(spec.base.m)):
        raise NotPrimeField(f"{spec!r} is not a matrix ring over a prime field")
    z_payload, n = _linalg.fitting_projector(xbar.payload, spec.size, spec.base.m)
    z = FiniteElem(spec, z_payload)
    return SpectralData(z=z, n=n, m=n)


def spectral_dispatch(xbar: FiniteElem) -> SpectralData:
    """Matrix fast path when the ring is a matrix ring over a prime field,
    power-orbit method otherwise."""
    spec = xbar.spec
    if spec.kind == "matrix" and spec.base.kind == "zmod" and is_prime(spec.base.m):
        return spectral_idempotent_matrix(xbar)
    return spectral_idempotent(xbar)


def nilpotency_index(a: AdicElem, level: int, bound: int) -> int:
    """Minimal k >= 1 with a**k in I**level, searched up to the supplied
    bound (callers derive it from the certified residue degree).  Exceeding
    the bound signals a broken invariant upstream, not bad input."""
    if level < 1 or level > a.spec.cap:
        raise ValueError(f"level {level} outside 1..{a.spec.cap}")
    acc = a
    for k in range(1, bound + 1):
        if ideal_valuation(acc) >= level:
            return k
        acc = acc * a
    raise NotNilpotentAtLevel(
        f"no k <= {bound} with valuation(a**k) >= {level}")
