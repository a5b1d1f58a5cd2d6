"""Complete rings at finite precision.

A complete ring R with ideal I is represented through its quotient R/I^N
for a user-chosen precision cap N.  Two families are available:

    padic_matrix(p, k, N)          M_k(Z/p^N) with I = (p)
    skew_series(base, sigma, N)    base[[t; sigma]] / (t^N) with I = (t)

In both, I^N = 0 in the represented quotient, so I is nilpotent and
automatically contained in the Jacobson radical; the residue ring R/I is a
finite ring from adicclean.finite (matrix(zmod(p), k), respectively base).

Payloads: padic_matrix elements are row-major tuples of k*k ints in
[0, p^N); skew_series elements are tuples of exactly N base payloads,
coefficient i multiplying t^i.  Skew multiplication uses the left twist
t * a = sigma(a) * t, so

    (sum a_i t^i)(sum b_j t^j) = sum_m ( sum_{i+j=m} a_i sigma^i(b_j) ) t^m

truncated at t^N.  Mixing twist conventions silently breaks associativity,
so this one is fixed package-wide.

Everything is immutable and pure; truncation maps between caps are ring
homomorphisms and every algorithm here commutes with them.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from adicclean import _kernels, _linalg
from adicclean.errors import (
    BadLevel,
    InvalidSpec,
    NoConvergence,
    NotIdempotent,
    NotUnit,
    NotUnitInCorner,
    PostconditionViolated,
    SpecMismatch,
)
from adicclean.finite import (
    EndoTag,
    FiniteElem,
    FiniteRingSpec,
    _p_add,
    _p_from_index,
    _p_from_value,
    _p_mul,
    _p_neg,
    _p_sigma,
    _p_sub,
    _p_to_index,
    _p_zero,
    invert_finite,
    is_prime,
    matrix,
    validate_endomorphism,
    zmod,
)

__all__ = [
    "CompleteRingSpec",
    "AdicElem",
    "AdicRing",
    "PeirceBlocks",
    "padic_matrix",
    "skew_series",
    "construct_ring",
    "truncate",
    "ideal_valuation",
    "residue",
    "canonical_lift",
    "peirce_blocks",
    "invert_unit",
    "invert_in_corner",
]


# ---------------------------------------------------------------------------
# ring specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompleteRingSpec:
    """A complete ring truncated at precision cap; use the factories."""

    kind: str
    cap: int
    p: int = 0
    size: int = 0
    base: Optional[FiniteRingSpec] = None
    sigma: Optional[EndoTag] = None

    @cached_property
    def residue_spec(self) -> FiniteRingSpec:
        if self.kind == "padic_matrix":
            return matrix(zmod(self.p), self.size)
        return self.base

    @cached_property
    def modulus(self) -> int:
        # entry modulus p^cap; meaningful for padic_matrix only
        return self.p ** self.cap if self.kind == "padic_matrix" else 0

    @cached_property
    def cardinality(self) -> int:
        if self.kind == "padic_matrix":
            return self.modulus ** (self.size * self.size)
        return self.base.cardinality ** self.cap

    def at_cap(self, m: int) -> "CompleteRingSpec":
        return dataclasses.replace(self, cap=m)

    def zero(self) -> "AdicElem":
        return AdicElem(self, self._zero_payload())

    def one(self) -> "AdicElem":
        if self.kind == "padic_matrix":
            k = self.size
            pl = tuple(1 if i == j else 0 for i in range(k) for j in range(k))
        else:
            pl = (self.base.one().payload,) + (_p_zero(self.base),) * (self.cap - 1)
        return AdicElem(self, pl)

    def _zero_payload(self):
        if self.kind == "padic_matrix":
            return (0,) * (self.size * self.size)
        return (_p_zero(self.base),) * self.cap

    def element(self, value) -> "AdicElem":
        """Build an element from nested ints / lists, reducing into canonical form."""
        if self.kind == "padic_matrix":
            k, mod = self.size, self.modulus
            rows = list(value)
            if len(rows) != k or any(len(list(r)) != k for r in rows):
                raise ValueError(f"expected a {k}x{k} nested array")
            flat = []
            for row in rows:
                for entry in row:
                    if not isinstance(entry, int):
                        raise ValueError("matrix entries must be ints")
                    flat.append(entry % mod)
            return AdicElem(self, tuple(flat))
        coeffs = list(value)
        if len(coeffs) != self.cap:
            raise ValueError(f"expected exactly {self.cap} series coefficients")
        return AdicElem(self, tuple(_p_from_value(self.base, c) for c in coeffs))

    def element_at(self, index: int) -> "AdicElem":
        """The index-th element of the represented quotient, canonical order."""
        if not 0 <= index < self.cardinality:
            raise ValueError(f"index {index} out of range")
        if self.kind == "padic_matrix":
            mod = self.modulus
            digits = []
            for _ in range(self.size * self.size):
                index, d = divmod(index, mod)
                digits.append(d)
            digits.reverse()
            return AdicElem(self, tuple(digits))
        card = self.base.cardinality
        coeffs = []
        for _ in range(self.cap):
            index, d = divmod(index, card)
            coeffs.append(_p_from_index(self.base, d))
        coeffs.reverse()
        return AdicElem(self, tuple(coeffs))

    def index_of(self, x: "AdicElem") -> int:
        if x.spec != self:
            raise SpecMismatch("element belongs to a different ring")
        if self.kind == "padic_matrix":
            acc = 0
            for entry in x.payload:
                acc = acc * self.modulus + entry
            return acc
        card = self.base.cardinality
        acc = 0
        for c in x.payload:
            acc = acc * card + _p_to_index(self.base, c)
        return acc

    def random_element(self, rng) -> "AdicElem":
        if self.kind == "padic_matrix":
            mod = self.modulus
            return AdicElem(self, tuple(rng.randrange(mod)
                                        for _ in range(self.size * self.size)))
        card = self.base.cardinality
        return AdicElem(self, tuple(_p_from_index(self.base, rng.randrange(card))
                                    for _ in range(self.cap)))

    def __repr__(self) -> str:
        if self.kind == "padic_matrix":
            return f"padic_matrix(p={self.p}, size={self.size}, cap={self.cap})"
        return f"skew_series({self.base!r}, {self.sigma!r}, cap={self.cap})"


def padic_matrix(p: int, size: int, cap: int) -> CompleteRingSpec:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidSpec(f"padic_matrix requires a prime p, got {p!r}")
    if not isinstance(size, int) or size < 1:
        raise InvalidSpec(f"matrix size must be an int >= 1, got {size!r}")
    if not isinstance(cap, int) or cap < 1:
        raise InvalidSpec(f"precision cap must be an int >= 1, got {cap!r}")
    return CompleteRingSpec(kind="padic_matrix", cap=cap, p=p, size=size)


def skew_series(base: FiniteRingSpec, sigma: EndoTag, cap: int) -> CompleteRingSpec:
    if not isinstance(base, FiniteRingSpec):
        raise InvalidSpec("skew_series base must be a FiniteRingSpec")
    if not isinstance(cap, int) or cap < 1:
        raise InvalidSpec(f"precision cap must be an int >= 1, got {cap!r}")
    try:
        validate_endomorphism(sigma, base)
    except Exception as exc:
        raise InvalidSpec(f"sigma is not a unital endomorphism of the base: {exc}") from exc
    return CompleteRingSpec(kind="skew_series", cap=cap, base=base, sigma=sigma)


class AdicRing:
    """Validated handle around a CompleteRingSpec."""

    def __init__(self, spec: CompleteRingSpec):
        self.spec = spec

    def zero(self):
        return self.spec.zero()

    def one(self):
        return self.spec.one()

    def element(self, value):
        return self.spec.element(value)

    def random_element(self, rng):
        return self.spec.random_element(rng)

    @property
    def residue_spec(self):
        return self.spec.residue_spec

    def __repr__(self):
        return f"AdicRing({self.spec!r})"


def construct_ring(spec: CompleteRingSpec) -> AdicRing:
    """Validate a spec and return a ring handle; raises InvalidSpec."""
    if not isinstance(spec, CompleteRingSpec):
        raise InvalidSpec("expected a CompleteRingSpec")
    if spec.kind == "padic_matrix":
        spec = padic_matrix(spec.p, spec.size, spec.cap)
    elif spec.kind == "skew_series":
        spec = skew_series(spec.base, spec.sigma, spec.cap)
    else:
        raise InvalidSpec(f"unknown complete ring kind {spec.kind!r}")
    return AdicRing(spec)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


def _skew_mul(spec, x, y):
    base, sig, n = spec.base, spec.sigma, spec.cap
    # twisted rows: rows[i][j] = sigma^i(y[j])
    rows = [y]
    cur = y
    for _ in range(1, n):
        if sig.kind != "identity":
            cur = tuple(_p_sigma(base, sig, c) for c in cur)
        rows.append(cur)
    zero_p = _p_zero(base)
    out = [zero_p] * n
    for i in range(n):
        xi = x[i]
        if xi == zero_p:
            continue
        row = rows[i]
        for j in range(n - i):
            out[i + j] = _p_add(base, out[i + j], _p_mul(base, xi, row[j]))
    return tuple(out)


@dataclass(frozen=True)
class AdicElem:
    """Immutable element of a complete ring at its spec's precision cap."""

    spec: CompleteRingSpec
    payload: tuple

    def _check(self, other):
        if not isinstance(other, AdicElem):
            raise TypeError(f"expected AdicElem, got {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatch(f"operands in different rings: {self.spec!r} vs {other.spec!r}")

    def __add__(self, other):
        self._check(other)
        s = self.spec
        if s.kind == "padic_matrix":
            return AdicElem(s, _kernels.mat_add(self.payload, other.payload, s.modulus))
        return AdicElem(s, tuple(_p_add(s.base, a, b)
                                 for a, b in zip(self.payload, other.payload)))

    def __sub__(self, other):
        self._check(other)
        s = self.spec
        if s.kind == "padic_matrix":
            return AdicElem(s, _kernels.mat_sub(self.payload, other.payload, s.modulus))
        return AdicElem(s, tuple(_p_sub(s.base, a, b)
                                 for a, b in zip(self.payload, other.payload)))

    def __neg__(self):
        s = self.spec
        if s.kind == "padic_matrix":
            return AdicElem(s, _kernels.mat_neg(self.payload, s.modulus))
        return AdicElem(s, tuple(_p_neg(s.base, a) for a in self.payload))

    def __mul__(self, other):
        self._check(other)
        s = self.spec
        if s.kind == "padic_matrix":
            return AdicElem(s, _kernels.mat_mul(self.payload, other.payload, s.size, s.modulus))
        return AdicElem(s, _skew_mul(s, self.payload, other.payload))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a nonnegative int, got {k!r}")
        result = self.spec.one()
        sq = self
        while k:
            if k & 1:
                result = result * sq
            k >>= 1
            if k:
                sq = sq * sq
        return result

    def is_idempotent(self) -> bool:
        return (self * self).payload == self.payload

    def is_zero(self) -> bool:
        return self.payload == self.spec._zero_payload()

    def __repr__(self) -> str:
        return f"AdicElem({self.spec!r}, {self.payload!r})"


# ---------------------------------------------------------------------------
# structure maps
# ---------------------------------------------------------------------------


def truncate(x: AdicElem, m: int) -> AdicElem:
    """Image of x in R/I^m; a ring homomorphism for every m <= cap."""
    spec = x.spec
    if not isinstance(m, int) or not 1 <= m <= spec.cap:
        raise BadLevel(f"level {m!r} outside 1..{spec.cap}")
    if m == spec.cap:
        return x
    low = spec.at_cap(m)
    if spec.kind == "padic_matrix":
        mod = low.modulus
        return AdicElem(low, tuple(v % mod for v in x.payload))
    return AdicElem(low, x.payload[:m])


def ideal_valuation(x: AdicElem) -> int:
    """Largest v <= cap with x in I^v; the zero element has valuation cap."""
    spec = x.spec
    n = spec.cap
    if spec.kind == "padic_matrix":
        p = spec.p
        best = n
        for entry in x.payload:
            if entry == 0:
                continue
            v = 0
            while entry % p == 0:
                entry //= p
                v += 1
            if v < best:
                best = v
                if best == 0:
                    return 0
        return best
    zero_p = _p_zero(spec.base)
    for i, c in enumerate(x.payload):
        if c != zero_p:
            return i
    return n


def residue(x: AdicElem) -> FiniteElem:
    """Image of x in the residue ring R/I."""
    spec = x.spec
    if spec.kind == "padic_matrix":
        p = spec.p
        return FiniteElem(spec.residue_spec, tuple(v % p for v in x.payload))
    return FiniteElem(spec.base, x.payload[0])


def canonical_lift(zbar: FiniteElem, ring) -> AdicElem:
    """Set-theoretic lift of a residue element: entries reread at full cap
    (padic) or placed as the constant coefficient (series).  Deterministic;
    satisfies residue(canonical_lift(z)) == z."""
    spec = ring.spec if isinstance(ring, AdicRing) else ring
    if zbar.spec != spec.residue_spec:
        raise SpecMismatch(f"{zbar.spec!r} is not the residue ring of {spec!r}")
    if spec.kind == "padic_matrix":
        return AdicElem(spec, tuple(zbar.payload))
    return AdicElem(spec, (zbar.payload,) + (_p_zero(spec.base),) * (spec.cap - 1))


# ---------------------------------------------------------------------------
# Peirce decomposition and unit inversion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PeirceBlocks:
    """Corner components of x relative to an idempotent e, f = 1 - e:
    a = exe, b = exf, c = fxe, d = fxf; a + b + c + d = x exactly."""

    e: AdicElem
    f: AdicElem
    a: AdicElem
    b: AdicElem
    c: AdicElem
    d: AdicElem


def peirce_blocks(x: AdicElem, e: AdicElem) -> PeirceBlocks:
    x._check(e)
    if not e.is_idempotent():
        raise NotIdempotent("peirce_blocks requires an exact idempotent")
    one_ = x.spec.one()
    f = one_ - e
    ex = e * x
    xe = x * e
    a = ex * e
    b = ex - a
    c = xe - a
    d = x - a - b - c
    return PeirceBlocks(e=e, f=f, a=a, b=b, c=c, d=d)


def _residue_inverse(x: AdicElem) -> FiniteElem:
    """Inverse of x's residue, via elimination over F_p for flat prime
    matrix residues, otherwise via the finite-ring power orbit."""
    rbar = residue(x)
    rspec = rbar.spec
    if (rspec.kind == "matrix" and rspec.base.kind == "zmod"
            and is_prime(rspec.base.m)):
        inv = _linalg.inverse(rbar.payload, rspec.size, rspec.base.m)
        if inv is None:
            raise NotUnit(f"residue {rbar!r} is singular")
        return FiniteElem(rspec, inv)
    return invert_finite(rbar)


def invert_unit(x: AdicElem) -> AdicElem:
    """Two-sided inverse at cap by Newton iteration y <- y(2 - xy), seeded
    with the residue inverse; the defect 1 - xy squares each step, so its
    valuation at least doubles and at most ceil(log2 cap) + 1 steps run.
    Raises NotUnit when the residue is not invertible."""
    spec = x.spec
    n = spec.cap
    seed = _residue_inverse(x)  # NotUnit propagates
    y = canonical_lift(seed, spec)
    one_ = spec.one()
    defect = one_ - x * y
    v = ideal_valuation(defect)
    budget = n.bit_length() + 2
    while v < n:
        if budget == 0:
            raise NoConvergence("Newton inversion failed to converge; internal bug")
        budget -= 1
        y = y + y * defect
        defect = one_ - x * y
        new_v = ideal_valuation(defect)
        if new_v < min(2 * v, n):
            raise PostconditionViolated(
                f"Newton defect valuation did not double: {v} -> {new_v}")
        v = new_v
    if (x * y).payload != one_.payload or (y * x).payload != one_.payload:
        raise PostconditionViolated("inverse verification failed after Newton")
    return y


def invert_in_corner(d: AdicElem, f: AdicElem) -> AdicElem:
    """Inverse of d inside the corner ring fRf (unity f), computed through
    the ambient inversion of d + (1 - f); returns y with dy = yd = f."""
    d._check(f)
    if not f.is_idempotent():
        raise NotIdempotent("corner idempotent f must satisfy f*f == f")
    if (f * d * f).payload != d.payload:
        raise ValueError("element is not contained in the corner fRf")
    one_ = d.spec.one()
    try:
        w = invert_unit(d + (one_ - f))
    except NotUnit as exc:
        raise NotUnitInCorner(f"ambient inversion failed: {exc}") from exc
    y = f * w * f
    if (d * y).payload != f.payload or (y * d).payload != f.payload:
        raise PostconditionViolated("corner inverse failed d*y == y*d == f")
    return y
