"""Exact arithmetic in composable finite rings.

These rings play two roles: residue rings R/I of the complete rings in
adicclean.adic, and base rings for skew power series.  Four constructors
compose:

    zmod(m)              integers mod m, m >= 2
    matrix(base, k)      k x k matrices over any finite ring here
    triangular2(base)    upper triangular 2 x 2 matrices over base
    dual(p)              dual numbers a + b*u over Z/p, u*u = 0, p prime

Elements are immutable (spec, payload) pairs in canonical normal form:

    zmod         int in [0, m)
    matrix       row-major tuple of k*k base payloads
    triangular2  the matrix payload with the lower-left entry zero
    dual         pair (a, b) of ints in [0, p)

Equality is structural, all values are hashable, and every operation
returns a canonical payload, so enumeration and dict-keyed caching are
safe.  Matrix rings over zmod run on the flat kernels in _kernels (the
compiled core when built).

Dual numbers exist to provide dual_projection, a non-injective unital ring
endomorphism (a + b*u -> a) used to twist skew series; identity applies to
every ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

from adicclean import _kernels
from adicclean.errors import (
    EndoSpecMismatch,
    InvalidSpec,
    NotUnit,
    PostconditionViolated,
    SpecMismatch,
)

__all__ = [
    "FiniteRingSpec",
    "FiniteElem",
    "EndoTag",
    "IDENTITY",
    "DUAL_PROJECTION",
    "zmod",
    "matrix",
    "triangular2",
    "dual",
    "arith",
    "power",
    "invert_finite",
    "sigma_apply",
    "validate_endomorphism",
    "is_prime",
]


def is_prime(n: int) -> bool:
    """Deterministic trial division; moduli in this package are small."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# ring specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteRingSpec:
    """Specification of one of the composable finite rings.

    Use the factory functions zmod / matrix / triangular2 / dual; the raw
    constructor performs no validation.
    """

    kind: str
    m: int = 0                                  # zmod modulus
    base: Optional["FiniteRingSpec"] = None     # matrix / triangular2 base
    size: int = 0                               # matrix dimension
    p: int = 0                                  # dual prime

    @cached_property
    def cardinality(self) -> int:
        if self.kind == "zmod":
            return self.m
        if self.kind == "matrix":
            return self.base.cardinality ** (self.size * self.size)
        if self.kind == "triangular2":
            return self.base.cardinality ** 3
        if self.kind == "dual":
            return self.p * self.p
        raise InvalidSpec(f"unknown ring kind {self.kind!r}")

    @cached_property
    def _matrix_size(self) -> int:
        # matrix-shaped payload dimension (triangular2 stores a full 2x2)
        return self.size if self.kind == "matrix" else 2

    @cached_property
    def _flat_modulus(self) -> int:
        # nonzero iff payload is a flat int tuple eligible for the kernels
        if self.kind in ("matrix", "triangular2") and self.base.kind == "zmod":
            return self.base.m
        return 0

    def zero(self) -> "FiniteElem":
        return FiniteElem(self, _p_zero(self))

    def one(self) -> "FiniteElem":
        return FiniteElem(self, _p_one(self))

    def element(self, value) -> "FiniteElem":
        """Build an element from ints / nested lists, reducing into canonical form."""
        return FiniteElem(self, _p_from_value(self, value))

    def element_at(self, index: int) -> "FiniteElem":
        """The index-th element in canonical enumeration order."""
        if not 0 <= index < self.cardinality:
            raise ValueError(f"index {index} out of range for ring of size {self.cardinality}")
        return FiniteElem(self, _p_from_index(self, index))

    def index_of(self, elem: "FiniteElem") -> int:
        if elem.spec != self:
            raise SpecMismatch("element belongs to a different ring")
        return _p_to_index(self, elem.payload)

    def elements(self) -> Iterator["FiniteElem"]:
        """All elements in canonical enumeration order."""
        for i in range(self.cardinality):
            yield self.element_at(i)

    def random_element(self, rng) -> "FiniteElem":
        return self.element_at(rng.randrange(self.cardinality))

    def __repr__(self) -> str:
        if self.kind == "zmod":
            return f"zmod({self.m})"
        if self.kind == "matrix":
            return f"matrix({self.base!r}, {self.size})"
        if self.kind == "triangular2":
            return f"triangular2({self.base!r})"
        return f"dual({self.p})"


def zmod(m: int) -> FiniteRingSpec:
    if not isinstance(m, int) or m < 2:
        raise InvalidSpec(f"zmod modulus must be an int >= 2, got {m!r}")
    return FiniteRingSpec(kind="zmod", m=m)


def matrix(base: FiniteRingSpec, size: int) -> FiniteRingSpec:
    if not isinstance(base, FiniteRingSpec):
        raise InvalidSpec("matrix base must be a FiniteRingSpec")
    if not isinstance(size, int) or size < 1:
        raise InvalidSpec(f"matrix size must be an int >= 1, got {size!r}")
    return FiniteRingSpec(kind="matrix", base=base, size=size)


def triangular2(base: FiniteRingSpec) -> FiniteRingSpec:
    if not isinstance(base, FiniteRingSpec):
        raise InvalidSpec("triangular2 base must be a FiniteRingSpec")
    return FiniteRingSpec(kind="triangular2", base=base)


def dual(p: int) -> FiniteRingSpec:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidSpec(f"dual numbers require a prime p, got {p!r}")
    return FiniteRingSpec(kind="dual", p=p)


# ---------------------------------------------------------------------------
# payload arithmetic (canonical forms in, canonical forms out)
# ---------------------------------------------------------------------------


def _p_zero(spec):
    if spec.kind == "zmod":
        return 0
    if spec.kind in ("matrix", "triangular2"):
        k = spec._matrix_size
        return (_p_zero(spec.base),) * (k * k)
    return (0, 0)


def _p_one(spec):
    if spec.kind == "zmod":
        return 1 % spec.m
    if spec.kind in ("matrix", "triangular2"):
        k = spec._matrix_size
        z, o = _p_zero(spec.base), _p_one(spec.base)
        return tuple(o if i == j else z for i in range(k) for j in range(k))
    return (1 % spec.p, 0)


def _p_add(spec, x, y):
    if spec.kind == "zmod":
        return (x + y) % spec.m
    fm = spec._flat_modulus
    if fm:
        return _kernels.mat_add(x, y, fm)
    if spec.kind == "dual":
        return ((x[0] + y[0]) % spec.p, (x[1] + y[1]) % spec.p)
    return tuple(_p_add(spec.base, a, b) for a, b in zip(x, y))


def _p_sub(spec, x, y):
    if spec.kind == "zmod":
        return (x - y) % spec.m
    fm = spec._flat_modulus
    if fm:
        return _kernels.mat_sub(x, y, fm)
    if spec.kind == "dual":
        return ((x[0] - y[0]) % spec.p, (x[1] - y[1]) % spec.p)
    return tuple(_p_sub(spec.base, a, b) for a, b in zip(x, y))


def _p_neg(spec, x):
    if spec.kind == "zmod":
        return -x % spec.m
    fm = spec._flat_modulus
    if fm:
        return _kernels.mat_neg(x, fm)
    if spec.kind == "dual":
        return (-x[0] % spec.p, -x[1] % spec.p)
    return tuple(_p_neg(spec.base, a) for a in x)


def _p_mul(spec, x, y):
    if spec.kind == "zmod":
        return (x * y) % spec.m
    fm = spec._flat_modulus
    if fm:
        return _kernels.mat_mul(x, y, spec._matrix_size, fm)
    if spec.kind == "dual":
        p = spec.p
        return ((x[0] * y[0]) % p, (x[0] * y[1] + x[1] * y[0]) % p)
    # matrix over a structured base: schoolbook with base recursion
    base, k = spec.base, spec._matrix_size
    out = []
    for i in range(k):
        for j in range(k):
            acc = _p_mul(base, x[i * k], y[j])
            for t in range(1, k):
                acc = _p_add(base, acc, _p_mul(base, x[i * k + t], y[t * k + j]))
            out.append(acc)
    return tuple(out)


def _p_sigma(spec, tag, x):
    if tag.kind == "identity":
        return x
    # dual_projection, applicability checked by the caller
    return (x[0], 0)


def _p_from_value(spec, value):
    if spec.kind == "zmod":
        if not isinstance(value, int):
            raise ValueError(f"zmod element must be an int, got {type(value).__name__}")
        return value % spec.m
    if spec.kind == "dual":
        a, b = value
        if not (isinstance(a, int) and isinstance(b, int)):
            raise ValueError("dual element must be a pair of ints")
        return (a % spec.p, b % spec.p)
    k = spec._matrix_size
    rows = list(value)
    if len(rows) != k or any(len(list(r)) != k for r in rows):
        raise ValueError(f"expected a {k}x{k} nested array")
    flat = tuple(_p_from_value(spec.base, entry) for row in rows for entry in row)
    if spec.kind == "triangular2" and flat[2] != _p_zero(spec.base):
        raise ValueError("triangular2 element must have zero lower-left entry")
    return flat


def _p_from_index(spec, index):
    if spec.kind == "zmod":
        return index
    if spec.kind == "dual":
        a, b = divmod(index, spec.p)
        return (a, b)
    base = spec.base
    card = base.cardinality
    if spec.kind == "matrix":
        k2 = spec.size * spec.size
        digits = []
        for _ in range(k2):
            index, d = divmod(index, card)
            digits.append(_p_from_index(base, d))
        digits.reverse()
        return tuple(digits)
    # triangular2: free slots 0, 1, 3 in lexicographic significance order
    index, d3 = divmod(index, card)
    index, d1 = divmod(index, card)
    d0 = index
    z = _p_zero(base)
    return (_p_from_index(base, d0), _p_from_index(base, d1), z, _p_from_index(base, d3))


def _p_to_index(spec, payload):
    if spec.kind == "zmod":
        return payload
    if spec.kind == "dual":
        return payload[0] * spec.p + payload[1]
    base = spec.base
    card = base.cardinality
    if spec.kind == "matrix":
        acc = 0
        for entry in payload:
            acc = acc * card + _p_to_index(base, entry)
        return acc
    acc = 0
    for slot in (0, 1, 3):
        acc = acc * card + _p_to_index(base, payload[slot])
    return acc


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteElem:
    """Immutable finite-ring element; arithmetic via +, -, *, ** operators."""

    spec: FiniteRingSpec
    payload: object

    def _check(self, other):
        if not isinstance(other, FiniteElem):
            raise TypeError(f"expected FiniteElem, got {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatch(f"operands in different rings: {self.spec!r} vs {other.spec!r}")

    def __add__(self, other):
        self._check(other)
        return FiniteElem(self.spec, _p_add(self.spec, self.payload, other.payload))

    def __sub__(self, other):
        self._check(other)
        return FiniteElem(self.spec, _p_sub(self.spec, self.payload, other.payload))

    def __neg__(self):
        return FiniteElem(self.spec, _p_neg(self.spec, self.payload))

    def __mul__(self, other):
        self._check(other)
        return FiniteElem(self.spec, _p_mul(self.spec, self.payload, other.payload))

    def __pow__(self, k):
        return power(self, k)

    def is_idempotent(self) -> bool:
        return _p_mul(self.spec, self.payload, self.payload) == self.payload

    def __repr__(self) -> str:
        return f"FiniteElem({self.spec!r}, {self.payload!r})"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

_ARITH_TAGS = ("add", "sub", "mul", "neg")


def arith(tag: str, a: FiniteElem, b: Optional[FiniteElem] = None) -> FiniteElem:
    """Tagged ring operation; neg is unary, the rest binary."""
    if tag not in _ARITH_TAGS:
        raise ValueError(f"unknown arith tag {tag!r}")
    if tag == "neg":
        return -a
    if b is None:
        raise ValueError(f"arith tag {tag!r} needs two operands")
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    return a * b


def power(a: FiniteElem, k: int) -> FiniteElem:
    """a**k by square and multiply; a**0 is 1."""
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"exponent must be a nonnegative int, got {k!r}")
    spec = a.spec
    result = _p_one(spec)
    sq = a.payload
    while k:
        if k & 1:
            result = _p_mul(spec, result, sq)
        k >>= 1
        if k:
            sq = _p_mul(spec, sq, sq)
    return FiniteElem(spec, result)


def invert_finite(a: FiniteElem) -> FiniteElem:
    """Two-sided inverse via the power orbit.

    In a finite ring a unit satisfies a**m == 1 for some m <= |R|, so the
    inverse is a**(m-1) for the minimal such m.  A repeat in the orbit
    before reaching 1 proves a is not a unit.
    """
    spec = a.spec
    one_p = _p_one(spec)
    seen = set()
    prev = one_p
    cur = a.payload
    for _ in range(spec.cardinality + 1):
        if cur == one_p:
            return FiniteElem(spec, prev)
        if cur in seen:
            raise NotUnit(f"{a!r} is not a unit (orbit cycled without reaching 1)")
        seen.add(cur)
        prev, cur = cur, _p_mul(spec, cur, a.payload)
    raise NotUnit(f"{a!r} is not a unit (orbit exhausted the cardinality bound)")


# ---------------------------------------------------------------------------
# endomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EndoTag:
    """Named unital ring endomorphism: identity or dual_projection."""

    kind: str

    def applies_to(self, spec: FiniteRingSpec) -> bool:
        return self.kind == "identity" or spec.kind == "dual"

    def __repr__(self) -> str:
        return self.kind


IDENTITY = EndoTag("identity")
DUAL_PROJECTION = EndoTag("dual_projection")


def sigma_apply(sigma: EndoTag, a: FiniteElem) -> FiniteElem:
    if not sigma.applies_to(a.spec):
        raise EndoSpecMismatch(f"{sigma!r} does not apply to {a.spec!r}")
    return FiniteElem(a.spec, _p_sigma(a.spec, sigma, a.payload))


def validate_endomorphism(sigma: EndoTag, spec: FiniteRingSpec, pair_budget: int = 4096) -> None:
    """Check sigma is a unital ring endomorphism of spec.

    Exhaustive over all element pairs when the ring is small enough,
    otherwise over a deterministic sample.  Raises EndoSpecMismatch if the
    tag does not apply, PostconditionViolated if a homomorphism law fails
    (impossible for the built-in tags; guards future ones).
    """
    if not sigma.applies_to(spec):
        raise EndoSpecMismatch(f"{sigma!r} does not apply to {spec!r}")
    if sigma_apply(sigma, spec.one()) != spec.one():
        raise PostconditionViolated(f"{sigma!r} does not preserve 1 on {spec!r}")
    card = spec.cardinality
    if card * card <= pair_budget:
        pairs = itertools.product(spec.elements(), repeat=2)
    else:
        import random

        rng = random.Random(0xA11CE)
        pairs = ((spec.random_element(rng), spec.random_element(rng)) for _ in range(pair_budget))
    for x, y in pairs:
        if sigma_apply(sigma, x + y) != sigma_apply(sigma, x) + sigma_apply(sigma, y):
            raise PostconditionViolated(f"{sigma!r} is not additive on {spec!r}")
        if sigma_apply(sigma, x * y) != sigma_apply(sigma, x) * sigma_apply(sigma, y):
            raise PostconditionViolated(f"{sigma!r} is not multiplicative on {spec!r}")
