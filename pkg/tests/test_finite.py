"""Finite-ring core: canonical forms, ring axioms, units, endomorphisms."""

import itertools

import pytest

from adicclean import finite
from adicclean.errors import (
    EndoSpecMismatch,
    InvalidSpec,
    NotUnit,
    SpecMismatch,
)
from adicclean.finite import (
    DUAL_PROJECTION,
    IDENTITY,
    arith,
    dual,
    invert_finite,
    matrix,
    power,
    sigma_apply,
    triangular2,
    validate_endomorphism,
    zmod,
)

from conftest import small_rings


# ---------------------------------------------------------------------------
# specs and canonical forms
# ---------------------------------------------------------------------------


def test_spec_validation():
    with pytest.raises(InvalidSpec):
        zmod(1)
    with pytest.raises(InvalidSpec):
        matrix(zmod(2), 0)
    with pytest.raises(InvalidSpec):
        dual(4)
    with pytest.raises(InvalidSpec):
        dual(1)


def test_cardinalities():
    assert zmod(12).cardinality == 12
    assert matrix(zmod(3), 2).cardinality == 81
    assert triangular2(zmod(4)).cardinality == 64
    assert dual(5).cardinality == 25
    assert matrix(matrix(zmod(2), 2), 1).cardinality == 16


def test_canonical_normalization():
    spec = zmod(12)
    assert spec.element(-1).payload == 11
    assert spec.element(25).payload == 1
    m = matrix(zmod(4), 2)
    assert m.element([[5, -1], [4, 0]]).payload == (1, 3, 0, 0)
    t = triangular2(zmod(4))
    assert t.element([[1, 2], [0, 3]]).payload == (1, 2, 0, 3)
    with pytest.raises(ValueError):
        t.element([[1, 2], [1, 3]])
    d = dual(5)
    assert d.element((7, -1)).payload == (2, 4)


def test_enumeration_bijection():
    for spec in small_rings():
        seen = set()
        for i in range(spec.cardinality):
            e = spec.element_at(i)
            assert spec.index_of(e) == i
            seen.add(e.payload)
        assert len(seen) == spec.cardinality


def test_equality_is_structural_and_hashable():
    spec = matrix(zmod(4), 2)
    a = spec.element([[1, 2], [3, 0]])
    b = spec.element([[5, 2], [3, 4]])
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------


def test_arith_examples():
    z12 = zmod(12)
    assert arith("mul", z12.element(4), z12.element(9)) == z12.zero()
    m = matrix(zmod(5), 2)
    x = m.element([[1, 2], [3, 4]])
    assert arith("mul", x, m.one()) == x
    d2 = dual(2)
    u = d2.element((0, 1))
    assert arith("mul", u, u) == d2.zero()
    assert arith("neg", z12.element(5)) == z12.element(7)
    assert arith("add", z12.element(7), z12.element(8)) == z12.element(3)
    assert arith("sub", z12.element(3), z12.element(7)) == z12.element(8)
    with pytest.raises(ValueError):
        arith("div", x, x)
    with pytest.raises(ValueError):
        arith("add", x)


def test_spec_mismatch():
    with pytest.raises(SpecMismatch):
        zmod(6).element(1) + zmod(12).element(1)


def test_power_examples():
    z8 = zmod(8)
    assert power(z8.element(2), 3) == z8.zero()
    assert power(z8.element(5), 0) == z8.one()
    m = matrix(zmod(2), 2)
    nil = m.element([[0, 1], [0, 0]])
    assert power(nil, 2) == m.zero()
    assert power(nil, 1) == nil
    # against repeated multiplication
    x = matrix(zmod(7), 2).element([[1, 2], [3, 4]])
    acc = x.spec.one()
    for k in range(8):
        assert power(x, k) == acc
        acc = acc * x


def test_ring_axioms_exhaustive_small_rings():
    # exhaustive triples on each ring in the test set (cardinality <= 256)
    for spec in small_rings() + [triangular2(zmod(4))]:
        elems = list(spec.elements())
        one_, zero = spec.one(), spec.zero()
        for a in elems:
            assert a * one_ == a == one_ * a
            assert a + zero == a == zero + a
            assert a + (-a) == zero
            assert a * zero == zero == zero * a
        for a, b, c in itertools.product(elems, repeat=3):
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c


def test_triangular2_closure():
    spec = triangular2(zmod(4))
    zero_base = 0
    for a, b in itertools.product(spec.elements(), repeat=2):
        assert (a * b).payload[2] == zero_base
        assert (a + b).payload[2] == zero_base
    # multiplication agrees with full matrix multiplication
    full = matrix(zmod(4), 2)
    for a, b in itertools.product(spec.elements(), repeat=2):
        fa = finite.FiniteElem(full, a.payload)
        fb = finite.FiniteElem(full, b.payload)
        assert (a * b).payload == (fa * fb).payload


# ---------------------------------------------------------------------------
# units
# ---------------------------------------------------------------------------


def test_invert_finite_examples():
    z8 = zmod(8)
    assert invert_finite(z8.element(3)) == z8.element(3)
    assert invert_finite(z8.one()) == z8.one()
    with pytest.raises(NotUnit):
        invert_finite(z8.element(2))
    with pytest.raises(NotUnit):
        invert_finite(z8.zero())


def test_invert_finite_involution():
    for spec in small_rings():
        one_ = spec.one()
        for a in spec.elements():
            try:
                b = invert_finite(a)
            except NotUnit:
                continue
            assert a * b == one_ and b * a == one_
            assert invert_finite(b) == a


def test_every_element_eventually_idempotent_power():
    # strong pi-regularity of finite rings: some m has a**m == a**(2m)
    for spec in small_rings() + [matrix(zmod(4), 2)]:
        for a in spec.elements():
            found = False
            xm = a
            for _ in range(spec.cardinality + 1):
                if xm * xm == xm:
                    found = True
                    break
                xm = xm * a
            assert found, (spec, a)


# ---------------------------------------------------------------------------
# endomorphisms
# ---------------------------------------------------------------------------


def test_sigma_examples():
    d5 = dual(5)
    x = d5.element((3, 1))
    assert sigma_apply(DUAL_PROJECTION, x) == d5.element((3, 0))
    z = zmod(9).element(5)
    assert sigma_apply(IDENTITY, z) == z
    with pytest.raises(EndoSpecMismatch):
        sigma_apply(DUAL_PROJECTION, z)


def test_sigma_is_homomorphism_exhaustive():
    d2 = dual(2)
    for x, y in itertools.product(d2.elements(), repeat=2):
        assert sigma_apply(DUAL_PROJECTION, x * y) == \
            sigma_apply(DUAL_PROJECTION, x) * sigma_apply(DUAL_PROJECTION, y)
        assert sigma_apply(DUAL_PROJECTION, x + y) == \
            sigma_apply(DUAL_PROJECTION, x) + sigma_apply(DUAL_PROJECTION, y)
    validate_endomorphism(DUAL_PROJECTION, d2)
    validate_endomorphism(DUAL_PROJECTION, dual(5))
    validate_endomorphism(IDENTITY, matrix(zmod(3), 2))
    with pytest.raises(EndoSpecMismatch):
        validate_endomorphism(DUAL_PROJECTION, zmod(4))
