"""Shared fixtures and deterministic sampling helpers."""

import random

import pytest

from adicclean import adic, finite
from adicclean.regularity import spectral_dispatch


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def small_rings():
    """Finite rings small enough for exhaustive triple checks."""
    return [
        finite.zmod(6),
        finite.zmod(12),
        finite.dual(2),
        finite.dual(3),
        finite.triangular2(finite.zmod(2)),
        finite.matrix(finite.zmod(2), 2),
    ]


def make_approx_idempotent(ring_spec, rng):
    """Random a with a*a - a in I: canonical lift of a residue idempotent
    plus ideal noise."""
    x = ring_spec.random_element(rng)
    zbar = spectral_dispatch(adic.residue(x)).z
    lifted = adic.canonical_lift(zbar, ring_spec)
    noise = ring_spec.random_element(rng)
    if ring_spec.kind == "padic_matrix":
        p_scalar = adic.AdicElem(
            ring_spec,
            tuple((ring_spec.p if i % (ring_spec.size + 1) == 0 else 0)
                  for i in range(ring_spec.size * ring_spec.size)))
        return lifted + p_scalar * noise
    shifted = adic.AdicElem(ring_spec, (finite._p_zero(ring_spec.base),) + noise.payload[:-1])
    return lifted + shifted


def random_unit(ring_spec, rng, tries=500):
    from adicclean.errors import NotUnit

    for _ in range(tries):
        x = ring_spec.random_element(rng)
        try:
            adic.invert_unit(x)
        except NotUnit:
            continue
        return x
    raise RuntimeError("could not sample a unit")
