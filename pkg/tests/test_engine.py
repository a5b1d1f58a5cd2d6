"""Clean engine: Sylvester solve, refinement, decompose, verification."""

import dataclasses
import random

import pytest

from adicclean import adic, engine, oracle
from adicclean.adic import (
    AdicElem,
    ideal_valuation,
    padic_matrix,
    peirce_blocks,
    residue,
    skew_series,
    truncate,
)
from adicclean.engine import (
    EngineStats,
    decompose,
    refine_idempotent,
    solve_sylvester,
    verify_certificate,
)
from adicclean.errors import CornerNotUnit, ResidualNonzero
from adicclean.finite import DUAL_PROJECTION, IDENTITY, dual, matrix, zmod
from adicclean.regularity import nilpotency_index, spectral_dispatch


# ---------------------------------------------------------------------------
# solve_sylvester
# ---------------------------------------------------------------------------


def test_sylvester_zero_offdiagonal():
    spec = padic_matrix(2, 2, 4)
    x = spec.element([[2, 0], [0, 1]])
    e = spec.element([[1, 0], [0, 0]])
    blocks = peirce_blocks(x, e)
    sol = solve_sylvester(blocks, 1, 1)
    assert sol.r.is_zero() and sol.s.is_zero()


def test_sylvester_worked_example():
    # M_2(Z/4), e = diag(1,0), x = [[2,2],[0,1]]: slots a=2, b=2, c=0, d=1
    spec = padic_matrix(2, 2, 2)
    x = spec.element([[2, 2], [0, 1]])
    e = spec.element([[1, 0], [0, 0]])
    blocks = peirce_blocks(x, e)
    k = nilpotency_index(blocks.a, 2, 4)
    assert k == 2
    sol = solve_sylvester(blocks, k, 1)
    assert sol.r.payload == (0, 2, 0, 0)
    assert sol.s.is_zero()
    # the defining identity holds exactly here
    assert blocks.a * sol.r - sol.r * blocks.d == blocks.b


def test_sylvester_single_term_closed_form():
    # a = 0, k = 1: r = -b dinv, s = -dinv c (the sign making ds - sa = -c)
    spec = padic_matrix(3, 2, 2)
    x = spec.element([[0, 3], [3, 1]])
    e = spec.element([[1, 0], [0, 0]])
    blocks = peirce_blocks(x, e)
    assert blocks.a.is_zero()
    dinv = adic.invert_in_corner(blocks.d, blocks.f)
    sol = solve_sylvester(blocks, 1, 1)
    assert sol.r == -(blocks.b * dinv)
    assert sol.s == -(dinv * blocks.c)
    assert sol.r.payload == (0, 6, 0, 0)
    assert sol.s.payload == (0, 0, 6, 0)
    assert blocks.d * sol.s - sol.s * blocks.a == -blocks.c


def test_sylvester_residual_checks_random(rng):
    spec = padic_matrix(2, 2, 6)
    stats = EngineStats()
    runs = 0
    while runs < 40:
        x = spec.random_element(rng)
        sd = spectral_dispatch(residue(x))
        from adicclean.lifting import hensel_lift_idempotent

        e = hensel_lift_idempotent(adic.canonical_lift(sd.z, spec))
        blocks = peirce_blocks(x, e)
        try:
            k = nilpotency_index(blocks.a, 2, sd.n * 2)
            sol = solve_sylvester(blocks, k, 1, stats)
        except CornerNotUnit:
            continue
        runs += 1
        assert ideal_valuation(sol.r) >= 1 and ideal_valuation(sol.s) >= 1
        assert ideal_valuation(blocks.a * sol.r - sol.r * blocks.d - blocks.b) >= 2
        assert ideal_valuation(blocks.d * sol.s - sol.s * blocks.a + blocks.c) >= 2
    assert stats.sylvester_checks == 80 and stats.sylvester_failures == 0


def test_sylvester_corner_not_unit():
    spec = padic_matrix(2, 2, 3)
    x = spec.element([[2, 2], [0, 2]])  # d = fxf = 2 not a unit in the corner
    e = spec.element([[1, 0], [0, 0]])
    blocks = peirce_blocks(x, e)
    with pytest.raises(CornerNotUnit):
        solve_sylvester(blocks, 1, 1)


def test_sylvester_residual_nonzero_detected():
    # lie about k: the nilpotent corner has residue index 2, so with k = 1
    # the surviving series term a*b*dinv has valuation 1 and the check fires
    spec = padic_matrix(2, 3, 2)
    x = spec.element([[0, 1, 0], [0, 0, 2], [0, 0, 1]])
    e = spec.element([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    blocks = peirce_blocks(x, e)
    assert nilpotency_index(blocks.a, 2, 8) == 2
    with pytest.raises(ResidualNonzero):
        solve_sylvester(blocks, 1, 1)
    sol = solve_sylvester(blocks, 2, 1)
    assert ideal_valuation(blocks.a * sol.r - sol.r * blocks.d - blocks.b) >= 2


# ---------------------------------------------------------------------------
# refine_idempotent
# ---------------------------------------------------------------------------


def test_refine_worked_example():
    spec = padic_matrix(2, 2, 2)
    x = spec.element([[2, 2], [0, 1]])
    e1 = spec.element([[1, 0], [0, 0]])
    e2 = refine_idempotent(x, e1, 1, 1)
    assert e2.payload == (1, 2, 0, 0)
    assert e2 * x == x * e2
    assert (e2 * x).payload == (2, 0, 0, 0)


def test_refine_fixed_points():
    spec = padic_matrix(2, 2, 4)
    x = spec.element([[2, 0], [0, 1]])
    e = spec.element([[1, 0], [0, 0]])
    for m in (1, 2, 3):
        assert refine_idempotent(x, e, m, 1) == e  # already commuting
    # e = 1: everything collapses to the ring itself
    y = spec.element([[2, 1], [2, 2]])  # nilpotent residue, e = 1 valid
    assert refine_idempotent(y, spec.one(), 1, 4) == spec.one()


def test_refine_congruence_chain(rng):
    spec = padic_matrix(2, 2, 6)
    for _ in range(20):
        x = spec.random_element(rng)
        sd = spectral_dispatch(residue(x))
        from adicclean.lifting import hensel_lift_idempotent

        e = hensel_lift_idempotent(adic.canonical_lift(sd.z, spec))
        for m in range(1, spec.cap):
            e_next = refine_idempotent(x, e, m, sd.n)
            assert e_next.is_idempotent()
            assert ideal_valuation(e_next - e) >= m
            assert ideal_valuation(e_next * x - x * e_next) >= m + 1
            e = e_next
        assert e * x == x * e


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------


def test_decompose_integer_projector_example():
    spec = padic_matrix(2, 2, 4)
    cert = decompose(spec.element([[2, 1], [0, 1]]))
    assert cert.e.payload == (1, 1, 0, 0)
    assert cert.u_inv == spec.one()
    assert cert.n == 1
    assert verify_certificate(cert).ok


def test_decompose_diagonal_example():
    spec = padic_matrix(2, 2, 3)
    cert = decompose(spec.element([[2, 0], [0, 1]]))
    assert cert.e.payload == (1, 0, 0, 0)
    assert cert.u_inv == spec.one()
    assert cert.n == 1


def test_decompose_skew_nilpotent_constant():
    base = matrix(zmod(2), 2)
    spec = skew_series(base, IDENTITY, 8)
    c = base.element([[0, 1], [0, 0]]).payload
    zero = base.zero().payload
    x = AdicElem(spec, (c, base.one().payload) + (zero,) * 6)  # c + t
    cert = decompose(x)
    assert cert.e == spec.one()
    assert cert.n == 2
    assert cert.u_inv == adic.invert_unit(x - spec.one())


def test_decompose_reduces_to_spectral_idempotent(rng):
    # e == e_1 == z modulo I
    for spec in (padic_matrix(2, 2, 5), skew_series(dual(2), DUAL_PROJECTION, 5)):
        for _ in range(20):
            x = spec.random_element(rng)
            cert = decompose(x)
            assert residue(cert.e) == spectral_dispatch(residue(x)).z


def test_decompose_stats_and_invariants(rng):
    spec = padic_matrix(3, 2, 4)
    stats = EngineStats()
    for _ in range(10):
        decompose(spec.random_element(rng), stats=stats)
    assert stats.sylvester_checks == 10 * (spec.cap - 1) * 2
    assert stats.invariant_checks == 10 * spec.cap * 4
    assert stats.sylvester_failures == 0 and stats.invariant_failures == 0


def test_decompose_matches_oracle_on_sample(rng):
    spec = padic_matrix(2, 2, 2)
    for _ in range(40):
        x = spec.random_element(rng)
        cert = decompose(x)
        assert (cert.e, cert.n) in oracle.brute_force_pi_clean(x)


def test_truncation_consistency_sample(rng):
    spec = padic_matrix(2, 2, 5)
    for _ in range(15):
        x = spec.random_element(rng)
        cert = decompose(x)
        for m in range(1, spec.cap + 1):
            low = decompose(truncate(x, m))
            assert truncate(cert.e, m) == low.e
            assert truncate(cert.u_inv, m) == low.u_inv
            assert cert.n == low.n


# ---------------------------------------------------------------------------
# verify_certificate
# ---------------------------------------------------------------------------


def _tamper(cert, **changes):
    return dataclasses.replace(cert, **changes)


def test_verify_tampered_idempotent():
    spec = padic_matrix(2, 2, 4)
    cert = decompose(spec.element([[2, 1], [0, 1]]))
    p_one = spec.element([[2, 0], [0, 2]])  # p * identity, central
    bad = _tamper(cert, e=cert.e + p_one)
    verdict = verify_certificate(bad)
    assert not verdict.ok
    assert "NotIdempotent" in verdict.failures
    # central tampering keeps commutation but breaks the unit identity too
    assert "NotUnit" in verdict.failures


def test_verify_degree_too_small():
    base = matrix(zmod(2), 2)
    spec = skew_series(base, IDENTITY, 6)
    c = base.element([[0, 1], [0, 0]]).payload
    zero = base.zero().payload
    x = AdicElem(spec, (c, base.one().payload) + (zero,) * 4)
    cert = decompose(x)
    assert cert.n == 2
    verdict = verify_certificate(_tamper(cert, n=cert.n - 1))
    assert verdict.failures == ("DegreeWrong",)
    # a larger degree is valid for a foreign certificate
    assert verify_certificate(_tamper(cert, n=cert.n + 1)).ok


def test_verify_tampered_inverse_and_spec():
    spec = padic_matrix(2, 2, 4)
    cert = decompose(spec.element([[2, 1], [0, 1]]))
    bad = _tamper(cert, u_inv=cert.u_inv + spec.one())
    assert "NotUnit" in verify_certificate(bad).failures
    assert verify_certificate(_tamper(cert, n=0)).failures == ("SpecMismatch",)
    assert verify_certificate(_tamper(cert, cap=cert.cap + 1)).failures == ("SpecMismatch",)
    other = padic_matrix(2, 2, 5)
    assert verify_certificate(_tamper(cert, ring=other)).failures == ("SpecMismatch",)


def test_verify_noncommuting_tamper():
    spec = padic_matrix(2, 2, 4)
    cert = decompose(spec.element([[2, 1], [0, 1]]))
    # [[1,3],[0,0]] is still idempotent but no longer commutes with x
    bad = _tamper(cert, e=cert.e + spec.element([[0, 2], [0, 0]]))
    verdict = verify_certificate(bad)
    assert "NotCommuting" in verdict.failures
    assert "NotIdempotent" not in verdict.failures
