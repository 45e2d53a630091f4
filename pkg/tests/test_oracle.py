"""The primal search and dual LP bracket the closed form independently."""
import math

import numpy as np
import pytest

from intervalbound import (
    DomainError,
    GridSpec,
    OracleError,
    QuadraticCertificate,
    bound,
    canonicalize,
    certificate,
    default_grid,
    dual_lp_bound,
    extremal_distribution,
    full_verification,
    monte_carlo_attainment,
    primal_three_atom_bound,
    verify_certificate,
)
from intervalbound.oracle import _candidate_points


# --- grids -------------------------------------------------------------------

def test_grid_spec_points():
    grid = GridSpec(-2.0, 2.0, 5)
    assert grid.points().tolist() == [-2.0, -1.0, 0.0, 1.0, 2.0]
    assert grid.step == 1.0


@pytest.mark.parametrize("lo,hi,steps", [(1.0, 0.0, 10), (0.0, 1.0, 1), (0.0, math.inf, 10)])
def test_grid_spec_rejects(lo, hi, steps):
    with pytest.raises(DomainError):
        GridSpec(lo, hi, steps)


def test_candidates_force_endpoints_and_origin():
    spec = canonicalize(1.7, 0.9)
    pts = _candidate_points(GridSpec(-5.3, 3.7, 173), spec)
    for forced in (-1.7, 0.9, 0.0):
        assert forced in pts
    assert np.all(np.diff(pts) > 0)


def test_default_grid_covers_extremal_atoms():
    for a, b in [(0.2, 0.2), (8.0, 0.2), (2.0, 1.0), (8.0, 8.0)]:
        spec = canonicalize(a, b)
        grid = default_grid(spec)
        for loc, _ in extremal_distribution(spec).atoms:
            assert grid.lo <= loc <= grid.hi


# --- primal search -----------------------------------------------------------

def test_primal_examples():
    spec = canonicalize(2, 1)
    res = primal_three_atom_bound(spec, GridSpec(-4, 3, 701))
    assert 5 / 9 - 5e-3 <= res.value <= 5 / 9 + 1e-9

    spec = canonicalize(1, 1)
    res = primal_three_atom_bound(spec, GridSpec(-3, 3, 601))
    assert 1 - 1e-9 <= res.value <= 1 + 1e-9

    spec = canonicalize(4, 1)
    res = primal_three_atom_bound(spec, GridSpec(-5, 3, 801))
    assert 0.5 - 1e-9 <= res.value <= 0.5 + 1e-9


def test_primal_pure_grid_undershoots_only_slightly():
    spec = canonicalize(2, 1)
    res = primal_three_atom_bound(spec, GridSpec(-4, 3, 701), include_extremal_atoms=False)
    closed = bound(spec).value
    assert res.value <= closed + 1e-9
    assert closed - res.value <= 5e-3


def test_primal_support_is_sound():
    spec = canonicalize(1.7, 0.9)
    res = primal_three_atom_bound(spec, GridSpec(-5.3, 3.7, 173), include_extremal_atoms=False)
    dist = res.support
    assert math.fsum(dist.masses) == pytest.approx(1.0, abs=1e-9)
    assert abs(dist.mean()) <= 1e-9
    assert abs(dist.second_moment() - 1.0) <= 1e-9
    assert all(p >= 0 for p in dist.masses)
    assert res.value == pytest.approx(dist.exclusion_mass(spec), abs=1e-12)


def test_primal_narrow_grid_is_infeasible():
    with pytest.raises(OracleError, match="no feasible atomic distribution"):
        primal_three_atom_bound(
            canonicalize(0.5, 0.5),
            GridSpec(-0.9, 0.9, 31),
            include_extremal_atoms=False,
        )


def test_primal_rejects_infinite_a():
    with pytest.raises(DomainError):
        primal_three_atom_bound(canonicalize(math.inf, 1), GridSpec(-3, 3, 11))


# --- dual LP -----------------------------------------------------------------

def test_dual_examples():
    res = dual_lp_bound(canonicalize(2, 1), GridSpec(-6, 5, 1101))
    assert 5 / 9 - 5e-3 <= res.value <= 5 / 9 + 1e-9

    res = dual_lp_bound(canonicalize(0.5, 0.5), GridSpec(-4, 4, 801))
    assert 1 - 5e-3 <= res.value <= 1 + 1e-9

    res = dual_lp_bound(canonicalize(4, 1), GridSpec(-12, 5, 1701))
    assert 0.5 - 5e-3 <= res.value <= 0.5 + 1e-9


def test_dual_multipliers_form_grid_majorant():
    spec = canonicalize(2, 1)
    grid = GridSpec(-6, 5, 501)
    res = dual_lp_bound(spec, grid)
    c0, c1, c2 = res.quadratic
    assert c2 >= -1e-12
    assert c0 + c2 == pytest.approx(res.value, abs=1e-9)
    pts = _candidate_points(grid, spec)
    fx = c0 + c1 * pts + c2 * pts * pts
    gx = ((pts <= -spec.a) | (pts >= spec.b)).astype(float)
    assert np.all(fx >= gx - 1e-8)


def test_weak_duality_on_shared_grid():
    spec = canonicalize(1.7, 0.9)
    grid = GridSpec(-5.3, 3.7, 401)
    primal = primal_three_atom_bound(spec, grid)
    dual = dual_lp_bound(spec, grid, extra_points=primal.support.locations)
    assert primal.value <= dual.value + 1e-9


def test_monotone_refinement_with_forced_atoms():
    spec = canonicalize(2.3, 0.7)
    atoms = extremal_distribution(spec).locations
    coarse = GridSpec(-7.5, 3.5, 401)
    fine = GridSpec(-7.5, 3.5, 801)
    p_coarse = primal_three_atom_bound(spec, coarse).value
    p_fine = primal_three_atom_bound(spec, fine).value
    assert p_fine >= p_coarse - 1e-12
    d_coarse = dual_lp_bound(spec, coarse, extra_points=atoms).value
    d_fine = dual_lp_bound(spec, fine, extra_points=atoms).value
    assert d_fine <= d_coarse + 1e-12


def test_oracle_theorem_agreement_grid():
    # Both oracles track the closed form across all three cases; the primal
    # error is bounded by the grid resolution and the dual by its square.
    vals = np.geomspace(0.2, 8.0, 20)
    seen = set()
    for x in vals:
        for y in vals:
            spec = canonicalize(float(max(x, y)), float(min(x, y)))
            if (spec.a, spec.b) in seen:
                continue
            seen.add((spec.a, spec.b))
            closed = bound(spec).value
            grid = default_grid(spec, steps=121)
            primal = primal_three_atom_bound(spec, grid, include_extremal_atoms=False)
            dual = dual_lp_bound(spec, grid)
            assert abs(primal.value - closed) <= 10.0 * grid.step
            assert abs(dual.value - closed) <= 10.0 * grid.step**2


# --- certificate verification --------------------------------------------------

def test_verify_certificate_accepts_true_majorant():
    spec = canonicalize(2, 1)
    report = verify_certificate(certificate(spec), spec, default_grid(spec))
    assert report.majorizes
    assert report.worst_violation <= 1e-10
    assert report.objective == pytest.approx(5 / 9, abs=1e-15)


def test_verify_certificate_flags_low_constant():
    report = verify_certificate(QuadraticCertificate(0.4, 0.0, 0.0), canonicalize(1, 1))
    assert not report.majorizes
    assert report.worst_violation == pytest.approx(0.6, abs=1e-12)


def test_verify_certificate_flags_case_mismatch():
    # The Cantelli-case majorant for b=1 fails once (a-b)*b < 2: at a=2.5 it
    # evaluates to ((-2.5+1)/2)^2 = 0.5625 < 1 at the left endpoint.
    spec = canonicalize(2.5, 1)
    report = verify_certificate(certificate(canonicalize(4, 1)), spec)
    assert not report.majorizes
    assert report.worst_violation == pytest.approx(0.4375, abs=1e-12)
    assert report.worst_point == pytest.approx(-2.5, abs=1e-12)


# --- Monte Carlo ---------------------------------------------------------------

def test_monte_carlo_examples():
    res = monte_carlo_attainment(canonicalize(2, 1), 10**6, seed=42)
    assert abs(res.z_score) <= 4.0
    assert res.closed_form == pytest.approx(5 / 9, abs=1e-15)

    res = monte_carlo_attainment(canonicalize(0.5, 0.5), 10**4, seed=123)
    assert res.empirical == 1.0 and res.z_score == 0.0

    res = monte_carlo_attainment(canonicalize(math.inf, 1), 10**6, seed=7)
    assert abs(res.z_score) <= 4.0


def test_monte_carlo_deterministic():
    a = monte_carlo_attainment(canonicalize(2, 1), 10**5, seed=9)
    b = monte_carlo_attainment(canonicalize(2, 1), 10**5, seed=9)
    assert a == b


def test_monte_carlo_rejects_small_sample():
    with pytest.raises(DomainError):
        monte_carlo_attainment(canonicalize(2, 1), 100, seed=0)


# --- composed verification ------------------------------------------------------

def test_full_verification_middle_case():
    report = full_verification(canonicalize(2, 1))
    assert report.passed
    assert report.closed_form == pytest.approx(5 / 9, abs=1e-15)
    assert -1e-9 <= report.primal_gap <= 5e-3
    assert abs(report.dual_gap) <= 5e-3
    assert report.certificate_check.majorizes


def test_full_verification_chebyshev_corner():
    report = full_verification(canonicalize(1, 1))
    assert report.passed and report.closed_form == 1.0
    assert report.primal_value == pytest.approx(1.0, abs=1e-9)


def test_full_verification_far_cantelli():
    report = full_verification(canonicalize(6, 1))
    assert report.passed and report.closed_form == 0.5


def test_full_verification_deterministic():
    r1 = full_verification(canonicalize(1.3, 0.8))
    r2 = full_verification(canonicalize(1.3, 0.8))
    assert (r1.primal_value, r1.dual_value, r1.primal_gap, r1.dual_gap) == (
        r2.primal_value,
        r2.dual_value,
        r2.primal_gap,
        r2.dual_gap,
    )
    assert r1.primal_support.atoms == r2.primal_support.atoms


def test_full_verification_rejects_infinite_a():
    with pytest.raises(DomainError):
        full_verification(canonicalize(math.inf, 1))
