"""Tests for the margin-free core (iterative proportional fitting)."""
import math
from fractions import Fraction

import numpy as np
import pytest

from NMIS_Sklar.core.exception import DimensionError, DomainError, SupportError
from NMIS_Sklar.dependence.marginfree import DiscreteCopula, IpfDiagnostics, ipf, odds_ratios, scaling_invariance_check
from NMIS_Sklar.distributions.joint import rescale, validate
from NMIS_Sklar.oracle.reference import ipf_by_alternating_scaling

F = Fraction


def test_ipf_independence_is_immediate(independence):
    """Test that uniform margins converge after one sweep."""
    core, diagnostics = ipf(independence, tol=1e-12)
    assert diagnostics.converged
    assert diagnostics.iterations == 1
    assert np.allclose(core.mass, 0.25)


def test_ipf_pB_limit(pB):
    """Test the closed-form limit for the odds ratio 12 of pB."""
    core, diagnostics = ipf(pB, tol=1e-12)
    root = math.sqrt(12)
    a = root / (2 * (1 + root))
    assert diagnostics.converged
    assert core.mass[0, 0] == pytest.approx(a, abs=1e-10)
    assert core.mass[1, 1] == pytest.approx(a, abs=1e-10)
    assert core.mass[0, 1] == pytest.approx(0.5 - a, abs=1e-10)
    assert core.margin_error() <= 1e-12


def test_ipf_pA_is_already_uniform(pA):
    """Test that pA's margins are uniform, so its core is pA."""
    core, diagnostics = ipf(pA)
    assert np.allclose(core.mass, [[0.4, 0.1], [0.1, 0.4]])
    assert diagnostics.iterations == 1


def test_ipf_three_dimensions(random_joint):
    """Test uniform margins on d=3 fits."""
    j = random_joint(5, dims=3, zeros=False)
    core, diagnostics = ipf(j, tol=1e-11)
    assert diagnostics.converged
    for k in range(3):
        others = tuple(a for a in range(3) if a != k)
        assert np.allclose(core.mass.sum(axis=others), 1 / core.shape[k], atol=1e-10)


def test_ipf_reports_non_convergence(pB):
    """Test that running out of sweeps is reported, not raised."""
    core, diagnostics = ipf(pB, tol=1e-14, max_iter=1)
    assert not diagnostics.converged
    assert diagnostics.iterations == 1
    assert diagnostics.final_margin_error > 1e-14
    assert len(diagnostics.error_trail) == 1
    assert "error_trail" not in diagnostics.to_json()
    assert diagnostics.witness[0] == 0


def test_ipf_error_trail_decreases(pB):
    """Test that the margin error shrinks sweep after sweep."""
    _, diagnostics = ipf(pB, tol=1e-12)
    trail = diagnostics.error_trail
    assert all(b <= a + 1e-15 for a, b in zip(trail, trail[1:]))


def test_ipf_argument_errors(pB):
    """Test invalid tolerance and sweep count."""
    with pytest.raises(DomainError):
        ipf(pB, tol=0)
    with pytest.raises(DomainError):
        ipf(pB, max_iter=0)


def test_ipf_empty_slice():
    """Test that a slice without mass makes uniform margins unreachable."""
    j = validate([[0, 1], [0, 1]], [["1/2", "1/2"], ["0", "0"]])
    with pytest.raises(SupportError):
        ipf(j)


def test_ipf_matches_alternating_scaling_oracle(pB):
    """Test the production fit against a fixed number of plain scaling rounds."""
    core, _ = ipf(pB, tol=1e-13)
    reference = ipf_by_alternating_scaling(pB.mass, 200)
    assert np.allclose(core.mass, reference, atol=1e-10)


def test_diagnostics_consistency():
    """Test that converged must agree with the error and tolerance."""
    with pytest.raises(ValueError):
        IpfDiagnostics(iterations=3, final_margin_error=1e-3, converged=True, tol=1e-6)


def test_discrete_copula_validation():
    """Test shape and sign checks of a discrete copula."""
    with pytest.raises(DimensionError):
        DiscreteCopula(axes=((0, 1), (0, 1)), mass=np.full((2, 3), 1 / 6))
    with pytest.raises(SupportError):
        DiscreteCopula(axes=((0, 1), (0, 1)), mass=np.array([[0.6, -0.1], [0.0, 0.5]]))
    core = DiscreteCopula(axes=((0, 1), (0, 1)), mass=np.full((2, 2), 0.25))
    assert core.to_joint().track == "float"
    assert core.to_json()["shape"] == [2, 2]


def test_odds_ratios(pA, p_prime):
    """Test that pA and its rescaling share the odds ratio 16 exactly."""
    assert odds_ratios(pA) == {(0, 1, 0, 1): F(16)}
    assert odds_ratios(pA) == odds_ratios(p_prime)


def test_odds_ratios_errors(uniform_cube):
    """Test zero cells and non-bivariate arrays."""
    with pytest.raises(SupportError):
        odds_ratios(np.array([[0.5, 0.0], [0.25, 0.25]]))
    with pytest.raises(DimensionError):
        odds_ratios(uniform_cube)


def test_odds_ratios_survive_rescaling_and_ipf(pB):
    """Test that scaling and fitting keep every cross-product ratio."""
    scaled = rescale(pB, [[1, 5], [3, 1]])
    assert odds_ratios(scaled) == odds_ratios(pB)
    core, _ = ipf(pB, tol=1e-12)
    assert odds_ratios(core)[(0, 1, 0, 1)] == pytest.approx(12.0, rel=1e-8)


def test_scaling_invariance(pA, pB):
    """Test that diagonal rescaling leaves the core unchanged."""
    report = scaling_invariance_check(pB, [[2, 1], [1, 7]])
    assert report.passed
    assert report.max_discrepancy <= 1e-8
    assert report.details["converged"] == [True, True]
    assert scaling_invariance_check(pA, [[2, 1], [1, 1]]).passed


def test_scaling_invariance_random(random_joint):
    """Test invariance on seeded random positive joints."""
    rng = np.random.default_rng(21)
    for seed in range(10):
        j = random_joint(seed, zeros=False)
        weights = [[int(w) for w in rng.integers(1, 6, size=len(axis))] for axis in j.axes]
        assert scaling_invariance_check(j, weights).passed, seed


@pytest.mark.slow
def test_scaling_invariance_sweep(random_joint):
    """Test invariance on 200 seeded random positive joints."""
    rng = np.random.default_rng(22)
    for seed in range(200):
        j = random_joint(seed, zeros=False)
        weights = [[int(w) for w in rng.integers(1, 10, size=len(axis))] for axis in j.axes]
        assert scaling_invariance_check(j, weights).passed, seed


def test_ipf_converged_fit_has_no_witness(pB):
    """Test that a converged fit names no slice."""
    _, diagnostics = ipf(pB, tol=1e-10)
    assert diagnostics.witness is None
    assert diagnostics.to_json()["witness"] is None


def test_ipf_is_idempotent(pB, p_prime):
    """Test that refitting a fitted core changes nothing."""
    for j in (pB, p_prime):
        core, _ = ipf(j, tol=1e-10)
        again, diagnostics = ipf(core.to_joint(), tol=1e-10)
        assert diagnostics.converged
        assert diagnostics.iterations == 1
        assert np.allclose(again.mass, core.mass, atol=1e-10)
