"""Tests for discrete joint distributions."""
import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from NMIS_Sklar.core.exception import DimensionError, JointValidationError, ScalingError
from NMIS_Sklar.core.numerics import box_volume
from NMIS_Sklar.distributions.joint import from_samples, joint_cdf, marginal, rescale, validate
from NMIS_Sklar.oracle.reference import cdf_by_enumeration

F = Fraction


def test_validate_accepts_probabilities(pA):
    """Test a valid 2x2 probability table."""
    assert pA.dims == 2
    assert pA.shape == (2, 2)
    assert pA.mass[0, 1] == F(1, 10)
    assert pA.track == "rational"


def test_validate_normalizes_counts():
    """Test count normalization."""
    j = validate([[0, 1], [0, 1]], [[1, 1], [1, 1]], counts=True)
    assert all(v == F(1, 4) for v in j.mass.flat)


def test_validate_rejects_negative_cell():
    """Test that a negative mass names its cell."""
    with pytest.raises(JointValidationError) as excinfo:
        validate([[0, 1], [0, 1]], [["0.6", "0.5"], ["-0.1", "0"]])
    assert excinfo.value.cell == (1, 0)


def test_validate_rejects_bad_total_and_shape():
    """Test normalization and shape errors."""
    with pytest.raises(JointValidationError):
        validate([[0, 1], [0, 1]], [["1/2", "1/4"], ["1/4", "1/4"]])
    with pytest.raises(JointValidationError):
        validate([[0, 1], [0, 1, 2]], [["1/2", "1/4"], ["1/4", "0"]])
    with pytest.raises(JointValidationError):
        validate([[1, 0], [0, 1]], [["1/4", "1/4"], ["1/4", "1/4"]])
    with pytest.raises(JointValidationError):
        validate([[0, 1]], ["1/2", "1/2"])
    with pytest.raises(JointValidationError):
        validate([[0, 1], [0, 1]], [[0, 0], [0, 0]], counts=True)


def test_float_track_tolerates_rounding():
    """Test float masses summing to one within abs_tol."""
    j = validate([[0, 1], [0, 1]], [[0.1, 0.2], [0.3, 0.4]], track="float")
    assert j.track == "float"
    assert j.cdf((1, 1)) == pytest.approx(1.0)


def test_joint_cdf(pA):
    """Test the joint CDF at atoms and on the extended reals."""
    assert joint_cdf(pA, (0, 0)) == F(2, 5)
    assert joint_cdf(pA, (math.inf, 0)) == F(1, 2)
    assert joint_cdf(pA, (-math.inf, 1)) == 0
    assert joint_cdf(pA, (math.inf, math.inf)) == 1
    assert joint_cdf(pA, (F(1, 2), 7)) == F(1, 2)
    with pytest.raises(DimensionError):
        joint_cdf(pA, (0,))


def test_marginal(pA, uniform_cube):
    """Test marginals by summing out the other axes."""
    m = marginal(pA, 0)
    assert m.atoms == (0, 1)
    assert m.masses == (F(1, 2), F(1, 2))
    independent = validate(
        [[0, 1], [0, 1]], np.outer([F(7, 10), F(3, 10)], [F(1, 2), F(1, 2)]).tolist()
    )
    assert marginal(independent, 0).masses == (F(7, 10), F(3, 10))
    assert marginal(uniform_cube, 2).masses == (F(1, 2), F(1, 2))
    with pytest.raises(DimensionError):
        marginal(pA, 2)


def test_marginal_drops_zero_atoms():
    """Test that atoms without marginal mass are left out."""
    j = validate([[0, 1, 2], [0, 1]], [["1/2", "0"], ["0", "0"], ["1/4", "1/4"]])
    assert marginal(j, 0).atoms == (0, 2)


def test_from_samples():
    """Test empirical ingestion with exact relative frequencies."""
    j = from_samples([(0, 0), (0, 0), (1, 1), (1, 0)])
    assert j.mass.tolist() == [[F(1, 2), 0], [F(1, 4), F(1, 4)]]
    single = from_samples([(5, 5)])
    assert single.shape == (1, 1) and single.mass[0, 0] == 1
    diagonal = from_samples([(1, 4), (2, 3), (3, 2), (4, 1)])
    assert diagonal.shape == (4, 4)
    assert sorted(v for v in diagonal.mass.flat if v) == [F(1, 4)] * 4
    with pytest.raises(JointValidationError):
        from_samples([])
    with pytest.raises(JointValidationError):
        from_samples([(0, 0), (1,)])


def test_rescale(pA):
    """Test diagonal scaling of a joint."""
    scaled = rescale(pA, [[2, 1], [1, 1]])
    assert scaled.mass.tolist() == [[F(8, 15), F(2, 15)], [F(1, 15), F(4, 15)]]
    with pytest.raises(ScalingError):
        rescale(pA, [[0, 1], [1, 1]])
    with pytest.raises(ScalingError):
        rescale(pA, [[1, 1, 1], [1, 1]])
    with pytest.raises(ScalingError):
        rescale(pA, [[1, 1]])


def test_json_schema(pA):
    """Test the JSON joint schema."""
    data = pA.to_json()
    assert data["dims"] == 2
    assert data["mass"]["values"][0] == ["2/5", "1/10"]
    again = type(pA).from_json(data)
    assert again.mass.tolist() == pA.mass.tolist()
    with pytest.raises(JointValidationError):
        type(pA).from_json({**data, "dims": 3})


def test_joint_cdf_matches_enumeration_and_is_d_increasing(random_joint):
    """Test the CDF against brute force and box volumes against cell sums."""
    for seed in range(30):
        j = random_joint(seed)
        for x in product(*j.axes):
            assert j.cdf(x) == cdf_by_enumeration(j, x)
        assert j.cdf([math.inf] * j.dims) == 1
        lower = tuple(axis[0] for axis in j.axes)
        upper = tuple(axis[-1] for axis in j.axes)
        volume = box_volume(j.cdf, tuple(a - 1 for a in lower), upper)
        assert volume == 1
        for k in range(j.dims):
            assert sum(j.marginal(k).masses) == 1
