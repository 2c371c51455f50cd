"""Tests for the SklarBridge API."""
import json
from fractions import Fraction

import pytest

from NMIS_Sklar import SklarBridge
from NMIS_Sklar.copulas.extension import FunctionCopula
from NMIS_Sklar.core.exception import ConnectorError, DimensionError, ExtensionError
from NMIS_Sklar.distributions.joint import validate
from NMIS_Sklar.distributions.margins import Margin

F = Fraction


@pytest.fixture
def bridge():
    return SklarBridge()


def test_load_by_suffix(bridge, library_path):
    """Test format detection from the file suffix."""
    assert bridge.load(library_path / "pA.csv").mass[0, 0] == F(2, 5)
    assert bridge.load(library_path / "pA.json").mass[0, 0] == F(2, 5)
    cube = bridge.load(library_path / "trivariate_uniform.csv", "csv-long")
    assert cube.dims == 3


def test_load_copula(bridge, pA, tmp_path):
    """Test reference copula names and JSON descriptors."""
    assert bridge.load_copula("independence", 3).dims == 3
    assert bridge.load_copula("countermonotone", 2)((F(1, 2), F(1, 2))) == 0
    path = tmp_path / "copula.json"
    path.write_text(json.dumps({"kind": "comonotone", "dims": 2}))
    assert bridge.load_copula(str(path), 2)((F(1, 3), F(1, 2))) == F(1, 3)
    copula = bridge.extend(pA, "patchwork-m").payload["copula"]
    path.write_text(json.dumps(copula))
    assert bridge.load_copula(str(path), 2)((F(1, 4), F(1, 4))) == F(1, 5)


def test_subcopula_command(bridge, pA):
    """Test the subcopula payload."""
    result = bridge.subcopula(pA)
    assert result.passed
    assert result.payload["subcopula"]["values"][1][1] == "2/5"
    assert result.payload["domain"][0]["points"] == ["0/1", "1/2", "1/1"]


def test_extend_with_probes(bridge, pA):
    """Test evaluating an extension at probe points."""
    result = bridge.extend(pA, "patchwork-m", [["1/4", "1/4"], ["1/2", "1"]])
    assert result.passed
    values = [p["value"] for p in result.payload["probes"]]
    assert values == [F(1, 5), F(1, 2)]
    with pytest.raises(ExtensionError):
        bridge.extend(pA, "bernstein")


def test_compose_command(bridge, pA):
    """Test composition with discrete margins and its margin check."""
    copula = bridge.load_copula("independence", 2)
    margins = [Margin.discrete([1, 2, 3], ["1/5", "1/2", "3/10"]), Margin.discrete([0, 10], ["1/3", "2/3"])]
    result = bridge.compose(copula, margins)
    assert result.passed
    assert result.payload["materialized"]
    assert result.payload["joint"]["mass"]["values"][0] == ["1/15", "2/15"]
    lazy = bridge.compose(copula, [Margin.uniform(), Margin.uniform()])
    assert lazy.passed and lazy.payload["joint"] is None


def test_compose_detects_wrong_margins(bridge):
    """Test that a non-copula evaluator is caught by the margin check."""
    stretched = FunctionCopula("stretched", 2, lambda u: u[0] * u[1] if 1 not in u else min(u) ** 2)
    coin = Margin.discrete([0, 1], ["1/2", "1/2"])
    result = bridge.compose(stretched, [coin, coin])
    assert not result.passed
    assert result.payload["margins_check"].witness == (0, 0)


def test_verify_pA(bridge, pA):
    """Test every check of the representation on pA."""
    result = bridge.verify(pA, "patchwork-m", n_boxes=100, oracle=True)
    assert result.passed
    assert set(result.payload["reports"]) == {
        "representation",
        "subcopula_axioms",
        "copula_axioms",
        "grid_agreement",
        "roundtrip",
        "cdf_oracle",
    }
    assert result.payload["max_discrepancy"] == 0


def test_roundtrip_command(bridge, uniform_cube):
    """Test the roundtrip command on d=3."""
    result = bridge.roundtrip(uniform_cube)
    assert result.passed


def test_measures_with_oracle(bridge, pA):
    """Test measures cross-checked by pair enumeration and quadrature."""
    result = bridge.measures(pA, oracle=True)
    assert result.passed
    assert result.payload["measures"].tau == F(3, 10)
    assert [r.check for r in result.payload["oracle"]] == ["tau_oracle", "rho_oracle"]


def test_margin_sensitivity_command(bridge, pA):
    """Test the sensitivity payload and its table."""
    result = bridge.margin_sensitivity(pA, [["2", "1"], ["1", "1"]])
    assert result.passed
    assert result.payload["odds_ratios_equal"] is True
    text = SklarBridge.export(result, "csv")
    assert text.splitlines()[1] == "tau,3/10,4/15,-1/30"


def test_ipf_command(bridge, pB):
    """Test the IPF payload and non-convergence verdict."""
    result = bridge.ipf(pB, tol=1e-12)
    assert result.passed
    assert result.payload["diagnostics"]["converged"]
    assert not bridge.ipf(pB, tol=1e-14, max_iter=2).passed


def test_demo_nonunique(bridge, pA):
    """Test two distinct extensions of one subcopula."""
    result = bridge.demo_nonunique(pA, resolution=100)
    assert result.passed
    assert result.payload["distinct"]
    difference = result.payload["difference"]
    assert difference["point"] == (F(1, 4), F(1, 4))
    assert difference["checkerboard"] == F(1, 10)
    assert difference["patchwork-m"] == F(1, 5)
    assert difference["max_difference"] == F(1, 10)


def test_demo_unique_continuous(bridge, pA, library_path):
    """Test that continuous margins leave a single extension."""
    margins = bridge.load_margins(library_path / "continuous_margins.json")
    result = bridge.demo_unique_continuous(margins, pA, resolution=20)
    assert result.passed
    assert result.payload["subcopula_is_copula"]
    assert result.payload["coincidence"].max_difference == 0
    assert bridge.demo_unique_continuous(margins, resolution=10).passed
    with pytest.raises(DimensionError):
        bridge.demo_unique_continuous(margins[:1] * 3, pA)


def test_export_json_is_deterministic(bridge, pA):
    """Test byte-identical reports for the same input."""
    first = SklarBridge.export(bridge.demo_nonunique(pA, resolution=20))
    second = SklarBridge.export(SklarBridge().demo_nonunique(pA, resolution=20))
    assert first == second
    data = json.loads(first)
    assert data["command"] == "demo-nonunique"
    assert data["difference"]["point"] == ["1/4", "1/4"]


def test_listing(bridge):
    """Test the method and connector listings."""
    assert "checkerboard" in bridge.list_methods()
    assert "csv2d" in bridge.list_connectors()


def test_load_errors(bridge, tmp_path):
    """Test unreadable sources."""
    with pytest.raises(ConnectorError):
        bridge.load(tmp_path / "joint.parquet")
    with pytest.raises(ConnectorError):
        bridge.load(tmp_path / "missing.csv")


def test_margin_sensitivity_fails_without_convergence(bridge):
    """Test that an unconverged IPF fit fails the command."""
    j = validate([[0, 1], [0, 1]], [["1/3", "1/3"], ["0", "1/3"]])
    result = bridge.margin_sensitivity(j, [["2", "1"], ["1", "1"]], max_iter=200)
    assert not result.passed
    assert result.payload["ipf"]["original"]["witness"] is not None


def test_verify_report_scalars_keep_denominators(bridge, pA):
    """Test nested exact discrepancies in the exported verify report."""
    data = json.loads(SklarBridge.export(bridge.verify(pA, n_boxes=20)))
    assert data["reports"]["representation"]["max_discrepancy"] == "0/1"
    assert data["max_discrepancy"] == "0/1"


def test_failed_oracles_carry_witnesses(bridge, pA, mocker):
    """Test that a disagreeing oracle names the quantity and both values."""
    mocker.patch("NMIS_Sklar.core.bridge.tau_by_pair_enumeration", return_value=F(1, 2))
    mocker.patch("NMIS_Sklar.core.bridge.copula_integral_by_quadrature", return_value=0.5)
    result = bridge.measures(pA, oracle=True)
    assert not result.passed
    tau_check, rho_check = result.payload["oracle"]
    assert tau_check.witness == ("tau", F(3, 10), F(1, 2))
    assert rho_check.witness[0] == "integral"
    assert rho_check.witness[2] == 0.5


def test_ipf_failure_names_a_slice(bridge, pB):
    """Test the witness of a non-converged IPF run."""
    result = bridge.ipf(pB, tol=1e-14, max_iter=2)
    assert not result.passed
    axis, index = result.payload["diagnostics"]["witness"]
    assert axis in (0, 1) and index in (0, 1)


def test_float_verify_reports_plain_bools(bridge, pA):
    """Test that float-track verdicts are Python bools without deprecation noise."""
    import warnings

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = bridge.verify(pA.to_float(), n_boxes=20)
    assert result.passed
    for report in result.payload["reports"].values():
        assert type(report.passed) is bool
    assert not [w for w in caught if issubclass(w.category, DeprecationWarning) and "bool" in str(w.message)]


@pytest.mark.slow
def test_demo_unique_continuous_full_lattice(bridge, pA, library_path):
    """Test coincidence on the 100 x 100 lattice."""
    margins = bridge.load_margins(library_path / "continuous_margins.json")
    result = bridge.demo_unique_continuous(margins, pA, resolution=100)
    assert result.passed
    assert result.payload["coincidence"].probes == 101 * 101
    assert abs(result.payload["coincidence"].max_difference) <= 1e-12
