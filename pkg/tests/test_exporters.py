"""Tests for report exporters."""
import json
import math
from fractions import Fraction

import numpy as np
import pytest

from NMIS_Sklar.core.exception import ExporterError
from NMIS_Sklar.dependence.marginfree import ipf
from NMIS_Sklar.dependence.measures import margin_sensitivity
from NMIS_Sklar.exporters import CSVExporter, ExporterFactory, JSONExporter, to_jsonable
from NMIS_Sklar.models.reports import Report


def test_to_jsonable_values():
    """Test conversion of exact scalars, infinities, arrays and models."""
    assert to_jsonable(Fraction(2, 5)) == "2/5"
    assert to_jsonable(math.inf) == "inf"
    assert to_jsonable((1, Fraction(1, 2))) == [1, "1/2"]
    assert to_jsonable(np.array([[1.0, 2.0]])) == [[1.0, 2.0]]
    assert to_jsonable(np.int64(3)) == 3
    report = Report(check="roundtrip", passed=True, max_discrepancy=Fraction(0))
    data = to_jsonable(report)
    assert data["check"] == "roundtrip"
    assert data["max_discrepancy"] == "0/1"


def test_json_exporter_is_deterministic(pA, tmp_path):
    """Test sorted keys, fixed indent and a trailing newline."""
    exporter = JSONExporter()
    first = exporter.export(pA)
    assert first == exporter.export(pA)
    assert first.endswith("\n")
    assert json.loads(first)["mass"]["values"][0] == ["2/5", "1/10"]
    path = tmp_path / "joint.json"
    exporter.export(pA, path)
    assert path.read_text(encoding="utf-8") == first


def test_json_exporter_rejects_nan():
    """Test that NaN cannot be serialized."""
    with pytest.raises(ExporterError):
        JSONExporter().export({"value": float("nan")})


def test_csv_exporter_long_layout(pA):
    """Test joints in the x1,...,xd,prob layout."""
    text = CSVExporter().export(pA)
    lines = text.splitlines()
    assert lines[0] == "x1,x2,prob"
    assert lines[1] == "0,0,2/5"
    assert len(lines) == 5


def test_csv_exporter_discrete_copula(pB):
    """Test an IPF core in the long layout."""
    core, _ = ipf(pB)
    lines = CSVExporter().export(core).splitlines()
    assert lines[0] == "x1,x2,prob"
    assert float(lines[1].split(",")[2]) == pytest.approx(core.mass[0, 0])


def test_csv_exporter_table(pA):
    """Test a sensitivity table with one line per measure."""
    table = margin_sensitivity(pA, [[2, 1], [1, 1]])
    lines = CSVExporter().export(table).splitlines()
    assert lines[0] == "measure,original,scaled,delta"
    assert lines[1] == "tau,3/10,4/15,-1/30"


def test_csv_exporter_flat_report(tmp_path):
    """Test field,value listing of nested reports."""
    data = {"check": "x", "nested": {"a": 1, "b": [1, [2, 3]]}}
    text = CSVExporter().export(data, tmp_path / "report.csv")
    assert "nested.a,1" in text
    assert "nested.b,1 (2 3)" in text
    assert (tmp_path / "report.csv").exists()


def test_exporter_factory():
    """Test exporter lookup."""
    assert isinstance(ExporterFactory.create("JSON"), JSONExporter)
    assert isinstance(ExporterFactory.create("csv"), CSVExporter)
    assert ExporterFactory.list_exporters() == ["csv", "json"]
    with pytest.raises(ExporterError):
        ExporterFactory.create("xml")


def test_to_jsonable_nested_models():
    """Test that exact scalars inside nested models keep their denominator."""
    inner = Report(check="representation", passed=True, max_discrepancy=Fraction(0), witness=(Fraction(1, 2), 1))
    data = to_jsonable({"reports": {"representation": inner}})
    assert data["reports"]["representation"]["max_discrepancy"] == "0/1"
    assert data["reports"]["representation"]["witness"] == ["1/2", 1]
