"""Tests for the input connectors."""
import json
from fractions import Fraction

import pytest

from NMIS_Sklar.connectors import (
    CSV2DConnector,
    CSVLongConnector,
    ConnectorFactory,
    ExcelConnector,
    JSONConnector,
    load_margins,
)
from NMIS_Sklar.core.exception import ConnectorError, JointValidationError

F = Fraction


def test_csv2d_library_table(library_path):
    """Test the shipped pA table."""
    j = CSV2DConnector().load(library_path / "pA.csv")
    assert j.axes == ((0, 1), (0, 1))
    assert j.mass.tolist() == [[F(2, 5), F(1, 10)], [F(1, 10), F(2, 5)]]


def test_csv2d_counts_and_delimiter(tmp_path):
    """Test count normalization with a sniffed semicolon delimiter."""
    path = tmp_path / "counts.csv"
    path.write_text("x;a;b\n1;3;1\n2;1;3\n", encoding="utf-8")
    with pytest.raises(ConnectorError):
        CSV2DConnector().load(path)
    path.write_text(";10;20\n1;3;1\n2;1;3\n", encoding="utf-8")
    j = CSV2DConnector(counts=True).load(path)
    assert j.axes == ((1, 2), (10, 20))
    assert j.mass[0, 0] == F(3, 8)


def test_csv2d_float_track(tmp_path):
    """Test reading probabilities onto the float track."""
    path = tmp_path / "float.csv"
    path.write_text(",0,1\n0,0.4,0.1\n1,0.1,0.4\n", encoding="utf-8")
    j = CSV2DConnector(track="float").load(path)
    assert j.track == "float"
    assert j.mass[0, 0] == pytest.approx(0.4)


def test_csv2d_errors(tmp_path):
    """Test missing files, ragged rows and invalid tables."""
    with pytest.raises(ConnectorError):
        CSV2DConnector().load(tmp_path / "missing.csv")
    ragged = tmp_path / "ragged.csv"
    ragged.write_text(",0,1\n0,1/2\n1,1/4,1/4\n", encoding="utf-8")
    with pytest.raises(ConnectorError):
        CSV2DConnector().load(ragged)
    negative = tmp_path / "negative.csv"
    negative.write_text(",0,1\n0,0.6,0.5\n1,-0.1,0\n", encoding="utf-8")
    with pytest.raises(JointValidationError) as excinfo:
        CSV2DConnector().load(negative)
    assert excinfo.value.cell == (1, 0)
    empty = tmp_path / "empty.csv"
    empty.write_text("\n\n", encoding="utf-8")
    with pytest.raises(ConnectorError):
        CSV2DConnector().load(empty)


def test_csv_long_trivariate(library_path):
    """Test the long layout for d=3."""
    j = CSVLongConnector().load(library_path / "trivariate_uniform.csv")
    assert j.dims == 3
    assert all(v == F(1, 8) for v in j.mass.flat)


def test_csv_long_missing_and_duplicate_cells(tmp_path):
    """Test that absent cells are zero and repeated cells are refused."""
    path = tmp_path / "long.csv"
    path.write_text("x1,x2,prob\n0,0,1/2\n1,1,1/2\n", encoding="utf-8")
    j = CSVLongConnector().load(path)
    assert j.mass.tolist() == [[F(1, 2), 0], [0, F(1, 2)]]
    path.write_text("x1,x2,prob\n0,0,1/2\n0,0,1/2\n", encoding="utf-8")
    with pytest.raises(ConnectorError):
        CSVLongConnector().load(path)
    path.write_text("x1,x2,weight\n0,0,1\n", encoding="utf-8")
    with pytest.raises(ConnectorError):
        CSVLongConnector().load(path)


def test_json_connector(library_path, tmp_path):
    """Test the JSON joint schema and its track override."""
    j = JSONConnector().load(library_path / "pA.json")
    assert j.mass[0, 0] == F(2, 5)
    path = tmp_path / "float.json"
    path.write_text(json.dumps({
        "dims": 2,
        "axes": [[0, 1], [0, 1]],
        "mass": {"format": "dense", "values": [[0.25, 0.25], [0.25, 0.25]]},
        "track": "float",
    }), encoding="utf-8")
    assert JSONConnector().load(path).track == "float"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConnectorError):
        JSONConnector().load(path)
    path.write_text(json.dumps({"axes": [[0, 1]]}), encoding="utf-8")
    with pytest.raises(ConnectorError):
        JSONConnector().load(path)


def test_load_margins(library_path, tmp_path):
    """Test margin lists in both accepted layouts."""
    continuous = load_margins(library_path / "continuous_margins.json")
    assert [m.kind for m in continuous] == ["piecewise_linear", "piecewise_linear"]
    discrete = load_margins(library_path / "discrete_margins.json")
    assert discrete[1].masses == (F(1, 3), F(2, 3))
    path = tmp_path / "margins.json"
    path.write_text(json.dumps({"margins": [{"kind": "discrete", "atoms": [0], "masses": ["1"]}]}))
    assert load_margins(path)[0].atoms == (0,)
    path.write_text(json.dumps([]))
    with pytest.raises(ConnectorError):
        load_margins(path)


def test_excel_connector(tmp_path):
    """Test a contingency table stored in a workbook."""
    from openpyxl import Workbook

    wb = Workbook()
    sheet = wb.active
    sheet.title = "pA"
    sheet.append([None, 0, 1])
    sheet.append([0, "2/5", "1/10"])
    sheet.append([1, "1/10", "2/5"])
    other = wb.create_sheet("counts")
    other.append([None, 0, 1])
    other.append([0, None, 3])
    other.append([1, 1, 4])
    path = tmp_path / "tables.xlsx"
    wb.save(path)

    j = ExcelConnector(sheet_name="pA").load(path)
    assert j.mass.tolist() == [[F(2, 5), F(1, 10)], [F(1, 10), F(2, 5)]]
    counts = ExcelConnector(sheet_name="counts", counts=True).load(path)
    assert counts.mass.tolist() == [[0, F(3, 8)], [F(1, 8), F(1, 2)]]
    with pytest.raises(ConnectorError):
        ExcelConnector(sheet_name="nope").load(path)
    with pytest.raises(ConnectorError):
        ExcelConnector().load(tmp_path / "missing.xlsx")


def test_factory():
    """Test connector creation and suffix detection."""
    assert isinstance(ConnectorFactory.create("CSV2D"), CSV2DConnector)
    assert ConnectorFactory.detect("table.json") == "json"
    assert ConnectorFactory.detect("table.XLSX") == "excel"
    assert ConnectorFactory.detect("table.csv") == "csv2d"
    with pytest.raises(ConnectorError):
        ConnectorFactory.detect("table.parquet")
    with pytest.raises(ConnectorError):
        ConnectorFactory.create("parquet")
    assert set(ConnectorFactory.list_connectors()) >= {"csv2d", "csv-long", "json", "excel"}


def test_connector_schema():
    """Test the layout description of a connector."""
    schema = CSV2DConnector(counts=True).get_schema()
    assert schema["connector"] == "CSV2DConnector"
    assert schema["counts"] is True
    assert schema["delimiter"] == "(sniffed)"
