"""Matrix file formats: lossless round-trips and parse diagnostics."""

import json

import numpy as np
import pytest

from phasealg import AngleMatrix, DenseMatrix, identity, read_matrix, write_matrix
from phasealg.engine import BenchRecord
from phasealg.matio import BENCH_CSV_HEADER, MatrixFormatError, append_bench_record, dumps_report


def test_dense_round_trip_is_bit_exact(tmp_path):
    values = np.array([
        [0.1 + (1 / 3) * 1j, -0.0 + 1e-300j],
        [np.pi - 2.2250738585072014e-308j, 123456789.123456789 + 7j],
    ])
    path = tmp_path / "m.json"
    write_matrix(path, DenseMatrix(values))
    back = read_matrix(path)
    assert isinstance(back, DenseMatrix)
    assert np.array_equal(back.array, values)
    assert back.array.tobytes() == np.ascontiguousarray(values, dtype=np.complex128).tobytes()


def test_identity_round_trip(tmp_path):
    path = tmp_path / "i.json"
    write_matrix(path, identity(2))
    back = read_matrix(path)
    assert back.array.tobytes() == identity(2).array.tobytes()


def test_angle_round_trip(tmp_path):
    t = AngleMatrix(theta=[0.0, -7.25, 1e-17], phi=[2 * np.pi, 0.30000000000000004])
    path = tmp_path / "t.json"
    write_matrix(path, t)
    back = read_matrix(path)
    assert isinstance(back, AngleMatrix)
    assert np.array_equal(back.theta, t.theta)
    assert np.array_equal(back.phi, t.phi)


def test_angle_file_parse(tmp_path):
    path = tmp_path / "t.json"
    path.write_text('{"kind": "angle", "theta": [0, 1.5707963267948966], "phi": [0]}')
    back = read_matrix(path)
    assert back.shape == (2, 1)
    assert back.theta[1] == 1.5707963267948966


def test_malformed_kind_is_named(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "sparse", "rows": 1, "cols": 1, "data": [[1, 0]]}')
    with pytest.raises(MatrixFormatError, match="'kind'"):
        read_matrix(path)
    path.write_text('{"rows": 1}')
    with pytest.raises(MatrixFormatError, match="'kind'"):
        read_matrix(path)


def test_invalid_json_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "dense",\n  broken')
    with pytest.raises(MatrixFormatError, match="line 2"):
        read_matrix(path)


def test_dense_dimension_inconsistency(tmp_path):
    path = tmp_path / "bad.json"
    payload = {"kind": "dense", "rows": 2, "cols": 2, "data": [[1, 0], [2, 0], [3, 0]]}
    path.write_text(json.dumps(payload))
    with pytest.raises(MatrixFormatError, match="4 entries"):
        read_matrix(path)


def test_dense_missing_field(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "dense", "rows": 1, "data": [[1, 0]]}')
    with pytest.raises(MatrixFormatError, match="'cols'"):
        read_matrix(path)


def test_dense_rejects_non_finite(tmp_path):
    path = tmp_path / "bad.json"
    payload = {"kind": "dense", "rows": 1, "cols": 1, "data": [[1e999, 0]]}
    path.write_text(json.dumps(payload).replace("Infinity", "1e999"))
    with pytest.raises(MatrixFormatError):
        read_matrix(path)


def test_dense_rejects_malformed_pair(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "dense", "rows": 1, "cols": 1, "data": [[1, 2, 3]]}')
    with pytest.raises(MatrixFormatError, match="pair"):
        read_matrix(path)


def test_angle_rejects_empty_phase_list(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "angle", "theta": [], "phi": [0]}')
    with pytest.raises(MatrixFormatError, match="'theta'"):
        read_matrix(path)


def test_bench_csv_header_once(tmp_path):
    path = tmp_path / "bench.csv"
    record = BenchRecord(rows=4, cols=4, updates=2, structured_ns_per_update=1000.0,
                         naive_ns_per_update=9000.0, max_residual=1.25e-14, seed=3)
    append_bench_record(path, record)
    append_bench_record(path, record)
    lines = path.read_text().strip().split("\n")
    assert lines[0] == BENCH_CSV_HEADER
    assert len(lines) == 3
    assert lines[1] == lines[2] == "4,4,2,1000.0,9000.0,1.25e-14,3"


def test_report_serialization_is_deterministic():
    report = {"b": 1.5, "a": [1, 2], "nested": {"z": 0.1, "y": True}}
    assert dumps_report(report) == dumps_report(dict(reversed(list(report.items()))))
