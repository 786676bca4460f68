import csv

import numpy as np
import pytest

from percor import analysis
from percor.analysis import (
    CSV_HEADER,
    ClaimRow,
    ErrorReport,
    claims_suite,
    compare_uv_method,
    reference_scene,
    wall_row,
    write_csv,
)
from percor.texmap.projective import exact_uv_array
from tests.conftest import needs_counting


class TestReports:
    def test_info_rows_do_not_fail_a_report(self):
        report = ErrorReport("quad", "s")
        report.claims.append(ClaimRow("quad", "s", "holds", 1.0, 0.5, True))
        report.claims.append(ClaimRow("quad", "s", "observation", 0.0, 1.0, False, fatal=False))
        assert report.passed
        report.claims.append(ClaimRow("quad", "s", "broken", 1.0, 2.0, False))
        assert not report.passed

    def test_csv_of_an_error_report(self, tmp_path):
        path = tmp_path / "out.csv"
        write_csv([ErrorReport("exact", "scene", max_abs=0.25)], path)
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert tuple(rows[0]) == CSV_HEADER
        assert [row[2] for row in rows[1:]] == ["max-abs-error", "max-rel-error", "mean-rel-error"]
        assert rows[1][4] == "0.25"

    def test_csv_marks_info_claims(self, tmp_path):
        report = ErrorReport("cubic", "t_w")
        report.claims.append(ClaimRow("cubic", "t_w", "ordering", 4, 4, True, fatal=False))
        path = tmp_path / "claims.csv"
        write_csv([report], path)
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[1][2] == "ordering (info)"
        assert rows[1][5] == "true"


class TestCompare:
    def test_exact_has_no_error(self):
        report = compare_uv_method(reference_scene(), "exact")
        assert report.pixels > 1000
        assert report.max_abs == 0.0
        assert report.max_rel == 0.0

    def test_affine_has_error(self):
        assert compare_uv_method(reference_scene(), "affine").max_abs > 0.01

    @needs_counting
    def test_ops_cover_only_the_method(self):
        report = compare_uv_method(reference_scene(), "exact")
        assert report.ops.divisions == 2 * report.pixels


class TestWallRow:
    def test_endpoints_and_depth_ratio(self):
        m = wall_row(3.0, 10, 90, u_lo=0.25, u_hi=0.75)
        us, vs = exact_uv_array(m, [10.0, 100.0], [5.0, 5.0])
        np.testing.assert_allclose(us, [0.25, 0.75])
        np.testing.assert_allclose(vs, [0.5, 0.5])
        assert m.denominator(10.0, 5.0) / m.denominator(100.0, 5.0) == pytest.approx(3.0)


class TestClaimGroups:
    @pytest.mark.parametrize(
        "group",
        [
            analysis._gouraud_model,
            analysis._unit_norm,
            analysis._serpentine,
            analysis._anchor_table,
            analysis._piecewise_tw,
            analysis._cubic_tw,
        ],
        ids=lambda g: g.__name__.lstrip("_"),
    )
    def test_group_holds(self, group):
        report = group(np.random.default_rng(3), None)
        assert report.claims
        assert report.passed, [row for row in report.claims if row.fatal and not row.passed]

    @pytest.mark.parametrize(
        "group, fault",
        [
            (analysis._piecewise_tw, "piecewise"),
            (analysis._cubic_tw, "cubic"),
            (analysis._anchor_table, "anchor-table"),
        ],
    )
    def test_injected_fault_is_caught(self, group, fault):
        assert not group(np.random.default_rng(3), fault).passed

    def test_printed_piecewise_is_reported_as_info(self):
        report = analysis._piecewise_tw(np.random.default_rng(3), None)
        printed = [row for row in report.claims if row.method == "piecewise-printed"]
        assert len(printed) == 1
        assert not printed[0].fatal

    def test_pointwise_piecewise_error_is_reported_as_info(self):
        report = analysis._piecewise_tw(np.random.default_rng(3), None)
        rows = {row.scene: row for row in report.claims if row.method == "piecewise-pointwise"}
        assert set(rows) == {"hbar=2", "hbar=3", "hbar=4", "hbar=5"}
        assert not any(row.fatal for row in rows.values())
        assert rows["hbar=2"].measured == pytest.approx(1.0 / 21.0, abs=1e-4)
        assert report.passed


class TestSuite:
    def test_unknown_fault(self):
        with pytest.raises(ValueError, match="piecewise"):
            claims_suite(inject_fault="everything")

    def test_same_seed_same_result_on_any_worker_count(self, monkeypatch):
        monkeypatch.setattr(analysis, "CLAIM_GROUPS", (analysis._serpentine, analysis._anchor_table))
        serial = claims_suite(seed=5, workers=1)
        pooled = claims_suite(seed=5, workers=2)
        assert [r.method for r in serial] == ["window", "quad-anchored"]
        assert [[c.measured for c in r.claims] for r in serial] == [[c.measured for c in r.claims] for r in pooled]
