"""Tests for the triple scan, its exports, caching, and figure rendering."""

import json
import math

import pytest

from primelink.errors import Infeasible
from primelink.scanstats import (
    ScanReport,
    export_report,
    full_linking_data,
    scan_triples,
)


class TestScanTriples:
    def test_p3_finds_known_failing_triple(self):
        report = scan_triples(3, 229)
        assert (7, 31, 229) in report.failures
        assert report.eligible_count == 16
        assert report.triple_count == math.comb(16, 3)

    def test_p5_finds_known_failing_triple(self):
        report = scan_triples(5, 1021)
        assert (11, 31, 1021) in report.failures

    def test_failures_sorted_and_distinct(self):
        report = scan_triples(3, 500)
        assert list(report.failures) == sorted(set(report.failures))
        for a, b, c in report.failures:
            assert a < b < c

    def test_empty_scan(self):
        report = scan_triples(3, 13)  # only {7, 13} eligible: no triples
        assert report.eligible_count == 2
        assert report.triple_count == 0
        assert report.failures == ()
        assert report.failure_fraction == 0.0

    def test_determinism_across_jobs(self):
        r1 = scan_triples(3, 800, jobs=1)
        r2 = scan_triples(3, 800, jobs=4)
        assert export_report(r1, "json") == export_report(r2, "json")
        assert export_report(r1, "csv") == export_report(r2, "csv")

    def test_eligible_cap(self):
        with pytest.raises(Infeasible):
            scan_triples(3, 5000, eligible_cap=10)

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            scan_triples(4, 100)


class TestCache:
    def test_warm_cache_matches_cold(self, tmp_path):
        cold = scan_triples(3, 400, cache_dir=tmp_path)
        files = list(tmp_path.iterdir())
        assert len(files) == 1 and files[0].name.startswith("linkdata_")
        warm = scan_triples(3, 400, cache_dir=tmp_path)
        assert export_report(cold, "json") == export_report(warm, "json")

    def test_cache_key_separates_parameters(self, tmp_path):
        full_linking_data(3, 100, cache_dir=tmp_path)
        full_linking_data(3, 200, cache_dir=tmp_path)
        full_linking_data(5, 100, cache_dir=tmp_path)
        assert len(list(tmp_path.iterdir())) == 3

    def test_cached_linkdata_round_trips(self, tmp_path):
        direct = full_linking_data(3, 300)
        full_linking_data(3, 300, cache_dir=tmp_path)
        reloaded = full_linking_data(3, 300, cache_dir=tmp_path)
        assert reloaded == direct


class TestExport:
    def test_csv_row_count_matches_failures(self):
        report = scan_triples(3, 300)
        csv = export_report(report, "csv")
        rows = [line for line in csv.strip().splitlines() if not line.startswith("#")]
        assert rows[0] == "q1,q2,q3"
        assert len(rows) - 1 == report.failure_count

    def test_empty_failures_header_only(self):
        report = scan_triples(3, 13)
        csv = export_report(report, "csv")
        rows = [line for line in csv.strip().splitlines() if not line.startswith("#")]
        assert rows == ["q1,q2,q3"]

    def test_json_round_trip(self):
        report = scan_triples(3, 300)
        obj = json.loads(export_report(report, "json"))
        assert ScanReport.from_json_dict(obj) == report

    def test_json_fraction_invariant(self):
        report = scan_triples(3, 300)
        obj = json.loads(export_report(report, "json"))
        assert obj["failure_fraction"]["numerator"] == len(obj["failures"])
        assert obj["failure_fraction"]["denominator"] == obj["triple_count"]

    def test_unknown_format_rejected(self):
        report = scan_triples(3, 100)
        with pytest.raises(ValueError):
            export_report(report, "xml")


class TestFigures:
    def test_figures_rendered(self, tmp_path):
        from primelink.plots import render_scan_figures

        report = scan_triples(3, 300)
        paths = render_scan_figures(report, tmp_path)
        assert len(paths) == 2
        for path in paths:
            assert path.is_file() and path.stat().st_size > 0
            assert path.suffix == ".png"

    def test_figures_survive_empty_report(self, tmp_path):
        from primelink.plots import render_scan_figures

        report = scan_triples(3, 13)
        paths = render_scan_figures(report, tmp_path)
        assert all(p.is_file() for p in paths)
