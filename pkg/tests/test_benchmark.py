from __future__ import annotations

import json

import pytest

from gbad.benchmark import BenchmarkRecord, benchmark, format_benchmark
from gbad.synthetic import SyntheticSpec, generate_synthetic


@pytest.fixture(scope="module")
def small_db():
    db, _ = generate_synthetic(SyntheticSpec(num_instances=12), seed=1)
    return db


class TestBenchmark:
    def test_three_records(self, small_db):
        records = benchmark(small_db, ["mdl", "p", "mps"])
        assert [r.algorithm for r in records] == ["MDL", "P", "MPS"]
        for r in records:
            assert r.instance_count == 12
            assert r.wall_time >= 0

    def test_empty_algorithm_list(self, small_db):
        assert benchmark(small_db, []) == []

    def test_repeat_runs_differ_only_in_time(self, small_db):
        a = benchmark(small_db, ["mdl"])[0]
        b = benchmark(small_db, ["mdl"])[0]
        assert (a.algorithm, a.instance_count) == (b.algorithm, b.instance_count)

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            BenchmarkRecord("MDL", 1, -0.1)


class TestFormatting:
    def test_text_table(self, small_db):
        records = benchmark(small_db, ["mdl"])
        text = format_benchmark(records, "text")
        assert "algorithm" in text and "MDL" in text

    def test_json(self, small_db):
        records = benchmark(small_db, ["mdl", "mps"])
        payload = json.loads(format_benchmark(records, "json"))
        assert [row["algorithm"] for row in payload] == ["MDL", "MPS"]
        assert all(row["wall_time_seconds"] >= 0 for row in payload)
        assert all(row["instances"] == 12 for row in payload)
