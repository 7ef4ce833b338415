import pytest

from freesolv.bench import BenchReport, BenchRow, run_bench


def test_empty_sizes():
    rep = run_bench("metabelian", [])
    assert rep.rows == [] and rep.doubling_ratios() == []
    assert rep.to_json()["rows"] == []


def test_rows_and_ratios():
    rep = run_bench("solvable", [10, 20, 40], seeds=2, klass=3)
    assert [r.size for r in rep.rows] == [10, 20, 40]
    assert all(len(r.times) == 2 for r in rep.rows)
    assert len(rep.doubling_ratios()) == 2
    assert "ratio/doubling" in rep.format_table()


def test_ratio_arithmetic():
    rep = BenchReport("metabelian", 2, 2, 0, [BenchRow(100, [1.0, 2.0]), BenchRow(400, [4.0, 32.0])])
    # per seed: (4/1)^(1/2) = 2 and (32/2)^(1/2) = 4
    assert rep.doubling_ratios() == [3.0]


def test_bad_input():
    with pytest.raises(ValueError):
        run_bench("quantum", [10])
    with pytest.raises(ValueError):
        run_bench("metabelian", [20, 10])
    with pytest.raises(ValueError):
        run_bench("metabelian", [10], seeds=0)


def test_metabelian_suite_forces_class_two():
    assert run_bench("metabelian", [5], seeds=1, klass=7).klass == 2
