import pytest

from pantslab.checks import (CHECKS, count_S_cells, count_Sigma_cells, estimate_cells,
                             max_cells_from_env, report_markdown, report_rows, run_check,
                             run_suite, strata_pairs, suite_exit_code)
from pantslab.complexes import skeleton_S, skeleton_Sigma


@pytest.mark.parametrize("n", range(1, 6))
def test_cell_count_formulas(n):
    assert count_S_cells(n) == len(skeleton_S(n))
    assert count_Sigma_cells(n) == len(skeleton_Sigma(n))


def test_strata_pair_counts():
    assert [len(strata_pairs(n)) for n in (1, 2, 3)] == [1, 17, 241]


@pytest.mark.parametrize("name", CHECKS)
def test_every_check_passes_at_n2(name):
    rec = run_check(name, 2)
    assert rec["status"] == "pass", rec["witness"]
    assert rec["witness"] is None


def test_duality_skips_for_n1():
    rec = run_check("duality", 1)
    assert rec["status"] == "skip" and not rec.get("infeasible")
    assert suite_exit_code([rec], strict=True) == 0


def test_infeasible_checks_are_skipped_with_reason():
    rec = run_check("ober-homology", 3, max_cells=10)
    assert rec["status"] == "skip" and rec["infeasible"]
    assert "exceeds bound 10" in rec["detail"]["reason"]
    assert suite_exit_code([rec]) == 0
    assert suite_exit_code([rec], strict=True) == 1
    forced = run_check("ober-homology", 3, max_cells=10, force=True)
    assert forced["status"] == "pass"


def test_env_bound(monkeypatch):
    monkeypatch.setenv("PANTSLAB_MAX_CELLS", "123")
    assert max_cells_from_env() == 123
    monkeypatch.delenv("PANTSLAB_MAX_CELLS")
    assert max_cells_from_env() == 5_000_000


def test_failures_give_exit_code_1():
    recs = [{"status": "pass"}, {"status": "fail", "witness": "x"}]
    assert suite_exit_code(recs) == 1


def test_zonotope_check_detail_n3():
    rec = run_check("zonotope", 3)
    assert rec["status"] == "pass"
    assert rec["detail"]["evaluations"] == 14 * 14


def test_parallel_results_are_identical():
    serial = run_suite(["circle", "regularity"], [2], jobs=1)
    parallel = run_suite(["circle", "regularity"], [2], jobs=2)
    assert serial == parallel


def test_report_rows():
    rows = report_rows([1, 2, 3])
    r2, r3 = rows[1], rows[2]
    assert (r2["sigma_facets"], r2["sigma_vertices"], r2["weights"]) == (3, 2, 6)
    assert r3["mu1_betti"] == [1, 2, 1]
    assert r2["duality"] == "pass (C_2(6))" and r3["duality"] == "pass (C_4(8))"
    md = report_markdown(rows)
    assert "| 2 | 3 | 2 | 6 |" in md


def test_estimates_grow():
    for name in CHECKS:
        assert estimate_cells(name, 4) >= estimate_cells(name, 3)
