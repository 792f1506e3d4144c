"""Named verification checks, feasibility estimates and report assembly.

Every check returns a record ``{"check", "n", "status", "witness", "detail"}``
with status ``pass``, ``fail`` or ``skip``.  A failing record always carries a
witness.  Per-(sigma, J) checks can be fanned out over a process pool; the
results are reduced in the fixed enumeration order, so the output does not
depend on the number of workers.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from math import comb, factorial
from typing import Callable

from .collapse import is_collapsible_to_point
from .combinatorics import divides, enumerate_cyclic_partitions, full_mask, submasks
from .complement import circle_report, ghost_report
from .complexes import (mu1_fiber, mu2_fiber, ober_complex, ober_stratum_lattice, product_dsd,
                        skeleton_S, skeleton_Sigma, stratum_lattice, verify_stanley_duality)
from .geometry import (all_two_partitions, check_zonotope_in_perm, distinct_homogeneous,
                       distinct_in_torus, pairing_report, zonotope_vertex)
from .homology import homology_z2, regularity_report
from .isomorphism import is_isomorphic
from .poset import euler_characteristic

CHECKS = ("duality", "zonotope", "dims", "fibers-mu1", "fibers-mu2", "circle", "ghost",
          "ober-homology", "regularity")
DEFAULT_MAX_CELLS = 5_000_000


def max_cells_from_env(default: int = DEFAULT_MAX_CELLS) -> int:
    value = os.environ.get("PANTSLAB_MAX_CELLS")
    return int(value) if value else default


def _strip(betti) -> tuple[int, ...]:
    b = list(betti)
    while len(b) > 1 and b[-1] == 0:
        b.pop()
    return tuple(b)


# -- size estimates ---------------------------------------------------------------------

def _stirling2(m: int, k: int) -> int:
    return sum((-1) ** (k - j) * comb(k, j) * j ** m for j in range(k + 1)) // factorial(k)


def count_S_cells(n: int) -> int:
    return sum(comb(n + 1, k) * (2 ** k - k - 1) for k in range(2, n + 2))


def count_Sigma_cells(n: int) -> int:
    return sum(_stirling2(n + 1, k) * factorial(k - 1) for k in range(2, n + 2))


def estimate_cells(check: str, n: int) -> int:
    """Upper estimate of the largest single complex a check builds."""
    m = n + 1
    if check == "duality":
        return 2 ** (2 * m)
    if check == "zonotope":
        return (2 ** m - 2) ** 2
    if check in ("dims", "fibers-mu1"):
        return count_Sigma_cells(n) + count_S_cells(n)
    if check == "fibers-mu2":
        return count_S_cells(n) + 3 ** m
    if check == "circle":
        return 4 ** m
    if check == "ghost":
        return (m + 1) * 4 ** (m + 1)
    if check == "ober-homology":
        return count_S_cells(n) * count_Sigma_cells(n)
    if check == "regularity":
        return 9 ** m
    raise ValueError(f"unknown check {check!r}")


# -- per-(sigma, J) workers (module level so that they pickle) ----------------------------

def strata_pairs(n: int) -> list[tuple]:
    """All (sigma, J) with sigma dividing J, in a fixed order."""
    full = full_mask(n + 1)
    return [(s, J) for s in enumerate_cyclic_partitions(n, 2) for J in submasks(full)
            if divides(s, J)]


def _circle_item(item) -> dict:
    return circle_report(*item)


def _ghost_item(item) -> dict:
    return ghost_report(*item)


def _ball_item(item) -> dict:
    sigma, J = item
    out = {"sigma": sigma.format(), "J": J, "ok": True, "witness": None}
    for name, build in (("stratum", stratum_lattice), ("ober-stratum", ober_stratum_lattice)):
        C = build(sigma, J)
        chi = euler_characteristic(C)
        if chi != 1:
            out.update(ok=False, witness=f"{name} lattice of {sigma.format()}, J={J}: chi={chi}")
            break
        if not is_collapsible_to_point(C):
            out.update(ok=False, witness=f"{name} lattice of {sigma.format()}, J={J}: "
                                         f"no collapse to a point found")
            break
    return out


def _map(func: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * jobs))))


def _aggregate(reports: list[dict], what: str) -> tuple[bool, str | None, dict]:
    failed = [r for r in reports if not r["ok"]]
    detail = {"pairs": len(reports), "failed": len(failed)}
    if failed:
        r = failed[0]
        return False, f"{what} fails at sigma={r['sigma']}, J={r['J']}: {r.get('witness')}", detail
    return True, None, detail


# -- the checks ---------------------------------------------------------------------------

def check_duality(n: int, jobs: int = 1) -> tuple[str, str | None, dict]:
    if n < 2:
        return "skip", None, {"reason": "duality is stated for n >= 2"}
    rep = verify_stanley_duality(n)
    detail = {"polytope": f"C_{rep['d']}({rep['r']})", "cells": rep["cells"],
              "facets": rep["facets"]}
    return ("pass" if rep["ok"] else "fail"), rep["witness"], detail


def check_zonotope(n: int, jobs: int = 1):
    z = check_zonotope_in_perm(n)
    p = pairing_report(n)
    detail = {"vertices": z.get("vertices"), "facets": z.get("facets"),
              "evaluations": z["evaluations"], "pairings": p["checked"]}
    if not z["ok"]:
        return "fail", f"zonotope: {z['witness']}", detail
    if not p["ok"]:
        return "fail", f"pairing: {p['witness']}", detail
    return "pass", None, detail


def dims_counts(n: int) -> dict:
    Sigma = skeleton_Sigma(n)
    S = skeleton_S(n)
    weights = all_two_partitions(n)
    zono = [zonotope_vertex(p) for p in weights]
    return {
        "sigma_facets": len(Sigma.maximal_cells()),
        "sigma_vertices": len(Sigma.cells(0)),
        "sigma_dim": Sigma.dimension,
        "sigma_f": list(Sigma.f_vector()),
        "s_f": list(S.f_vector()),
        "s_dim": S.dimension,
        "weights": len(weights),
        "zonotope_homogeneous": distinct_homogeneous(zono),
        "zonotope_torus": distinct_in_torus(zono),
    }


def check_dims(n: int, jobs: int = 1):
    c = dims_counts(n)
    expected = {
        "sigma_facets": 2 ** n - 1,
        "sigma_vertices": factorial(n),
        "sigma_dim": n - 1,
        "s_dim": n - 1,
        "weights": 2 ** (n + 1) - 2,
        "zonotope_homogeneous": 2 ** (n + 1) - 2,
        "zonotope_torus": 2 ** n - 1,
    }
    for key, want in expected.items():
        if c[key] != want:
            return "fail", f"{key} = {c[key]}, expected {want}", c
    return "pass", None, c


def check_fibers_mu1(n: int, jobs: int = 1):
    expected = tuple(comb(n - 1, k) for k in range(n))
    seen = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            b = _strip(homology_z2(mu1_fiber(i, j, n)))
            if b != expected:
                return "fail", f"mu1 fiber over ({i},{j}) has Betti {b}, expected {expected}", {}
            seen.append(b)
    return "pass", None, {"fibers": len(seen), "betti": list(expected)}


def check_fibers_mu2(n: int, jobs: int = 1):
    parts = all_two_partitions(n)
    for p in parts:
        F = mu2_fiber(p, n)
        if is_isomorphic(F, product_dsd(p)) is None:
            return "fail", f"mu2 fiber over {p} is not isomorphic to dsd(simplex x simplex)", {}
        if not is_collapsible_to_point(F):
            return "fail", f"mu2 fiber over {p} does not collapse to a point", {}
    return "pass", None, {"fibers": len(parts)}


def check_circle(n: int, jobs: int = 1):
    reps = _map(_circle_item, strata_pairs(n), jobs)
    ok, witness, detail = _aggregate(reps, "circle schedule")
    detail["literal_description_holds"] = sum(
        1 for r in reps if r.get("circle_vertices_within_11") and r.get("circle_edges_at_00"))
    return ("pass" if ok else "fail"), witness, detail


def check_ghost(n: int, jobs: int = 1):
    reps = _map(_ghost_item, strata_pairs(n), jobs)
    ok, witness, detail = _aggregate(reps, "ghost collapse")
    return ("pass" if ok else "fail"), witness, detail


def check_ober_homology(n: int, jobs: int = 1):
    P = ober_complex(n)
    a = _strip(homology_z2(P))
    b = _strip(homology_z2(skeleton_Sigma(n)))
    detail = {"ober_cells": len(P), "ober_dim": P.dimension, "betti": list(a),
              "sigma_betti": list(b)}
    if a != b:
        return "fail", f"H(ober) = {a} but H(Sigma) = {b}", detail
    return "pass", None, detail


def check_regularity(n: int, jobs: int = 1):
    reps = _map(_ball_item, strata_pairs(n), jobs)
    ok, witness, detail = _aggregate(reps, "ball stratum")
    reg = regularity_report(skeleton_Sigma(n))
    detail["sigma_cells_checked"] = reg["checked"]
    detail["sigma_cells_skipped"] = reg["skipped"]
    if ok and reg["failed"]:
        return "fail", f"cell {reg['witness']} of Sigma has non-spherical boundary", detail
    return ("pass" if ok else "fail"), witness, detail


CHECK_FUNCTIONS = {
    "duality": check_duality,
    "zonotope": check_zonotope,
    "dims": check_dims,
    "fibers-mu1": check_fibers_mu1,
    "fibers-mu2": check_fibers_mu2,
    "circle": check_circle,
    "ghost": check_ghost,
    "ober-homology": check_ober_homology,
    "regularity": check_regularity,
}


def run_check(name: str, n: int, *, jobs: int = 1, max_cells: int | None = None,
              force: bool = False, timing: bool = False) -> dict:
    if name not in CHECK_FUNCTIONS:
        raise ValueError(f"unknown check {name!r}")
    if max_cells is None:
        max_cells = max_cells_from_env()
    record = {"check": name, "n": n, "status": None, "witness": None, "detail": {}}
    est = estimate_cells(name, n)
    if est > max_cells and not force:
        record.update(status="skip", infeasible=True,
                      detail={"reason": f"estimated {est} cells exceeds bound {max_cells}; "
                                        f"use --force or raise --max-cells"})
        return record
    t0 = time.perf_counter()
    status, witness, detail = CHECK_FUNCTIONS[name](n, jobs)
    if status == "fail" and not witness:
        witness = "unspecified failure"
    record.update(status=status, witness=witness, detail=detail)
    if timing:
        record["seconds"] = round(time.perf_counter() - t0, 3)
    return record


def run_suite(checks, ns, **kw) -> list[dict]:
    return [run_check(c, n, **kw) for n in ns for c in checks]


def suite_exit_code(records: list[dict], strict: bool = False) -> int:
    if any(r["status"] == "fail" for r in records):
        return 1
    if strict and any(r["status"] == "skip" and r.get("infeasible") for r in records):
        return 1
    return 0


# -- reproduction report -------------------------------------------------------------------

REPORT_FIELDS = ("n", "sigma_facets", "sigma_vertices", "weights", "sigma_f", "s_f",
                 "mu1_betti", "ober_betti", "duality", "ghost", "circle")


def report_rows(ns, *, jobs: int = 1, max_cells: int | None = None, force: bool = False,
                timing: bool = False) -> list[dict]:
    rows = []
    for n in ns:
        c = dims_counts(n)
        row = {k: c[k] for k in ("sigma_facets", "sigma_vertices", "weights", "sigma_f", "s_f")}
        row["n"] = n
        row["mu1_betti"] = list(_strip(homology_z2(mu1_fiber(0, 1, n))))
        recs = {}
        for name in ("ober-homology", "duality", "ghost", "circle"):
            recs[name] = run_check(name, n, jobs=jobs, max_cells=max_cells, force=force,
                                   timing=timing)
        oh = recs["ober-homology"]
        row["ober_betti"] = oh["detail"].get("betti", "") if oh["status"] != "skip" else "skip"
        d = recs["duality"]
        row["duality"] = (f"{d['status']} (C_{2 * n - 2}({2 * n + 2}))" if n >= 2 else "n/a")
        row["ghost"] = recs["ghost"]["status"]
        row["circle"] = recs["circle"]["status"]
        if timing:
            row["seconds"] = round(sum(r.get("seconds", 0) for r in recs.values()), 3)
        rows.append(row)
    return rows


def report_markdown(rows: list[dict], timing: bool = False) -> str:
    fields = list(REPORT_FIELDS) + (["seconds"] if timing else [])
    head = "| " + " | ".join(fields) + " |"
    sep = "|" + "|".join("---" for _ in fields) + "|"

    def cell(v):
        if isinstance(v, (list, tuple)):
            return "(" + ",".join(str(x) for x in v) + ")"
        return str(v)

    lines = ["# Reproduction report", "",
             "Counts: Sigma facets 2^n-1, Sigma vertices n!, fundamental weights 2^(n+1)-2; "
             "f-vectors from dimension 0 up; Betti numbers over Z/2.", "", head, sep]
    for r in rows:
        lines.append("| " + " | ".join(cell(r.get(f, "")) for f in fields) + " |")
    return "\n".join(lines) + "\n"
