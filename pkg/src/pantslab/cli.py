"""Command-line interface: ``pantslab enumerate | verify | export | report``.

Exit codes: 0 success, 1 check failure, 2 usage error.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__
from .checks import (CHECKS, REPORT_FIELDS, max_cells_from_env, report_markdown, report_rows,
                     run_suite, strata_pairs, suite_exit_code)
from .combinatorics import (enumerate_cyclic_partitions, format_subset, full_mask,
                            parse_partition, parse_subset, standard_partition)
from .complement import build_ghost_complex, build_L, belt_to_circle, collapse_to_belt
from .complexes import ober_complex, skeleton_S, skeleton_Sigma, stratum_lattice
from .cyclic_polytope import cyclic_polytope_facets
from .errors import EmptyStratumError, MalformedPartitionError, UnsupportedFormatError
from .export import (geometry_off, poset_table_row, poset_to_dot, poset_to_json, rows_to_csv,
                     trace_to_json)
from .homology import homology_z2

ENUM_OBJECTS = ("partitions", "strata", "s-faces", "sigma-faces", "ober", "L", "ghost",
                "cyclic-polytope")
EXPORT_OBJECTS = ENUM_OBJECTS + ("perm", "zonotope", "belt-trace")
POSET_FIELDS = ("n", "object", "label", "cells", "f_vector", "betti")


# -- argument helpers -------------------------------------------------------------------

def _n_values(n: int | None, n_range: str | None) -> list[int]:
    if (n is None) == (n_range is None):
        raise click.UsageError("give exactly one of --n or --n-range")
    if n is not None:
        values = [n]
    else:
        try:
            a, b = (int(x) for x in n_range.split(".."))
        except ValueError:
            raise click.BadParameter("expected A..B", param_hint="--n-range")
        values = list(range(a, b + 1))
    if not values or min(values) < 1:
        raise click.BadParameter("n must be >= 1")
    return values


def _stratum(n: int, sigma: str | None, J: str | None):
    """The (sigma, J) selected by --sigma/--J; defaults <0|1|...|n> and {0..n}."""
    try:
        s = parse_partition(sigma) if sigma else standard_partition(n)
        m = parse_subset(J) if J else full_mask(n + 1)
    except (MalformedPartitionError, ValueError) as exc:
        raise click.BadParameter(str(exc))
    if s.size != n + 1:
        raise click.BadParameter(f"--sigma must partition {{0..{n}}}")
    if m & ~full_mask(n + 1):
        raise click.BadParameter(f"--J must be a subset of {{0..{n}}}")
    return s, m


def _build(obj: str, n: int, sigma: str | None, J: str | None):
    """Return (poset, label) for a poset-valued object."""
    try:
        if obj == "s-faces":
            return skeleton_S(n), ""
        if obj == "sigma-faces":
            return skeleton_Sigma(n), ""
        if obj == "ober":
            return ober_complex(n), ""
        if obj == "cyclic-polytope":
            if n < 2:
                raise click.BadParameter("the cyclic polytope C_{2n-2}(2n+2) needs n >= 2")
            return cyclic_polytope_facets(2 * n - 2, 2 * n + 2), f"C_{2 * n - 2}({2 * n + 2})"
        s, m = _stratum(n, sigma, J)
        label = f"{s.format()} {format_subset(m)}"
        if obj == "strata":
            return stratum_lattice(s, m), label
        if obj == "L":
            return build_L(s, m), label
        if obj == "ghost":
            return build_ghost_complex(s, m), label
    except EmptyStratumError as exc:
        raise click.BadParameter(str(exc))
    raise click.BadParameter(f"{obj} is not a poset object")


def _name(obj: str, label: str) -> str:
    return f"{obj} {label}" if label else obj


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _fmt(seq) -> str:
    return "(" + ", ".join(str(x) for x in seq) + ")"


# -- commands -----------------------------------------------------------------------------

@click.group()
@click.version_option(__version__, prog_name="pantslab")
def main():
    """Combinatorial models of the pair of pants: enumerate, verify, export, report."""


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--object", "obj", type=click.Choice(ENUM_OBJECTS), required=True)
@click.option("--sigma", default=None, help='cyclic partition, e.g. "<0|1,2>"')
@click.option("--J", "J", default=None, help='subset, e.g. "{0,2}"')
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def enumerate(n, obj, sigma, J, fmt, out):
    """List an object with counts, f-vectors and Z/2 Betti numbers."""
    _n_values(n, None)
    if obj == "partitions":
        parts = enumerate_cyclic_partitions(n, 1)
        if fmt == "json":
            text = json.dumps({"n": n, "count": len(parts),
                               "partitions": [p.format() for p in parts]}, indent=2) + "\n"
        elif fmt == "csv":
            text = rows_to_csv(({"n": n, "partition": p.format(), "parts": len(p)}
                                for p in parts), ("n", "partition", "parts"))
        else:
            lines = [f"partitions n={n}: {len(parts)}"] + [f"  {p.format()}" for p in parts]
            text = "\n".join(lines) + "\n"
        _emit(text, out)
        return
    C, label = _build(obj, n, sigma, J)
    betti = homology_z2(C)
    if fmt == "json":
        data = json.loads(poset_to_json(C, _name(obj, label)))
        data.update(n=n, f_vector=list(C.f_vector()), betti=list(betti))
        text = json.dumps(data, indent=2) + "\n"
    elif fmt == "csv":
        text = rows_to_csv([poset_table_row(n, obj, label, C, betti)], POSET_FIELDS)
    else:
        lines = [f"{obj} n={n}" + (f" [{label}]" if label else "")]
        if obj == "strata":
            lines.append(f"strata (sigma, J) with sigma | J: {len(strata_pairs(n))}")
        lines += [f"cells: {len(C)}", f"dimension: {C.dimension}",
                  f"f-vector: {_fmt(C.f_vector())}", f"betti (Z/2): {_fmt(betti)}"]
        lines += [f"  {d}  {c}" for c, d in zip(C.labels, C.dims)]
        text = "\n".join(lines) + "\n"
    _emit(text, out)


def _checks_list(value: str) -> list[str]:
    if value == "all":
        return list(CHECKS)
    names = [x.strip() for x in value.split(",") if x.strip()]
    bad = [x for x in names if x not in CHECKS]
    if bad or not names:
        raise click.BadParameter(f"unknown check(s) {bad}; choose from {', '.join(CHECKS)} or all",
                                 param_hint="--checks")
    return names


@main.command()
@click.option("--n", "n", type=int, default=None)
@click.option("--n-range", "n_range", default=None, help="A..B")
@click.option("--checks", default="all", help="comma-separated check names or 'all'")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--out", default=None, type=click.Path(dir_okay=False))
@click.option("--jobs", type=click.IntRange(1), default=1)
@click.option("--strict", is_flag=True, help="treat infeasible (skipped) checks as failures")
@click.option("--force", is_flag=True, help="run checks above the cell bound")
@click.option("--max-cells", type=click.IntRange(1), default=None)
@click.option("--timing", is_flag=True, help="include runtimes (breaks byte-identical output)")
def verify(n, n_range, checks, fmt, out, jobs, strict, force, max_cells, timing):
    """Run named checks for each n; exit 1 if any fails."""
    ns = _n_values(n, n_range)
    names = _checks_list(checks)
    bound = max_cells if max_cells is not None else max_cells_from_env()
    records = run_suite(names, ns, jobs=jobs, max_cells=bound, force=force, timing=timing)
    if fmt == "json":
        text = json.dumps({"records": records}, indent=2, sort_keys=True) + "\n"
    else:
        lines = []
        for r in records:
            line = f"{r['status'].upper():4s}  {r['check']:14s} n={r['n']}"
            if r["status"] == "skip":
                line += f"  ({r['detail'].get('reason')})"
            elif r["witness"]:
                line += f"  witness: {r['witness']}"
            if timing and "seconds" in r:
                line += f"  [{r['seconds']}s]"
            lines.append(line)
        counts = {s: sum(r["status"] == s for r in records) for s in ("pass", "fail", "skip")}
        lines.append(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped")
        text = "\n".join(lines) + "\n"
    _emit(text, out)
    sys.exit(suite_exit_code(records, strict))


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--object", "obj", type=click.Choice(EXPORT_OBJECTS), required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "dot", "off", "csv"]), required=True)
@click.option("--sigma", default=None)
@click.option("--J", "J", default=None)
@click.option("--precision", type=click.IntRange(1, 30), default=6, help="OFF decimals")
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def export(n, obj, fmt, sigma, J, precision, out):
    """Serialize an object (JSON/DOT posets, OFF geometry for n = 3, CSV tables)."""
    _n_values(n, None)
    try:
        text = _export_text(n, obj, fmt, sigma, J, precision)
    except UnsupportedFormatError as exc:
        raise click.UsageError(str(exc))
    _emit(text, out)


def _export_text(n, obj, fmt, sigma, J, precision) -> str:
    if obj in ("perm", "zonotope"):
        if fmt != "off":
            raise UnsupportedFormatError(f"{obj} is exported as OFF geometry only")
        return geometry_off(obj, n, precision)
    if fmt == "off":
        raise UnsupportedFormatError(f"OFF export is for perm/zonotope geometry, not {obj}")
    if obj == "partitions":
        parts = enumerate_cyclic_partitions(n, 1)
        if fmt == "csv":
            return rows_to_csv(({"n": n, "partition": p.format(), "parts": len(p)}
                                for p in parts), ("n", "partition", "parts"))
        if fmt == "json":
            return json.dumps({"n": n, "partitions": [p.format() for p in parts]}, indent=2) + "\n"
        raise UnsupportedFormatError("partitions export as json or csv")
    if obj == "belt-trace":
        if fmt != "json":
            raise UnsupportedFormatError("belt-trace exports as json")
        s, m = _stratum(n, sigma, J)
        try:
            L = build_L(s, m)
        except EmptyStratumError as exc:
            raise click.BadParameter(str(exc))
        b = collapse_to_belt(L, s, m, record=True)
        c = belt_to_circle(b.result, s, m, record=True)
        return trace_to_json(list(b.trace) + list(c.trace), f"L {s.format()} {format_subset(m)}")
    C, label = _build(obj, n, sigma, J)
    if fmt == "json":
        return poset_to_json(C, _name(obj, label))
    if fmt == "dot":
        return poset_to_dot(C, _name(obj, label))
    return rows_to_csv([poset_table_row(n, obj, label, C, homology_z2(C))], POSET_FIELDS)


@main.command()
@click.option("--n-range", "n_range", default="1..3", show_default=True)
@click.option("--out", default=None, type=click.Path(file_okay=False),
              help="directory for report.md and report.csv (default: print markdown)")
@click.option("--jobs", type=click.IntRange(1), default=1)
@click.option("--force", is_flag=True)
@click.option("--max-cells", type=click.IntRange(1), default=None)
@click.option("--timing", is_flag=True)
def report(n_range, out, jobs, force, max_cells, timing):
    """Reproduction tables: counts, f-vectors, Betti numbers, check outcomes."""
    ns = _n_values(None, n_range)
    rows = report_rows(ns, jobs=jobs, max_cells=max_cells, force=force, timing=timing)
    md = report_markdown(rows, timing)
    if out:
        d = Path(out)
        d.mkdir(parents=True, exist_ok=True)
        (d / "report.md").write_text(md)
        fields = list(REPORT_FIELDS) + (["seconds"] if timing else [])
        (d / "report.csv").write_text(rows_to_csv(rows, fields))
    else:
        click.echo(md, nl=False)


if __name__ == "__main__":
    main()
