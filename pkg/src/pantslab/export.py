"""Serialization: JSON posets, DOT Hasse diagrams, CSV tables, OFF geometry."""
from __future__ import annotations

import csv
import io
import json
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from .errors import UnsupportedFormatError
from .geometry import (affine_chart, all_two_partitions, perm_facet, perm_vertex,
                       zonotope_vertex)
from .poset import FacePoset

SCHEMA_VERSION = 1


# -- posets -------------------------------------------------------------------------

def poset_to_dict(C: FacePoset, name: str = "") -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "name": name,
        "cells": [{"label": str(c), "dim": d} for c, d in zip(C.labels, C.dims)],
        "covers": [[str(f), str(c)] for f, c in C.covers()],
    }


def poset_to_json(C: FacePoset, name: str = "") -> str:
    return json.dumps(poset_to_dict(C, name), indent=2) + "\n"


def poset_from_dict(data: dict) -> FacePoset:
    """Rebuild a poset with Opaque labels from exported JSON (round-trip helper)."""
    from .labels import Opaque
    cells = {Opaque(c["label"]): c["dim"] for c in data["cells"]}
    covers = [(Opaque(f), Opaque(c)) for f, c in data["covers"]]
    return FacePoset(cells, covers)


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_to_dot(C: FacePoset, name: str = "poset") -> str:
    lines = [f"digraph {_dot_id(name)} {{", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    for d in range(C.dimension + 1):
        cells = C.cells(d)
        lines.append("  { rank=same; " + " ".join(_dot_id(str(c)) + ";" for c in cells) + " }")
    for f, c in C.covers():
        lines.append(f"  {_dot_id(str(f))} -> {_dot_id(str(c))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def trace_to_json(trace: Sequence[tuple], name: str = "") -> str:
    pairs = [[str(f), "" if c is None else str(c)] for f, c in trace]
    return json.dumps({"schema": SCHEMA_VERSION, "name": name, "pairs": pairs}, indent=2) + "\n"


# -- tables ---------------------------------------------------------------------------

def rows_to_csv(rows: Iterable[dict], fieldnames: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(fieldnames), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _csv_value(r.get(k, "")) for k in fieldnames})
    return buf.getvalue()


def _csv_value(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return str(v)


def poset_table_row(n: int, obj: str, label: str, C: FacePoset, betti=None) -> dict:
    return {"n": n, "object": obj, "label": label, "cells": len(C),
            "f_vector": list(C.f_vector()), "betti": list(betti) if betti is not None else ""}


# -- OFF geometry ------------------------------------------------------------------------

def format_decimal(x: Fraction, precision: int = 6) -> str:
    with localcontext() as ctx:
        ctx.prec = 50
        d = (Decimal(x.numerator) / Decimal(x.denominator)).quantize(
            Decimal(1).scaleb(-precision), rounding=ROUND_HALF_EVEN)
    if d.is_zero():
        d = abs(d)  # no "-0.000"
    return format(d, "f")


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _orient(face: list[int], pts: list[tuple], center: tuple) -> list[int]:
    """Order a convex polygon's cycle counterclockwise seen from outside."""
    normal = (Fraction(0),) * 3
    for i in range(len(face)):
        a, b = pts[face[i]], pts[face[(i + 1) % len(face)]]
        normal = tuple(x + y for x, y in zip(normal, _cross(a, b)))
    fc = tuple(sum((pts[i][k] for i in face), Fraction(0)) / len(face) for k in range(3))
    if _dot(normal, _sub(fc, center)) < 0:
        return list(reversed(face))
    return face


def _cycle(vertices: list[int], adjacent) -> list[int]:
    cyc = [vertices[0]]
    prev = None
    while True:
        cur = cyc[-1]
        nxt = [v for v in vertices if v != prev and v != cur and adjacent(cur, v)]
        if not nxt:
            raise AssertionError("face is not a cycle")
        nxt = min(nxt)
        if nxt == cyc[0]:
            break
        prev = cur
        cyc.append(nxt)
    if len(cyc) != len(vertices):
        raise AssertionError("face is not a single cycle")
    return cyc


def perm_geometry(n: int) -> tuple[list[tuple[Fraction, ...]], list[list[int]]]:
    """Vertices (chart y_i = x_i - x_0, units of pi) and faces of Perm for n = 3."""
    if n != 3:
        raise UnsupportedFormatError("OFF export is only available for n = 3")
    orders = list(permutations(range(n + 1)))
    vecs = [perm_vertex(o) for o in orders]
    pts = [affine_chart(v) for v in vecs]
    center = tuple(sum((p[k] for p in pts), Fraction(0)) / len(pts) for k in range(3))

    def adjacent(a, b):
        oa, ob = orders[a], orders[b]
        diff = [t for t in range(n + 1) if oa[t] != ob[t]]
        return len(diff) == 2 and diff[1] == diff[0] + 1

    faces = []
    for p in all_two_partitions(n):
        f = perm_facet(p)
        on = [i for i, v in enumerate(vecs) if f.is_tight(v)]
        faces.append(_orient(_cycle(on, adjacent), pts, center))
    return pts, faces


def zonotope_geometry(n: int) -> tuple[list[tuple[Fraction, ...]], list[list[int]]]:
    """The 14 vertices and 12 rhombi of the zonotope for n = 3 (chart as for Perm)."""
    if n != 3:
        raise UnsupportedFormatError("OFF export is only available for n = 3")
    parts = all_two_partitions(n)
    vecs = [zonotope_vertex(p) for p in parts]
    pts = [affine_chart(v) for v in vecs]
    center = tuple(sum((p[k] for p in pts), Fraction(0)) / len(pts) for k in range(3))
    index = {p.I_plus: i for i, p in enumerate(parts)}
    faces = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            a, b = [t for t in range(n + 1) if t not in (i, j)]
            for one in (a, b):
                base = 1 << one
                cyc = [base, base | 1 << i, base | 1 << i | 1 << j, base | 1 << j]
                faces.append(_orient([index[m] for m in cyc], pts, center))
    return pts, faces


def to_off(pts: list[tuple[Fraction, ...]], faces: list[list[int]], precision: int = 6) -> str:
    edges = set()
    for f in faces:
        for a, b in zip(f, f[1:] + f[:1]):
            edges.add((min(a, b), max(a, b)))
    lines = ["OFF", f"{len(pts)} {len(faces)} {len(edges)}"]
    for p in pts:
        lines.append(" ".join(format_decimal(x, precision) for x in p))
    for f in faces:
        lines.append(" ".join(str(x) for x in [len(f), *f]))
    return "\n".join(lines) + "\n"


def geometry_off(obj: str, n: int, precision: int = 6) -> str:
    if obj == "perm":
        return to_off(*perm_geometry(n), precision=precision)
    if obj == "zonotope":
        return to_off(*zonotope_geometry(n), precision=precision)
    raise UnsupportedFormatError(f"no OFF geometry for object {obj!r}")
