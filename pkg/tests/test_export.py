import csv
import io
import json
from fractions import Fraction as F
from pathlib import Path

import jsonschema
import pytest

from pantslab.collapse import replay
from pantslab.combinatorics import standard_partition
from pantslab.complement import build_L, collapse_to_belt
from pantslab.complexes import skeleton_Sigma, stratum_lattice
from pantslab.errors import UnsupportedFormatError
from pantslab.export import (format_decimal, geometry_off, perm_geometry, poset_from_dict,
                             poset_table_row, poset_to_dict, poset_to_dot, poset_to_json,
                             rows_to_csv, trace_to_json, zonotope_geometry)

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "poset.schema.json").read_text())


def test_json_matches_schema_and_round_trips():
    L = build_L(standard_partition(2), 0b111)
    text = poset_to_json(L, "L")
    data = json.loads(text)
    jsonschema.validate(data, SCHEMA)
    assert len(data["cells"]) == 36
    back = poset_from_dict(data)
    assert back.f_vector() == L.f_vector()
    assert len(back.covers()) == len(L.covers())
    assert poset_to_json(L, "L") == text


def test_json_labels_are_canonical_strings():
    data = poset_to_dict(skeleton_Sigma(2))
    assert [c["label"] for c in data["cells"]] == [
        "Sigma<0|1|2>", "Sigma<0|2|1>", "Sigma<0|1,2>", "Sigma<0,1|2>", "Sigma<0,2|1>"]
    assert ["Sigma<0|1|2>", "Sigma<0|1,2>"] in data["covers"]


def test_dot_lists_every_cover():
    P = stratum_lattice(standard_partition(2), 0b111)
    dot = poset_to_dot(P, "hexagon")
    assert dot.startswith('digraph "hexagon" {')
    assert dot.count(" -> ") == len(P.covers()) == 18
    assert dot.rstrip().endswith("}")


def test_csv_table():
    S = skeleton_Sigma(2)
    text = rows_to_csv([poset_table_row(2, "sigma-faces", "", S, (1, 2))],
                       ("n", "object", "label", "cells", "f_vector", "betti"))
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows == [{"n": "2", "object": "sigma-faces", "label": "", "cells": "5",
                     "f_vector": "2 3", "betti": "1 2"}]


def test_format_decimal():
    assert format_decimal(F(1, 3), 4) == "0.3333"
    assert format_decimal(F(-1, 10 ** 9)) == "0.000000"
    assert format_decimal(F(5, 2), 1) == "2.5"


def parse_off(text):
    lines = text.splitlines()
    assert lines[0] == "OFF"
    v, f, e = map(int, lines[1].split())
    verts = [tuple(map(float, l.split())) for l in lines[2:2 + v]]
    faces = [list(map(int, l.split()))[1:] for l in lines[2 + v:2 + v + f]]
    assert len(lines) == 2 + v + f
    return verts, faces, e


@pytest.mark.parametrize("obj,counts,sizes", [
    ("perm", (24, 14, 36), {4: 6, 6: 8}),
    ("zonotope", (14, 12, 24), {4: 12}),
])
def test_off_geometry(obj, counts, sizes):
    verts, faces, e = parse_off(geometry_off(obj, 3))
    assert (len(verts), len(faces), e) == counts
    assert len(verts) - e + len(faces) == 2
    hist = {}
    for f in faces:
        hist[len(f)] = hist.get(len(f), 0) + 1
    assert hist == sizes
    # consistent orientation: every directed edge is used exactly once, its reverse once
    directed = [(a, b) for f in faces for a, b in zip(f, f[1:] + f[:1])]
    assert len(set(directed)) == len(directed)
    assert {(b, a) for a, b in directed} == set(directed)


@pytest.mark.parametrize("build", [perm_geometry, zonotope_geometry])
def test_off_faces_point_outward_exactly(build):
    pts, faces = build(3)
    center = [sum(p[k] for p in pts) / len(pts) for k in range(3)]
    for f in faces:
        a, b, c = (pts[i] for i in f[:3])
        u = [b[k] - a[k] for k in range(3)]
        v = [c[k] - b[k] for k in range(3)]
        nrm = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
        assert sum(nrm[k] * (a[k] - center[k]) for k in range(3)) > 0
        # planarity: every vertex of the face lies in the plane
        for i in f:
            assert sum(nrm[k] * (pts[i][k] - a[k]) for k in range(3)) == 0


def test_off_requires_n3():
    with pytest.raises(UnsupportedFormatError):
        geometry_off("perm", 2)
    with pytest.raises(UnsupportedFormatError):
        geometry_off("zonotope", 4)
    with pytest.raises(UnsupportedFormatError):
        geometry_off("ober", 3)


def test_off_is_bit_stable():
    assert geometry_off("perm", 3, 8) == geometry_off("perm", 3, 8)


def test_trace_json_replays():
    s = standard_partition(2)
    L = build_L(s, 0b111)
    b = collapse_to_belt(L, s, 0b111, record=True)
    data = json.loads(trace_to_json(b.trace, "belt"))
    assert len(data["pairs"]) == len(b.trace) == (len(L) - len(b.result)) // 2
    by_name = {str(c): c for c in L.labels}
    pairs = [(by_name[f], by_name[c]) for f, c in data["pairs"]]
    assert replay(L, pairs) == b.result
