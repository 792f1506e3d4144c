"""Isomorphism and anti-isomorphism search between face posets.

Colour refinement on the Hasse diagram (separately along facets and
cofacets), followed by individualization and backtracking when classes do
not split on their own.  Any bijection found is re-verified against the
covering relations before it is returned.
"""
from __future__ import annotations

from typing import Literal

from .poset import FacePoset

Orientation = Literal["preserving", "reversing"]


def is_isomorphic(A: FacePoset, B: FacePoset, orientation: Orientation = "preserving",
                  max_nodes: int = 100_000) -> dict | None:
    """Return a cover-preserving (or cover-reversing) bijection A -> B, or None."""
    if orientation not in ("preserving", "reversing"):
        raise ValueError(f"unknown orientation {orientation!r}")
    if len(A) != len(B):
        return None
    if len(A) == 0:
        return {}
    if orientation == "reversing":
        top = min(A.dims) + B.dimension
        target = B.opposite(top)
    else:
        target = B
    if sorted(A.dims) != sorted(target.dims):
        return None
    found = _search_iso(A, target, max_nodes)
    if found is None:
        return None
    mapping = {A.labels[i]: target.labels[j] for i, j in found.items()}
    if not verify_isomorphism(A, B, mapping, orientation):
        raise AssertionError("internal error: isomorphism candidate failed verification")
    return mapping


def verify_isomorphism(A: FacePoset, B: FacePoset, mapping: dict,
                       orientation: Orientation = "preserving") -> bool:
    if len(mapping) != len(A) or len(set(mapping.values())) != len(B) or len(A) != len(B):
        return False
    if any(b not in B for b in mapping.values()):
        return False
    covers_a = {(mapping[f], mapping[c]) for f, c in A.covers()}
    covers_b = set(B.covers())
    if orientation == "reversing":
        covers_b = {(c, f) for f, c in covers_b}
    if covers_a != covers_b:
        return False
    offsets = set()
    for a, b in mapping.items():
        da, db = A.dim(a), B.dim(b)
        offsets.add(da - db if orientation == "preserving" else da + db)
    return len(offsets) == 1 and (orientation == "reversing" or offsets == {0})


def _search_iso(A: FacePoset, B: FacePoset, max_nodes: int) -> dict[int, int] | None:
    nA = len(A)
    down = [list(d) for d in A.down] + [[nA + i for i in d] for d in B.down]
    up = [list(u) for u in A.up] + [[nA + i for i in u] for u in B.up]
    dims = list(A.dims) + list(B.dims)
    init = [(dims[v], len(down[v]), len(up[v])) for v in range(len(dims))]
    colors = _relabel(init)
    budget = [max_nodes]

    def refine(col: list[int]) -> list[int]:
        nclasses = len(set(col))
        while True:
            sig = [(col[v], tuple(sorted(col[u] for u in down[v])),
                    tuple(sorted(col[u] for u in up[v]))) for v in range(len(col))]
            new = _relabel(sig)
            k = len(set(new))
            if k == nclasses:
                return new
            col, nclasses = new, k

    def balanced(col: list[int]) -> bool:
        ca: dict[int, int] = {}
        for v in range(nA):
            ca[col[v]] = ca.get(col[v], 0) + 1
        for v in range(nA, len(col)):
            c = col[v]
            if c not in ca:
                return False
            ca[c] -= 1
        return not any(ca.values())

    def rec(col: list[int]) -> dict[int, int] | None:
        budget[0] -= 1
        if budget[0] < 0:
            return None
        col = refine(col)
        if not balanced(col):
            return None
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(col):
            classes.setdefault(c, []).append(v)
        open_classes = [(len(vs), c) for c, vs in classes.items() if len(vs) > 2]
        if not open_classes:
            mapping = {}
            for vs in classes.values():
                a, b = vs
                mapping[a] = b - nA
            return mapping if _covers_match(A, B, mapping) else None
        _, c = min(open_classes)
        members = classes[c]
        a = members[0]
        fresh = max(col) + 1
        for b in members:
            if b < nA:
                continue
            trial = list(col)
            trial[a] = trial[b] = fresh
            res = rec(trial)
            if res is not None:
                return res
        return None

    return rec(colors)


def _relabel(sig: list) -> list[int]:
    table = {s: i for i, s in enumerate(sorted(set(sig)))}
    return [table[s] for s in sig]


def _covers_match(A: FacePoset, B: FacePoset, m: dict[int, int]) -> bool:
    for j, ds in enumerate(A.down):
        if sorted(m[i] for i in ds) != sorted(B.down[m[j]]):
            return False
    return True
