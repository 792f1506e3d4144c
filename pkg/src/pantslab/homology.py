"""Cellular homology with coefficients in the two-element field.

For a regular CW complex the incidence number of a facet in a cell is 1
mod 2, so the boundary matrices are read off the covering relation.
Columns are stored as int bitsets and reduced by the usual pivot
elimination.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GradingError
from .poset import FacePoset, check_graded


@dataclass
class Z2Matrix:
    rows: int
    cols: int
    entries: set[tuple[int, int]] = field(default_factory=set)

    def __post_init__(self):
        for r, c in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r}, {c}) out of bounds")

    def columns(self) -> list[int]:
        out = [0] * self.cols
        for r, c in self.entries:
            out[c] ^= 1 << r
        return out

    def rank(self) -> int:
        return gf2_rank(self.columns())


def gf2_rank(columns) -> int:
    pivots: dict[int, int] = {}
    r = 0
    for col in columns:
        while col:
            low = col.bit_length() - 1
            p = pivots.get(low)
            if p is None:
                pivots[low] = col
                r += 1
                break
            col ^= p
    return r


def boundary_columns(C: FacePoset, d: int) -> list[int]:
    """Columns of the boundary map from dim-`d` cells to dim-`d-1` cells."""
    local = {}
    for i, dim in enumerate(C.dims):
        if dim == d - 1:
            local[i] = len(local)
    cols = []
    for j, dim in enumerate(C.dims):
        if dim == d:
            col = 0
            for i in C.down[j]:
                col |= 1 << local[i]
            cols.append(col)
    return cols


def boundary_matrix(C: FacePoset, d: int) -> Z2Matrix:
    cols = boundary_columns(C, d)
    rows = sum(1 for x in C.dims if x == d - 1)
    entries = {(r, c) for c, col in enumerate(cols) for r in range(col.bit_length()) if col >> r & 1}
    return Z2Matrix(rows, len(cols), entries)


def homology_z2(C: FacePoset) -> tuple[int, ...]:
    """Betti numbers over the two-element field, one entry per degree 0..dim."""
    check_graded(C)
    top = C.dimension
    if top < 0:
        return ()
    counts = [0] * (top + 1)
    for d in C.dims:
        counts[d] += 1
    ranks = [0] * (top + 2)
    for d in range(1, top + 1):
        ranks[d] = gf2_rank(boundary_columns(C, d))
    _check_chain_complex(C, top)
    return tuple(counts[d] - ranks[d] - ranks[d + 1] for d in range(top + 1))


def _check_chain_complex(C: FacePoset, top: int) -> None:
    # over GF(2) a regular CW poset has every interval of length 2 a diamond
    for j, ds in enumerate(C.down):
        if C.dims[j] < 2:
            continue
        hits: dict[int, int] = {}
        for i in ds:
            for h in C.down[i]:
                hits[h] = hits.get(h, 0) ^ 1
        if any(hits.values()):
            raise GradingError(
                f"boundary of boundary is non-zero at {C.labels[j]}; not a regular CW poset")


def boundary_sphere_betti(d: int) -> tuple[int, ...]:
    """Betti numbers of the (d-1)-sphere, length max(d, 1)."""
    if d == 1:
        return (2,)
    return (1,) + (0,) * (d - 2) + (1,)


def order_complex_homology(C: FacePoset, cell) -> tuple[int, ...]:
    """Homology of the order complex of the proper faces of `cell`."""
    faces = sorted(C.closure_indices([C.index[cell]]) - {C.index[cell]})
    fs = set(faces)
    # chains as strictly increasing sequences along the face relation
    above = {i: set() for i in faces}
    for i in faces:
        stack = list(C.up[i])
        while stack:
            j = stack.pop()
            if j in fs and j not in above[i]:
                above[i].add(j)
                stack.extend(C.up[j])
    chains_by_len: list[list[tuple[int, ...]]] = [[(i,) for i in faces]]
    while True:
        nxt = []
        for ch in chains_by_len[-1]:
            for j in above[ch[-1]]:
                nxt.append(ch + (j,))
        if not nxt:
            break
        chains_by_len.append(nxt)
    counts = [len(x) for x in chains_by_len]
    index = [{ch: k for k, ch in enumerate(level)} for level in chains_by_len]
    ranks = [0] * (len(counts) + 1)
    for d in range(1, len(counts)):
        cols = []
        for ch in chains_by_len[d]:
            col = 0
            for t in range(len(ch)):
                col ^= 1 << index[d - 1][ch[:t] + ch[t + 1:]]
            cols.append(col)
        ranks[d] = gf2_rank(cols)
    return tuple(counts[d] - ranks[d] - ranks[d + 1] for d in range(len(counts)))


def is_regular_cell(C: FacePoset, cell, max_faces: int = 400) -> bool | None:
    """Check that the proper faces of `cell` form a homology sphere.

    Returns None when the closure is larger than `max_faces` (skipped).
    """
    d = C.dim(cell)
    if d == 0:
        return True
    if len(C.closure(cell)) - 1 > max_faces:
        return None
    return order_complex_homology(C, cell) == boundary_sphere_betti(d)


def regularity_report(C: FacePoset, max_faces: int = 400) -> dict:
    checked = failed = skipped = 0
    witness = None
    for c in C.labels:
        ok = is_regular_cell(C, c, max_faces)
        if ok is None:
            skipped += 1
        elif ok:
            checked += 1
        else:
            failed += 1
            if witness is None:
                witness = str(c)
    return {"checked": checked, "failed": failed, "skipped": skipped, "witness": witness}
