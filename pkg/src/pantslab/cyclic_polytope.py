"""Cyclic polytopes C_d(r): facets by Gale evenness and by an exact hull oracle.

Vertices are labeled 1..r and sit at x(t) = (t, t^2, ..., t^d) with t = label.
Face sets are stored as bitmasks with bit ``i`` for vertex ``i``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .combinatorics import mask, members, popcount, submasks
from .labels import PlainFace
from .poset import FacePoset


def _check_params(d: int, r: int, *, even: bool = True) -> None:
    if d < 2 or r <= d:
        raise ValueError(f"need r > d >= 2, got d={d}, r={r}")
    if even and d % 2:
        raise ValueError(f"Gale evenness facets are implemented for even d, got d={d}")


def is_gale_even(S: frozenset[int] | set[int], r: int) -> bool:
    """Every two labels outside S are separated by an even number of labels in S."""
    outside = [t for t in range(1, r + 1) if t not in S]
    for a, b in zip(outside, outside[1:]):
        if sum(1 for t in range(a + 1, b) if t in S) % 2:
            return False
    return True


def gale_even_facets(d: int, r: int) -> list[int]:
    """Facets of C_d(r) as vertex bitmasks, in lexicographic order of their label tuples."""
    _check_params(d, r)
    out = []
    for S in combinations(range(1, r + 1), d):
        if is_gale_even(set(S), r):
            out.append(mask(S))
    return out


def moment_point(t, d: int) -> tuple[Fraction, ...]:
    t = Fraction(t)
    return tuple(t ** k for k in range(1, d + 1))


def det_exact(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    a = [list(map(Fraction, r)) for r in rows]
    m = len(a)
    det = Fraction(1)
    for c in range(m):
        p = next((i for i in range(c, m) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, m):
            f = a[i][c] * inv
            if f:
                for j in range(c, m):
                    a[i][j] -= f * a[c][j]
    return det


def hull_facets_bruteforce(points: list[tuple[Fraction, ...]]) -> list[tuple[int, ...]]:
    """Facets of the convex hull of points in general position, as index tuples.

    A d-subset spans a facet iff all remaining points lie strictly on one side
    of its affine hull (sign of the (d+1)x(d+1) orientation determinant).
    """
    d = len(points[0])
    out = []
    for S in combinations(range(len(points)), d):
        base = [[Fraction(1), *points[i]] for i in S]
        signs = set()
        for j in range(len(points)):
            if j in S:
                continue
            v = det_exact(base + [[Fraction(1), *points[j]]])
            if v == 0:
                raise ValueError("points are not in general position")
            signs.add(v > 0)
            if len(signs) > 1:
                break
        if len(signs) == 1:
            out.append(S)
    return out


def cyclic_polytope_facets_bruteforce(d: int, r: int) -> list[int]:
    """Independent oracle: facets of conv{x(1), ..., x(r)} by exact orientation tests."""
    _check_params(d, r, even=False)
    pts = [moment_point(t, d) for t in range(1, r + 1)]
    return sorted((mask(i + 1 for i in S) for S in hull_facets_bruteforce(pts)),
                  key=lambda m: members(m))


def cyclic_polytope_facets(d: int, r: int) -> FacePoset:
    """Face lattice of the simplicial polytope C_d(r), without the empty face.

    Cells are ``PlainFace(mask)``: every non-empty subset of a Gale-even facet
    (dimension |S|-1), plus the whole polytope (dimension d).
    """
    facets = gale_even_facets(d, r)
    faces = set()
    for F in facets:
        faces.update(submasks(F))
    cells = {PlainFace(S): popcount(S) - 1 for S in faces}
    top = PlainFace(mask(range(1, r + 1)))
    cells[top] = d
    covers = []
    for S in faces:
        if popcount(S) > 1:
            for e in members(S):
                covers.append((PlainFace(S & ~(1 << e)), PlainFace(S)))
    covers.extend((PlainFace(F), top) for F in facets)
    return FacePoset(cells, covers)
