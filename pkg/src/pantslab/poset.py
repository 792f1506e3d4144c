"""Graded face posets of regular CW complexes and basic constructions."""
from __future__ import annotations

from collections import Counter
from typing import Callable, Hashable, Iterable, Iterator, Mapping

from .combinatorics import members, popcount, submasks
from .errors import ClosureViolationError, GradingError
from .labels import Interval, PlainFace, Product, SimplexFace


class FacePoset:
    """Cells with dimensions and codimension-one covering relations.

    Cells are stored in the order (dim, label key).  The poset is treated
    as immutable once built; all constructions return new posets.
    """

    __slots__ = ("labels", "dims", "index", "down", "up", "_sorted_by_key")

    def __init__(self, cells: Mapping[Hashable, int], covers: Iterable[tuple[Hashable, Hashable]] = ()):
        labels = sorted(cells, key=lambda c: (cells[c], c.key()))
        self.labels = tuple(labels)
        self.dims = tuple(cells[c] for c in labels)
        self.index = {c: i for i, c in enumerate(labels)}
        down = [[] for _ in labels]
        up = [[] for _ in labels]
        seen = set()
        for f, c in covers:
            try:
                i, j = self.index[f], self.index[c]
            except KeyError as exc:
                raise GradingError(f"cover ({f}, {c}) refers to a missing cell") from exc
            if self.dims[j] != self.dims[i] + 1:
                raise GradingError(
                    f"cover ({f}, {c}) joins dimensions {self.dims[i]} and {self.dims[j]}")
            if (i, j) in seen:
                continue
            seen.add((i, j))
            down[j].append(i)
            up[i].append(j)
        self.down = tuple(tuple(sorted(d)) for d in down)
        self.up = tuple(tuple(sorted(u)) for u in up)
        self._sorted_by_key = None

    @classmethod
    def _from_indexed(cls, labels, dims, down):
        """Build from already ordered labels and index-based facet lists."""
        cells = dict(zip(labels, dims))
        covers = [(labels[i], labels[j]) for j, ds in enumerate(down) for i in ds]
        return cls(cells, covers)

    # -- queries --------------------------------------------------------
    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label) -> bool:
        return label in self.index

    def __iter__(self) -> Iterator:
        return iter(self.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FacePoset):
            return NotImplemented
        return (self.labels == other.labels and self.dims == other.dims
                and self.down == other.down)

    def __repr__(self) -> str:
        return f"FacePoset(f={self.f_vector()})"

    def dim(self, label) -> int:
        return self.dims[self.index[label]]

    @property
    def dimension(self) -> int:
        return max(self.dims, default=-1)

    def facets(self, label) -> list:
        return [self.labels[i] for i in self.down[self.index[label]]]

    def cofacets(self, label) -> list:
        return [self.labels[i] for i in self.up[self.index[label]]]

    def cells(self, dim: int | None = None) -> list:
        if dim is None:
            return list(self.labels)
        return [c for c, d in zip(self.labels, self.dims) if d == dim]

    def covers(self) -> list[tuple]:
        return [(self.labels[i], self.labels[j]) for j, ds in enumerate(self.down) for i in ds]

    def f_vector(self) -> tuple[int, ...]:
        cnt = Counter(self.dims)
        return tuple(cnt[d] for d in range(self.dimension + 1))

    def maximal_cells(self) -> list:
        return [self.labels[i] for i in range(len(self)) if not self.up[i]]

    def closure_indices(self, idx: Iterable[int]) -> set[int]:
        out = set()
        stack = list(idx)
        while stack:
            i = stack.pop()
            if i in out:
                continue
            out.add(i)
            stack.extend(self.down[i])
        return out

    def closure(self, label) -> set:
        """All faces of `label`, including itself."""
        return {self.labels[i] for i in self.closure_indices([self.index[label]])}

    def is_face(self, low, high) -> bool:
        return self.index[low] in self.closure_indices([self.index[high]])

    def keyed_order(self) -> list[int]:
        """Cell indices sorted by label key alone (ignoring dimension)."""
        if self._sorted_by_key is None:
            self._sorted_by_key = sorted(range(len(self)), key=lambda i: self.labels[i].key())
        return self._sorted_by_key

    def relabel(self, fn: Callable) -> "FacePoset":
        new = [fn(c) for c in self.labels]
        if len(set(new)) != len(new):
            raise ValueError("relabeling is not injective")
        return FacePoset._from_indexed(new, self.dims, self.down)

    def opposite(self, top: int | None = None) -> "FacePoset":
        """The order-reversed poset, with dimension ``top - dim``."""
        if top is None:
            top = self.dimension
        cells = {c: top - d for c, d in zip(self.labels, self.dims)}
        covers = [(c, f) for f, c in self.covers()]
        return FacePoset(cells, covers)


# -- constructions ------------------------------------------------------------

def point() -> FacePoset:
    return FacePoset({PlainFace(1): 0})


def plain_simplex(J: int) -> FacePoset:
    """Face poset of the simplex on vertex set `J` (non-empty faces)."""
    if J == 0:
        raise ValueError("simplex needs a non-empty vertex set")
    cells = {PlainFace(A): popcount(A) - 1 for A in submasks(J)}
    covers = []
    for A in cells:
        if popcount(A.J) > 1:
            for e in members(A.J):
                covers.append((PlainFace(A.J & ~(1 << e)), A))
    return FacePoset(cells, covers)


def dsd_simplex(J: int) -> FacePoset:
    """Dualizing subdivision of the simplex on `J`: cells ``(I, J')`` with ``I <= J' <= J``."""
    if J == 0:
        raise ValueError("dsd_simplex needs a non-empty J")
    cells = {}
    covers = []
    for Jp in submasks(J):
        for I in submasks(Jp):
            c = SimplexFace(I, Jp)
            cells[c] = popcount(Jp) - popcount(I)
            for e in members(Jp & ~I):
                covers.append((SimplexFace(I | 1 << e, Jp), c))
                covers.append((SimplexFace(I, Jp & ~(1 << e)), c))
    return FacePoset(cells, covers)


def dsd(P: FacePoset) -> FacePoset:
    """Dualizing subdivision of a polytope face poset: intervals ``[F, G]``, ``F <= G``."""
    cells = {}
    covers = []
    below = {c: P.closure(c) for c in P}
    for G in P:
        gd = P.dim(G)
        for F in below[G]:
            cells[Interval(F, G)] = gd - P.dim(F)
    for iv in cells:
        F, G = iv.low, iv.high
        for H in P.cofacets(F):
            if H in below[G]:
                covers.append((Interval(H, G), iv))
        for H in P.facets(G):
            if F in below[H]:
                covers.append((Interval(F, H), iv))
    return FacePoset(cells, covers)


def product(A: FacePoset, B: FacePoset) -> FacePoset:
    cells = {}
    covers = []
    for a, da in zip(A.labels, A.dims):
        for b, db in zip(B.labels, B.dims):
            c = Product(a, b)
            cells[c] = da + db
            for f in A.facets(a):
                covers.append((Product(f, b), c))
            for g in B.facets(b):
                covers.append((Product(a, g), c))
    return FacePoset(cells, covers)


def subcomplex(C: FacePoset, keep: Callable[[object], bool]) -> FacePoset:
    """Induced poset on the cells satisfying `keep`; `keep` must be downward closed."""
    kept = [keep(c) for c in C.labels]
    for j, ok in enumerate(kept):
        if ok:
            for i in C.down[j]:
                if not kept[i]:
                    raise ClosureViolationError(C.labels[j], C.labels[i])
    cells = {c: d for c, d, ok in zip(C.labels, C.dims, kept) if ok}
    covers = [(C.labels[i], C.labels[j]) for j, ds in enumerate(C.down) if kept[j]
              for i in ds]
    return FacePoset(cells, covers)


def generated_subcomplex(C: FacePoset, generators: Iterable) -> FacePoset:
    """Smallest subcomplex containing the given cells."""
    idx = C.closure_indices(C.index[g] for g in generators)
    keep = {C.labels[i] for i in idx}
    return subcomplex(C, keep.__contains__)


def euler_characteristic(C: FacePoset) -> int:
    return sum(1 if d % 2 == 0 else -1 for d in C.dims)


def boundary_subcomplex(C: FacePoset, cell) -> FacePoset:
    """Proper faces of `cell` as a subcomplex."""
    faces = C.closure(cell) - {cell}
    return subcomplex(C, faces.__contains__)


def check_graded(C: FacePoset) -> None:
    for j, ds in enumerate(C.down):
        for i in ds:
            if C.dims[j] != C.dims[i] + 1:
                raise GradingError(f"cover ({C.labels[i]}, {C.labels[j]}) is not codimension one")
    for j in range(len(C)):
        if C.dims[j] > 0 and not C.down[j]:
            raise GradingError(f"cell {C.labels[j]} of dim {C.dims[j]} has no facets")


def cycle_graph(k: int) -> FacePoset:
    from .labels import Opaque
    cells = {Opaque(f"v{i}"): 0 for i in range(k)}
    covers = []
    for i in range(k):
        e = Opaque(f"e{i}")
        cells[e] = 1
        covers += [(Opaque(f"v{i}"), e), (Opaque(f"v{(i + 1) % k}"), e)]
    return FacePoset(cells, covers)


def theta_graph() -> FacePoset:
    from .labels import Opaque
    cells = {Opaque("a"): 0, Opaque("b"): 0}
    covers = []
    for i in range(3):
        e = Opaque(f"e{i}")
        cells[e] = 1
        covers += [(Opaque("a"), e), (Opaque("b"), e)]
    return FacePoset(cells, covers)


def polygon(k: int) -> FacePoset:
    """Face poset of a k-gon including its 2-cell."""
    from .labels import Opaque
    C = cycle_graph(k)
    cells = dict(zip(C.labels, C.dims))
    top = Opaque("face")
    cells[top] = 2
    covers = C.covers() + [(Opaque(f"e{i}"), top) for i in range(k)]
    return FacePoset(cells, covers)

