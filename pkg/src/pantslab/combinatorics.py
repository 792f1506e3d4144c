"""Subsets, cyclic partitions and the graphical code.

Subsets of the ground set ``{0, ..., n}`` are stored as int bitmasks.  A
cyclic partition is a cyclically ordered sequence of pairwise disjoint
non-empty parts covering the ground set; it is kept in the canonical
rotation in which the part containing 0 comes first.  Reflections are
*not* identified: ``<0|1|2>`` and ``<0|2|1>`` are different partitions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

from .errors import MalformedPartitionError

GHOST_NAME = "g"


# -- bitmask helpers ---------------------------------------------------------

def mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


@lru_cache(maxsize=65536)
def members(m: int) -> tuple[int, ...]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def popcount(m: int) -> int:
    return m.bit_count()


def full_mask(size: int) -> int:
    return (1 << size) - 1


def submasks(m: int, nonempty: bool = True) -> tuple[int, ...]:
    """All submasks of `m` in increasing numeric order."""
    out = _submasks(m)
    return out[1:] if nonempty else out


@lru_cache(maxsize=4096)
def _submasks(m: int) -> tuple[int, ...]:
    out = []
    s = m
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & m
    return tuple(sorted(out))


def format_subset(m: int, ghost: int | None = None) -> str:
    return "{" + ",".join(_elem_name(e, ghost) for e in members(m)) + "}"


def _elem_name(e: int, ghost: int | None) -> str:
    return GHOST_NAME if ghost is not None and e == ghost else str(e)


# -- cyclic partitions -------------------------------------------------------

@dataclass(frozen=True)
class CyclicPartition:
    """A cyclic partition of ``{0, ..., size-1}`` in canonical rotation.

    `parts` holds bitmasks; the part containing element 0 is first.
    Use :func:`canonicalize` to build one from arbitrary input.
    """

    size: int
    parts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return self.size - 1

    def part_of(self, element: int) -> int:
        bit = 1 << element
        for i, p in enumerate(self.parts):
            if p & bit:
                return i
        raise ValueError(f"{element} not in ground set")

    def as_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(members(p) for p in self.parts)

    def key(self) -> tuple:
        return (self.size, len(self.parts), self.as_sets())

    def format(self, ghost: int | None = None) -> str:
        return "<" + "|".join(
            ",".join(_elem_name(e, ghost) for e in members(p)) for p in self.parts
        ) + ">"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"CyclicPartition({self.format()})"


def canonicalize(parts: Sequence[Iterable[int] | int], size: int | None = None) -> CyclicPartition:
    """Validate `parts` and rotate so that the part containing 0 is first.

    Parts may be given as iterables of elements or as bitmasks.  If `size`
    is omitted it is inferred as ``max element + 1``.
    """
    masks = [p if isinstance(p, int) else mask(p) for p in parts]
    if not masks:
        raise MalformedPartitionError("a cyclic partition needs at least one part")
    union = 0
    for m in masks:
        if m == 0:
            raise MalformedPartitionError("empty part")
        if union & m:
            raise MalformedPartitionError(f"overlapping parts: element(s) {members(union & m)} repeated")
        union |= m
    if size is None:
        size = union.bit_length()
    if union != full_mask(size):
        missing = members(full_mask(size) & ~union)
        extra = members(union & ~full_mask(size))
        raise MalformedPartitionError(f"parts do not cover the ground set (missing {missing}, extra {extra})")
    r = next(i for i, m in enumerate(masks) if m & 1)
    return CyclicPartition(size, tuple(masks[r:] + masks[:r]))


def parse_partition(text: str) -> CyclicPartition:
    """Parse ``"<0|1,2>"`` (angle brackets optional)."""
    body = text.strip().strip("<>")
    parts = []
    for chunk in body.split("|"):
        chunk = chunk.strip()
        if not chunk:
            raise MalformedPartitionError(f"empty part in {text!r}")
        parts.append([int(x) for x in chunk.replace(" ", ",").split(",") if x])
    return canonicalize(parts)


def parse_subset(text: str) -> int:
    body = text.strip().strip("{}")
    return mask(int(x) for x in body.replace(" ", ",").split(",") if x)


def rotate(parts: Sequence[int], r: int) -> tuple[int, ...]:
    r %= len(parts)
    return tuple(parts[r:]) + tuple(parts[:r])


def standard_partition(n: int) -> CyclicPartition:
    """The full cyclic order <0|1|...|n>."""
    return CyclicPartition(n + 1, tuple(1 << i for i in range(n + 1)))


def trivial_partition(size: int) -> CyclicPartition:
    return CyclicPartition(size, (full_mask(size),))


def refines(fine: CyclicPartition, coarse: CyclicPartition) -> bool:
    """True iff `coarse` arises from `fine` by merging cyclically consecutive parts."""
    if fine.size != coarse.size:
        return False
    k = len(coarse.parts)
    if k == 1:
        return True
    if len(fine.parts) < k:
        return False
    labels = []
    for p in fine.parts:
        for j, q in enumerate(coarse.parts):
            if p & q == p:
                labels.append(j)
                break
        else:
            return False
    # rotate so that a run boundary sits at position 0, then collapse runs
    m = len(labels)
    start = next((i for i in range(m) if labels[i] != labels[i - 1]), None)
    if start is None:
        return False
    seq = labels[start:] + labels[:start]
    runs = [seq[0]]
    for x in seq[1:]:
        if x != runs[-1]:
            runs.append(x)
    if len(runs) != k:
        return False
    r = runs.index(0)
    return runs[r:] + runs[:r] == list(range(k))


def divides(sigma: CyclicPartition, J: int) -> bool:
    """True iff `J` meets at least two parts of `sigma`."""
    hit = 0
    for p in sigma.parts:
        if p & J:
            hit += 1
            if hit >= 2:
                return True
    return False


def decyclizations(sigma: CyclicPartition) -> list[tuple[int, ...]]:
    """The linear orders of parts obtained by choosing each part as the first."""
    return [rotate(sigma.parts, r) for r in range(len(sigma.parts))]


def merge_at(sigma: CyclicPartition, s: int) -> CyclicPartition:
    """Merge part `s` with its cyclic successor."""
    parts = list(sigma.parts)
    k = len(parts)
    if k < 2:
        raise ValueError("cannot merge a one-part partition")
    t = (s + 1) % k
    merged = parts[s] | parts[t]
    if t == 0:
        new = [merged] + parts[1:s]
    else:
        new = parts[:s] + [merged] + parts[t + 1:]
    return canonicalize(new, sigma.size)


def coarsenings_one_step(sigma: CyclicPartition) -> list[CyclicPartition]:
    if len(sigma.parts) < 2:
        return []
    if len(sigma.parts) == 2:
        return [trivial_partition(sigma.size)]
    return [merge_at(sigma, s) for s in range(len(sigma.parts))]


def coarsen_by_vertices(sigma: CyclicPartition, V: int) -> tuple[int, ...]:
    """Parts of the coarsening of `sigma` that keeps the separating vertices in `V`.

    Vertex ``s`` of `sigma` sits between part ``s`` and part ``s+1``.  The
    result is a tuple of part masks in cyclic order starting after the
    first kept vertex (not canonicalized); a single part when ``|V| <= 1``.
    """
    k = len(sigma.parts)
    kept = [s for s in range(k) if V >> s & 1]
    if len(kept) <= 1:
        return (full_mask(sigma.size),)
    out = []
    for a, b in zip(kept, kept[1:] + [kept[0] + k]):
        m = 0
        for s in range(a + 1, b + 1):
            m |= sigma.parts[s % k]
        out.append(m)
    return tuple(out)


def vertex_coarsening(sigma: CyclicPartition, V: int) -> CyclicPartition:
    return canonicalize(coarsen_by_vertices(sigma, V), sigma.size)


def separated_by_vertices(sigma: CyclicPartition, V: int, J: int) -> bool:
    """True iff `J` meets at least two arcs cut out by the vertex set `V` of `sigma`."""
    hit = 0
    for arc in coarsen_by_vertices(sigma, V):
        if arc & J:
            hit += 1
            if hit >= 2:
                return True
    return False


def coarsening_vertex_set(sigma: CyclicPartition, coarse: CyclicPartition) -> int:
    """The vertex set V of `sigma` with ``vertex_coarsening(sigma, V) == coarse``."""
    if not refines(sigma, coarse):
        raise ValueError(f"{coarse} is not a coarsening of {sigma}")
    if len(coarse) == 1:
        raise ValueError("one-part coarsenings have no unique vertex set")
    V = 0
    k = len(sigma.parts)
    for s in range(k):
        a = coarse.part_of(members(sigma.parts[s])[0])
        b = coarse.part_of(members(sigma.parts[(s + 1) % k])[0])
        if a != b:
            V |= 1 << s
    return V


@lru_cache(maxsize=None)
def _cyclic_partitions(size: int) -> tuple[CyclicPartition, ...]:
    # brute force: cyclic words of parts with 0's part first; the remaining
    # parts are an ordered set partition of the leftover elements
    out = []
    full = full_mask(size)
    for first in submasks(full):
        if not first & 1:
            continue
        for rest in _ordered_set_partitions(full & ~first):
            out.append(CyclicPartition(size, (first,) + rest))
    out.sort(key=lambda s: s.as_sets())
    return tuple(out)


def _ordered_set_partitions(m: int) -> Iterator[tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    for head in submasks(m):
        for tail in _ordered_set_partitions(m & ~head):
            yield (head,) + tail


def enumerate_cyclic_partitions(n: int, min_parts: int = 1) -> list[CyclicPartition]:
    """All cyclic partitions of ``{0..n}`` with at least `min_parts` parts.

    Order: lexicographic on the canonical sequence of parts (each part as a
    sorted tuple of its elements).
    """
    if min_parts < 1:
        raise ValueError("min_parts must be >= 1")
    return [s for s in _cyclic_partitions(n + 1) if len(s) >= min_parts]


def coarsenings(sigma: CyclicPartition, min_parts: int = 1) -> list[CyclicPartition]:
    """All coarsenings of `sigma` (including itself) with >= `min_parts` parts."""
    k = len(sigma.parts)
    seen = {}
    for r in range(max(min_parts, 1), k + 1):
        for kept in combinations(range(k), r):
            c = vertex_coarsening(sigma, mask(kept))
            seen[c] = None
    return sorted(seen, key=lambda s: s.as_sets())


def linear_refinement(sigma: CyclicPartition) -> tuple[int, ...]:
    """A full cyclic order refining `sigma`: parts in order, each part sorted."""
    return tuple(e for p in sigma.parts for e in members(p))


# -- graphical code ----------------------------------------------------------

@dataclass(frozen=True)
class GraphicalCode:
    """Marked vertices `V` and marked edges `J` on a polygon with `size` edges.

    Edges are labeled 0..size-1 by the base cyclic order; vertex ``i``
    sits between edge ``i`` and edge ``i+1`` (mod `size`).
    """

    size: int
    V: int
    J: int

    def arcs(self) -> tuple[int, ...]:
        """Edge masks of the arcs between consecutive marked vertices."""
        verts = members(self.V)
        if len(verts) <= 1:
            return (full_mask(self.size),)
        out = []
        for a, b in zip(verts, verts[1:] + (verts[0] + self.size,)):
            out.append(mask(e % self.size for e in range(a + 1, b + 1)))
        return tuple(out)

    def partition(self) -> CyclicPartition:
        return canonicalize(self.arcs(), self.size)


def interlacing(code: GraphicalCode) -> bool:
    """True iff the marked edges do not all lie in one arc between marked vertices."""
    if popcount(code.V) <= 1:
        return False
    hit = 0
    for arc in code.arcs():
        if arc & code.J:
            hit += 1
            if hit >= 2:
                return True
    return False


def maximal_interlacing(code: GraphicalCode) -> bool:
    if not interlacing(code):
        return False
    arcs = code.arcs()
    k, j = len(arcs), popcount(code.J)
    if k <= j and all(a & code.J for a in arcs):
        return True
    if k >= j and all(popcount(a & code.J) <= 1 for a in arcs):
        return True
    return False


def graphical_code(sigma: CyclicPartition, J: int) -> tuple[GraphicalCode, tuple[int, ...]]:
    """Encode ``(sigma, J)`` on the polygon of the linear refinement of `sigma`.

    Returns the code and the base order (position -> element).
    """
    order = linear_refinement(sigma)
    pos = {e: i for i, e in enumerate(order)}
    V = 0
    t = -1
    for p in sigma.parts:
        t += popcount(p)
        V |= 1 << t
    if len(sigma.parts) == 1:
        V = 0
    Jpos = mask(pos[e] for e in members(J))
    return GraphicalCode(sigma.size, V, Jpos), order


def all_cyclic_orders(n: int) -> list[tuple[int, ...]]:
    """Full cyclic orders of ``{0..n}`` starting at 0 (n! of them)."""
    return [(0,) + p for p in permutations(range(1, n + 1))]
