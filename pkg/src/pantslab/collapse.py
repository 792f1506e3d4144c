"""Elementary collapses on face posets.

A face ``f`` is free in the current complex when it has exactly one strict
coface ``c``; then ``c`` is maximal and the pair ``(f, c)`` may be removed.
"""
from __future__ import annotations

import heapq
from typing import Callable, Iterable, Sequence

from .errors import CollapseViolationError
from .homology import homology_z2
from .poset import FacePoset, euler_characteristic

DEFAULT_BACKTRACK_BOUND = 2000


class CollapseState:
    """Mutable working copy of a poset under a sequence of collapses."""

    def __init__(self, C: FacePoset):
        self.C = C
        self.alive = [True] * len(C)
        self.upcount = [len(u) for u in C.up]
        self.trace: list[tuple] = []
        self.remaining = len(C)
        self._chi = euler_characteristic(C)

    def coface_of(self, i: int) -> int | None:
        """The unique alive cofacet of cell `i`, if it has exactly one."""
        if self.upcount[i] != 1:
            return None
        for j in self.C.up[i]:
            if self.alive[j]:
                return j
        return None

    def is_free(self, i: int, j: int) -> bool:
        return (self.alive[i] and self.alive[j] and self.upcount[i] == 1
                and self.upcount[j] == 0 and j in self.C.up[i])

    def free_coface(self, i: int) -> int | None:
        if not self.alive[i]:
            return None
        j = self.coface_of(i)
        if j is not None and self.upcount[j] == 0:
            return j
        return None

    def remove_pair(self, i: int, j: int) -> None:
        C = self.C
        if not self.is_free(i, j):
            cofaces = [C.labels[k] for k in C.up[i] if self.alive[k]]
            raise CollapseViolationError(C.labels[i], C.labels[j], cofaces)
        for k in (j, i):
            self.alive[k] = False
            for f in C.down[k]:
                self.upcount[f] -= 1
        self.remaining -= 2
        self.trace.append((C.labels[i], C.labels[j]))
        # each step removes a (d, d+1) pair, so the Euler characteristic is unchanged
        assert C.dims[j] == C.dims[i] + 1

    def remove_labels(self, face, coface) -> None:
        self.remove_pair(self.C.index[face], self.C.index[coface])

    def alive_indices(self) -> list[int]:
        return [i for i, a in enumerate(self.alive) if a]

    def result(self) -> FacePoset:
        C = self.C
        keep = set(self.alive_indices())
        cells = {C.labels[i]: C.dims[i] for i in keep}
        covers = [(C.labels[i], C.labels[j]) for j in keep for i in C.down[j]]
        out = FacePoset(cells, covers)
        assert euler_characteristic(out) == self._chi
        return out


def collapse(C: FacePoset, schedule: Sequence[tuple] | str = "greedy", *,
             check_homology: bool = False, return_trace: bool = False):
    """Apply a collapse schedule (list of (face, coface) labels) or greedy collapsing.

    Greedy mode removes free pairs until none remains, always choosing the
    free face with the smallest label key.
    """
    state = CollapseState(C)
    if isinstance(schedule, str):
        if schedule != "greedy":
            raise ValueError(f"unknown schedule mode {schedule!r}")
        greedy_collapse(state)
    else:
        for f, c in schedule:
            state.remove_labels(f, c)
    out = state.result()
    if check_homology:
        assert_same_homology(C, out)
    return (out, state.trace) if return_trace else out


def assert_same_homology(before: FacePoset, after: FacePoset) -> None:
    hb, ha = homology_z2(before), homology_z2(after)
    if _strip(hb) != _strip(ha):
        raise AssertionError(f"homology changed under collapse: {hb} -> {ha}")


def _strip(betti: tuple[int, ...]) -> tuple[int, ...]:
    b = list(betti)
    while b and b[-1] == 0:
        b.pop()
    return tuple(b)


def greedy_collapse(state: CollapseState, allowed: Callable[[int, int], bool] | None = None,
                    priority: Callable[[int, int], tuple] | None = None) -> None:
    """Collapse free pairs until none is left.

    `allowed(face, coface)` restricts which pairs may be used; `priority`
    maps a pair to a sort key (default: rank of the face label).
    """
    C = state.C
    rank = {i: r for r, i in enumerate(C.keyed_order())}
    if priority is None:
        def priority(i, j):
            return (rank[i],)
    heap = []

    def push(i):
        j = state.free_coface(i)
        if j is not None and (allowed is None or allowed(i, j)):
            heapq.heappush(heap, (priority(i, j), rank[i], i, j))

    for i in range(len(C)):
        push(i)
    while heap:
        _, _, i, j = heapq.heappop(heap)
        if not state.is_free(i, j):
            continue
        state.remove_pair(i, j)
        touched = set(C.down[j]) | set(C.down[i])
        for f in list(touched):
            touched.update(C.down[f])
        for f in touched:
            if state.alive[f]:
                push(f)


def is_collapsible_to_point(C: FacePoset, backtrack_bound: int = DEFAULT_BACKTRACK_BOUND,
                            budget: int = 200_000) -> bool:
    """Greedy collapse, falling back to a bounded search for small complexes."""
    if len(C) == 0 or euler_characteristic(C) != 1:
        return False
    state = CollapseState(C)
    greedy_collapse(state)
    if state.remaining == 1:
        return True
    if len(C) > backtrack_bound:
        return False
    return _search(C, budget)


def _search(C: FacePoset, budget: int) -> bool:
    seen = set()
    steps = [0]

    def rec(state: CollapseState) -> bool:
        if state.remaining == 1:
            return True
        key = tuple(state.alive)
        if key in seen:
            return False
        seen.add(key)
        steps[0] += 1
        if steps[0] > budget:
            return False
        for i in range(len(C)):
            j = state.free_coface(i)
            if j is None:
                continue
            nxt = CollapseState.__new__(CollapseState)
            nxt.C = C
            nxt.alive = list(state.alive)
            nxt.upcount = list(state.upcount)
            nxt.trace = []
            nxt.remaining = state.remaining
            nxt._chi = state._chi
            nxt.remove_pair(i, j)
            if rec(nxt):
                return True
        return False

    return rec(CollapseState(C))


def replay(C: FacePoset, trace: Iterable[tuple]) -> FacePoset:
    """Re-run a recorded schedule; raises on the first non-free pair."""
    return collapse(C, list(trace))
