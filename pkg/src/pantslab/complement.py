"""The complement of a stratum: non-interlacing complex, belt, circle and ghost complex.

Throughout, ``sigma`` is a cyclic partition of ``{0..n}`` with k >= 2 parts
and ``J`` a subset that sigma divides.  The separating vertices ``W`` of
sigma are numbered 0..k-1, vertex ``s`` sitting after part ``s``.

For distances we lay out a circle of *tokens*: walking counterclockwise
through the parts of sigma, first the elements of J in that part (sorted),
then the vertex after the part.  Only J-edges and W-vertices are tokens.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .collapse import CollapseState, greedy_collapse
from .combinatorics import (CyclicPartition, canonicalize, decyclizations,
                            divides, full_mask, members, popcount, separated_by_vertices,
                            submasks)
from .errors import CollapseViolationError, EmptyStratumError
from .homology import homology_z2
from .isomorphism import is_isomorphic
from .labels import GhostCell, NonInterlacing, Pair, Product, SimplexFace
from .poset import FacePoset, dsd_simplex, euler_characteristic, product, subcomplex


# -- the token circle -------------------------------------------------------------

class CircleLayout:
    """Positions of J-edges and W-vertices on the counterclockwise circle."""

    def __init__(self, sigma: CyclicPartition, J: int):
        if not divides(sigma, J):
            raise EmptyStratumError(f"{sigma} does not divide {members(J)}")
        self.sigma = sigma
        self.J = J
        self.k = len(sigma)
        tokens: list[tuple[str, int]] = []
        for s, part in enumerate(sigma.parts):
            for e in members(part & J):
                tokens.append(("e", e))
            tokens.append(("v", s))
        self.tokens = tokens
        self.size = len(tokens)
        self.pos = {t: i for i, t in enumerate(tokens)}
        self.edge_order = [e for kind, e in tokens if kind == "e"]

    def between(self, a: tuple[str, int], b: tuple[str, int]) -> tuple[int, int]:
        """(#edges, #vertices) strictly between tokens a and b going counterclockwise."""
        i, j = self.pos[a], self.pos[b]
        ne = nv = 0
        t = (i + 1) % self.size
        while t != j:
            if self.tokens[t][0] == "e":
                ne += 1
            else:
                nv += 1
            t = (t + 1) % self.size
        return ne, nv

    def extremes(self, I: int, V: int) -> "Extremes":
        """(v_f, v_l, e_f, e_l) for a non-interlacing pair; raises if interlacing."""
        if not I or not V:
            raise ValueError("extremes need non-empty I and V")
        T = self.size
        start = self.pos[("e", members(I)[0])]
        t = start
        while not (self.tokens[t][0] == "v" and V >> self.tokens[t][1] & 1):
            t = (t - 1) % T
        v_l = self.tokens[t][1]
        e_f = e_l = None
        seen = 0
        t = (t + 1) % T
        while True:
            kind, x = self.tokens[t]
            if kind == "v" and V >> x & 1:
                v_f = x
                break
            if kind == "e" and I >> x & 1:
                if e_f is None:
                    e_f = x
                e_l = x
                seen |= 1 << x
            t = (t + 1) % T
        if seen != I:
            raise ValueError(f"pair I={members(I)}, V={members(V)} is interlacing")
        return Extremes(v_f, v_l, e_f, e_l)

    def distances(self, I: int, V: int) -> "Distances":
        x = self.extremes(I, V)
        k_e, k_v = self.between(("v", x.v_l), ("e", x.e_f))
        m_e, m_v = self.between(("e", x.e_l), ("v", x.v_f))
        return Distances(k_e, k_v, m_e, m_v)

    def inner_edges(self, x: "Extremes") -> list[int]:
        """J-edges strictly between e_f and e_l."""
        if x.e_f == x.e_l:
            return []
        out = []
        t = (self.pos[("e", x.e_f)] + 1) % self.size
        end = self.pos[("e", x.e_l)]
        while t != end:
            if self.tokens[t][0] == "e":
                out.append(self.tokens[t][1])
            t = (t + 1) % self.size
        return out

    def inner_vertices(self, x: "Extremes") -> list[int]:
        """W-vertices strictly inside the V-string from v_f to v_l."""
        if x.v_f == x.v_l:
            return []
        out = []
        t = (self.pos[("v", x.v_f)] + 1) % self.size
        end = self.pos[("v", x.v_l)]
        while t != end:
            if self.tokens[t][0] == "v":
                out.append(self.tokens[t][1])
            t = (t + 1) % self.size
        return out

    def is_consecutive_edges(self, I: int) -> bool:
        """I is one J-edge or two J-edges adjacent in the cyclic order of J."""
        es = members(I)
        if len(es) == 1:
            return True
        if len(es) != 2:
            return False
        order = self.edge_order
        a, b = order.index(es[0]), order.index(es[1])
        return (a - b) % len(order) in (1, len(order) - 1)

    def is_consecutive_vertices(self, V: int) -> bool:
        vs = members(V)
        if len(vs) == 1:
            return True
        if len(vs) != 2:
            return False
        return (vs[0] - vs[1]) % self.k in (1, self.k - 1)


class Extremes(NamedTuple):
    v_f: int
    v_l: int
    e_f: int
    e_l: int


class Distances(NamedTuple):
    k_e: int
    k_v: int
    m_e: int
    m_v: int


# -- the non-interlacing complex -----------------------------------------------------

def non_interlacing(sigma: CyclicPartition, I: int, V: int) -> bool:
    """True iff the edges I lie in one arc cut out by the vertex set V of sigma."""
    return not separated_by_vertices(sigma, V, I)


def build_L(sigma: CyclicPartition, J: int) -> FacePoset:
    """Cells NonInterlacing(I, V): non-empty I <= J, non-empty V <= W, non-interlacing.

    Dimension (|I| - 1) + (|V| - 1); covers remove one mark.
    """
    if not divides(sigma, J):
        raise EmptyStratumError(f"{sigma} does not divide {members(J)}")
    W = full_mask(len(sigma))
    cells = {}
    covers = []
    for I in submasks(J):
        for V in submasks(W):
            if not non_interlacing(sigma, I, V):
                continue
            c = NonInterlacing(I, V)
            cells[c] = popcount(I) + popcount(V) - 2
            if popcount(I) > 1:
                for e in members(I):
                    covers.append((NonInterlacing(I & ~(1 << e), V), c))
            if popcount(V) > 1:
                for v in members(V):
                    covers.append((NonInterlacing(I, V & ~(1 << v)), c))
    return FacePoset(cells, covers)


def distances(sigma: CyclicPartition, J: int, cell: NonInterlacing) -> Distances:
    return CircleLayout(sigma, J).distances(cell.I, cell.V)


# -- Step 3: belt and circle -----------------------------------------------------------

@dataclass
class CollapseRecord:
    """Result of a scheduled collapse: the remaining complex and the executed pairs."""

    result: FacePoset
    trace: list[tuple]
    touched: set


def belt_intervals(L: FacePoset, layout: CircleLayout) -> list[tuple[Extremes, Distances, list]]:
    """Group the cells of L by extremes, ordered by (sum of distances, extremes)."""
    groups: dict[Extremes, list] = {}
    for c in L.labels:
        groups.setdefault(layout.extremes(c.I, c.V), []).append(c)
    out = []
    for x, cells in groups.items():
        d = layout.distances(cells[0].I, cells[0].V)
        out.append((x, d, sorted(cells, key=lambda c: c.key())))
    out.sort(key=lambda t: (sum(t[1]), tuple(t[0])))
    return out


def _interval_pairs(layout: CircleLayout, x: Extremes) -> list[tuple[NonInterlacing, NonInterlacing]]:
    """Face-facet pairs of a Boolean interval, in removal order (largest first)."""
    base_I = 1 << x.e_f | 1 << x.e_l
    base_V = 1 << x.v_f | 1 << x.v_l
    inner = [("e", e) for e in layout.inner_edges(x)] + [("v", v) for v in layout.inner_vertices(x)]
    if not inner:
        return []
    pivot, rest = inner[0], inner[1:]
    pairs = []
    for r in range(len(rest), -1, -1):
        chosen_sets = []
        for sub in submasks(full_mask(len(rest)), nonempty=False):
            if popcount(sub) == r:
                chosen_sets.append(sub)
        for sub in chosen_sets:
            I, V = base_I, base_V
            for t in members(sub):
                kind, y = rest[t]
                if kind == "e":
                    I |= 1 << y
                else:
                    V |= 1 << y
            face = NonInterlacing(I, V)
            if pivot[0] == "e":
                coface = NonInterlacing(I | 1 << pivot[1], V)
            else:
                coface = NonInterlacing(I, V | 1 << pivot[1])
            pairs.append((face, coface))
    return pairs


def collapse_to_belt(L: FacePoset, sigma: CyclicPartition, J: int,
                     record: bool = False) -> FacePoset | CollapseRecord:
    """Collapse every Boolean interval of L, smallest distances first.

    Every pair is checked to be free when it is removed; a non-free pair
    raises :class:`CollapseViolationError`.
    """
    layout = CircleLayout(sigma, J)
    state = CollapseState(L)
    touched = set()
    for x, _, cells in belt_intervals(L, layout):
        pairs = _interval_pairs(layout, x)
        expected = set(cells)
        scheduled = {c for p in pairs for c in p}
        if pairs and scheduled != expected:
            raise AssertionError(f"interval {x} is not Boolean as scheduled")
        for face, coface in pairs:
            state.remove_labels(face, coface)
            touched.update((face, coface))
    belt = state.result()
    for c in belt.labels:
        if not (layout.is_consecutive_edges(c.I) and layout.is_consecutive_vertices(c.V)):
            raise AssertionError(f"cell {c} survived but is not a belt cell")
    if record:
        return CollapseRecord(belt, state.trace, touched)
    return belt


def circle_generators(belt: FacePoset, layout: CircleLayout) -> list:
    """Belt edges (V, e) and (v, E) at distance (k_e, k_v) = (0, 0)."""
    out = []
    for c in belt.cells(1):
        d = layout.distances(c.I, c.V)
        if (d.k_e, d.k_v) == (0, 0):
            out.append(c)
    return out


def is_single_cycle(C: FacePoset) -> bool:
    """A connected 1-complex in which every vertex lies on exactly two edges."""
    if C.dimension != 1:
        return False
    if any(len(C.cofacets(v)) != 2 for v in C.cells(0)):
        return False
    if any(len(C.facets(e)) != 2 for e in C.cells(1)):
        return False
    seen = set()
    stack = [C.cells(0)[0]]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        for e in C.cofacets(v):
            stack.extend(C.facets(e))
    return len(seen) == len(C.cells(0))


def belt_to_circle(belt: FacePoset, sigma: CyclicPartition, J: int,
                   record: bool = False) -> FacePoset | CollapseRecord:
    """Collapse the belt to a circle.

    Squares are removed one at a time in increasing (m_e, m_v) order (ties
    by extremes, then label).  Each square goes together with a free edge,
    preferring the edges on which k grows (so the edges keeping the
    square's k survive).  Afterwards hanging edges are collapsed, again in
    increasing (m_e, m_v) order.  A square without a free edge raises.
    """
    layout = CircleLayout(sigma, J)
    state = CollapseState(belt)
    C = belt
    touched = set()

    def dist(c):
        return layout.distances(c.I, c.V)

    def order_key(c):
        d = dist(c)
        return (d.m_e, d.m_v, tuple(layout.extremes(c.I, c.V)), c.key())

    for sq in sorted(belt.cells(2), key=order_key):
        j = C.index[sq]
        k_sq = dist(sq)[:2]
        candidates = sorted(C.down[j], key=lambda i: (dist(C.labels[i])[:2] == k_sq,
                                                      C.labels[i].key()))
        choice = next((i for i in candidates if state.is_free(i, j)), None)
        if choice is None:
            raise CollapseViolationError(sq, None, [C.labels[i] for i in C.up[j] if state.alive[i]])
        state.remove_pair(choice, j)
        touched.update((C.labels[choice], sq))

    rank = {i: order_key(C.labels[i]) for i in range(len(C))}
    greedy_collapse(state, priority=lambda i, j: rank[j] + rank[i])
    result = state.result()
    if record:
        return CollapseRecord(result, state.trace, touched)
    return result


def circle_report(sigma: CyclicPartition, J: int) -> dict:
    """Run the whole Step-3 schedule for (sigma, J) and the independent homology oracle."""
    rep = {"sigma": sigma.format(), "J": list(members(J)), "ok": False, "witness": None}
    L = build_L(sigma, J)
    layout = CircleLayout(sigma, J)
    rep["L_cells"] = len(L)
    betti = homology_z2(L)
    rep["homology"] = list(betti)
    homology_ok = tuple(betti[:2]) == (1, 1) and not any(betti[2:])
    try:
        b = collapse_to_belt(L, sigma, J, record=True)
        c = belt_to_circle(b.result, sigma, J, record=True)
    except (CollapseViolationError, AssertionError) as exc:
        rep["schedule"] = "fail"
        rep["witness"] = str(exc)
        return rep
    belt, circle = b.result, c.result
    rep["belt_f"] = list(belt.f_vector())
    rep["circle_length"] = len(circle.cells(1))
    rep["schedule"] = "pass"
    cycle_ok = is_single_cycle(circle)
    if not cycle_ok:
        rep["witness"] = f"remaining complex {circle.f_vector()} is not a single cycle"
    # audit: every removed cell was scheduled, belt untouched by step 2 except scheduled cells
    removed_1 = set(L.labels) - set(belt.labels)
    removed_2 = set(belt.labels) - set(circle.labels)
    if removed_1 != b.touched:
        rep["witness"] = "belt collapse removed unscheduled cells"
        cycle_ok = False
    if not removed_2 <= set(belt.labels):
        cycle_ok = False
    for cx in (L, belt, circle):
        if euler_characteristic(cx) != 0:
            rep["witness"] = f"Euler characteristic changed: {euler_characteristic(cx)}"
            cycle_ok = False
    if homology_z2(belt)[:2] != (1, 1) or homology_z2(circle) != (1, 1):
        rep["witness"] = "homology changed along the schedule"
        cycle_ok = False
    if not homology_ok:
        rep["witness"] = f"L has homology {betti}"
    # the lemma's description of the circle: vertices within (1, 1), edges at (0, 0)
    far = [v for v in circle.cells(0)
           if layout.distances(v.I, v.V).k_e > 1 or layout.distances(v.I, v.V).k_v > 1]
    rep["circle_vertices_within_11"] = not far
    rep["circle_edges_at_00"] = set(circle.cells(1)) == set(circle_generators(belt, layout))
    rep["ok"] = homology_ok and cycle_ok
    return rep


# -- Step 2: the ghost complex -----------------------------------------------------------

def ghost_element(sigma: CyclicPartition) -> int:
    return sigma.size


def ghost_top_partitions(sigma: CyclicPartition) -> list[tuple[CyclicPartition, int]]:
    """<g, decyclization> for each choice of first part, with the insertion vertex.

    The decyclization starting at part s inserts g at vertex s-1 (between
    parts s-1 and s).
    """
    g = ghost_element(sigma)
    k = len(sigma)
    out = []
    for s, lin in enumerate(decyclizations(sigma)):
        hat = canonicalize((1 << g,) + lin, sigma.size + 1)
        out.append((hat, (s - 1) % k))
    return out


def _ghost_label(pair: Pair, position: int, g: int) -> GhostCell:
    solo = 1 << g in pair.sigma.parts
    return GhostCell(pair.sigma, pair.J, position if solo else None)


def build_ghost_complex(sigma: CyclicPartition, J: int) -> FacePoset:
    """Union over decyclizations of the stratum lattices of (<g, sigma-bar>, J + g)."""
    from .complexes import stratum_lattice
    if not divides(sigma, J):
        raise EmptyStratumError(f"{sigma} does not divide {members(J)}")
    g = ghost_element(sigma)
    Jhat = J | 1 << g
    cells: dict = {}
    covers = []
    for hat, w in ghost_top_partitions(sigma):
        P = stratum_lattice(hat, Jhat)
        for c, d in zip(P.labels, P.dims):
            lab = _ghost_label(c, w, g)
            if cells.setdefault(lab, d) != d:
                raise AssertionError(f"inconsistent dimension for {lab}")
        for f, c in P.covers():
            covers.append((_ghost_label(f, w, g), _ghost_label(c, w, g)))
    return FacePoset(cells, covers)


def ghost_maximal_cells(N: FacePoset) -> list[GhostCell]:
    return N.maximal_cells()


def ghost_group(c: GhostCell) -> str:
    g = c.sigma_hat.size - 1
    if not c.J >> g & 1:
        return "a"
    if divides(c.sigma_hat, c.J & ~(1 << g)):
        return "b"
    return "c"


def ghost_to_L_label(c: GhostCell, sigma: CyclicPartition) -> NonInterlacing:
    """Forget the ghost: (sigma-hat', J') -> (I, V) with I = J' - g."""
    g = c.sigma_hat.size - 1
    gbit = 1 << g
    I = c.J & ~gbit
    k = len(sigma)
    # base vertex s separates part s from part s+1; it is a vertex of sigma-hat'
    # when those parts lie in different parts of sigma-hat'
    part_index = {}
    for idx, p in enumerate(c.sigma_hat.parts):
        for e in members(p):
            part_index[e] = idx
    V = 0
    for s in range(k):
        a = part_index[members(sigma.parts[s])[0]]
        b = part_index[members(sigma.parts[(s + 1) % k])[0]]
        if a != b:
            V |= 1 << s
    if gbit in c.sigma_hat.parts:
        if c.position is None:
            raise AssertionError(f"ghost cell {c} lacks its position")
        # the two parts flanking g are different, so the insertion vertex is
        # already counted unless the ghost's neighbours coincide
        V |= 1 << c.position
    return NonInterlacing(I, V)


def ghost_collapse(N: FacePoset, sigma: CyclicPartition, J: int) -> dict:
    """Collapse the a/b pairs, merge group c into cells of L and compare with L."""
    rep = {"sigma": sigma.format(), "J": list(members(J)), "ok": False, "witness": None}
    g = ghost_element(sigma)
    gbit = 1 << g
    groups = {"a": [], "b": [], "c": []}
    for c in N.labels:
        groups[ghost_group(c)].append(c)
    rep["sizes"] = {k: len(v) for k, v in groups.items()}
    # matching b -> a by removing g
    match = {}
    for b in groups["b"]:
        a = GhostCell(b.sigma_hat, b.J & ~gbit, b.position)
        if a not in N or ghost_group(a) != "a":
            rep["witness"] = f"b-cell {b} has no a-partner"
            return rep
        if N.dim(a) + 1 != N.dim(b) or a not in N.facets(b):
            rep["witness"] = f"pair ({a}, {b}) is not a face-facet pair"
            return rep
        match[b] = a
    if len(set(match.values())) != len(groups["a"]) or len(match) != len(groups["b"]):
        rep["witness"] = "a/b correspondence is not a bijection"
        return rep
    state = CollapseState(N)
    order = sorted(groups["b"], key=lambda b: (-N.dim(b), b.key()))
    try:
        for b in order:
            state.remove_labels(match[b], b)
    except CollapseViolationError as exc:
        rep["witness"] = str(exc)
        return rep
    rest = state.result()
    if set(rest.labels) != set(groups["c"]):
        rep["witness"] = "collapse did not end on group c"
        return rep
    rep["trace"] = [(str(f), str(c)) for f, c in state.trace]
    # merge group c
    L = build_L(sigma, J)
    key = {c: ghost_to_L_label(c, sigma) for c in rest.labels}
    members_of: dict = {}
    for c, k in key.items():
        members_of.setdefault(k, []).append(c)
    if set(members_of) != set(L.labels):
        extra = sorted(map(str, set(members_of) - set(L.labels)))
        missing = sorted(map(str, set(L.labels) - set(members_of)))
        rep["witness"] = f"merged labels differ from L (extra {extra[:3]}, missing {missing[:3]})"
        return rep
    for k, cs in members_of.items():
        signed = sum((-1) ** rest.dim(c) for c in cs)
        top = max(rest.dim(c) for c in cs)
        if signed != (-1) ** L.dim(k) or top != L.dim(k):
            rep["witness"] = f"group of {k} is not a single {L.dim(k)}-cell after merging"
            return rep
    covers = set()
    for f, c in rest.covers():
        kf, kc = key[f], key[c]
        if kf == kc:
            continue
        if not L.is_face(kf, kc):
            rep["witness"] = f"merged relation {kf} < {kc} is not in L"
            return rep
        if L.dim(kc) == L.dim(kf) + 1:
            covers.add((kf, kc))
    merged = FacePoset({k: L.dim(k) for k in members_of}, covers)
    if merged != L:
        rep["witness"] = "merged covering relation differs from L"
        return rep
    if is_isomorphic(merged, L) is None:
        rep["witness"] = "merged complex is not isomorphic to L"
        return rep
    if euler_characteristic(N) != euler_characteristic(L):
        rep["witness"] = "Euler characteristic of N differs from L"
        return rep
    rep["merged_cells"] = len(merged)
    rep["ok"] = True
    return rep


def ghost_report(sigma: CyclicPartition, J: int) -> dict:
    N = build_ghost_complex(sigma, J)
    rep = ghost_collapse(N, sigma, J)
    rep["N_cells"] = len(N)
    rep.pop("trace", None)
    return rep


# -- Step 1: collapsibility of the pieces of the ober-tropical stratum ---------------------

def star_pieces(sigma: CyclicPartition, J: int) -> list:
    """Cells F = (tau <= sigma', I <= J') with sigma' | J' but not tau | I.

    Cells of dsd Delta_J x dsd Delta_sigma are Product(SimplexFace(I, J'),
    SimplexFace(A, B)) with A <= B vertex sets of sigma.
    """
    k = len(sigma)
    out = []
    for Jp in submasks(J):
        for I in submasks(Jp):
            for B in submasks(full_mask(k)):
                if not separated_by_vertices(sigma, B, Jp):
                    continue
                for A in submasks(B):
                    if not separated_by_vertices(sigma, A, I):
                        out.append(Product(SimplexFace(I, Jp), SimplexFace(A, B)))
    return out


def star_piece_complex(sigma: CyclicPartition, F: Product) -> FacePoset:
    """M = closure(F) intersected with the ober-tropical stratum."""
    I, Jp = F.left.I, F.left.J
    A, B = F.right.I, F.right.J
    D = product(_interval_dsd(I, Jp), _interval_dsd(A, B))
    return subcomplex(D, lambda c: separated_by_vertices(sigma, c.right.I, c.left.I))


def _interval_dsd(I: int, J: int) -> FacePoset:
    """Faces (I', J'') of the dsd cell (I, J): I <= I' <= J'' <= J."""
    D = dsd_simplex(J)
    return subcomplex(D, lambda c: c.I & I == I)


def collapse_star_piece(sigma: CyclicPartition, F: Product) -> FacePoset:
    """Collapse M along its Boolean lattices, largest lattices first."""
    M = star_piece_complex(sigma, F)
    Jp, B = F.left.J, F.right.J
    lattices: dict = {}
    for c in M.labels:
        lattices.setdefault((c.left.I, c.right.I), []).append(c)
    order = sorted(lattices, key=lambda t: (-(popcount(Jp & ~t[0]) + popcount(B & ~t[1])), t))
    state = CollapseState(M)
    for Ip, Ap in order:
        inner = [("e", e) for e in members(Jp & ~Ip)] + [("v", v) for v in members(B & ~Ap)]
        if not inner:
            continue
        pivot, rest = inner[0], inner[1:]
        subsets = sorted(submasks(full_mask(len(rest)), nonempty=False), key=lambda s: (-popcount(s), s))
        for sub in subsets:
            Je, Bv = Ip, Ap
            for t in members(sub):
                kind, y = rest[t]
                if kind == "e":
                    Je |= 1 << y
                else:
                    Bv |= 1 << y
            if pivot[0] == "e":
                top = (Je | 1 << pivot[1], Bv)
            else:
                top = (Je, Bv | 1 << pivot[1])
            cof = Product(SimplexFace(Ip, top[0]), SimplexFace(Ap, top[1]))
            face = Product(SimplexFace(Ip, Je), SimplexFace(Ap, Bv))
            state.remove_labels(face, cof)
    return state.result()


def star_report(sigma: CyclicPartition, J: int) -> dict:
    pieces = star_pieces(sigma, J)
    for F in pieces:
        try:
            rest = collapse_star_piece(sigma, F)
        except CollapseViolationError as exc:
            return {"ok": False, "pieces": len(pieces), "witness": f"{F}: {exc}"}
        if len(rest) != 1:
            return {"ok": False, "pieces": len(pieces), "witness": f"{F}: {len(rest)} cells remain"}
    return {"ok": True, "pieces": len(pieces), "witness": None}
