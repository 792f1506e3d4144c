"""The named complexes: skeleta S and Sigma, strata, the ober-tropical complex and fibers."""
from __future__ import annotations

from .combinatorics import (CyclicPartition, coarsenings, coarsenings_one_step, divides,
                            enumerate_cyclic_partitions, full_mask, members, popcount,
                            separated_by_vertices, standard_partition, submasks)
from .cyclic_polytope import cyclic_polytope_facets, gale_even_facets
from .errors import EmptyStratumError
from .geometry import TwoPartition
from .isomorphism import is_isomorphic
from .labels import Pair, PlainFace, Product, SFace, SigmaFace, SimplexFace
from .poset import FacePoset, dsd, dsd_simplex, plain_simplex, product, subcomplex


def skeleton_S(n: int) -> FacePoset:
    """Faces S_{IJ}, |I| >= 2, I <= J <= {0..n}, of dimension |J \\ I|."""
    if n < 1:
        raise ValueError("n must be >= 1")
    full = full_mask(n + 1)
    cells = {}
    covers = []
    for J in submasks(full):
        for I in submasks(J):
            if popcount(I) < 2:
                continue
            c = SFace(I, J)
            cells[c] = popcount(J) - popcount(I)
            for e in members(J & ~I):
                covers.append((SFace(I | 1 << e, J), c))
                covers.append((SFace(I, J & ~(1 << e)), c))
    return FacePoset(cells, covers)


def skeleton_Sigma(n: int) -> FacePoset:
    """Faces Sigma_sigma, |sigma| >= 2, of dimension n+1-|sigma|.

    Sigma_sigma is a face of Sigma_tau iff sigma refines tau (coarser = larger cell).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    parts = enumerate_cyclic_partitions(n, 2)
    cells = {SigmaFace(s): n + 1 - len(s) for s in parts}
    covers = []
    for s in parts:
        for t in coarsenings_one_step(s):
            if len(t) >= 2:
                covers.append((SigmaFace(s), SigmaFace(t)))
    return FacePoset(cells, covers)


def stratum_lattice(sigma: CyclicPartition, J: int) -> FacePoset:
    """Cells Pair(sigma', J') with sigma' a coarsening of sigma, J' <= J, sigma' | J'.

    Dimension |sigma'| + |J'| - 4.
    """
    if not divides(sigma, J):
        raise EmptyStratumError(f"{sigma} does not divide {members(J)}: the stratum is empty")
    cells = {}
    covers = []
    for sp in coarsenings(sigma, 2):
        for Jp in submasks(J):
            if not divides(sp, Jp):
                continue
            c = Pair(sp, Jp)
            cells[c] = len(sp) + popcount(Jp) - 4
            for t in coarsenings_one_step(sp):
                if len(t) >= 2 and divides(t, Jp):
                    covers.append((Pair(t, Jp), c))
            for e in members(Jp):
                if divides(sp, Jp & ~(1 << e)):
                    covers.append((Pair(sp, Jp & ~(1 << e)), c))
    return FacePoset(cells, covers)


def ober_complex(n: int) -> FacePoset:
    """Cells S_{IJ} x Sigma_sigma of the product with sigma dividing I."""
    P = product(skeleton_S(n), skeleton_Sigma(n))
    return subcomplex(P, lambda c: divides(c.right.sigma, c.left.I))


def ober_stratum_lattice(sigma: CyclicPartition, J: int) -> FacePoset:
    """The piece of the ober-tropical complex over one stratum.

    Cells ``Product(SimplexFace(I, J'), SimplexFace(A, B))`` with I <= J' <= J
    and A <= B sets of separating vertices of `sigma` (B <-> sigma', A <-> tau),
    kept when tau divides I.  Dimension |J'| - |I| + |B| - |A|.  This is the
    subcomplex of dsd Delta_J x dsd Delta_sigma cut out by that condition.
    """
    if not divides(sigma, J):
        raise EmptyStratumError(f"{sigma} does not divide {members(J)}: the stratum is empty")
    W = full_mask(len(sigma))
    sep = {}
    for A in submasks(W):
        for I in submasks(J):
            sep[A, I] = separated_by_vertices(sigma, A, I)
    cells = {}
    covers = []
    for B in submasks(W):
        for A in submasks(B):
            for Jp in submasks(J):
                for I in submasks(Jp):
                    if not sep[A, I]:
                        continue
                    c = Product(SimplexFace(I, Jp), SimplexFace(A, B))
                    cells[c] = popcount(Jp) - popcount(I) + popcount(B) - popcount(A)
                    for e in members(Jp & ~I):
                        covers.append((Product(SimplexFace(I | 1 << e, Jp), c.right), c))
                        covers.append((Product(SimplexFace(I, Jp & ~(1 << e)), c.right), c))
                    for v in members(B & ~A):
                        covers.append((Product(c.left, SimplexFace(A | 1 << v, B)), c))
                        covers.append((Product(c.left, SimplexFace(A, B & ~(1 << v))), c))
    return FacePoset(cells, covers)


def ober_stratum_lattice_from_product(sigma: CyclicPartition, J: int) -> FacePoset:
    """Same complex, cut out of the full product dsd Delta_J x dsd Delta_sigma (slow oracle)."""
    D = product(dsd_simplex(J), dsd_simplex(full_mask(len(sigma))))
    return subcomplex(D, lambda c: separated_by_vertices(sigma, c.right.I, c.left.I))


def max_cell_dimension(C: FacePoset) -> int:
    return C.dimension


# -- Stanley duality -----------------------------------------------------------------

def t_labels(sigma0: CyclicPartition, pair: Pair) -> int:
    """Marked t-labels of a cell of P_0: edge i -> t_{2i}, vertex i -> t_{2i+1}.

    Returned as a bitmask over cyclic polytope vertices 1..2n+2 (t_j is vertex j+1).
    """
    from .combinatorics import coarsening_vertex_set
    V = coarsening_vertex_set(sigma0, pair.sigma)
    m = 0
    for i in members(pair.J):
        m |= 1 << (2 * i + 1)
    for v in members(V):
        m |= 1 << (2 * v + 2)
    return m


def verify_stanley_duality(n: int) -> dict:
    """Check the duality of P_0 = stratum(<0|1|...|n>, {0..n}) and C_{2n-2}(2n+2).

    1. Minimal cells map (via the t-labeling, taking complements) bijectively
       onto the Gale-even facets.
    2. The same map on all proper cells is a bijection onto the non-empty
       proper faces of the cyclic polytope and reverses every cover.
    3. An order-reversing isomorphism is found independently by search.
    """
    if n < 2:
        raise ValueError("duality is stated for n >= 2")
    sigma0 = standard_partition(n)
    full = full_mask(n + 1)
    P = stratum_lattice(sigma0, full)
    d, r = 2 * n - 2, 2 * n + 2
    C = cyclic_polytope_facets(d, r)
    all_t = full_mask(r + 1) & ~1
    top_P = Pair(sigma0, full)
    report = {"n": n, "d": d, "r": r, "cells": len(P), "faces": len(C), "ok": False,
              "witness": None}

    def image(c: Pair) -> PlainFace:
        return PlainFace(all_t & ~t_labels(sigma0, c))

    minimal = P.cells(0)
    facets = set(gale_even_facets(d, r))
    images = [image(c).J for c in minimal]
    report["minimal_cells"] = len(minimal)
    report["facets"] = len(facets)
    if len(set(images)) != len(images) or set(images) != facets:
        bad = next((c for c in minimal if image(c).J not in facets), None)
        report["witness"] = f"minimal cell {bad} does not map to a Gale-even facet" if bad else \
            "minimal cells do not map bijectively onto the facets"
        return report
    # full explicit correspondence on proper cells
    proper = [c for c in P.labels if c != top_P]
    top_C = PlainFace(all_t)
    C_proper = {c for c in C.labels if c != top_C}
    mapping = {c: image(c) for c in proper}
    if len(set(mapping.values())) != len(proper) or set(mapping.values()) != C_proper:
        bad = next((c for c in proper if mapping[c] not in C_proper), None)
        report["witness"] = f"cell {bad} maps to a non-face" if bad else "explicit map is not onto"
        return report
    for c in proper:
        if P.dim(c) + C.dim(mapping[c]) != 2 * n - 3:
            report["witness"] = f"dimension mismatch at {c}"
            return report
    for f, c in P.covers():
        if c == top_P:
            continue
        if mapping[f] not in C.cofacets(mapping[c]):
            report["witness"] = f"cover ({f}, {c}) is not reversed"
            return report
    P_proper = subcomplex(P, lambda c: c != top_P)
    C_bdry = subcomplex(C, lambda c: c != top_C)
    found = is_isomorphic(P_proper, C_bdry, "reversing")
    if found is None:
        report["witness"] = "no order-reversing isomorphism found by search"
        return report
    report["ok"] = True
    return report


# -- fibers -------------------------------------------------------------------------

def mu2_fiber(p: TwoPartition, n: int | None = None) -> FacePoset:
    """Subcomplex of S spanned by the closures of S_{{i,j}, full}, i in I-, j in I+."""
    if n is None:
        n = p.n
    S = skeleton_S(n)
    return subcomplex(S, lambda c: bool(c.I & p.I_minus) and bool(c.I & p.I_plus))


def product_dsd(p: TwoPartition) -> FacePoset:
    """dsd(Delta_{I-} x Delta_{I+}), built directly from the product polytope."""
    return dsd(product(plain_simplex(p.I_minus), plain_simplex(p.I_plus)))


def mu1_fiber(i: int, j: int, n: int) -> FacePoset:
    """Subcomplex of Sigma of the faces Sigma_sigma with sigma dividing {i, j}."""
    if i == j:
        raise ValueError("need i != j")
    pair = 1 << i | 1 << j
    return subcomplex(skeleton_Sigma(n), lambda c: divides(c.sigma, pair))
