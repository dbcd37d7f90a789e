"""Coboundary matrices and diagonal Hodge stars on a simplicial mesh.

The coboundary D_p is the integer incidence matrix of p- against
(p+1)-simplices with signs from the increasing-vertex-id orientation,
so D_{p+1} @ D_p = 0 holds in exact integer arithmetic.

Star weights are |dual cell| / |primal cell|.  The primary scheme is
circumcentric (Voronoi) duals, which on triangle meshes reduce to the
classical cotangent weights; whenever any circumcentric weight fails to
be strictly positive the whole complex falls back to barycentric duals
(always positive) and records that in ``star_scheme``.  Dimensions
above two use barycentric duals directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy import sparse

from cornerspec.dec.mesh import Mesh, check_closed, simplex_volume
from cornerspec.errors import DomainError, NumericalError, ResourceError

#: dense matrix dimension guard for Laplacian assembly / eigensolving
SIZE_GUARD = 4000


@dataclass
class CochainComplex:
    mesh: Mesh
    D: list           # D[p]: sparse int64, shape (M_{p+1}, M_p)
    star: list        # star[p]: positive float weights, shape (M_p,)
    star_scheme: str  # "circumcentric" or "barycentric"

    @property
    def dim(self) -> int:
        return self.mesh.dim

    def n_simplices(self, p: int) -> int:
        return len(self.mesh.simplices[p])


def coboundary(mesh: Mesh, p: int) -> sparse.csr_matrix:
    """Integer coboundary matrix from p- to (p+1)-simplices."""
    lower = mesh.simplices[p]
    upper = mesh.simplices[p + 1]
    index = {tuple(row): i for i, row in enumerate(lower.tolist())}
    rows, cols, vals = [], [], []
    for j, row in enumerate(upper.tolist()):
        for m in range(len(row)):
            facet = tuple(row[:m] + row[m + 1:])
            rows.append(j)
            cols.append(index[facet])
            vals.append(1 if m % 2 == 0 else -1)
    return sparse.csr_matrix(
        (np.array(vals, dtype=np.int64), (rows, cols)),
        shape=(len(upper), len(lower)))


def _cofaces(mesh: Mesh, p: int):
    """coface[i] = indices of (p+1)-simplices containing p-simplex i."""
    index = {tuple(row): i for i, row in enumerate(mesh.simplices[p].tolist())}
    out = [[] for _ in range(len(mesh.simplices[p]))]
    for j, row in enumerate(mesh.simplices[p + 1].tolist()):
        for sub in combinations(row, p + 1):
            out[index[sub]].append(j)
    return out


def _primal_volumes(mesh: Mesh, p: int) -> np.ndarray:
    if p == 0:
        return np.ones(len(mesh.simplices[0]))
    return np.array([simplex_volume(mesh.local_coords(row))
                     for row in mesh.simplices[p].tolist()])


def _barycentric_duals(mesh: Mesh) -> list:
    """Dual volumes from the barycentric subdivision, any dimension.

    The dual cell of a p-simplex decomposes into one (d-p)-simplex of
    barycenters per ascending chain of cofaces up to the top dimension.
    All vertices of a chain lie in its top cell, so periodic meshes can
    be unwrapped around that cell.
    """
    d = mesh.dim
    cofaces = [_cofaces(mesh, p) for p in range(d)]
    duals = []
    for p in range(d + 1):
        vol = np.zeros(len(mesh.simplices[p]))
        if p == d:
            duals.append(np.ones(len(mesh.simplices[d])))
            continue
        for i in range(len(mesh.simplices[p])):
            stack = [(p, i, ())]
            while stack:
                level, idx, chain = stack.pop()
                chain = chain + ((level, idx),)
                if level == d:
                    top = mesh.simplices[d][idx].tolist()
                    frame = mesh.local_coords(top)
                    pos = {v: frame[t] for t, v in enumerate(top)}
                    pts = np.array([
                        np.mean([pos[v] for v in
                                 mesh.simplices[lv][ix].tolist()], axis=0)
                        for lv, ix in chain])
                    vol[i] += simplex_volume(pts)
                else:
                    for nxt in cofaces[level][idx]:
                        stack.append((level + 1, nxt, chain))
        duals.append(vol)
    return duals


def _circumcentric_duals(mesh: Mesh) -> list:
    """Voronoi dual volumes; dimensions 1 and 2 only."""
    d = mesh.dim
    if d == 1:
        edges = mesh.simplices[1].tolist()
        elen = np.array([np.linalg.norm(mesh.delta(a, b)) for a, b in edges])
        v_dual = np.zeros(len(mesh.simplices[0]))
        for (a, b), L in zip(edges, elen):
            v_dual[a] += L / 2.0
            v_dual[b] += L / 2.0
        return [v_dual, np.ones(len(edges))]

    if d != 2:
        raise DomainError(f"no circumcentric duals for dimension {d}")

    edges = mesh.simplices[1].tolist()
    tris = mesh.simplices[2].tolist()
    eindex = {tuple(e): i for i, e in enumerate(edges)}
    elen = np.array([np.linalg.norm(mesh.delta(a, b)) for a, b in edges])

    cot_sum = np.zeros(len(edges))
    for t, (a, b, c) in enumerate(tris):
        pts = mesh.local_coords([a, b, c])
        area = simplex_volume(pts)
        if area <= 0.0:
            raise NumericalError(f"degenerate triangle {(a, b, c)}: area 0")
        loc = {a: 0, b: 1, c: 2}
        for u, v, o in ((b, c, a), (a, c, b), (a, b, c)):
            e1 = pts[loc[u]] - pts[loc[o]]
            e2 = pts[loc[v]] - pts[loc[o]]
            cot_sum[eindex[(u, v)]] += float(np.dot(e1, e2)) / (2.0 * area)

    edge_dual = elen * cot_sum / 2.0
    vert_dual = np.zeros(len(mesh.simplices[0]))
    for (a, b), L, cs in zip(edges, elen, cot_sum):
        contrib = L * L * cs / 8.0
        vert_dual[a] += contrib
        vert_dual[b] += contrib
    return [vert_dual, edge_dual, np.ones(len(tris))]


def build_cochain_complex(mesh: Mesh) -> CochainComplex:
    """Coboundaries plus positive diagonal stars for a closed mesh."""
    check_closed(mesh)
    d = mesh.dim
    D = [coboundary(mesh, p) for p in range(d)]

    primal = [_primal_volumes(mesh, p) for p in range(d + 1)]
    for p, vols in enumerate(primal):
        if np.any(vols <= 0.0):
            bad = int(np.argmin(vols))
            raise NumericalError(
                f"degenerate {p}-simplex "
                f"{tuple(mesh.simplices[p][bad].tolist())}: volume 0")

    scheme = "circumcentric"
    if d <= 2:
        duals = _circumcentric_duals(mesh)
        if any(np.any(dv <= 0.0) for dv in duals):
            scheme = "barycentric"
            duals = _barycentric_duals(mesh)
    else:
        scheme = "barycentric"
        duals = _barycentric_duals(mesh)

    star = [dv / pv for dv, pv in zip(duals, primal)]
    for p, w in enumerate(star):
        if np.any(w <= 0.0):
            bad = int(np.argmin(w))
            raise NumericalError(
                f"nonpositive {scheme} star weight on {p}-simplex "
                f"{tuple(mesh.simplices[p][bad].tolist())}")
    return CochainComplex(mesh=mesh, D=D, star=star, star_scheme=scheme)


def hodge_laplacian(cx: CochainComplex, p: int) -> np.ndarray:
    """Dense symmetric PSD matrix of the degree-p Hodge Laplacian.

    This is the star-weighted operator (delta d + d delta) conjugated by
    star_p^{1/2}, which makes both the up- and the down-block exactly
    symmetric:

        up   = S_p^{-1/2} D_p^T S_{p+1} D_p S_p^{-1/2}
        down = S_p^{1/2} D_{p-1} S_{p-1}^{-1} D_{p-1}^T S_p^{1/2}
    """
    if not 0 <= p <= cx.dim:
        raise DomainError(f"degree {p} out of range for dimension {cx.dim}")
    n = cx.n_simplices(p)
    if n > SIZE_GUARD:
        raise ResourceError(
            f"Laplacian dimension {n} exceeds the dense size guard {SIZE_GUARD}")
    s_p = cx.star[p]
    inv_sqrt = 1.0 / np.sqrt(s_p)
    sqrt_p = np.sqrt(s_p)
    lap = np.zeros((n, n))
    if p < cx.dim:
        d = cx.D[p].astype(float)
        up = (d.T @ (sparse.diags(cx.star[p + 1]) @ d)).toarray()
        lap += up * inv_sqrt[:, None] * inv_sqrt[None, :]
    if p > 0:
        d = cx.D[p - 1].astype(float)
        down = (d @ (sparse.diags(1.0 / cx.star[p - 1]) @ d.T)).toarray()
        lap += down * sqrt_p[:, None] * sqrt_p[None, :]
    return (lap + lap.T) / 2.0
