"""Eigenvalue extraction, Betti numbers, and base-face spectra.

``spectrum`` runs the cyclic-Jacobi eigensolver on dense symmetric
matrices.  Above ``jacobi_size_limit`` it switches to LAPACK
(``numpy.linalg.eigvalsh``) behind the same contract: the sweep kernel
is O(n^3) per sweep with poor cache behavior at several thousand rows,
and the largest acceptance meshes sit beyond that.

``integer_rank`` is the exact (fraction-free, arbitrary-precision)
row-reduction rank used to cross-check Betti numbers against the float
eigensolver path.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from cornerspec import catalog
from cornerspec.corner_complex import GeometryTag
from cornerspec.dec.cochain import (SIZE_GUARD, CochainComplex,
                                    build_cochain_complex, hodge_laplacian)
from cornerspec.dec.mesh import (build_circle_mesh, build_sphere_mesh,
                                 build_torus_mesh, load_off_mesh)
from cornerspec.eigen import jacobi_eigenvalues
from cornerspec.errors import DomainError, ResourceError
from cornerspec.spectrum import EMPTY, SpectrumDesc

KERNEL_TOL_FACTOR = 1e-7


@dataclass(frozen=True)
class ResolutionSettings:
    """How base-face spectra are produced.

    mode "catalog" uses the closed-form eigenvalue generators for the
    analytic geometries; mode "dec" discretizes them at the stated
    resolutions.  Spheres of dimension >= 3 and tori of dimension != 2
    always use the catalog (no mesher for those), mesh-file geometries
    always use DEC.
    """

    mode: str = "catalog"
    cutoff: float = 100.0
    circle_segments: int = 64
    torus_grid: int = 16
    sphere_subdivisions: int = 3
    eigen_tol: float = 1e-10
    jacobi_size_limit: int = 600

    def __post_init__(self):
        if self.mode not in ("catalog", "dec"):
            raise DomainError(f"unknown resolution mode {self.mode!r}")
        if self.cutoff <= 0:
            raise DomainError("eigenvalue cutoff must be positive")


@dataclass(frozen=True)
class LaplacianSpectrum:
    degree: int
    eigenvalues: tuple     # sorted ascending, with multiplicity
    kernel_dim: int

    def multiplicity_groups(self, rtol: float = 1e-6):
        """Cluster eigenvalues into numerically degenerate groups.

        Returns a list of (value, multiplicity); consecutive eigenvalues
        join a group while the gap stays below rtol * (1 + |value|).
        """
        groups = []
        for ev in self.eigenvalues:
            if groups and abs(ev - groups[-1][0]) <= rtol * (1.0 + abs(ev)):
                val, mult = groups[-1]
                groups[-1] = (val, mult + 1)
            else:
                groups.append((ev, 1))
        return groups


def spectrum(mat: np.ndarray, tol: float = 1e-10, degree: int = -1,
             jacobi_size_limit: int = 600) -> LaplacianSpectrum:
    """All eigenvalues of a symmetric matrix, plus the kernel count.

    The kernel tolerance is relative: eigenvalues below
    1e-7 * (max eigenvalue + 1) count as zero modes.
    """
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DomainError(f"expected a square matrix, got {mat.shape}")
    n = mat.shape[0]
    if n > SIZE_GUARD:
        raise ResourceError(f"matrix size {n} exceeds guard {SIZE_GUARD}")
    sym_slack = np.max(np.abs(mat - mat.T)) if n else 0.0
    scale = max(1.0, float(np.max(np.abs(mat)))) if n else 1.0
    if sym_slack > 1e-12 * scale:
        raise DomainError(f"matrix is not symmetric (deviation {sym_slack:g})")
    if n == 0:
        return LaplacianSpectrum(degree, (), 0)
    mat = (mat + mat.T) / 2.0
    if n <= jacobi_size_limit:
        ev = jacobi_eigenvalues(mat, tol=tol)
    else:
        ev = np.linalg.eigvalsh(mat)
    ev = np.sort(ev)
    kernel_tol = KERNEL_TOL_FACTOR * (float(ev[-1]) + 1.0)
    kernel_dim = int(np.sum(ev < kernel_tol))
    return LaplacianSpectrum(degree, tuple(float(v) for v in ev), kernel_dim)


def laplacian_spectrum(cx: CochainComplex, p: int,
                       settings: ResolutionSettings | None = None
                       ) -> LaplacianSpectrum:
    settings = settings or ResolutionSettings()
    return spectrum(hodge_laplacian(cx, p), tol=settings.eigen_tol, degree=p,
                    jacobi_size_limit=settings.jacobi_size_limit)


def betti(cx: CochainComplex, p: int) -> int:
    """Rank of degree-p cohomology = dim ker(Delta_p)."""
    return laplacian_spectrum(cx, p).kernel_dim


def integer_rank(mat) -> int:
    """Exact rank of an integer matrix by fraction-free elimination."""
    if hasattr(mat, "toarray"):
        mat = mat.toarray()
    a = [[int(v) for v in row] for row in np.asarray(mat).tolist()]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    prev = 1
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        pv = a[rank][col]
        for r in range(rank + 1, rows):
            factor = a[r][col]
            for c in range(col, cols):
                # Bareiss one-step: keeps entries integral and bounded
                a[r][c] = (a[r][c] * pv - factor * a[rank][c]) // prev
        prev = pv
        rank += 1
        if rank == rows:
            break
    return rank


def betti_integer(cx: CochainComplex, p: int) -> int:
    """Cohomology rank from exact integer ranks of the coboundaries."""
    n_p = cx.n_simplices(p)
    r_up = integer_rank(cx.D[p]) if p < cx.dim else 0
    r_dn = integer_rank(cx.D[p - 1]) if p > 0 else 0
    return n_p - r_up - r_dn


def mesh_for_geometry(tag: GeometryTag, settings: ResolutionSettings):
    """Concrete mesh realizing a geometry tag, or None for catalog-only."""
    if tag.kind == "mesh":
        return load_off_mesh(tag.path)
    if tag.kind == "circle":
        return build_circle_mesh(settings.circle_segments, tag.circumference)
    if tag.kind == "rect_torus" and len(tag.lengths) == 2:
        return build_torus_mesh(settings.torus_grid, settings.torus_grid,
                                tag.lengths[0], tag.lengths[1])
    if tag.kind == "round_sphere" and tag.dim == 2:
        return build_sphere_mesh(settings.sphere_subdivisions, tag.radius)
    if tag.kind == "round_sphere" and tag.dim == 1:
        return build_circle_mesh(settings.circle_segments,
                                 2.0 * np.pi * tag.radius)
    return None


def face_base_spectrum(tag: GeometryTag, p: int,
                       settings: ResolutionSettings | None = None
                       ) -> SpectrumDesc:
    """Discrete Laplace spectrum of a closed base face.

    Catalog geometries yield closed-form eigenvalues up to the cutoff;
    DEC mode (and mesh tags always) solve the discretized operator.
    The essential part is EMPTY: base faces are compact.
    """
    settings = settings or ResolutionSettings()
    if tag.kind == "none":
        raise DomainError("face has no concrete geometry tag")
    if tag.kind == "point":
        if p == 0:
            return SpectrumDesc.make((0.0,), EMPTY)
        raise DomainError(f"a point carries no degree-{p} forms")

    fdim = tag.face_dim
    if fdim is not None and not 0 <= p <= fdim:
        raise DomainError(f"degree {p} out of range for {tag.kind} of dim {fdim}")

    use_dec = tag.kind == "mesh" or settings.mode == "dec"
    if use_dec:
        mesh = mesh_for_geometry(tag, settings)
        if mesh is not None:
            cx = build_cochain_complex(mesh)
            if not 0 <= p <= cx.dim:
                raise DomainError(
                    f"degree {p} out of range for mesh of dim {cx.dim}")
            ls = laplacian_spectrum(cx, p, settings)
            return SpectrumDesc.make(ls.eigenvalues, EMPTY)
        # analytic-catalog-only geometries fall through

    if tag.kind == "circle":
        vals = catalog.circle_eigenvalues(tag.circumference, p, settings.cutoff)
    elif tag.kind == "rect_torus":
        vals = catalog.torus_eigenvalues(tag.lengths, p, settings.cutoff)
    elif tag.kind == "round_sphere":
        vals = catalog.sphere_eigenvalues(tag.dim, tag.radius, p,
                                          settings.cutoff)
    else:
        raise DomainError(f"unsupported geometry kind {tag.kind!r}")
    return SpectrumDesc.make(vals, EMPTY)


def eigenvalue_table_csv(ls: LaplacianSpectrum) -> str:
    """CSV rows (index, eigenvalue, multiplicity_group)."""
    lines = ["index,eigenvalue,multiplicity_group"]
    group = -1
    prev = None
    for i, ev in enumerate(ls.eigenvalues):
        if prev is None or abs(ev - prev) > 1e-6 * (1.0 + abs(ev)):
            group += 1
        lines.append(f"{i},{ev!r},{group}")
        prev = ev
    return "\n".join(lines) + "\n"
