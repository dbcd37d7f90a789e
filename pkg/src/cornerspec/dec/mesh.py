"""Simplicial meshes for the compact base faces.

A mesh stores vertex coordinates and one sorted-vertex-id array per
simplex dimension; every lower simplex is derived from the top cells.
Orientation is the combinatorial one induced by increasing vertex ids.

Flat geometries (circle, rectangular torus) are kept in periodic
parameter coordinates with explicit periods; all metric quantities use
minimal-image differences, so primal edge lengths are the exact flat
distances rather than chord lengths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from cornerspec.errors import DomainError, ResourceError, ValidationError

SPHERE_SUBDIV_GUARD = 6


@dataclass
class Mesh:
    vertices: np.ndarray              # (V, D) float coordinates
    simplices: list                   # simplices[k]: (M_k, k+1) int array, rows sorted
    geometry: str = "mesh"            # tag this mesh realizes
    periods: tuple | None = None      # per-coordinate periods for flat quotients

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def counts(self) -> tuple:
        return tuple(len(s) for s in self.simplices)

    def delta(self, i: int, j: int) -> np.ndarray:
        """Displacement vertex i -> vertex j, minimal image if periodic."""
        d = self.vertices[j] - self.vertices[i]
        return self._wrap(d)

    def _wrap(self, d: np.ndarray) -> np.ndarray:
        if self.periods is None:
            return d
        per = np.asarray(self.periods, dtype=float)
        return d - per * np.round(d / per)

    def local_coords(self, vertex_ids) -> np.ndarray:
        """Coordinates of the given vertices unwrapped around the first."""
        vertex_ids = list(vertex_ids)
        anchor = self.vertices[vertex_ids[0]]
        rows = [anchor + self.delta(vertex_ids[0], v) for v in vertex_ids]
        return np.array(rows)


def simplex_volume(points: np.ndarray) -> float:
    """k-volume of the simplex spanned by the given (k+1) points."""
    m = points.shape[0] - 1
    if m == 0:
        return 1.0
    edges = points[1:] - points[0]
    gram = edges @ edges.T
    det = float(np.linalg.det(gram))
    return float(np.sqrt(max(det, 0.0))) / math.factorial(m)


def mesh_from_top_cells(vertices, cells, geometry="mesh", periods=None) -> Mesh:
    """Assemble the full simplex table from top-dimensional cells."""
    vertices = np.asarray(vertices, dtype=float)
    cells = np.asarray(cells, dtype=np.int64)
    if cells.ndim != 2:
        raise ValidationError("top cells must form a rectangular array")
    d = cells.shape[1] - 1
    if np.any(cells < 0) or np.any(cells >= len(vertices)):
        raise ValidationError("cell vertex id out of range")
    if any(len(set(row)) != len(row) for row in cells.tolist()):
        raise ValidationError("degenerate top cell (repeated vertex)")

    used = np.zeros(len(vertices), dtype=bool)
    used[cells.ravel()] = True
    if not used.all():
        raise ValidationError("vertex not referenced by any top cell")

    simplices = [np.arange(len(vertices), dtype=np.int64).reshape(-1, 1)]
    for k in range(1, d + 1):
        seen = set()
        for row in cells.tolist():
            for sub in combinations(sorted(row), k + 1):
                seen.add(sub)
        simplices.append(np.array(sorted(seen), dtype=np.int64))
    return Mesh(vertices=vertices, simplices=simplices,
                geometry=geometry, periods=periods)


def build_circle_mesh(n: int, circumference: float) -> Mesh:
    """n equal segments on a circle, in periodic 1-D coordinates."""
    if n < 3:
        raise DomainError(f"circle mesh needs n >= 3 segments, got {n}")
    if circumference <= 0:
        raise DomainError("circumference must be positive")
    h = circumference / n
    vertices = (np.arange(n, dtype=float) * h).reshape(-1, 1)
    cells = np.array([[i, (i + 1) % n] for i in range(n)], dtype=np.int64)
    cells.sort(axis=1)
    return mesh_from_top_cells(vertices, cells, geometry="circle",
                               periods=(circumference,))


def build_torus_mesh(n1: int, n2: int, L1: float, L2: float) -> Mesh:
    """Flat rectangular torus on an n1 x n2 grid, squares split in two."""
    if n1 < 3 or n2 < 3:
        raise DomainError(f"torus grid needs n1, n2 >= 3, got {n1} x {n2}")
    if L1 <= 0 or L2 <= 0:
        raise DomainError("torus edge lengths must be positive")
    h1, h2 = L1 / n1, L2 / n2
    vid = lambda i, j: (i % n1) * n2 + (j % n2)
    vertices = np.array([[i * h1, j * h2]
                         for i in range(n1) for j in range(n2)])
    cells = []
    for i in range(n1):
        for j in range(n2):
            a, b = vid(i, j), vid(i + 1, j)
            c, d = vid(i + 1, j + 1), vid(i, j + 1)
            cells.append(sorted((a, b, c)))
            cells.append(sorted((a, c, d)))
    return mesh_from_top_cells(vertices, np.array(cells, dtype=np.int64),
                               geometry="rect_torus", periods=(L1, L2))


_ICO_FACES = [
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
]


def _icosahedron_vertices() -> np.ndarray:
    r = (1.0 + np.sqrt(5.0)) / 2.0
    v = np.array([
        [-1, r, 0], [1, r, 0], [-1, -r, 0], [1, -r, 0],
        [0, -1, r], [0, 1, r], [0, -1, -r], [0, 1, -r],
        [r, 0, -1], [r, 0, 1], [-r, 0, -1], [-r, 0, 1],
    ], dtype=float)
    return v


def build_sphere_mesh(subdivisions: int, radius: float) -> Mesh:
    """Icosahedron subdivided and projected onto the round sphere."""
    if subdivisions < 0:
        raise DomainError("subdivisions must be nonnegative")
    if subdivisions > SPHERE_SUBDIV_GUARD:
        raise ResourceError(
            f"sphere subdivisions capped at {SPHERE_SUBDIV_GUARD} "
            f"(requested {subdivisions})")
    if radius <= 0:
        raise DomainError("radius must be positive")

    verts = list(_icosahedron_vertices())
    faces = [tuple(f) for f in _ICO_FACES]
    for _ in range(subdivisions):
        midpoint = {}

        def mid(a, b):
            key = (min(a, b), max(a, b))
            if key not in midpoint:
                verts.append((verts[a] + verts[b]) / 2.0)
                midpoint[key] = len(verts) - 1
            return midpoint[key]

        next_faces = []
        for a, b, c in faces:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            next_faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = next_faces

    v = np.array(verts)
    v *= radius / np.linalg.norm(v, axis=1, keepdims=True)
    cells = np.sort(np.array(faces, dtype=np.int64), axis=1)
    return mesh_from_top_cells(v, cells, geometry="round_sphere")


def load_off_mesh(path) -> Mesh:
    """Read an OFF file: triangle surfaces or segment (1-D) complexes."""
    try:
        with open(path, encoding="utf-8") as fh:
            tokens = []
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if line:
                    tokens.extend(line.split())
    except OSError as exc:
        raise ValidationError(f"cannot read mesh {path}: {exc}") from exc
    if not tokens or tokens[0] != "OFF":
        raise ValidationError(f"{path}: missing OFF header")
    try:
        nv, nf = int(tokens[1]), int(tokens[2])
        pos = 4  # header + V F E counts
        coords = [float(t) for t in tokens[pos:pos + 3 * nv]]
        pos += 3 * nv
        vertices = np.array(coords).reshape(nv, 3)
        cells = []
        arities = set()
        for _ in range(nf):
            k = int(tokens[pos])
            arities.add(k)
            cells.append(sorted(int(t) for t in tokens[pos + 1: pos + 1 + k]))
            pos += 1 + k
    except (ValueError, IndexError) as exc:
        raise ValidationError(f"{path}: malformed OFF data ({exc})") from exc
    if len(arities) != 1:
        raise ValidationError(f"{path}: mixed cell arities {sorted(arities)}")
    arity = arities.pop()
    if arity < 2:
        raise ValidationError(f"{path}: cells must have at least 2 vertices")
    return mesh_from_top_cells(vertices, np.array(cells, dtype=np.int64))


def check_closed(mesh: Mesh) -> None:
    """Every codim-1 simplex must bound exactly two top cells."""
    d = mesh.dim
    if d == 0:
        return
    count = {}
    for row in mesh.simplices[d].tolist():
        for sub in combinations(row, d):
            count[sub] = count.get(sub, 0) + 1
    bad = [s for s, c in count.items() if c != 2]
    if bad:
        raise ValidationError(
            f"mesh is not a closed {d}-manifold: simplex {bad[0]} bounds "
            f"{count[bad[0]]} top cells")
