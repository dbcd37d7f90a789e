"""Combinatorial model of a compact manifold with corners.

A complex is a graded face poset with integer weights on the codim-1
faces (hyperfaces) and a concrete geometry tag on every minimal face.
Faces are abstract nodes: the partial order is encoded through each
face's set of containing hyperfaces (a codim-k face lies in exactly k
hyperfaces, a hyperface contains itself).  Two faces modeling distinct
components of the same hyperface intersection carry identical
containing sets and distinct ids; such components are mutually
incomparable in the order.

All values are immutable after construction and all operations are
pure, so complexes can be shared freely across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from cornerspec.errors import DomainError, ValidationError

GEOMETRY_KINDS = ("point", "circle", "rect_torus", "round_sphere", "mesh", "none")


@dataclass(frozen=True)
class GeometryTag:
    """Concrete geometry of a face, or ``none`` for non-minimal faces."""

    kind: str
    circumference: float | None = None
    lengths: tuple | None = None
    dim: int | None = None
    radius: float | None = None
    path: str | None = None

    def __post_init__(self):
        if self.kind not in GEOMETRY_KINDS:
            raise ValidationError(f"unknown geometry kind {self.kind!r}")

    @property
    def face_dim(self) -> int | None:
        """Dimension implied by the tag, None when not determined by it."""
        if self.kind == "point":
            return 0
        if self.kind == "circle":
            return 1
        if self.kind == "rect_torus":
            return len(self.lengths)
        if self.kind == "round_sphere":
            return self.dim
        return None


def geom_point() -> GeometryTag:
    return GeometryTag("point")


def geom_circle(circumference: float) -> GeometryTag:
    if circumference <= 0:
        raise ValidationError("circle circumference must be positive")
    return GeometryTag("circle", circumference=float(circumference))


def geom_rect_torus(lengths) -> GeometryTag:
    lengths = tuple(float(v) for v in lengths)
    if not lengths or any(v <= 0 for v in lengths):
        raise ValidationError("torus edge lengths must be positive")
    return GeometryTag("rect_torus", lengths=lengths)


def geom_round_sphere(dim: int, radius: float) -> GeometryTag:
    if dim < 1:
        raise ValidationError("sphere dimension must be >= 1")
    if radius <= 0:
        raise ValidationError("sphere radius must be positive")
    return GeometryTag("round_sphere", dim=int(dim), radius=float(radius))


def geom_mesh(path: str) -> GeometryTag:
    return GeometryTag("mesh", path=str(path))


def geom_none() -> GeometryTag:
    return GeometryTag("none")


@dataclass(frozen=True)
class Face:
    id: str
    dim: int
    codim: int
    containing_hyperfaces: frozenset
    geometry: GeometryTag = field(default_factory=geom_none)


@dataclass(frozen=True)
class CornerComplex:
    name: str
    dim: int
    faces: tuple  # Face, ordered by (codim, id)
    weights: dict  # hyperface id -> integer weight >= 1

    def __post_init__(self):
        object.__setattr__(
            self, "faces",
            tuple(sorted(self.faces, key=lambda f: (f.codim, f.id))))

    def face(self, face_id: str) -> Face:
        for f in self.faces:
            if f.id == face_id:
                return f
        raise DomainError(f"no face with id {face_id!r} in {self.name!r}")

    def leq(self, a: Face, b: Face) -> bool:
        """Face order: a <= b iff a lies in the closure of b."""
        if a.id == b.id:
            return True
        return a.containing_hyperfaces > b.containing_hyperfaces

    def below(self, f: Face):
        """Faces strictly below f (contained in its closure)."""
        return [g for g in self.faces if g.id != f.id and self.leq(g, f)]


@dataclass(frozen=True)
class Violation:
    face_id: str | None
    rule: str
    message: str

    def __str__(self):
        where = f" [face {self.face_id}]" if self.face_id else ""
        return f"{self.rule}{where}: {self.message}"


def validate_complex(cc: CornerComplex):
    """Check every structural invariant; returns a list of violations.

    An empty report means the complex is valid.  Violations are data,
    not exceptions: the same input always yields the same report.
    """
    report = []
    ids = [f.id for f in cc.faces]
    if len(set(ids)) != len(ids):
        report.append(Violation(None, "duplicate-ids", "face ids must be unique"))
        return report

    hyper = {f.id for f in cc.faces if f.codim == 1}

    top = [f for f in cc.faces if f.codim == 0]
    if len(top) != 1:
        report.append(Violation(
            None, "top-face-count",
            f"expected exactly one codim-0 face (connected M), found {len(top)}"))

    for f in cc.faces:
        if f.dim < 0 or f.codim < 0:
            report.append(Violation(f.id, "negative-grade",
                                    f"dim={f.dim}, codim={f.codim}"))
            continue
        if f.dim + f.codim != cc.dim:
            report.append(Violation(
                f.id, "dim-codim-sum",
                f"dim {f.dim} + codim {f.codim} != ambient {cc.dim}"))
        if len(f.containing_hyperfaces) != f.codim:
            report.append(Violation(
                f.id, "codim/containment mismatch",
                f"codim {f.codim} face lists "
                f"{len(f.containing_hyperfaces)} containing hyperfaces"))
        for h in f.containing_hyperfaces:
            if h not in hyper:
                report.append(Violation(
                    f.id, "unknown-hyperface",
                    f"containing hyperface {h!r} is not a codim-1 face"))
        if f.codim == 1 and f.id not in f.containing_hyperfaces:
            report.append(Violation(
                f.id, "hyperface-self-containment",
                "a hyperface must list itself as containing hyperface"))
        want = f.geometry.face_dim
        if want is not None and want != f.dim:
            report.append(Violation(
                f.id, "geometry-dim",
                f"geometry implies dim {want}, face has dim {f.dim}"))

    for h in sorted(hyper):
        if h not in cc.weights:
            report.append(Violation(h, "weight missing",
                                    f"no weight entry for hyperface {h!r}"))
    for k, v in sorted(cc.weights.items()):
        if k not in hyper:
            report.append(Violation(k, "weight-extra",
                                    f"weight entry {k!r} is not a hyperface"))
        elif not isinstance(v, int) or v < 1:
            report.append(Violation(k, "weight-range",
                                    f"weight must be an integer >= 1, got {v!r}"))

    minimal = {f.id for f in cc.faces if not cc.below(f)}
    for f in cc.faces:
        if f.id in minimal and f.geometry.kind == "none":
            report.append(Violation(
                f.id, "minimal-geometry",
                "minimal face needs a concrete geometry tag"))

    # graded poset: covering relations drop dim by exactly 1
    for f in cc.faces:
        above = [g for g in cc.faces if g.id != f.id and cc.leq(f, g)]
        for g in above:
            if any(h.id != f.id and h.id != g.id and cc.leq(f, h) and cc.leq(h, g)
                   for h in above):
                continue  # not a covering pair
            if g.dim - f.dim != 1:
                report.append(Violation(
                    f.id, "grading",
                    f"covering relation {f.id} < {g.id} jumps dim "
                    f"{f.dim} -> {g.dim}"))
    return report


def ensure_valid(cc: CornerComplex) -> None:
    report = validate_complex(cc)
    if report:
        msg = "; ".join(str(v) for v in report)
        raise ValidationError(f"invalid complex {cc.name!r}: {msg}")


def hyperfaces(cc: CornerComplex):
    """Ids of the codim-1 faces, sorted."""
    ensure_valid(cc)
    return sorted(f.id for f in cc.faces if f.codim == 1)


def minimal_faces(cc: CornerComplex):
    """Faces containing no other face: closed compact manifolds."""
    ensure_valid(cc)
    return sorted(f.id for f in cc.faces if not cc.below(f))


def restrict(cc: CornerComplex, hyperface_id: str) -> CornerComplex:
    """Face lattice of the closure of a hyperface, with induced weights.

    The hyperface becomes the codim-0 face and all codims drop by one.
    Each hyperface G of the restriction is a (component of a) pairwise
    intersection H & F' and inherits the ambient weight of F'.
    """
    ensure_valid(cc)
    H = cc.face(hyperface_id)
    if H.codim != 1:
        raise DomainError(f"{hyperface_id!r} is not a hyperface "
                          f"(codim {H.codim})")
    members = [f for f in cc.faces if cc.leq(f, H)]
    new_hyper = [f for f in members if f.codim == 2]

    faces = []
    for f in members:
        containing = frozenset(
            g.id for g in new_hyper if cc.leq(f, g))
        faces.append(Face(
            id=f.id, dim=f.dim, codim=f.codim - 1,
            containing_hyperfaces=containing, geometry=f.geometry))

    weights = {}
    for g in new_hyper:
        others = g.containing_hyperfaces - {H.id}
        if len(others) != 1:
            raise ValidationError(
                f"face {g.id!r} of {hyperface_id!r} does not come from a "
                f"unique second ambient hyperface: {sorted(others)}")
        weights[g.id] = cc.weights[next(iter(others))]

    return CornerComplex(
        name=f"{cc.name}|{hyperface_id}", dim=H.dim,
        faces=tuple(faces), weights=weights)


# --- JSON interface -------------------------------------------------------

_GEOMETRY_KEYS = {
    "point": set(),
    "none": set(),
    "circle": {"circumference"},
    "rect_torus": {"lengths"},
    "round_sphere": {"dim", "radius"},
    "mesh": {"path"},
}


def _geometry_from_json(obj) -> GeometryTag:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValidationError(f"geometry must be an object with 'kind': {obj!r}")
    kind = obj["kind"]
    if kind not in _GEOMETRY_KEYS:
        raise ValidationError(f"unknown geometry kind {kind!r}")
    extra = set(obj) - _GEOMETRY_KEYS[kind] - {"kind"}
    if extra:
        raise ValidationError(f"unknown geometry keys {sorted(extra)}")
    missing = _GEOMETRY_KEYS[kind] - set(obj)
    if missing:
        raise ValidationError(f"geometry {kind!r} missing keys {sorted(missing)}")
    if kind == "point":
        return geom_point()
    if kind == "none":
        return geom_none()
    if kind == "circle":
        return geom_circle(obj["circumference"])
    if kind == "rect_torus":
        return geom_rect_torus(obj["lengths"])
    if kind == "round_sphere":
        return geom_round_sphere(obj["dim"], obj["radius"])
    return geom_mesh(obj["path"])


def parse_complex(doc: dict) -> CornerComplex:
    """Build a complex from a parsed JSON document (strict keys)."""
    if not isinstance(doc, dict):
        raise ValidationError("complex document must be a JSON object")
    extra = set(doc) - {"name", "dim", "weights", "faces"}
    if extra:
        raise ValidationError(f"unknown document keys {sorted(extra)}")
    for key in ("name", "dim", "weights", "faces"):
        if key not in doc:
            raise ValidationError(f"missing document key {key!r}")

    ambient = doc["dim"]
    if not isinstance(ambient, int) or ambient < 0:
        raise ValidationError(f"dim must be a nonnegative integer: {ambient!r}")

    faces = []
    for entry in doc["faces"]:
        if not isinstance(entry, dict):
            raise ValidationError(f"face entry must be an object: {entry!r}")
        extra = set(entry) - {"id", "dim", "contained_in_hyperfaces", "geometry"}
        if extra:
            raise ValidationError(
                f"unknown face keys {sorted(extra)} in {entry.get('id')!r}")
        for key in ("id", "dim", "contained_in_hyperfaces", "geometry"):
            if key not in entry:
                raise ValidationError(
                    f"face entry missing key {key!r}: {entry!r}")
        fdim = entry["dim"]
        if not isinstance(fdim, int) or fdim < 0:
            raise ValidationError(f"face dim must be a nonnegative integer")
        faces.append(Face(
            id=str(entry["id"]), dim=fdim, codim=ambient - fdim,
            containing_hyperfaces=frozenset(
                str(h) for h in entry["contained_in_hyperfaces"]),
            geometry=_geometry_from_json(entry["geometry"])))

    weights = doc["weights"]
    if not isinstance(weights, dict):
        raise ValidationError("weights must be a map hyperface-id -> integer")

    return CornerComplex(
        name=str(doc["name"]), dim=ambient, faces=tuple(faces),
        weights={str(k): v for k, v in weights.items()})


def load_complex(path) -> CornerComplex:
    """Read and parse a complex JSON file."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"bad JSON in {path}: {exc}") from exc
    return parse_complex(doc)
