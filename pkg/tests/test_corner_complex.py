"""Face lattice model: validation, restriction, induced weights."""

import json

import pytest

from cornerspec.corner_complex import (Face, CornerComplex, geom_point,
                                       geom_none, hyperfaces, load_complex,
                                       minimal_faces, parse_complex, restrict,
                                       validate_complex)
from cornerspec.errors import DomainError, ValidationError


def break_face(cc, face_id, **changes):
    """Copy of cc with one face's fields replaced."""
    faces = []
    for f in cc.faces:
        if f.id == face_id:
            fields = dict(id=f.id, dim=f.dim, codim=f.codim,
                          containing_hyperfaces=f.containing_hyperfaces,
                          geometry=f.geometry)
            fields.update(changes)
            f = Face(**fields)
        faces.append(f)
    return CornerComplex(cc.name, cc.dim, tuple(faces), dict(cc.weights))


class TestValidate:
    def test_square_valid(self, square):
        assert validate_complex(square) == []

    def test_vertex_containment_mismatch(self, square):
        bad = break_face(square, "v_bl",
                         containing_hyperfaces=frozenset({"e_bottom"}))
        report = validate_complex(bad)
        assert any(v.rule == "codim/containment mismatch" and
                   v.face_id == "v_bl" for v in report)

    def test_missing_weight(self, square):
        weights = dict(square.weights)
        del weights["e_top"]
        bad = CornerComplex(square.name, square.dim, square.faces, weights)
        report = validate_complex(bad)
        assert any(v.rule == "weight missing" for v in report)

    def test_minimal_needs_geometry(self, square):
        bad = break_face(square, "v_bl", geometry=geom_none())
        assert any(v.rule == "minimal-geometry"
                   for v in validate_complex(bad))

    def test_weight_below_one(self, square):
        weights = dict(square.weights, e_top=0)
        bad = CornerComplex(square.name, square.dim, square.faces, weights)
        assert any(v.rule == "weight-range" for v in validate_complex(bad))

    def test_two_top_faces(self, square):
        bad = break_face(square, "e_top", dim=2, codim=0,
                         containing_hyperfaces=frozenset())
        assert any(v.rule == "top-face-count" for v in validate_complex(bad))

    def test_pure_and_idempotent(self, square):
        bad = break_face(square, "v_bl",
                         containing_hyperfaces=frozenset({"e_bottom"}))
        first = [str(v) for v in validate_complex(bad)]
        second = [str(v) for v in validate_complex(bad)]
        assert first == second

    def test_all_bundled_valid(self, bundled):
        for name, cc in bundled.items():
            assert validate_complex(cc) == [], name


class TestHyperfaces:
    def test_square(self, square):
        assert hyperfaces(square) == ["e_bottom", "e_left", "e_right", "e_top"]

    def test_single_boundary(self, cyl_s2):
        assert hyperfaces(cyl_s2) == ["S2"]

    def test_closed(self, torus_closed):
        assert hyperfaces(torus_closed) == []

    def test_invalid_complex_raises(self, square):
        bad = break_face(square, "v_bl",
                         containing_hyperfaces=frozenset({"e_bottom"}))
        with pytest.raises(ValidationError):
            hyperfaces(bad)


class TestMinimalFaces:
    def test_square_vertices(self, square):
        assert minimal_faces(square) == ["v_bl", "v_br", "v_tl", "v_tr"]

    def test_cylinder_sphere(self, cyl_s2):
        assert minimal_faces(cyl_s2) == ["S2"]

    def test_closed_torus_is_its_own_minimal_face(self, torus_closed):
        assert minimal_faces(torus_closed) == ["T2"]


class TestRestrict:
    def test_square_edge_is_interval(self, square):
        sub = restrict(square, "e_bottom")
        assert sub.dim == 1
        assert validate_complex(sub) == []
        assert hyperfaces(sub) == ["v_bl", "v_br"]
        # induced weights come from the crossing edges
        assert sub.weights == {"v_bl": 1, "v_br": 1}
        top = [f for f in sub.faces if f.codim == 0]
        assert [f.id for f in top] == ["e_bottom"]

    def test_cylinder_restricts_to_closed_sphere(self, cyl_s2):
        sub = restrict(cyl_s2, "S2")
        assert hyperfaces(sub) == []
        assert minimal_faces(sub) == ["S2"]
        assert sub.face("S2").geometry.kind == "round_sphere"

    def test_cube_corner_induced_weights(self, cube_corner):
        sub = restrict(cube_corner, "A")  # ambient weight 1
        assert sub.dim == 2
        assert hyperfaces(sub) == ["AB", "AC"]
        assert sub.weights == {"AB": 2, "AC": 3}

    def test_not_a_hyperface(self, square):
        with pytest.raises(DomainError):
            restrict(square, "v_bl")

    def test_weight_consistency_property(self, bundled):
        # every hyperface of the restriction carries the ambient weight of
        # the unique second hyperface containing it
        for cc in bundled.values():
            for h in hyperfaces(cc):
                sub = restrict(cc, h)
                for g in hyperfaces(sub):
                    others = cc.face(g).containing_hyperfaces - {h}
                    assert sub.weights[g] == cc.weights[next(iter(others))]

    def test_composition_along_chains(self, cube_corner):
        # M -> A -> AB and M -> B -> AB give the same labeled complex
        via_a = restrict(restrict(cube_corner, "A"), "AB")
        via_b = restrict(restrict(cube_corner, "B"), "AB")

        def signature(cc):
            return (cc.dim,
                    tuple((f.id, f.dim, f.codim,
                           tuple(sorted(f.containing_hyperfaces)),
                           f.geometry.kind) for f in cc.faces),
                    tuple(sorted(cc.weights.items())))

        assert signature(via_a) == signature(via_b)
        # and the deepest face keeps the ambient weight of C
        assert via_a.weights == {"ABC": 3}

    def test_minimal_faces_shrink(self, bundled):
        for cc in bundled.values():
            mins = set(minimal_faces(cc))
            for h in hyperfaces(cc):
                assert set(minimal_faces(restrict(cc, h))) <= mins


class TestJson:
    def test_unknown_top_key_rejected(self, square):
        doc = {"name": "x", "dim": 1, "weights": {}, "faces": [], "extra": 1}
        with pytest.raises(ValidationError, match="unknown document keys"):
            parse_complex(doc)

    def test_unknown_face_key_rejected(self):
        doc = {"name": "x", "dim": 0, "weights": {}, "faces": [
            {"id": "M", "dim": 0, "contained_in_hyperfaces": [],
             "geometry": {"kind": "point"}, "color": "red"}]}
        with pytest.raises(ValidationError, match="unknown face keys"):
            parse_complex(doc)

    def test_unknown_geometry_key_rejected(self):
        doc = {"name": "x", "dim": 0, "weights": {}, "faces": [
            {"id": "M", "dim": 0, "contained_in_hyperfaces": [],
             "geometry": {"kind": "point", "radius": 2}}]}
        with pytest.raises(ValidationError, match="unknown geometry keys"):
            parse_complex(doc)

    def test_missing_geometry_param_rejected(self):
        doc = {"name": "x", "dim": 1, "weights": {}, "faces": [
            {"id": "M", "dim": 1, "contained_in_hyperfaces": [],
             "geometry": {"kind": "circle"}}]}
        with pytest.raises(ValidationError, match="missing keys"):
            parse_complex(doc)

    def test_bad_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ValidationError, match="bad JSON"):
            load_complex(path)

    def test_round_trip_file(self, tmp_path, square):
        doc = {"name": "pt", "dim": 0, "weights": {}, "faces": [
            {"id": "M", "dim": 0, "contained_in_hyperfaces": [],
             "geometry": {"kind": "point"}}]}
        path = tmp_path / "pt.json"
        path.write_text(json.dumps(doc))
        cc = load_complex(path)
        assert validate_complex(cc) == []
        assert minimal_faces(cc) == ["M"]
