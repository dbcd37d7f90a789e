"""Essential-spectrum recursion, Fredholm/compactness verdicts."""

import numpy as np
import pytest

from cornerspec.corner_complex import hyperfaces, parse_complex
from cornerspec.errors import DomainError
from cornerspec.recursion import (LaplacianShift, RecursionEngine,
                                  RecursionOptions, ResolventPower,
                                  essential_threshold, face_min_spectrum,
                                  full_spectrum, is_compact, is_fredholm)
from cornerspec.spectrum import EMPTY, SpectrumDesc, min_spectrum


@pytest.fixture(scope="module")
def tower():
    """Corner of two 4-dim cylinder ends meeting over an S^3."""
    return parse_complex({
        "name": "s3-corner", "dim": 5,
        "weights": {"H1": 1, "H2": 1},
        "faces": [
            {"id": "M", "dim": 5, "contained_in_hyperfaces": [],
             "geometry": {"kind": "none"}},
            {"id": "H1", "dim": 4, "contained_in_hyperfaces": ["H1"],
             "geometry": {"kind": "none"}},
            {"id": "H2", "dim": 4, "contained_in_hyperfaces": ["H2"],
             "geometry": {"kind": "none"}},
            {"id": "S3c", "dim": 3, "contained_in_hyperfaces": ["H1", "H2"],
             "geometry": {"kind": "round_sphere", "dim": 3, "radius": 1.0}},
        ],
    })


class TestFaceMin:
    def test_point_vertex(self, square):
        assert face_min_spectrum(square, "v_bl", 0).value == 0.0

    def test_sphere_one_forms(self, cyl_s2):
        res = face_min_spectrum(cyl_s2, "S2", 1)
        assert res.value == 2.0
        assert res.certified  # minimal face: full spectrum computed

    def test_square_edge(self, square):
        res = face_min_spectrum(square, "e_bottom", 0)
        assert res.value == 0.0
        assert res.certified

    def test_degree_above_face_dim(self, square):
        with pytest.raises(DomainError):
            face_min_spectrum(square, "v_bl", 1)

    def test_uncertified_on_nonminimal_face(self, tower):
        # the degree-2 minimum of a cylinder-over-S^3 end is 3, but the
        # recursion cannot rule out bound states below it
        res = face_min_spectrum(tower, "H1", 2)
        assert res.value == 3.0
        assert not res.certified

    def test_bound_states_lower_and_certify(self, tower):
        opts = RecursionOptions(bound_state_data={("H1", 2): (1.5,)})
        res = face_min_spectrum(tower, "H1", 2, opts)
        assert res.value == 1.5
        assert res.certified

    def test_monotone_in_bound_states(self, cyl_s3):
        base = face_min_spectrum(cyl_s3, "S3", 2).value
        opts = RecursionOptions(bound_state_data={("S3", 2): (1.0,)})
        assert face_min_spectrum(cyl_s3, "S3", 2, opts).value <= base


class TestThreshold:
    def test_p0_law(self, bundled):
        for name, cc in bundled.items():
            if hyperfaces(cc):
                assert essential_threshold(cc, 0) == 0.0, name

    def test_p1_law(self, bundled):
        for name, cc in bundled.items():
            if hyperfaces(cc) and cc.dim >= 1:
                assert essential_threshold(cc, 1) == 0.0, name

    def test_closed_manifold_empty(self, torus_closed):
        assert essential_threshold(torus_closed, 0) is EMPTY
        assert essential_threshold(torus_closed, 2) is EMPTY

    def test_cylinder_s2_p2(self, cyl_s2):
        # S^2 has harmonic 2-forms, so the p-block minimum is 0
        assert essential_threshold(cyl_s2, 2) == 0.0

    def test_cylinder_s3_p2_golden(self, cyl_s3):
        # golden value from the analytic S^3 form spectra: both blocks 3
        assert essential_threshold(cyl_s3, 2) == 3.0

    def test_bound_states_monotone(self, cyl_s3):
        opts = RecursionOptions(bound_state_data={("S3", 2): (1.0,)})
        assert essential_threshold(cyl_s3, 2, opts) == 1.0

    def test_degree_out_of_range(self, square):
        with pytest.raises(DomainError):
            essential_threshold(square, 3)

    def test_tower_all_degrees_zero(self, tower):
        for p in range(6):
            assert essential_threshold(tower, p) == 0.0


class TestEqConsistency:
    def test_recursion_equals_spectrum_core_path(self, bundled):
        """Two code paths, one answer, exact: the float recursion and the
        indicial set algebra must agree for every complex and degree."""
        for name, cc in bundled.items():
            if not hyperfaces(cc):
                continue
            engine = RecursionEngine(cc)
            for p in range(cc.dim + 1):
                via_recursion = engine.essential_threshold(p)
                via_sets = min(
                    min_spectrum(engine.indicial(cc, h, p))
                    for h in hyperfaces(cc))
                assert via_recursion == via_sets, (name, p)

    def test_indicial_is_pure_ray(self, cyl_s3):
        engine = RecursionEngine(cyl_s3)
        for p in range(5):
            ind = engine.indicial(cyl_s3, "S3", p)
            assert ind.discrete == ()
            assert ind.essential_threshold is not EMPTY


class TestFullSpectrum:
    def test_closed_torus_catalog(self, torus_closed):
        from cornerspec.dec.solve import ResolutionSettings
        opts = RecursionOptions(
            base_resolution=ResolutionSettings(cutoff=4.5))
        desc = full_spectrum(torus_closed, 0, opts)
        assert desc.essential_threshold is EMPTY
        assert desc.discrete[:9] == (0.0,) + (1.0,) * 4 + (2.0,) * 4

    def test_square_ray(self, square):
        desc = full_spectrum(square, 0)
        assert desc == SpectrumDesc.make((), 0.0)

    def test_bound_state_assembly(self, cyl_s3):
        opts = RecursionOptions(bound_state_data={("M", 2): (1.5,)})
        desc = full_spectrum(cyl_s3, 2, opts)
        assert desc.discrete == (1.5,)
        assert desc.essential_threshold == 3.0


class TestFredholm:
    def test_below_threshold(self, cyl_s3):
        verdict, cert = is_fredholm(LaplacianShift(cyl_s3, 2, 1.0))
        assert verdict
        assert cert.elliptic
        (entry,) = cert.entries
        assert entry.indicial.essential_threshold == 3.0
        assert entry.verdict == "invertible"

    def test_inside_ray(self, cyl_s3):
        verdict, _ = is_fredholm(LaplacianShift(cyl_s3, 2, 5.0))
        assert not verdict

    def test_on_ray_boundary(self, cyl_s3):
        verdict, _ = is_fredholm(LaplacianShift(cyl_s3, 2, 3.0))
        assert not verdict  # the essential spectrum is closed

    def test_nonreal_shift(self, bundled):
        for cc in bundled.values():
            if hyperfaces(cc):
                verdict, _ = is_fredholm(LaplacianShift(cc, 0, 1j))
                assert verdict

    def test_duality_randomized(self, bundled):
        rng = np.random.default_rng(13)
        for name, cc in bundled.items():
            if not hyperfaces(cc):
                continue
            for p in range(cc.dim + 1):
                m = essential_threshold(cc, p)
                for z in rng.uniform(-2.0, m + 5.0, size=25):
                    verdict, _ = is_fredholm(LaplacianShift(cc, p, float(z)))
                    assert verdict == (z < m), (name, p, z)

    def test_certificate_csv(self, cyl_s3):
        _, cert = is_fredholm(LaplacianShift(cyl_s3, 2, 1.0))
        csv = cert.to_csv()
        assert "face_id,degree,threshold,verdict" in csv
        assert "S3,2,3.0,invertible" in csv
        assert "operator,verdict" in csv


class TestCompactness:
    def test_closed_manifold(self, torus_closed):
        verdict, cert = is_compact(ResolventPower(torus_closed, 0, 1.0))
        assert verdict
        assert cert.entries == ()

    def test_square_not_compact(self, square):
        verdict, cert = is_compact(ResolventPower(square, 0, 1.0))
        assert not verdict
        assert len(cert.entries) == 4
        for e in cert.entries:
            assert "nonzero" in e.verdict

    def test_cylinder_fractional_power(self, cyl_s2):
        verdict, cert = is_compact(ResolventPower(cyl_s2, 2, 0.5))
        assert not verdict
        (entry,) = cert.entries
        assert entry.hyperface == "S2"

    def test_nonpositive_power(self, square):
        with pytest.raises(DomainError):
            is_compact(ResolventPower(square, 0, 0.0))


class TestConcurrencyContract:
    def test_engine_is_observationally_pure(self, cyl_s3):
        a = RecursionEngine(cyl_s3).essential_threshold(2)
        b = RecursionEngine(cyl_s3).essential_threshold(2)
        engine = RecursionEngine(cyl_s3)
        c1 = engine.essential_threshold(2)
        c2 = engine.essential_threshold(2)  # memoized second pass
        assert a == b == c1 == c2
