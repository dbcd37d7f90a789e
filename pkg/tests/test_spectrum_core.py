"""Set arithmetic on spectrum descriptions, checked against a brute-force
lambda-sweep oracle."""

import numpy as np
import pytest

from cornerspec.errors import DomainError
from cornerspec.spectrum import (EMPTY, SpectrumDesc, from_csv_row,
                                 indicial_spectrum, min_spectrum, to_csv_row,
                                 union)


def sweep_oracle(samples):
    """Brute-force model of the indicial ray: {lam^2 + mu} over a grid.

    Returns the grid minimum; the true ray onset is min(samples) and the
    grid value can only exceed it by the resolution of lam^2 near 0.
    """
    lams = np.arange(-10.0, 10.0 + 1e-12, 0.01)
    samples = np.asarray(sorted(samples))
    values = (lams[:, None] ** 2 + samples[None, :]).ravel()
    return values, float(values.min())


class TestMinSpectrum:
    def test_discrete_only(self):
        s = SpectrumDesc.make((0, 2, 2, 6), EMPTY)
        assert min_spectrum(s) == 0

    def test_ray_only(self):
        assert min_spectrum(SpectrumDesc.make((), 3)) == 3

    def test_mixed(self):
        assert min_spectrum(SpectrumDesc.make((1,), 4)) == 1

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            min_spectrum(SpectrumDesc.make((), EMPTY))


class TestIndicialSpectrum:
    def test_p0_single_block(self):
        out = indicial_spectrum(0, SpectrumDesc.make((0, 2)), None)
        assert out.discrete == ()
        assert out.essential_threshold == 0

    def test_p2_two_blocks(self):
        out = indicial_spectrum(2, SpectrumDesc.make((0, 5)),
                                SpectrumDesc.make((2, 7)))
        assert out.essential_threshold == 0

    def test_matching_blocks_at_three(self):
        # oracle-first: the swept values must fill [3, inf) and bottom at 3
        values, grid_min = sweep_oracle([3.0, 5.0, 3.0])
        assert grid_min == pytest.approx(3.0, abs=1e-4)
        out = indicial_spectrum(2, SpectrumDesc.make((3, 5)),
                                SpectrumDesc.make((3,)))
        assert out.essential_threshold == 3.0
        assert np.all(values >= out.essential_threshold - 1e-12)

    def test_block_arity_enforced(self):
        s = SpectrumDesc.make((1,))
        with pytest.raises(DomainError):
            indicial_spectrum(0, s, s)
        with pytest.raises(DomainError):
            indicial_spectrum(2, s, None)

    def test_sweep_oracle_agreement_randomized(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            pts_p = rng.uniform(0, 9, size=rng.integers(1, 5))
            pts_q = rng.uniform(0, 9, size=rng.integers(1, 5))
            out = indicial_spectrum(1, SpectrumDesc.make(pts_p),
                                    SpectrumDesc.make(pts_q))
            values, grid_min = sweep_oracle(np.concatenate([pts_p, pts_q]))
            # every swept value lies in the returned ray
            assert np.all(values >= out.essential_threshold - 1e-12)
            # and the ray onset matches the sample minimum to grid resolution
            assert abs(grid_min - out.essential_threshold) < 1e-4
            assert out.discrete == ()


class TestUnion:
    def test_point_plus_ray(self):
        out = union(SpectrumDesc.make((0,)), SpectrumDesc.make((), 3))
        assert out == SpectrumDesc.make((0,), 3)

    def test_two_rays(self):
        out = union(SpectrumDesc.make((), 2), SpectrumDesc.make((), 5))
        assert out == SpectrumDesc.make((), 2)

    def test_absorption(self):
        out = union(SpectrumDesc.make((1, 4)), SpectrumDesc.make((), 3))
        assert out.discrete == (1,)
        assert out.essential_threshold == 3

    def test_tie_absorbed_into_ray(self):
        out = SpectrumDesc.make((3,), 3)
        assert out.discrete == ()

    def test_algebraic_laws_randomized(self):
        rng = np.random.default_rng(11)

        def rand_desc():
            disc = rng.uniform(0, 10, size=rng.integers(0, 4))
            thr = EMPTY if rng.random() < 0.3 else float(rng.uniform(0, 10))
            return SpectrumDesc.make(disc, thr)

        for _ in range(200):
            a, b, c = rand_desc(), rand_desc(), rand_desc()
            assert union(a, b) == union(b, a)
            assert union(a, union(b, c)) == union(union(a, b), c)
            assert union(a, a) == a
            if not a.is_empty() and not b.is_empty():
                assert min_spectrum(union(a, b)) == min(
                    min_spectrum(a), min_spectrum(b))


class TestSerialization:
    @pytest.mark.parametrize("desc", [
        SpectrumDesc.make((), 3.0),
        SpectrumDesc.make((0.5, 1.25), 3.0),
        SpectrumDesc.make((0.0, 2.0, 2.0)),
        SpectrumDesc.make((), 0.0),
    ])
    def test_csv_round_trip(self, desc):
        assert from_csv_row(to_csv_row(desc)) == desc

    def test_text_rendering(self):
        assert SpectrumDesc.make((1.5,), 3).to_text() == "{1.5} ∪ [3, ∞)"
        assert SpectrumDesc.make((), 0).to_text() == "[0, ∞)"
        assert SpectrumDesc.make((0, 1)).to_text() == "{0, 1}"
