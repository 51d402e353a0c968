import math

import numpy as np
import pytest

from dwtmark.errors import DimensionError
from dwtmark.wavelet import (
    dwt1d,
    dwt2d_multi,
    get_filter,
    idwt1d,
    idwt2d_multi,
)

SQRT2 = math.sqrt(2.0)


def brute_force_step(x, taps):
    """Independent circular-convolution oracle for one analysis filter."""
    n = len(x)
    return [sum(taps[k] * x[(2 * i + k) % n] for k in range(len(taps))) for i in range(n // 2)]


class TestDwt1d:
    def test_haar_constant(self):
        a, d = dwt1d([1.0, 1.0], get_filter("haar"))
        assert a == pytest.approx([SQRT2])
        assert d == pytest.approx([0.0], abs=1e-15)

    def test_haar_direct_formula(self):
        a, d = dwt1d([4.0, 2.0], get_filter("haar"))
        assert a[0] == pytest.approx(6.0 / SQRT2)
        assert d[0] == pytest.approx(2.0 / SQRT2)

    def test_db4_constant_vanishing_moment(self):
        filt = get_filter("db4")
        x = np.full(8, 3.25)
        a, d = dwt1d(x, filt)
        assert np.abs(d).max() <= 1e-12
        assert a == pytest.approx(np.full(4, 3.25 * SQRT2))
        # cross-check against the straight convolution oracle
        assert a == pytest.approx(brute_force_step(x, filt.lowpass), abs=1e-12)
        assert d == pytest.approx(brute_force_step(x, filt.highpass), abs=1e-12)

    def test_db4_matches_brute_force_on_arbitrary_signal(self):
        filt = get_filter("db4")
        x = np.array([3.0, -1.5, 7.25, 0.0, 2.0, 11.0, -4.5, 6.0])
        a, d = dwt1d(x, filt)
        assert a == pytest.approx(brute_force_step(x, filt.lowpass), abs=1e-12)
        assert d == pytest.approx(brute_force_step(x, filt.highpass), abs=1e-12)

    def test_odd_length_rejected(self):
        with pytest.raises(DimensionError):
            dwt1d([1.0, 2.0, 3.0], get_filter("haar"))

    def test_too_short_rejected(self):
        with pytest.raises(DimensionError):
            dwt1d([1.0], get_filter("haar"))


class TestIdwt1d:
    def test_haar_inverse_of_constant(self):
        x = idwt1d([SQRT2], [0.0], get_filter("haar"))
        assert x == pytest.approx([1.0, 1.0])

    def test_random_round_trip(self):
        rng = np.random.default_rng(11)
        x = rng.normal(size=16)
        filt = get_filter("haar")
        a, d = dwt1d(x, filt)
        assert np.abs(idwt1d(a, d, filt) - x).max() <= 1e-10

    def test_db4_matrix_oracle(self):
        # the transform equals multiplication by an orthogonal matrix whose
        # rows are the even shifts of each filter; its transpose inverts it
        filt = get_filter("db4")
        n = 8
        w = np.zeros((n, n))
        for i in range(n // 2):
            for k in range(4):
                w[i, (2 * i + k) % n] += filt.lowpass[k]
                w[n // 2 + i, (2 * i + k) % n] += filt.highpass[k]
        assert np.abs(w @ w.T - np.eye(n)).max() <= 1e-12
        rng = np.random.default_rng(12)
        x = rng.normal(size=n)
        a, d = dwt1d(x, filt)
        assert np.concatenate([a, d]) == pytest.approx(w @ x, abs=1e-12)
        assert idwt1d(a, d, filt) == pytest.approx(w.T @ (w @ x), abs=1e-12)
        assert np.abs(idwt1d(a, d, filt) - x).max() <= 1e-10

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            idwt1d([1.0, 2.0], [0.0], get_filter("haar"))


class TestDwt2dMulti:
    def test_constant_matrix_haar(self):
        pyr = dwt2d_multi(np.full((8, 8), 2.5), get_filter("haar"), 3)
        for level in pyr.details:
            for band in level:
                assert np.abs(band).max() <= 1e-12
        assert pyr.approx.shape == (1, 1)
        assert pyr.approx[0, 0] == pytest.approx(2.5 * 8)

    def test_level1_composes_1d_transform(self):
        # oracle: run the public 1-D op over rows, then over columns of each
        # half; quadrants must land per the fixed orientation convention
        rng = np.random.default_rng(21)
        m = rng.normal(size=(4, 4))
        filt = get_filter("haar")
        row_lo = np.empty((4, 2))
        row_hi = np.empty((4, 2))
        for r in range(4):
            row_lo[r], row_hi[r] = dwt1d(m[r], filt)
        ll = np.empty((2, 2))
        vertical = np.empty((2, 2))
        horizontal = np.empty((2, 2))
        diagonal = np.empty((2, 2))
        for c in range(2):
            ll[:, c], vertical[:, c] = dwt1d(row_lo[:, c], filt)
            horizontal[:, c], diagonal[:, c] = dwt1d(row_hi[:, c], filt)
        pyr = dwt2d_multi(m, filt, 1)
        assert pyr.details[0][0] == pytest.approx(horizontal, abs=1e-12)
        assert pyr.details[0][1] == pytest.approx(diagonal, abs=1e-12)
        assert pyr.details[0][2] == pytest.approx(vertical, abs=1e-12)
        assert pyr.approx == pytest.approx(ll, abs=1e-12)

    def test_indivisible_dims_rejected(self):
        with pytest.raises(DimensionError):
            dwt2d_multi(np.zeros((6, 6)) + 1.0, get_filter("haar"), 2)

    def test_subband_bookkeeping_non_square(self):
        pyr = dwt2d_multi(np.ones((64, 32)), get_filter("db4"), 4)
        for l, level in enumerate(pyr.details, start=1):
            for band in level:
                assert band.shape == (64 // 2**l, 32 // 2**l)
        assert pyr.approx.shape == (4, 2)
        total = sum(b.size for lv in pyr.details for b in lv) + pyr.approx.size
        assert total == 64 * 32
        assert pyr.n_locations == sum((64 // 2**l) * (32 // 2**l) for l in range(1, 5))


class TestIdwt2dMulti:
    @pytest.mark.parametrize("name", ["haar", "db4"])
    def test_round_trip_64(self, name):
        rng = np.random.default_rng(31)
        m = rng.normal(scale=50.0, size=(64, 64))
        pyr = dwt2d_multi(m, get_filter(name), 4)
        assert np.abs(idwt2d_multi(pyr) - m).max() <= 1e-9

    def test_perturbation_changes_output(self):
        rng = np.random.default_rng(32)
        m = rng.normal(size=(16, 16))
        filt = get_filter("haar")
        pyr = dwt2d_multi(m, filt, 2)
        pyr.details[1][0][0, 0] += 1.0
        assert np.abs(idwt2d_multi(pyr) - m).max() > 1e-3

    def test_inconsistent_subbands_rejected(self):
        pyr = dwt2d_multi(np.ones((16, 16)), get_filter("haar"), 2)
        pyr.details[0] = (np.zeros((3, 3)), pyr.details[0][1], pyr.details[0][2])
        with pytest.raises(DimensionError):
            idwt2d_multi(pyr)


class TestTransformProperties:
    @pytest.mark.parametrize("name", ["haar", "db4"])
    def test_energy_preservation(self, name):
        rng = np.random.default_rng(41)
        m = rng.normal(scale=20.0, size=(32, 32))
        pyr = dwt2d_multi(m, get_filter(name), 3)
        coeff_energy = sum(float((b**2).sum()) for lv in pyr.details for b in lv)
        coeff_energy += float((pyr.approx**2).sum())
        energy = float((m**2).sum())
        assert abs(energy - coeff_energy) / energy <= 1e-10

    def test_linearity(self):
        rng = np.random.default_rng(42)
        x = rng.normal(size=(16, 16))
        y = rng.normal(size=(16, 16))
        filt = get_filter("db4")
        lhs = dwt2d_multi(2.5 * x - 1.25 * y, filt, 2)
        px = dwt2d_multi(x, filt, 2)
        py = dwt2d_multi(y, filt, 2)
        assert lhs.approx == pytest.approx(2.5 * px.approx - 1.25 * py.approx, abs=1e-9)
        for lv, lx, ly in zip(lhs.details, px.details, py.details):
            for b, bx, by in zip(lv, lx, ly):
                assert b == pytest.approx(2.5 * bx - 1.25 * by, abs=1e-9)


def test_unknown_filter_rejected():
    with pytest.raises(ValueError, match="supported"):
        get_filter("sym5")


def test_filter_taps_are_quadrature_mirrors():
    for name in ("haar", "db4"):
        filt = get_filter(name)
        k = len(filt.lowpass)
        expected = [(-1) ** i * filt.lowpass[k - 1 - i] for i in range(k)]
        assert filt.highpass == pytest.approx(expected)
        assert float(filt.lowpass @ filt.lowpass) == pytest.approx(1.0, abs=1e-12)
