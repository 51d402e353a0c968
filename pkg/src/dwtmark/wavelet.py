"""Multilevel orthogonal 2-D discrete wavelet transform with exact inverse.

The analysis step is circular (periodic) convolution followed by dyadic
downsampling:

    approx[i] = sum_k  lowpass[k] * x[(2i + k) mod n]
    detail[i] = sum_k highpass[k] * x[(2i + k) mod n]

with highpass the quadrature mirror of lowpass, highpass[k] =
(-1)^k * lowpass[K-1-k].  For orthonormal taps on even-length signals this
periodization gives perfect reconstruction to machine precision, which is
what makes the embed/extract round trip exactly testable.

The 2-D transform is separable: all rows, then all columns of each half.
Quadrant naming is fixed once and for all (rows: left = low, right = high;
columns: top = low, bottom = high):

    top-left      low/low    -> input to the next level
    top-right     high/low   -> orientation 1 (horizontal)
    bottom-right  high/high  -> orientation 2 (diagonal)
    bottom-left   low/high   -> orientation 3 (vertical)
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError
from .validation import check_matrix


@dataclass(frozen=True)
class WaveletFilter:
    """Orthonormal analysis filter pair identified by name."""

    name: str
    lowpass: np.ndarray
    highpass: np.ndarray = field(default=None)

    def __post_init__(self):
        lp = np.asarray(self.lowpass, dtype=np.float64)
        hp = self.highpass
        if hp is None:
            hp = _quadrature_mirror(lp)
        hp = np.asarray(hp, dtype=np.float64)
        if abs(float(lp @ lp) - 1.0) > 1e-12:
            raise ValueError(f"filter {self.name!r} taps are not orthonormal")
        if hp.shape != lp.shape or not np.array_equal(hp, _quadrature_mirror(lp)):
            raise ValueError(f"filter {self.name!r} highpass is not the quadrature mirror")
        lp.setflags(write=False)
        hp.setflags(write=False)
        object.__setattr__(self, "lowpass", lp)
        object.__setattr__(self, "highpass", hp)


def _quadrature_mirror(lowpass: np.ndarray) -> np.ndarray:
    hp = lowpass[::-1].copy()
    hp[1::2] *= -1.0
    return hp


_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)

FILTERS = {
    "haar": WaveletFilter("haar", np.array([1.0, 1.0]) / _SQRT2),
    "db4": WaveletFilter(
        "db4",
        np.array([1.0 + _SQRT3, 3.0 + _SQRT3, 3.0 - _SQRT3, 1.0 - _SQRT3]) / (4.0 * _SQRT2),
    ),
}


def get_filter(name: str) -> WaveletFilter:
    """Look up a filter by id; supported: haar, db4."""
    try:
        return FILTERS[name]
    except KeyError:
        raise ValueError(f"unknown wavelet {name!r}; supported: {sorted(FILTERS)}") from None


@dataclass
class Pyramid:
    """L-level decomposition: per level a (horizontal, diagonal, vertical) detail
    triple, plus the gross approximation at the coarsest level.

    details[l-1] holds level l; level 1 is the finest.  Subband l has shape
    (rows / 2^l, cols / 2^l) of the original matrix.
    """

    filter: WaveletFilter
    levels: int
    details: list
    approx: np.ndarray

    @property
    def n_locations(self) -> int:
        """Number of (level, m, n) orientation-triple positions."""
        return sum(h.size for h, _, _ in self.details)


def _analyze(arr: np.ndarray, filt: WaveletFilter, axis: int):
    n = arr.shape[axis]
    half = n // 2
    k = len(filt.lowpass)
    idx = (2 * np.arange(half)[:, None] + np.arange(k)[None, :]) % n
    if axis == 0:
        seg = arr[idx, :]
        lo = np.einsum("ikc,k->ic", seg, filt.lowpass)
        hi = np.einsum("ikc,k->ic", seg, filt.highpass)
    else:
        seg = arr[:, idx]
        lo = seg @ filt.lowpass
        hi = seg @ filt.highpass
    return lo, hi


def _synthesize(lo: np.ndarray, hi: np.ndarray, filt: WaveletFilter, axis: int) -> np.ndarray:
    n = 2 * lo.shape[axis]
    shape = list(lo.shape)
    shape[axis] = n
    up_lo = np.zeros(shape)
    up_hi = np.zeros(shape)
    even = [slice(None)] * lo.ndim
    even[axis] = slice(0, n, 2)
    up_lo[tuple(even)] = lo
    up_hi[tuple(even)] = hi
    out = np.zeros(shape)
    for k in range(len(filt.lowpass)):
        out += filt.lowpass[k] * np.roll(up_lo, k, axis=axis)
        out += filt.highpass[k] * np.roll(up_hi, k, axis=axis)
    return out


def dwt1d(signal, filt: WaveletFilter):
    """One analysis step on a 1-D signal; returns (approx, detail), each half length."""
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionError("dwt1d expects a 1-D signal")
    if x.size < 2 or x.size % 2 != 0:
        raise DimensionError(f"signal length must be even and >= 2, got {x.size}")
    seg = x[(2 * np.arange(x.size // 2)[:, None] + np.arange(len(filt.lowpass))[None, :]) % x.size]
    return seg @ filt.lowpass, seg @ filt.highpass


def idwt1d(approx, detail, filt: WaveletFilter) -> np.ndarray:
    """Exact inverse of dwt1d under periodic extension."""
    a = np.asarray(approx, dtype=np.float64)
    d = np.asarray(detail, dtype=np.float64)
    if a.ndim != 1 or d.ndim != 1 or a.size != d.size:
        raise DimensionError(f"approx/detail length mismatch: {a.shape} vs {d.shape}")
    if a.size < 1:
        raise DimensionError("empty coefficient arrays")
    return _synthesize(a, d, filt, axis=0)


def dwt2d_multi(matrix, filt: WaveletFilter, levels: int) -> Pyramid:
    """L-level separable 2-D transform.  Dimensions must be divisible by 2^levels."""
    m = check_matrix(matrix)
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    rows, cols = m.shape
    step = 2**levels
    if rows % step != 0 or cols % step != 0:
        raise DimensionError(
            f"matrix dims {rows}x{cols} not divisible by 2^levels = {step}"
        )
    details = []
    cur = m
    for _ in range(levels):
        row_lo, row_hi = _analyze(cur, filt, axis=1)
        ll, vertical = _analyze(row_lo, filt, axis=0)
        horizontal, diagonal = _analyze(row_hi, filt, axis=0)
        details.append((horizontal, diagonal, vertical))
        cur = ll
    return Pyramid(filter=filt, levels=levels, details=details, approx=cur)


def idwt2d_multi(pyr: Pyramid) -> np.ndarray:
    """Rebuild the matrix from a pyramid; inverse of dwt2d_multi."""
    if len(pyr.details) != pyr.levels:
        raise DimensionError(
            f"pyramid declares {pyr.levels} levels but holds {len(pyr.details)}"
        )
    cur = np.asarray(pyr.approx, dtype=np.float64)
    for horizontal, diagonal, vertical in reversed(pyr.details):
        for band in (horizontal, diagonal, vertical):
            if band.shape != cur.shape:
                raise DimensionError(
                    f"subband shape {band.shape} inconsistent with approx {cur.shape}"
                )
        row_lo = _synthesize(cur, vertical, pyr.filter, axis=0)
        row_hi = _synthesize(horizontal, diagonal, pyr.filter, axis=0)
        cur = _synthesize(row_lo, row_hi, pyr.filter, axis=1)
    return cur
