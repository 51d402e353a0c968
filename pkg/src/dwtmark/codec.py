"""Blind embedding and extraction via median quantization of detail triples.

At every key-selected position (level l, spatial m, n) the three detail
coefficients sharing that position are sorted; the span [lo, hi] is divided
into 2Q - 1 bins of width

    delta = (hi - lo) / (2Q - 1)

whose centers v_j = lo + (j + 0.5) * delta alternate bit parity j mod 2.
Embedding moves the median to the nearest center of the wanted parity;
extraction re-derives delta from the *current* triple (no host needed) and
reads back the parity of the nearest center.  Because every center is
strictly interior to [lo, hi], the written value stays the median of its
triple, so the decoder finds the same coefficient it must inspect.

The mark is scrambled, then repeated cyclically over the selected locations;
decoding is a per-bit majority vote.  The bit index carried by a location
depends only on the key-derived count of selected locations walked so far,
never on coefficient values, so triples that degenerate under attack cannot
shift the alignment of later bits.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._util import to_u8
from .errors import DimensionError, MismatchError
from .keystream import WatermarkKey, apply_permutation, invert_permutation, permutation, selection_mask
from .metrics import psnr
from .validation import check_image, check_matrix, check_watermark
from .wavelet import Pyramid, dwt2d_multi, get_filter, idwt2d_multi

SKIP_EPS = 1e-6


class OrderedTriple(NamedTuple):
    """Detail coefficients of one position sorted ascending, plus which
    orientation (1 horizontal, 2 diagonal, 3 vertical) landed at each rank."""

    lo: float
    mid: float
    hi: float
    orients: tuple


def order_triple(horizontal: float, diagonal: float, vertical: float) -> OrderedTriple:
    """Sort one orientation triple; ties break by ascending orientation index."""
    ranked = sorted(((horizontal, 1), (diagonal, 2), (vertical, 3)))
    return OrderedTriple(
        lo=ranked[0][0],
        mid=ranked[1][0],
        hi=ranked[2][0],
        orients=(ranked[0][1], ranked[1][1], ranked[2][1]),
    )


def bin_width(lo: float, hi: float, q: int) -> float:
    """Quantization step delta = (hi - lo) / (2q - 1)."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if lo > hi:
        raise ValueError(f"inverted range: lo {lo} > hi {hi}")
    return (hi - lo) / (2 * q - 1)


def quantize_to_bit(triple: OrderedTriple, q: int, bit: int):
    """New median value carrying `bit`, or None when the triple is degenerate.

    Chooses the center nearest to the current median among those whose index
    parity equals `bit` (ties go to the smaller index).  q = 1 has a single
    center that can only carry 0; asked for a 1 it falls back to that lone
    center (the caller counts these).
    """
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit}")
    delta = bin_width(triple.lo, triple.hi, q)
    if delta <= SKIP_EPS:
        return None
    candidates = range(bit, 2 * q - 1, 2)
    if not candidates:
        candidates = range(0, 1)
    best = None
    best_dist = None
    for j in candidates:
        v = triple.lo + (j + 0.5) * delta
        dist = abs(triple.mid - v)
        if best_dist is None or dist < best_dist:
            best, best_dist = v, dist
    return best


def read_bit(triple: OrderedTriple, q: int):
    """Parity of the center nearest the median, or None for a degenerate triple."""
    delta = bin_width(triple.lo, triple.hi, q)
    if delta <= SKIP_EPS:
        return None
    best_j = 0
    best_dist = None
    for j in range(2 * q - 1):
        dist = abs(triple.mid - (triple.lo + (j + 0.5) * delta))
        if best_dist is None or dist < best_dist:
            best_j, best_dist = j, dist
    return best_j % 2


@dataclass
class EmbedReport:
    """Observability counters for one embed run."""

    locations_total: int
    locations_selected: int
    locations_skipped: int
    repetitions: float
    psnr_db: float
    q1_fallbacks: int = 0


@dataclass
class VoteTally:
    """Per permuted-bit-index 0/1 vote counts collected during extraction."""

    zeros: np.ndarray
    ones: np.ndarray

    @property
    def total_votes(self) -> int:
        return int(self.zeros.sum() + self.ones.sum())

    @property
    def n_unvoted(self) -> int:
        return int(((self.zeros + self.ones) == 0).sum())

    @property
    def n_ties(self) -> int:
        return int(((self.zeros == self.ones) & (self.zeros > 0)).sum())


def mark_pyramid(pyr: Pyramid, permuted_bits, key: WatermarkKey) -> tuple:
    """Write scrambled bits into the pyramid's selected triples, in place.

    Walks levels 1..L, row-major within each level; one mask bit per
    position.  Returns (total, selected, skipped, q1_fallbacks).  The gross
    approximation is never touched.
    """
    bits = [int(b) for b in np.asarray(permuted_bits).ravel()]
    n_bits = len(bits)
    total = pyr.n_locations
    mask = selection_mask(key.lcg, total, key.select_threshold).tolist()
    selected = 0
    skipped = 0
    fallbacks = 0
    pos = 0
    q = key.q
    for horizontal, diagonal, vertical in pyr.details:
        rows, cols = horizontal.shape
        bands = (horizontal.tolist(), diagonal.tolist(), vertical.tolist())
        h, d, v = bands
        for m in range(rows):
            hrow, drow, vrow = h[m], d[m], v[m]
            for n in range(cols):
                if mask[pos]:
                    bit = bits[selected % n_bits]
                    selected += 1
                    triple = order_triple(hrow[n], drow[n], vrow[n])
                    new_mid = quantize_to_bit(triple, q, bit)
                    if new_mid is None:
                        skipped += 1
                    else:
                        if q == 1 and bit == 1:
                            fallbacks += 1
                        bands[triple.orients[1] - 1][m][n] = new_mid
                pos += 1
        horizontal[:, :] = h
        diagonal[:, :] = d
        vertical[:, :] = v
    return total, selected, skipped, fallbacks


def read_pyramid(pyr: Pyramid, key: WatermarkKey) -> VoteTally:
    """Collect per-bit votes from the pyramid's selected triples."""
    n_bits = key.n_bits
    total = pyr.n_locations
    mask = selection_mask(key.lcg, total, key.select_threshold).tolist()
    zeros = [0] * n_bits
    ones = [0] * n_bits
    selected = 0
    pos = 0
    q = key.q
    for horizontal, diagonal, vertical in pyr.details:
        rows, cols = horizontal.shape
        h, d, v = horizontal.tolist(), diagonal.tolist(), vertical.tolist()
        for m in range(rows):
            hrow, drow, vrow = h[m], d[m], v[m]
            for n in range(cols):
                if mask[pos]:
                    bit = read_bit(order_triple(hrow[n], drow[n], vrow[n]), q)
                    if bit is not None:
                        if bit:
                            ones[selected % n_bits] += 1
                        else:
                            zeros[selected % n_bits] += 1
                    selected += 1
                pos += 1
    return VoteTally(zeros=np.array(zeros, dtype=np.int64), ones=np.array(ones, dtype=np.int64))


def _check_divisible(shape: tuple, levels: int):
    step = 2**levels
    if shape[0] % step != 0 or shape[1] % step != 0:
        raise DimensionError(
            f"image dims {shape[0]}x{shape[1]} not divisible by 2^levels = {step}"
        )


def embed(host, watermark, key: WatermarkKey, *, quantize_pixels: bool = True):
    """Embed a binary mark into a host image.

    Returns (marked, report).  With quantize_pixels=True (the default) the
    marked image is uint8 after round-half-away-from-zero and clamping to
    [0, 255]; with False the raw float64 reconstruction is returned, which
    keeps the embed/extract round trip exact.
    """
    host = check_image(host)
    wm = check_watermark(watermark)
    if wm.shape != (key.wm_height, key.wm_width):
        raise MismatchError(
            f"watermark is {wm.shape[1]}x{wm.shape[0]} but key says "
            f"{key.wm_width}x{key.wm_height}"
        )
    _check_divisible(host.shape, key.levels)
    filt = get_filter(key.wavelet)
    pyr = dwt2d_multi(host.astype(np.float64), filt, key.levels)
    perm = permutation(key.perm_seed, key.n_bits)
    permuted = apply_permutation(perm, wm.ravel())
    total, selected, skipped, fallbacks = mark_pyramid(pyr, permuted, key)
    if selected == 0:
        raise ValueError("empty selection: the key selects no embedding locations")
    marked = idwt2d_multi(pyr)
    out = to_u8(marked) if quantize_pixels else marked
    report = EmbedReport(
        locations_total=total,
        locations_selected=selected,
        locations_skipped=skipped,
        repetitions=selected / key.n_bits,
        psnr_db=psnr(host.astype(np.float64), np.asarray(out, dtype=np.float64)),
        q1_fallbacks=fallbacks,
    )
    return out, report


def extract(marked, key: WatermarkKey):
    """Blindly recover the mark from a (possibly attacked) image.

    Accepts a uint8 image or the float64 matrix a real-valued embed produced.
    Returns (bits, tally): bits is the (wm_height, wm_width) estimate; ties
    and unvoted indices decode to 0 and are visible in the tally.
    """
    arr = np.asarray(marked)
    if np.issubdtype(arr.dtype, np.floating):
        mat = check_matrix(arr)
    else:
        mat = check_image(arr).astype(np.float64)
    _check_divisible(mat.shape, key.levels)
    pyr = dwt2d_multi(mat, get_filter(key.wavelet), key.levels)
    tally = read_pyramid(pyr, key)
    permuted = (tally.ones > tally.zeros).astype(np.uint8)
    perm = permutation(key.perm_seed, key.n_bits)
    bits = invert_permutation(perm, permuted).reshape(key.wm_height, key.wm_width)
    return bits, tally
