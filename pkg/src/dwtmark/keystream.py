"""Deterministic key material: keystream, selection mask, and scrambling.

Everything that decides *where* and *in what order* mark bits go is derived
from explicit integer recurrences, never from library RNG state, so two
processes holding the same key always agree bit for bit.

The coefficient-selection stream is a congruential generator whose increment
advances by one each step:

    Z_i = (a * Z_{i-1} + c_i) mod m,   c_1 = c0,  c_{i+1} = c_i + 1
    u_i = Z_i / m                       in [0, 1)

Scrambling and the noise attacks use a separate fixed 32-bit stream
(W_{k+1} = (1664525 * W_k + 1013904223) mod 2^32) so that the mask secret
and the shuffle secret stay decoupled.
"""

from dataclasses import dataclass

import numpy as np

from .wavelet import FILTERS

DEFAULT_LCG_A = 1103515245
DEFAULT_LCG_C0 = 12345
DEFAULT_LCG_M = 2**31

PERM_SEED_SALT = 0x9E3779B9

_MIX_A = 1664525
_MIX_C = 1013904223
_TWO32 = 2**32


@dataclass(frozen=True)
class LcgParams:
    """Parameters of the variable-increment congruential generator."""

    a: int
    c0: int
    m: int
    z0: int

    def __post_init__(self):
        if self.a < 1:
            raise ValueError(f"multiplier a must be >= 1, got {self.a}")
        if self.m < 2:
            raise ValueError(f"modulus m must be >= 2, got {self.m}")
        if self.c0 < 0:
            raise ValueError(f"initial increment c0 must be >= 0, got {self.c0}")
        if not 0 <= self.z0 < self.m:
            raise ValueError(f"seed z0 must be in [0, m), got {self.z0}")


@dataclass(frozen=True)
class WatermarkKey:
    """Composite secret: transform choice, quantization strength, stream
    parameters, scramble seed and mark dimensions."""

    wavelet: str
    levels: int
    q: int
    lcg: LcgParams
    select_threshold: float
    perm_seed: int
    wm_width: int
    wm_height: int

    def __post_init__(self):
        if self.wavelet not in FILTERS:
            raise ValueError(f"unknown wavelet {self.wavelet!r}; supported: {sorted(FILTERS)}")
        if self.levels < 1:
            raise ValueError(f"levels must be >= 1, got {self.levels}")
        if self.q < 1:
            raise ValueError(f"quantization variable q must be >= 1, got {self.q}")
        if not 0.0 < self.select_threshold <= 1.0:
            raise ValueError(
                f"select_threshold must be in (0, 1], got {self.select_threshold}"
            )
        if not 0 <= self.perm_seed < _TWO32:
            raise ValueError("perm_seed must be a 32-bit unsigned integer")
        if self.wm_width < 1 or self.wm_height < 1:
            raise ValueError("watermark dimensions must be >= 1")

    @property
    def n_bits(self) -> int:
        return self.wm_width * self.wm_height


def make_key(
    seed: int,
    *,
    wavelet: str = "db4",
    levels: int = 4,
    q: int = 4,
    select_threshold: float = 0.5,
    wm_width: int = 32,
    wm_height: int = 32,
    perm_seed: int | None = None,
    lcg_a: int = DEFAULT_LCG_A,
    lcg_c0: int = DEFAULT_LCG_C0,
    lcg_m: int = DEFAULT_LCG_M,
) -> WatermarkKey:
    """Build a key from a single secret seed plus defaulted parameters.

    Unless given explicitly, the scramble seed is derived as
    (seed XOR 0x9E3779B9) mod 2^32 so one secret drives both streams while
    keeping them distinct.
    """
    if perm_seed is None:
        perm_seed = (seed ^ PERM_SEED_SALT) % _TWO32
    return WatermarkKey(
        wavelet=wavelet,
        levels=levels,
        q=q,
        lcg=LcgParams(a=lcg_a, c0=lcg_c0, m=lcg_m, z0=seed),
        select_threshold=select_threshold,
        perm_seed=perm_seed,
        wm_width=wm_width,
        wm_height=wm_height,
    )


def lcg_sequence(params: LcgParams, length: int) -> np.ndarray:
    """First `length` values u_i = Z_i / m of the keystream, in [0, 1)."""
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    out = np.empty(length, dtype=np.float64)
    z = params.z0
    c = params.c0
    a = params.a
    m = params.m
    for i in range(length):
        z = (a * z + c) % m
        out[i] = z / m
        c += 1
    return out


def selection_mask(params: LcgParams, count: int, threshold: float) -> np.ndarray:
    """Boolean mark/skip mask over `count` locations: bit i set iff u_i < threshold."""
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    return lcg_sequence(params, count) < threshold


def _check_seed32(seed: int) -> int:
    if not 0 <= seed < _TWO32:
        raise ValueError(f"seed must be a 32-bit unsigned integer, got {seed}")
    return seed


def uniform_stream(seed: int, count: int) -> np.ndarray:
    """`count` deterministic uniforms in (0, 1) from the fixed 32-bit stream.

    (W + 0.5) / 2^32 keeps values strictly inside the open interval, which the
    Box-Muller transform in the noise attacks needs.
    """
    w = _check_seed32(seed)
    out = np.empty(count, dtype=np.float64)
    for i in range(count):
        w = (_MIX_A * w + _MIX_C) % _TWO32
        out[i] = (w + 0.5) / _TWO32
    return out


def permutation(seed: int, n: int) -> np.ndarray:
    """Key-seeded bijection on [0, n) via descending Fisher-Yates.

    Swap indices come from the fixed 32-bit stream (one draw per step,
    j = W mod (i + 1)), making the map bit-exact for a given (seed, n).
    """
    w = _check_seed32(seed)
    if n < 1:
        raise ValueError(f"permutation size must be >= 1, got {n}")
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        w = (_MIX_A * w + _MIX_C) % _TWO32
        j = w % (i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return np.array(perm, dtype=np.int64)


def apply_permutation(perm: np.ndarray, values) -> np.ndarray:
    """Scramble: out[i] = values[perm[i]]."""
    vals = np.asarray(values)
    if vals.ndim != 1 or vals.size != perm.size:
        raise ValueError(f"length mismatch: {vals.shape} values vs {perm.size} map entries")
    return vals[perm]


def invert_permutation(perm: np.ndarray, values) -> np.ndarray:
    """Unscramble: inverse of apply_permutation, out[perm[i]] = values[i]."""
    vals = np.asarray(values)
    if vals.ndim != 1 or vals.size != perm.size:
        raise ValueError(f"length mismatch: {vals.shape} values vs {perm.size} map entries")
    out = np.empty_like(vals)
    out[perm] = vals
    return out
