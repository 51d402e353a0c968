"""Seeded, dimension-preserving image degradation operators.

Each operator is a pure function of (image, parameters, seed): stochastic
kinds draw from the package's fixed 32-bit uniform stream, so an attack is
reproducible byte for byte.  Every operator keeps the image size unchanged
(the blind decoder needs aligned coefficient grids).

The CLI-facing spec grammar is `kind:key=value[,key=value...]`, e.g.
``gaussian:sigma=5,seed=1`` or ``crop:x=0,y=0,w=64,h=64,fill=128``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._util import to_u8
from .errors import DimensionError
from .keystream import uniform_stream
from .validation import check_image

# Annex-K luminance quantization table, row-major.
JPEG_LUMA_QTABLE = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.int64,
)


def gaussian_noise(img, sigma: float, seed: int = 0) -> np.ndarray:
    """Add N(0, sigma^2) per pixel (Box-Muller over the seeded stream)."""
    arr = check_image(img)
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    if sigma == 0:
        return arr.copy()
    n = arr.size
    pairs = (n + 1) // 2
    u = uniform_stream(seed, 2 * pairs)
    u1, u2 = u[0::2], u[1::2]
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.empty(2 * pairs)
    z[0::2] = r * np.cos(2.0 * math.pi * u2)
    z[1::2] = r * np.sin(2.0 * math.pi * u2)
    noise = z[:n].reshape(arr.shape)
    return to_u8(arr.astype(np.float64) + sigma * noise)


def salt_pepper(img, density: float, seed: int = 0) -> np.ndarray:
    """Replace each pixel with 0 or 255 (equal odds) with probability `density`."""
    arr = check_image(img)
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {density}")
    u = uniform_stream(seed, arr.size).reshape(arr.shape)
    out = arr.copy()
    out[u < density / 2.0] = 0
    out[(u >= density / 2.0) & (u < density)] = 255
    return out


def _window9(arr: np.ndarray) -> np.ndarray:
    """The nine 3x3-neighborhood planes of an image with replicated borders."""
    p = np.pad(arr, 1, mode="edge")
    h, w = arr.shape
    return np.stack([p[di : di + h, dj : dj + w] for di in range(3) for dj in range(3)])


def mean_filter3(img) -> np.ndarray:
    """3x3 mean with replicated border; rounds half away from zero."""
    arr = check_image(img)
    s = _window9(arr).astype(np.int32).sum(axis=0)
    # round(s / 9) for non-negative s, done exactly in integers
    return ((2 * s + 9) // 18).astype(np.uint8)


def median_filter3(img) -> np.ndarray:
    """3x3 median with replicated border (exact: median of 9 integers)."""
    arr = check_image(img)
    return np.median(_window9(arr), axis=0).astype(np.uint8)


def crop_region(img, x: int, y: int, w: int, h: int, fill: int = 0) -> np.ndarray:
    """Overwrite the rectangle (clipped to the image) with a flat gray value."""
    arr = check_image(img)
    if min(x, y, w, h) < 0:
        raise ValueError("crop rectangle fields must be >= 0")
    if not 0 <= fill <= 255:
        raise ValueError(f"fill must be in [0, 255], got {fill}")
    rows, cols = arr.shape
    out = arr.copy()
    out[min(y, rows) : min(y + h, rows), min(x, cols) : min(x + w, cols)] = fill
    return out


_DCT8 = np.array(
    [
        [
            math.sqrt((1.0 if u == 0 else 2.0) / 8.0) * math.cos((2 * j + 1) * u * math.pi / 16.0)
            for j in range(8)
        ]
        for u in range(8)
    ]
)


def _scaled_qtable(quality: int) -> np.ndarray:
    """Quality-scaled luminance table, computed in exact integer arithmetic."""
    q = JPEG_LUMA_QTABLE
    if quality < 50:
        scaled = (q * 5000 + 50 * quality) // (100 * quality)
    else:
        scaled = (q * (200 - 2 * quality) + 50) // 100
    return np.clip(scaled, 1, 255).astype(np.float64)


def jpeg_like(img, quality: int) -> np.ndarray:
    """Blockwise 8x8 DCT quantize/dequantize round trip (in-process compression).

    Exercises the same frequency-domain damage as a real encoder without
    producing a bitstream.  Dimensions must be divisible by 8.
    """
    arr = check_image(img)
    if not 1 <= quality <= 100:
        raise ValueError(f"quality must be in 1..100, got {quality}")
    rows, cols = arr.shape
    if rows % 8 != 0 or cols % 8 != 0:
        raise DimensionError(f"image dims {rows}x{cols} not divisible by 8")
    qt = _scaled_qtable(quality)
    blocks = (arr.astype(np.float64) - 128.0).reshape(rows // 8, 8, cols // 8, 8)
    blocks = blocks.transpose(0, 2, 1, 3)
    coeffs = np.einsum("uj,byjk,vk->byuv", _DCT8, blocks, _DCT8)
    quant = np.trunc(coeffs / qt + np.copysign(0.5, coeffs)) * qt
    rebuilt = np.einsum("uj,byuv,vk->byjk", _DCT8, quant, _DCT8)
    pixels = rebuilt.transpose(0, 2, 1, 3).reshape(rows, cols) + 128.0
    return to_u8(pixels)


@dataclass(frozen=True)
class AttackSpec:
    """Parsed `kind:key=value,...` attack description."""

    kind: str
    params: dict = field(default_factory=dict)


# per kind: {param: (converter, default-or-None meaning required)}
_SCHEMAS = {
    "gaussian": {"sigma": (float, None), "seed": (int, 0)},
    "saltpepper": {"density": (float, None), "seed": (int, 0)},
    "mean3": {},
    "median3": {},
    "crop": {"x": (int, None), "y": (int, None), "w": (int, None), "h": (int, None), "fill": (int, 0)},
    "jpeglike": {"quality": (int, None)},
}

ATTACK_KINDS = tuple(sorted(_SCHEMAS))


def parse_attack_spec(text: str) -> AttackSpec:
    """Parse the attack grammar; unknown kinds and parameters are rejected."""
    kind, _, rest = text.strip().partition(":")
    if kind not in _SCHEMAS:
        raise ValueError(f"unknown attack kind {kind!r}; supported: {', '.join(ATTACK_KINDS)}")
    schema = _SCHEMAS[kind]
    params = {}
    if rest:
        for item in rest.split(","):
            name, sep, value = item.partition("=")
            if not sep or name not in schema:
                raise ValueError(f"bad attack parameter {item!r} for kind {kind!r}")
            try:
                params[name] = schema[name][0](value)
            except ValueError:
                raise ValueError(f"attack parameter {name!r} has invalid value {value!r}") from None
    for name, (_, default) in schema.items():
        if name not in params:
            if default is None:
                raise ValueError(f"attack kind {kind!r} requires parameter {name!r}")
            params[name] = default
    return AttackSpec(kind=kind, params=params)


def apply_attack(img, spec) -> np.ndarray:
    """Run one attack; `spec` may be an AttackSpec or a grammar string."""
    if isinstance(spec, str):
        spec = parse_attack_spec(spec)
    p = spec.params
    if spec.kind == "gaussian":
        return gaussian_noise(img, p["sigma"], p["seed"])
    if spec.kind == "saltpepper":
        return salt_pepper(img, p["density"], p["seed"])
    if spec.kind == "mean3":
        return mean_filter3(img)
    if spec.kind == "median3":
        return median_filter3(img)
    if spec.kind == "crop":
        return crop_region(img, p["x"], p["y"], p["w"], p["h"], p["fill"])
    if spec.kind == "jpeglike":
        return jpeg_like(img, p["quality"])
    raise ValueError(f"unknown attack kind {spec.kind!r}")
