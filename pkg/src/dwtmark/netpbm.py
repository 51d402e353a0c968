"""Bit-exact binary PGM (P5) and PBM (P4) codecs.

Hosts are 8-bit grayscale PGM rasters; marks are 1-bit PBM rasters with the
netpbm convention that 1 means black, which this package reads as "mark bit
set".  Only the binary variants are supported and writers emit one canonical
byte stream, so files round-trip exactly and fixture comparisons can be done
with plain byte equality.
"""

import numpy as np

from .errors import FormatError
from .validation import check_image, check_watermark

_WHITESPACE = b" \t\r\n\x0b\x0c"


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Scan the next header token, skipping whitespace and '#' comments."""
    n = len(data)
    while pos < n:
        b = data[pos : pos + 1]
        if b in (b"#",):
            while pos < n and data[pos : pos + 1] != b"\n":
                pos += 1
        elif b in _WHITESPACE:
            pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise FormatError("malformed header: unexpected end of stream")
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    token, pos = _next_token(data, pos)
    try:
        value = int(token)
    except ValueError:
        raise FormatError(f"malformed header: {what} is not a decimal integer") from None
    if value < 1:
        raise FormatError(f"malformed header: {what} must be >= 1, got {value}")
    return value, pos


def _raster_start(data: bytes, pos: int) -> int:
    """Exactly one whitespace byte separates the header from the raster."""
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise FormatError("malformed header: missing whitespace before raster")
    return pos + 1


def read_pgm(data: bytes) -> np.ndarray:
    """Decode a binary PGM stream into a (h, w) uint8 image."""
    magic, pos = _next_token(bytes(data), 0)
    if magic != b"P5":
        raise FormatError(f"not a binary PGM (P5) stream, magic {magic!r}")
    width, pos = _header_int(data, pos, "width")
    height, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if maxval != 255:
        raise FormatError(f"unsupported maxval {maxval} (only 255)")
    pos = _raster_start(data, pos)
    need = width * height
    raster = data[pos : pos + need]
    if len(raster) < need:
        raise FormatError(f"truncated pixel data: expected {need} bytes, got {len(raster)}")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def write_pgm(img) -> bytes:
    """Encode an image as canonical binary PGM bytes."""
    arr = check_image(img)
    h, w = arr.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + arr.tobytes()


def read_pbm(data: bytes) -> np.ndarray:
    """Decode a binary PBM stream into a (h, w) uint8 bit matrix (1 = black)."""
    magic, pos = _next_token(bytes(data), 0)
    if magic != b"P4":
        raise FormatError(f"not a binary PBM (P4) stream, magic {magic!r}")
    width, pos = _header_int(data, pos, "width")
    height, pos = _header_int(data, pos, "height")
    pos = _raster_start(data, pos)
    row_bytes = (width + 7) // 8
    need = row_bytes * height
    raster = data[pos : pos + need]
    if len(raster) < need:
        raise FormatError(f"truncated raster data: expected {need} bytes, got {len(raster)}")
    packed = np.frombuffer(raster, dtype=np.uint8).reshape(height, row_bytes)
    return np.unpackbits(packed, axis=1)[:, :width].copy()


def write_pbm(wm) -> bytes:
    """Encode a bit matrix as canonical binary PBM bytes (rows padded to bytes)."""
    arr = check_watermark(wm)
    h, w = arr.shape
    packed = np.packbits(arr, axis=1)
    return f"P4\n{w} {h}\n".encode("ascii") + packed.tobytes()
