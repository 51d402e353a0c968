"""Input validation helpers.

Images, binary marks and coefficient matrices are plain numpy arrays; these
checks enforce the structural invariants every public entry point relies on.
"""

import numpy as np

from .errors import DimensionError


def check_image(img) -> np.ndarray:
    """Validate an 8-bit grayscale image and return it as a (h, w) uint8 array.

    Accepts any integer-typed 2-D array with samples in [0, 255]; float
    inputs are rejected because their rounding policy would be ambiguous.
    """
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionError(f"image must be a non-empty 2-D array, got shape {arr.shape}")
    if arr.dtype == np.uint8:
        return arr
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"image samples must be integers in [0, 255], got dtype {arr.dtype}")
    if arr.min() < 0 or arr.max() > 255:
        raise ValueError("image samples out of range [0, 255]")
    return arr.astype(np.uint8)


def check_watermark(wm) -> np.ndarray:
    """Validate a binary mark and return it as a (h, w) uint8 array of {0, 1}."""
    arr = np.asarray(wm)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionError(f"watermark must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"watermark bits must be integers, got dtype {arr.dtype}")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("watermark bits must all be 0 or 1")
    return arr.astype(np.uint8)


def check_matrix(m) -> np.ndarray:
    """Validate a real coefficient matrix and return it as (rows, cols) float64."""
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionError(f"matrix must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("matrix values must all be finite")
    return arr
