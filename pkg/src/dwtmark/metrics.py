"""Imperceptibility and recovery-fidelity metrics."""

import math

import numpy as np

from .errors import DimensionError


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in dB with peak 255; inf for identical inputs."""
    x = np.asarray(a, dtype=np.float64)
    y = np.asarray(b, dtype=np.float64)
    if x.shape != y.shape:
        raise DimensionError(f"shape mismatch: {x.shape} vs {y.shape}")
    mse = float(np.mean((x - y) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)


def ber(w, w2) -> float:
    """Fraction of differing bits between two equal-sized bit matrices."""
    a = np.asarray(w)
    b = np.asarray(w2)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.count_nonzero(a != b)) / a.size


def ncc(w, w2) -> float:
    """Normalized cross-correlation sum(w * w2) / sum(w^2) over {0, 1} bits.

    All-zero reference: 1.0 when the candidate is also all-zero, else 0.0.
    """
    a = np.asarray(w, dtype=np.float64)
    b = np.asarray(w2, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    denom = float((a * a).sum())
    if denom == 0.0:
        return 1.0 if not b.any() else 0.0
    return float((a * b).sum()) / denom
