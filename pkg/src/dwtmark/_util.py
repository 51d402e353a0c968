"""Small numeric helpers used by the codec and the attack operators."""

import numpy as np


def round_half_away(x):
    """Round to nearest integer, halves away from zero (unlike np.round's ties-to-even)."""
    x = np.asarray(x, dtype=np.float64)
    return np.trunc(x + np.copysign(0.5, x))


def to_u8(x):
    """Finalize real-valued pixels: round half away from zero, clamp to [0, 255]."""
    return np.clip(round_half_away(x), 0.0, 255.0).astype(np.uint8)
