"""Shared deterministic fixtures.

Test inputs come from a local congruential generator rather than numpy's RNG
so the byte streams under test are pinned forever, independent of library
versions.
"""

import numpy as np
import pytest


def lcg_texture(n_rows: int, n_cols: int, seed: int) -> np.ndarray:
    """Deterministic full-range noise texture (top byte of a 32-bit LCG)."""
    x = seed & 0xFFFFFFFF
    out = np.empty(n_rows * n_cols, dtype=np.uint8)
    for i in range(out.size):
        x = (69069 * x + 1) % 2**32
        out[i] = x >> 24
    return out.reshape(n_rows, n_cols)


def lcg_bits(n_rows: int, n_cols: int, seed: int) -> np.ndarray:
    """Deterministic 0/1 matrix (top bit of the same LCG)."""
    x = seed & 0xFFFFFFFF
    out = np.empty(n_rows * n_cols, dtype=np.uint8)
    for i in range(out.size):
        x = (69069 * x + 1) % 2**32
        out[i] = x >> 31
    return out.reshape(n_rows, n_cols)


def synthetic_scene(n: int = 512) -> np.ndarray:
    """Smooth gradients, blobs and mild texture: a natural-image stand-in."""
    y, x = np.mgrid[0:n, 0:n].astype(np.float64) / n
    img = 120 + 60 * np.sin(2 * np.pi * (1.3 * x + 0.4)) * np.cos(2 * np.pi * 0.9 * y)
    img += 45 * np.exp(-((x - 0.3) ** 2 + (y - 0.4) ** 2) / 0.02)
    img += 35 * np.exp(-((x - 0.7) ** 2 + (y - 0.65) ** 2) / 0.05)
    img -= 30 * np.exp(-((x - 0.55) ** 2 + (y - 0.2) ** 2) / 0.01)
    img += 6 * np.sin(40 * np.pi * x) * np.sin(34 * np.pi * y)
    img += 4 * np.sin(100 * np.pi * (x + y))
    return np.clip(np.round(img), 0, 255).astype(np.uint8)


@pytest.fixture(scope="session")
def texture_256():
    return lcg_texture(256, 256, seed=2024)


@pytest.fixture(scope="session")
def texture_512():
    return lcg_texture(512, 512, seed=77)


@pytest.fixture(scope="session")
def scene_512():
    return synthetic_scene(512)


@pytest.fixture(scope="session")
def mark_32():
    return lcg_bits(32, 32, seed=5150)
