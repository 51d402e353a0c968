"""Canonical line-based key file: "WMKEY v1" plus fixed-order name=value lines.

The serialization is deterministic (LF newlines, decimal integers, threshold
with at most six fraction digits) so equal keys always produce byte-identical
files, and losing the file means losing the mark.
"""

from .errors import FormatError
from .keystream import LcgParams, WatermarkKey

MAGIC = "WMKEY v1"

_FIELDS = (
    "wavelet",
    "levels",
    "q",
    "lcg_a",
    "lcg_c0",
    "lcg_m",
    "lcg_z0",
    "select_threshold",
    "perm_seed",
    "wm_width",
    "wm_height",
)


def _format_threshold(value: float) -> str:
    text = f"{value:.6f}".rstrip("0")
    if text.endswith("."):
        text += "0"
    if float(text) != value:
        raise ValueError(
            f"select_threshold {value!r} does not fit in 6 fraction digits; "
            "round it before keying"
        )
    return text


def serialize_key(key: WatermarkKey) -> str:
    """Render a key as canonical text (ends with a newline)."""
    values = {
        "wavelet": key.wavelet,
        "levels": str(key.levels),
        "q": str(key.q),
        "lcg_a": str(key.lcg.a),
        "lcg_c0": str(key.lcg.c0),
        "lcg_m": str(key.lcg.m),
        "lcg_z0": str(key.lcg.z0),
        "select_threshold": _format_threshold(key.select_threshold),
        "perm_seed": str(key.perm_seed),
        "wm_width": str(key.wm_width),
        "wm_height": str(key.wm_height),
    }
    lines = [MAGIC] + [f"{name}={values[name]}" for name in _FIELDS]
    return "\n".join(lines) + "\n"


def parse_key(text: str) -> WatermarkKey:
    """Parse key-file text; strict about field order and completeness."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != MAGIC:
        raise FormatError(f"key file must start with {MAGIC!r}")
    if len(lines) - 1 != len(_FIELDS):
        raise FormatError(
            f"key file must have exactly {len(_FIELDS)} fields, got {len(lines) - 1}"
        )
    raw = {}
    for expected, line in zip(_FIELDS, lines[1:]):
        name, sep, value = line.partition("=")
        if not sep or name != expected:
            raise FormatError(f"expected field {expected!r}, got line {line!r}")
        raw[name] = value
    try:
        return WatermarkKey(
            wavelet=raw["wavelet"],
            levels=int(raw["levels"]),
            q=int(raw["q"]),
            lcg=LcgParams(
                a=int(raw["lcg_a"]),
                c0=int(raw["lcg_c0"]),
                m=int(raw["lcg_m"]),
                z0=int(raw["lcg_z0"]),
            ),
            select_threshold=float(raw["select_threshold"]),
            perm_seed=int(raw["perm_seed"]),
            wm_width=int(raw["wm_width"]),
            wm_height=int(raw["wm_height"]),
        )
    except ValueError as exc:
        raise FormatError(f"invalid key file value: {exc}") from None
