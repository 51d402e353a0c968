"""dwtmark: blind DWT-domain image watermarking.

Embeds a scrambled binary mark by quantizing the median of key-selected
detail-coefficient triples, and recovers it from the marked image alone.
Ships the wavelet engine, deterministic key material, an attack-simulation
harness, quality metrics, sklearn-style transformers and a CLI.
"""

__version__ = "0.1.0"

from .attacks import (
    AttackSpec,
    apply_attack,
    crop_region,
    gaussian_noise,
    jpeg_like,
    mean_filter3,
    median_filter3,
    parse_attack_spec,
    salt_pepper,
)
from .codec import (
    EmbedReport,
    OrderedTriple,
    VoteTally,
    bin_width,
    embed,
    extract,
    order_triple,
    quantize_to_bit,
    read_bit,
)
from .errors import DimensionError, DwtmarkError, FormatError, MismatchError
from .estimators import AttackTransformer, WatermarkEmbedder, WatermarkExtractor
from .keyfile import parse_key, serialize_key
from .keystream import (
    LcgParams,
    WatermarkKey,
    apply_permutation,
    invert_permutation,
    lcg_sequence,
    make_key,
    permutation,
    selection_mask,
    uniform_stream,
)
from .metrics import ber, ncc, psnr
from .netpbm import read_pbm, read_pgm, write_pbm, write_pgm
from .wavelet import (
    Pyramid,
    WaveletFilter,
    dwt1d,
    dwt2d_multi,
    get_filter,
    idwt1d,
    idwt2d_multi,
)

__all__ = [
    "AttackSpec",
    "AttackTransformer",
    "DimensionError",
    "DwtmarkError",
    "EmbedReport",
    "FormatError",
    "LcgParams",
    "MismatchError",
    "OrderedTriple",
    "Pyramid",
    "VoteTally",
    "WatermarkEmbedder",
    "WatermarkExtractor",
    "WatermarkKey",
    "WaveletFilter",
    "apply_attack",
    "apply_permutation",
    "ber",
    "bin_width",
    "crop_region",
    "dwt1d",
    "dwt2d_multi",
    "embed",
    "extract",
    "gaussian_noise",
    "get_filter",
    "idwt1d",
    "idwt2d_multi",
    "invert_permutation",
    "jpeg_like",
    "lcg_sequence",
    "make_key",
    "mean_filter3",
    "median_filter3",
    "ncc",
    "order_triple",
    "parse_attack_spec",
    "parse_key",
    "permutation",
    "psnr",
    "quantize_to_bit",
    "read_bit",
    "read_pbm",
    "read_pgm",
    "salt_pepper",
    "selection_mask",
    "serialize_key",
    "uniform_stream",
    "write_pbm",
    "write_pgm",
]
