"""Command-line front end: keygen, embed, extract, attack, eval, psnr.

Reports and data go to stdout as machine-readable name=value lines;
diagnostics go to stderr.  Exit codes:

    0  success
    2  usage error (argparse)
    3  unreadable or malformed input file
    4  dimension rule violation (e.g. not divisible by 2^levels)
    5  inputs disagree with each other or with the key
    6  invalid parameter value
"""

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .attacks import apply_attack
from .codec import embed, extract
from .errors import DimensionError, FormatError, MismatchError
from .keyfile import parse_key, serialize_key
from .keystream import make_key
from .metrics import ber, ncc, psnr
from .netpbm import read_pbm, read_pgm, write_pbm, write_pgm

EXIT_IO = 3
EXIT_DIMENSION = 4
EXIT_MISMATCH = 5
EXIT_VALUE = 6


def _read(path: str) -> bytes:
    return Path(path).read_bytes()


def _load_key(path: str):
    return parse_key(Path(path).read_text(encoding="ascii"))


def _fmt(value) -> str:
    if isinstance(value, float):
        return "inf" if math.isinf(value) else f"{value:.4f}"
    return str(value)


def _parse_size(text: str):
    w, sep, h = text.lower().partition("x")
    if not sep:
        raise ValueError(f"size must look like 32x32, got {text!r}")
    return int(w), int(h)


def cmd_keygen(args) -> int:
    width, height = _parse_size(args.wm_size)
    key = make_key(
        args.seed,
        wavelet=args.wavelet,
        levels=args.levels,
        q=args.q,
        select_threshold=round(args.threshold, 6),
        wm_width=width,
        wm_height=height,
        perm_seed=args.perm_seed,
    )
    Path(args.out).write_text(serialize_key(key), encoding="ascii")
    return 0


def cmd_embed(args) -> int:
    key = _load_key(args.key)
    host = read_pgm(_read(args.image))
    wm = read_pbm(_read(args.watermark))
    if key.q < 2:
        print("warning: q < 2 cannot carry 1-bits reliably", file=sys.stderr)
    marked, report = embed(host, wm, key)
    Path(args.out).write_bytes(write_pgm(marked))
    print(f"locations_total={report.locations_total}")
    print(f"locations_selected={report.locations_selected}")
    print(f"locations_skipped={report.locations_skipped}")
    print(f"repetitions={_fmt(report.repetitions)}")
    print(f"psnr_db={_fmt(report.psnr_db)}")
    if report.q1_fallbacks:
        print(f"q1_fallbacks={report.q1_fallbacks}")
    return 0


def cmd_extract(args) -> int:
    key = _load_key(args.key)
    marked = read_pgm(_read(args.image))
    bits, tally = extract(marked, key)
    Path(args.out).write_bytes(write_pbm(bits))
    print(f"votes_total={tally.total_votes}")
    print(f"unvoted_bits={tally.n_unvoted}")
    print(f"tied_bits={tally.n_ties}")
    return 0


def cmd_attack(args) -> int:
    img = read_pgm(_read(args.image))
    out = apply_attack(img, args.spec)
    Path(args.out).write_bytes(write_pgm(out))
    return 0


def cmd_eval(args) -> int:
    original = read_pbm(_read(args.original))
    extracted = read_pbm(_read(args.extracted))
    print(f"ber={_fmt(ber(original, extracted))}")
    print(f"ncc={_fmt(ncc(original, extracted))}")
    return 0


def cmd_psnr(args) -> int:
    a = read_pgm(_read(args.a))
    b = read_pgm(_read(args.b))
    print(f"psnr_db={_fmt(psnr(a, b))}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dwtmark",
        description="Blind DWT-domain image watermarking toolkit",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key file")
    p.add_argument("--seed", type=int, required=True, help="secret seed z0 for the keystream")
    p.add_argument("--wavelet", default="db4", choices=["haar", "db4"])
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--q", type=int, default=4, help="quantization variable (>= 1)")
    p.add_argument("--threshold", type=float, default=0.5, help="selection threshold in (0, 1]")
    p.add_argument("--wm-size", default="32x32", help="watermark dims as WxH")
    p.add_argument("--perm-seed", type=int, default=None, help="override the scramble seed")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("embed", help="embed a PBM mark into a PGM image")
    p.add_argument("--image", required=True)
    p.add_argument("--watermark", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="blindly recover the mark from a PGM image")
    p.add_argument("--image", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("attack", help="degrade an image with one attack spec")
    p.add_argument("--image", required=True)
    p.add_argument("--spec", required=True, help="e.g. gaussian:sigma=5,seed=1")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("eval", help="compare an extracted mark against the original")
    p.add_argument("--original", required=True)
    p.add_argument("--extracted", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("psnr", help="peak signal-to-noise ratio between two images")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_psnr)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except MismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALUE


if __name__ == "__main__":
    sys.exit(main())
