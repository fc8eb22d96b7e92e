"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 I/O or image-format error,
3 malformed key. The key comes from ``--key`` or the ``MAGICSQUARE_KEY``
environment variable and is never printed, except by ``keygen``.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
import time
from pathlib import Path

from . import analysis, imageio
from .errors import CipherError, ImageFormatError, MalformedKeyError
from .keymat import SecretKey, parse_key
from .permutation import DEFAULT_ITERATIONS
from .pipeline import CipherParams, decrypt_image, encrypt_image

KEY_ENV = "MAGICSQUARE_KEY"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_KEY = 3

log = logging.getLogger("magicsquare_cipher")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _atomic_write_text(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _key(args) -> SecretKey:
    text = args.key if args.key is not None else os.environ.get(KEY_ENV)
    if text is None:
        raise MalformedKeyError(f"no key given: pass --key or set {KEY_ENV}")
    return parse_key(text)


def _cmd_keygen(args) -> int:
    print(SecretKey.generate().hex())
    return EXIT_OK


def _cmd_crypt(args, decrypt: bool) -> int:
    params = CipherParams(_key(args), args.iterations)
    img = imageio.load(args.input)
    t0 = time.perf_counter()
    out = (decrypt_image if decrypt else encrypt_image)(img, params)
    elapsed = time.perf_counter() - t0
    imageio.save(out, args.output, imageio.format_for_path(args.input, img) if args.format is None else args.format)
    log.info("%s %s -> %s (%d bytes, %.3f s)", "decrypted" if decrypt else "encrypted",
             args.input, args.output, img.nbytes, elapsed)
    return EXIT_OK


def _cmd_analyze(args) -> int:
    plain = imageio.load(args.plain)
    cipher = imageio.load(args.cipher)
    cipher2 = imageio.load(args.cipher2) if args.cipher2 else None
    report = analysis.analyze(plain, cipher, cipher2)
    _atomic_write_text(Path(args.report), report.to_json() + "\n")
    if args.histogram_dir:
        report.write_histogram_csvs(args.histogram_dir)
    return EXIT_OK


def _cmd_sensitivity(args) -> int:
    key = _key(args)
    img = imageio.load(args.input)
    flips = None
    if args.flip:
        flips = [tuple(int(b) for b in group.split(",")) for group in args.flip]
    report = analysis.key_sensitivity_report(img, key, flips, args.iterations)
    text = report.to_json() + "\n"
    if args.report:
        _atomic_write_text(Path(args.report), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="magicsquare-cipher", description="Magic-square image cipher.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("keygen", help="print a random 144-bit key as 36 hex characters")

    for name in ("encrypt", "decrypt"):
        sp = sub.add_parser(name, help=f"{name} an image file")
        sp.add_argument("--in", dest="input", required=True)
        sp.add_argument("--out", dest="output", required=True)
        sp.add_argument("--key", help=f"36 hex characters (default: ${KEY_ENV})")
        sp.add_argument("--iterations", type=int, default=DEFAULT_ITERATIONS)
        sp.add_argument("--format", choices=imageio.FORMATS,
                        help="output format (default: same as input)")

    sp = sub.add_parser("analyze", help="statistical report for a plain/cipher pair")
    sp.add_argument("--plain", required=True)
    sp.add_argument("--cipher", required=True)
    sp.add_argument("--cipher2", help="cipher of a one-pixel-modified plaintext, for NPCR/UACI")
    sp.add_argument("--report", required=True)
    sp.add_argument("--histogram-dir", help="write bin,count CSVs here")

    sp = sub.add_parser("sensitivity", help="decrypt with slightly wrong keys")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--key", help=f"36 hex characters (default: ${KEY_ENV})")
    sp.add_argument("--flip", action="append",
                    help="comma-separated key bit indices flipped together; repeatable")
    sp.add_argument("--iterations", type=int, default=DEFAULT_ITERATIONS)
    sp.add_argument("--report")
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "iterations", 1) < 1:
            raise UsageError("--iterations must be >= 1")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    handlers = {
        "keygen": _cmd_keygen,
        "encrypt": lambda a: _cmd_crypt(a, decrypt=False),
        "decrypt": lambda a: _cmd_crypt(a, decrypt=True),
        "analyze": _cmd_analyze,
        "sensitivity": _cmd_sensitivity,
    }
    try:
        return handlers[args.command](args)
    except MalformedKeyError as exc:
        print(f"key error: {exc}", file=sys.stderr)
        return EXIT_KEY
    except (OSError, ImageFormatError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (CipherError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
