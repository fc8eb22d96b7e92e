"""Binary PPM (P6), PGM (P5) and uncompressed 24-bit BMP reading and writing.

Only 8-bit samples are handled since the cipher works on bytes. Grayscale
images come back as ``(H, W)`` arrays, colour ones as ``(H, W, 3)`` in RGB
order, top row first.
"""

from __future__ import annotations

import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .errors import (
    ChannelMismatchError,
    CorruptFileError,
    UnsupportedDepthError,
    UnsupportedFormatError,
)

FORMATS = ("P5", "P6", "BMP")
_SUFFIX_FORMATS = {".pgm": "P5", ".ppm": "P6", ".pnm": None, ".bmp": "BMP"}

_BMP_FILE_HEADER = struct.Struct("<2sIHHI")
_BMP_INFO_HEADER = struct.Struct("<IiiHHIIiiII")


def _read_netpbm(raw: bytes) -> np.ndarray:
    magic = raw[:2]
    channels = {b"P5": 1, b"P6": 3}[magic]
    fields = []
    pos = 2
    n = len(raw)
    while len(fields) < 3:
        while pos < n and raw[pos:pos + 1].isspace():
            pos += 1
        if pos < n and raw[pos:pos + 1] == b"#":
            while pos < n and raw[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not raw[pos:pos + 1].isspace() and raw[pos:pos + 1] != b"#":
            pos += 1
        token = raw[start:pos]
        if not token:
            raise CorruptFileError("truncated header")
        if not token.isdigit():
            raise UnsupportedFormatError(f"bad header field {token[:16]!r}")
        fields.append(int(token))
    width, height, maxval = fields
    if maxval != 255:
        raise UnsupportedDepthError(f"only maxval 255 is supported, got {maxval}")
    if width < 1 or height < 1:
        raise CorruptFileError(f"bad dimensions {width}x{height}")
    if pos >= n or not raw[pos:pos + 1].isspace():
        raise CorruptFileError("missing whitespace after header")
    pos += 1  # exactly one whitespace byte separates header and raster
    size = width * height * channels
    payload = raw[pos:pos + size]
    if len(payload) != size:
        raise CorruptFileError(f"expected {size} payload bytes, found {len(payload)}")
    arr = np.frombuffer(payload, dtype=np.uint8)
    shape = (height, width) if channels == 1 else (height, width, 3)
    return arr.reshape(shape).copy()


def _read_bmp(raw: bytes) -> np.ndarray:
    if len(raw) < _BMP_FILE_HEADER.size + _BMP_INFO_HEADER.size:
        raise CorruptFileError("truncated bitmap header")
    _, _, _, _, offset = _BMP_FILE_HEADER.unpack_from(raw, 0)
    (hsize, width, height, planes, bpp, compression,
     *_rest) = _BMP_INFO_HEADER.unpack_from(raw, _BMP_FILE_HEADER.size)
    if hsize < _BMP_INFO_HEADER.size:
        raise UnsupportedFormatError(f"unsupported bitmap header size {hsize}")
    if bpp != 24:
        raise UnsupportedDepthError(f"only 24-bit bitmaps are supported, got {bpp}")
    if compression != 0:
        raise UnsupportedFormatError("compressed bitmaps are not supported")
    top_down = height < 0
    height = abs(height)
    if width < 1 or height < 1:
        raise CorruptFileError(f"bad dimensions {width}x{height}")
    stride = (width * 3 + 3) & ~3
    payload = raw[offset:offset + stride * height]
    if len(payload) != stride * height:
        raise CorruptFileError(f"expected {stride * height} pixel bytes, found {len(payload)}")
    rows = np.frombuffer(payload, dtype=np.uint8).reshape(height, stride)
    bgr = rows[:, : width * 3].reshape(height, width, 3)
    if not top_down:
        bgr = bgr[::-1]
    return bgr[..., ::-1].copy()


def load(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    if raw[:2] in (b"P5", b"P6"):
        return _read_netpbm(raw)
    if raw[:2] == b"BM":
        return _read_bmp(raw)
    raise UnsupportedFormatError(f"{path}: unrecognised magic {raw[:2]!r}")


def encode(img, fmt: str) -> bytes:
    """Serialise ``img`` in format ``P5``, ``P6`` or ``BMP``."""
    arr = np.asarray(img, dtype=np.uint8)
    if arr.ndim == 3 and arr.shape[2] == 1:
        arr = arr[..., 0]
    channels = 1 if arr.ndim == 2 else arr.shape[2]
    fmt = fmt.upper()
    if fmt not in FORMATS:
        raise UnsupportedFormatError(f"unknown format {fmt!r}")
    want = 1 if fmt == "P5" else 3
    if channels != want:
        raise ChannelMismatchError(f"{fmt} needs {want} channel(s), image has {channels}")
    height, width = arr.shape[:2]
    if fmt in ("P5", "P6"):
        header = f"{fmt}\n{width} {height}\n255\n".encode("ascii")
        return header + np.ascontiguousarray(arr).tobytes()

    stride = (width * 3 + 3) & ~3
    rows = np.zeros((height, stride), dtype=np.uint8)
    rows[:, : width * 3] = arr[::-1, :, ::-1].reshape(height, width * 3)
    pixels = rows.tobytes()
    offset = _BMP_FILE_HEADER.size + _BMP_INFO_HEADER.size
    return (
        _BMP_FILE_HEADER.pack(b"BM", offset + len(pixels), 0, 0, offset)
        + _BMP_INFO_HEADER.pack(_BMP_INFO_HEADER.size, width, height, 1, 24, 0,
                                len(pixels), 2835, 2835, 0, 0)
        + pixels
    )


def format_for_path(path, img=None) -> str:
    suffix = Path(path).suffix.lower()
    if suffix not in _SUFFIX_FORMATS:
        raise UnsupportedFormatError(f"cannot infer image format from {suffix!r}")
    fmt = _SUFFIX_FORMATS[suffix]
    if fmt is None:
        arr = np.asarray(img)
        fmt = "P5" if arr.ndim == 2 or arr.shape[2] == 1 else "P6"
    return fmt


def save(img, path, fmt: str | None = None) -> None:
    """Write ``img`` to ``path`` atomically (temp file + rename).

    ``fmt`` defaults to the one implied by the file suffix.
    """
    path = Path(path)
    data = encode(img, fmt or format_for_path(path, img))
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
