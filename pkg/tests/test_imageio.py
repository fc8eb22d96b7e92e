import struct

import numpy as np
import pytest

from magicsquare_cipher import imageio
from magicsquare_cipher.errors import (
    ChannelMismatchError,
    CorruptFileError,
    UnsupportedDepthError,
    UnsupportedFormatError,
)


def test_minimal_p6(tmp_path):
    p = tmp_path / "a.ppm"
    p.write_bytes(b"P6 2 1 255\n" + bytes([1, 2, 3, 4, 5, 6]))
    img = imageio.load(p)
    assert img.shape == (1, 2, 3)
    assert img.tolist() == [[[1, 2, 3], [4, 5, 6]]]


def test_p5(tmp_path):
    p = tmp_path / "a.pgm"
    p.write_bytes(b"P5\n3 2\n255\n" + bytes(range(6)))
    img = imageio.load(p)
    assert img.shape == (2, 3)
    assert img.tolist() == [[0, 1, 2], [3, 4, 5]]


def test_header_comments(tmp_path):
    p = tmp_path / "c.pgm"
    p.write_bytes(b"P5\n# made by hand\n2 # width\n2\n# depth next\n255\n" + bytes([9, 8, 7, 6]))
    assert imageio.load(p).tolist() == [[9, 8], [7, 6]]


def test_payload_byte_that_looks_like_whitespace(tmp_path):
    p = tmp_path / "w.pgm"
    p.write_bytes(b"P5 2 1 255\n" + b"\n\x20")
    assert imageio.load(p).tolist() == [[10, 32]]


def test_trailing_bytes_ignored(tmp_path):
    p = tmp_path / "t.pgm"
    p.write_bytes(b"P5 1 1 255\n" + b"\x05garbage")
    assert imageio.load(p).tolist() == [[5]]


def test_truncated(tmp_path):
    p = tmp_path / "t.ppm"
    p.write_bytes(b"P6 4 4 255\n" + bytes(10))
    with pytest.raises(CorruptFileError):
        imageio.load(p)


def test_maxval(tmp_path):
    p = tmp_path / "d.pgm"
    p.write_bytes(b"P5 1 1 65535\n" + bytes(2))
    with pytest.raises(UnsupportedDepthError):
        imageio.load(p)


@pytest.mark.parametrize("raw", [b"P3 1 1 255\n1 2 3", b"GIF89a", b"", b"P6 x 1 255\n"])
def test_unsupported(tmp_path, raw):
    p = tmp_path / "u.img"
    p.write_bytes(raw)
    with pytest.raises(UnsupportedFormatError):
        imageio.load(p)


def test_p6_roundtrip(tmp_path, rng):
    img = rng.integers(0, 256, (9, 17, 3), dtype=np.uint8)
    imageio.save(img, tmp_path / "r.ppm")
    np.testing.assert_array_equal(imageio.load(tmp_path / "r.ppm"), img)


def test_p5_roundtrip(tmp_path, rng):
    img = rng.integers(0, 256, (5, 5), dtype=np.uint8)
    imageio.save(img, tmp_path / "r.pgm")
    np.testing.assert_array_equal(imageio.load(tmp_path / "r.pgm"), img)


@pytest.mark.parametrize("shape", [(1, 1, 3), (3, 5, 3), (7, 4, 3), (16, 16, 3)])
def test_bmp_roundtrip(tmp_path, rng, shape):
    img = rng.integers(0, 256, shape, dtype=np.uint8)
    imageio.save(img, tmp_path / "r.bmp")
    np.testing.assert_array_equal(imageio.load(tmp_path / "r.bmp"), img)


def test_bmp_layout(tmp_path):
    # 1x2 image: top pixel red, bottom pixel blue; file stores bottom row first, BGR
    img = np.array([[[255, 0, 0]], [[0, 0, 255]]], dtype=np.uint8)
    data = imageio.encode(img, "BMP")
    offset = struct.unpack_from("<I", data, 10)[0]
    assert data[offset:offset + 3] == bytes([255, 0, 0])      # blue, as B,G,R
    assert data[offset + 4:offset + 7] == bytes([0, 0, 255])  # red, after 1 pad byte
    assert len(data) == offset + 8


def test_bmp_top_down(tmp_path, rng):
    img = rng.integers(0, 256, (3, 2, 3), dtype=np.uint8)
    data = bytearray(imageio.encode(img, "BMP"))
    offset = struct.unpack_from("<I", data, 10)[0]
    struct.pack_into("<i", data, 22, -3)
    stride = 8
    rows = [bytes(data[offset + r * stride: offset + (r + 1) * stride]) for r in range(3)]
    data[offset:offset + 3 * stride] = b"".join(reversed(rows))
    (tmp_path / "td.bmp").write_bytes(bytes(data))
    np.testing.assert_array_equal(imageio.load(tmp_path / "td.bmp"), img)


def test_bmp_truncated(tmp_path, rng):
    data = imageio.encode(rng.integers(0, 256, (4, 4, 3), dtype=np.uint8), "BMP")
    (tmp_path / "x.bmp").write_bytes(data[:-5])
    with pytest.raises(CorruptFileError):
        imageio.load(tmp_path / "x.bmp")


def test_channel_mismatch(tmp_path):
    with pytest.raises(ChannelMismatchError):
        imageio.save(np.zeros((2, 2), np.uint8), tmp_path / "g.ppm")
    with pytest.raises(ChannelMismatchError):
        imageio.save(np.zeros((2, 2, 3), np.uint8), tmp_path / "g.pgm")
    with pytest.raises(ChannelMismatchError):
        imageio.save(np.zeros((2, 2), np.uint8), tmp_path / "g.bmp")
    assert list(tmp_path.iterdir()) == []


def test_single_channel_3d_saves_as_pgm(tmp_path, rng):
    img = rng.integers(0, 256, (4, 3, 1), dtype=np.uint8)
    imageio.save(img, tmp_path / "g.pgm")
    np.testing.assert_array_equal(imageio.load(tmp_path / "g.pgm"), img[..., 0])


def test_explicit_format_overrides_suffix(tmp_path, rng):
    img = rng.integers(0, 256, (4, 3, 3), dtype=np.uint8)
    imageio.save(img, tmp_path / "x.dat", "BMP")
    assert (tmp_path / "x.dat").read_bytes()[:2] == b"BM"


def test_unknown_suffix(tmp_path):
    with pytest.raises(UnsupportedFormatError):
        imageio.save(np.zeros((2, 2, 3), np.uint8), tmp_path / "x.png")
