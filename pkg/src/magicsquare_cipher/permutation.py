"""Magic-square pixel scrambling over N x N tiles."""

from __future__ import annotations

import warnings
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import InvalidDimensionError
from .keymat import KeyStream

DEFAULT_ITERATIONS = 5


class NoFullTileWarning(UserWarning):
    """An image was too small for any drawn tile size and passed through unchanged."""


@lru_cache(maxsize=None)
def _siamese(n: int) -> np.ndarray:
    sq = np.zeros((n, n), dtype=np.int64)
    row, col = 0, n // 2
    for v in range(1, n * n + 1):
        sq[row, col] = v
        r, c = row - 1, col + 1
        if (r < 0 and c >= n) or sq[r % n, c % n]:
            # top-right corner or occupied cell: drop one below the last cell
            r, c = row + 1, col
        row, col = r % n, c % n
    sq.flags.writeable = False
    return sq


def siamese_square(n: int) -> np.ndarray:
    """Odd-order magic square built by the up-and-right (Siamese) walk.

    >>> siamese_square(3)
    array([[8, 1, 6],
           [3, 5, 7],
           [4, 9, 2]])
    """
    if not isinstance(n, (int, np.integer)) or n < 3 or n % 2 == 0:
        raise InvalidDimensionError(f"magic square order must be odd and >= 3, got {n}")
    return _siamese(int(n)).copy()


def _source_index(square: np.ndarray) -> np.ndarray:
    # 0-based row-major source position for each output cell
    return np.asarray(square).ravel() - 1


def _check_tile(tile: np.ndarray, square: np.ndarray) -> int:
    n = square.shape[0]
    if square.shape != (n, n) or tile.shape[:2] != (n, n):
        raise InvalidDimensionError(
            f"tile {tile.shape[:2]} does not match square {square.shape}"
        )
    return n


def scramble_tile(tile, square) -> np.ndarray:
    """Move the pixel with row-major index ``v`` to where ``square`` holds ``v``.

    ``tile`` is ``(n, n)`` or ``(n, n, channels)``; channel tuples move as one.
    """
    tile = np.asarray(tile)
    square = np.asarray(square)
    n = _check_tile(tile, square)
    flat = tile.reshape((n * n,) + tile.shape[2:])
    return flat[_source_index(square)].reshape(tile.shape)


def unscramble_tile(tile, square) -> np.ndarray:
    tile = np.asarray(tile)
    square = np.asarray(square)
    n = _check_tile(tile, square)
    flat = tile.reshape((n * n,) + tile.shape[2:])
    out = np.empty_like(flat)
    out[_source_index(square)] = flat
    return out.reshape(tile.shape)


def _apply_tiles(img: np.ndarray, n: int, inverse: bool) -> bool:
    """Scramble every full n x n tile of ``img`` in place; False if none fit."""
    h, w = img.shape[:2]
    ty, tx = h // n, w // n
    if ty == 0 or tx == 0:
        return False
    ch = img.shape[2]
    region = img[: ty * n, : tx * n]
    # (tile_row, tile_col, n*n pixels, channels)
    tiles = region.reshape(ty, n, tx, n, ch).transpose(0, 2, 1, 3, 4).reshape(ty, tx, n * n, ch)
    idx = _source_index(_siamese(n))
    if inverse:
        moved = np.empty_like(tiles)
        moved[:, :, idx] = tiles
    else:
        moved = tiles[:, :, idx]
    region[...] = moved.reshape(ty, tx, n, n, ch).transpose(0, 2, 1, 3, 4).reshape(ty * n, tx * n, ch)
    return True


def permute_with_sizes(img, tile_sizes: Sequence[int], inverse: bool = False) -> np.ndarray:
    """Run one scrambling round per tile size, in order (reverse order when inverting).

    Pixels in the right/bottom margins that no full tile covers stay put for
    that round.
    """
    src = np.asarray(img)
    if src.ndim not in (2, 3) or src.size == 0:
        raise InvalidDimensionError(f"expected a non-empty (H, W[, C]) image, got shape {src.shape}")
    for n in tile_sizes:
        if n < 3 or n % 2 == 0:
            raise InvalidDimensionError(f"tile size must be odd and >= 3, got {n}")
    work = src.reshape(src.shape[:2] + (-1,)).copy()
    order = list(reversed(tile_sizes)) if inverse else list(tile_sizes)
    moved_any = False
    for n in order:
        moved_any |= _apply_tiles(work, int(n), inverse)
    if not moved_any and order:
        warnings.warn(
            f"image {src.shape[1]}x{src.shape[0]} is smaller than every tile size "
            f"{sorted(set(order))}; left unpermuted",
            NoFullTileWarning,
            stacklevel=2,
        )
    return work.reshape(src.shape)


def permute_image(
    img,
    stream: KeyStream,
    iterations: int = DEFAULT_ITERATIONS,
    direction: str = "forward",
) -> np.ndarray:
    """Scramble (or unscramble) ``img`` for ``iterations`` rounds.

    Each round draws a fresh tile size from ``stream``, which is advanced
    ``iterations`` times in either direction.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    sizes = stream.draw(iterations)
    return permute_with_sizes(img, sizes, inverse=direction == "inverse")
