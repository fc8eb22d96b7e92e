"""Whole-image encryption: substitution over the byte stream, then tile scrambling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidImageError
from .keymat import KeyStream, SecretKey, as_key
from .permutation import DEFAULT_ITERATIONS, permute_image
from .substitution import desubstitute_stream, substitute_stream


@dataclass(frozen=True)
class CipherParams:
    key: SecretKey
    permutation_iterations: int = DEFAULT_ITERATIONS

    def __post_init__(self):
        object.__setattr__(self, "key", as_key(self.key))
        if self.permutation_iterations < 1:
            raise ValueError("permutation_iterations must be >= 1")


def _params(params, iterations) -> CipherParams:
    if isinstance(params, CipherParams):
        if iterations is not None and iterations != params.permutation_iterations:
            return CipherParams(params.key, iterations)
        return params
    return CipherParams(as_key(params), DEFAULT_ITERATIONS if iterations is None else iterations)


def _validate(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim not in (2, 3) or arr.size == 0:
        raise InvalidImageError(f"expected a non-empty (H, W) or (H, W, C) image, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        raise InvalidImageError(f"expected uint8 pixels, got {arr.dtype}")
    if arr.ndim == 3 and arr.shape[2] not in (1, 3):
        raise InvalidImageError(f"expected 1 or 3 channels, got {arr.shape[2]}")
    return np.ascontiguousarray(arr)


def encrypt_image(img, params: CipherParams | SecretKey | str, iterations: int | None = None) -> np.ndarray:
    """Encrypt a uint8 image of shape ``(H, W)`` or ``(H, W, C)``.

    ``params`` may be a :class:`CipherParams`, a :class:`SecretKey` or its
    36-character hex form. The result has the same shape and dtype.
    """
    arr = _validate(img)
    p = _params(params, iterations)
    sub, _ = substitute_stream(arr.tobytes(), p.key)
    stage = np.frombuffer(sub, dtype=np.uint8).reshape(arr.shape)
    return permute_image(stage, KeyStream.from_key(p.key), p.permutation_iterations, "forward")


def decrypt_image(img, params: CipherParams | SecretKey | str, iterations: int | None = None) -> np.ndarray:
    arr = _validate(img)
    p = _params(params, iterations)
    stage = permute_image(arr, KeyStream.from_key(p.key), p.permutation_iterations, "inverse")
    plain = desubstitute_stream(np.ascontiguousarray(stage).tobytes(), p.key)
    return np.frombuffer(plain, dtype=np.uint8).reshape(arr.shape).copy()
