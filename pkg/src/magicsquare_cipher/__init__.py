"""Image encryption with table-driven byte substitution, ciphertext key
feedback and magic-square pixel scrambling, plus the usual statistical
checks (entropy, correlation, NPCR/UACI, PSNR)."""

from .errors import (
    CipherError,
    CorruptFileError,
    InvalidBlockError,
    InvalidDimensionError,
    InvalidImageError,
    MalformedKeyError,
    UndefinedCorrelationError,
    UnsupportedDepthError,
    UnsupportedFormatError,
)
from .keymat import KeyStream, SecretKey, feedback_update, fold_seed, parse_key
from .permutation import permute_image, scramble_tile, siamese_square, unscramble_tile
from .pipeline import CipherParams, decrypt_image, encrypt_image
from .substitution import desubstitute_block, substitute_block

__version__ = "0.1.0"

__all__ = [
    "CipherError",
    "CipherParams",
    "CorruptFileError",
    "InvalidBlockError",
    "InvalidDimensionError",
    "InvalidImageError",
    "KeyStream",
    "MalformedKeyError",
    "SecretKey",
    "UndefinedCorrelationError",
    "UnsupportedDepthError",
    "UnsupportedFormatError",
    "decrypt_image",
    "desubstitute_block",
    "encrypt_image",
    "feedback_update",
    "fold_seed",
    "parse_key",
    "permute_image",
    "scramble_tile",
    "siamese_square",
    "substitute_block",
    "unscramble_tile",
]
