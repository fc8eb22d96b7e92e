"""144-bit secret keys, ciphertext feedback and the tile-size key stream."""

from __future__ import annotations

import secrets
import string
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MalformedKeyError

KEY_BYTES = 18
KEY_BITS = KEY_BYTES * 8
KEY_HEX_LEN = KEY_BYTES * 2

_MASK64 = (1 << 64) - 1
_ZERO_SEED = 0x9E3779B97F4A7C15

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407

MIN_TILE = 51
MAX_TILE = 199
_TILE_CHOICES = (MAX_TILE - MIN_TILE) // 2 + 1  # 75 odd values

_HEXDIGITS = frozenset(string.hexdigits)


@dataclass(frozen=True)
class SecretKey:
    """Eighteen 8-bit sub-keys ``k1 .. k18``; ``subkeys[0]`` is ``k1``."""

    subkeys: bytes

    def __post_init__(self):
        if not isinstance(self.subkeys, bytes):
            object.__setattr__(self, "subkeys", bytes(self.subkeys))
        if len(self.subkeys) != KEY_BYTES:
            raise MalformedKeyError(
                f"key must hold {KEY_BYTES} sub-keys, got {len(self.subkeys)}"
            )

    @classmethod
    def from_hex(cls, text: str) -> "SecretKey":
        return parse_key(text)

    @classmethod
    def generate(cls) -> "SecretKey":
        """Fresh key from the operating system's entropy source."""
        return cls(secrets.token_bytes(KEY_BYTES))

    def hex(self) -> str:
        return format_key(self)

    def flip_bits(self, bits: int | Iterable[int]) -> "SecretKey":
        """Return a copy with the given bit positions inverted.

        Bit 0 is the most significant bit of ``k1`` and bit 143 the least
        significant bit of ``k18``, so positions follow the hex text left to
        right.
        """
        if isinstance(bits, int):
            bits = (bits,)
        out = bytearray(self.subkeys)
        for b in bits:
            if not 0 <= b < KEY_BITS:
                raise ValueError(f"key bit index {b} outside [0, {KEY_BITS - 1}]")
            out[b // 8] ^= 0x80 >> (b % 8)
        return SecretKey(bytes(out))

    def __getitem__(self, i):
        return self.subkeys[i]

    def __len__(self):
        return KEY_BYTES

    def __iter__(self):
        return iter(self.subkeys)

    def __repr__(self):
        # keys never end up verbatim in logs or tracebacks
        return "SecretKey(<144 bits>)"


def parse_key(text: str) -> SecretKey:
    """Parse 36 hexadecimal characters (either case) into a key."""
    if not isinstance(text, str):
        raise MalformedKeyError("key text must be a string")
    text = text.strip()
    if len(text) != KEY_HEX_LEN:
        raise MalformedKeyError(
            f"key must be {KEY_HEX_LEN} hex characters, got {len(text)}"
        )
    if not set(text) <= _HEXDIGITS:
        raise MalformedKeyError("key contains non-hexadecimal characters")
    return SecretKey(bytes.fromhex(text))


def format_key(key: SecretKey) -> str:
    return key.subkeys.hex().upper()


def as_key(key: SecretKey | str | bytes) -> SecretKey:
    if isinstance(key, SecretKey):
        return key
    if isinstance(key, str):
        return parse_key(key)
    return SecretKey(bytes(key))


def feedback_update(key: SecretKey, cipher_block: Sequence[int]) -> SecretKey:
    """XOR the ciphertext block into the leading sub-keys.

    Sub-keys past the end of a short final block are left alone.
    """
    k = bytearray(key.subkeys)
    for i, c in enumerate(cipher_block[:KEY_BYTES]):
        k[i] ^= c
    return SecretKey(bytes(k))


def fold_seed(key: SecretKey) -> int:
    """Fold the key into a nonzero 64-bit generator seed."""
    raw = key.subkeys
    w0 = int.from_bytes(raw[0:6], "big")
    w1 = int.from_bytes(raw[6:12], "big")
    w2 = int.from_bytes(raw[12:18], "big")
    seed = (w0 ^ (w1 << 8) ^ (w2 << 16)) & _MASK64
    return seed or _ZERO_SEED


@dataclass
class KeyStream:
    """64-bit LCG that yields the odd tile sizes for the scrambling rounds.

    Always seed it from the caller's original key, never from a working key
    that has already absorbed ciphertext feedback.
    """

    state: int

    @classmethod
    def from_key(cls, key: SecretKey | str) -> "KeyStream":
        return cls(fold_seed(as_key(key)))

    def next_tile_size(self) -> int:
        self.state = (self.state * LCG_MULTIPLIER + LCG_INCREMENT) & _MASK64
        r = self.state >> 33
        return MIN_TILE + 2 * (r % _TILE_CHOICES)

    def draw(self, count: int) -> list[int]:
        return [self.next_tile_size() for _ in range(count)]


def next_tile_size(stream: KeyStream) -> int:
    return stream.next_tile_size()


def random_key_hex() -> str:
    return format_key(SecretKey.generate())
