"""Byte substitution over 18-byte blocks.

Each block goes through three passes. A pass rewrites every byte after the
first with one of eight invertible operations, picked by the top 3, 2 or 1
bits of the preceding byte's value at the start of the pass. The first pass
is followed by backward key mixing, the second by forward key mixing, and
after the third the ciphertext block is XORed into the working key.

Shifts in the operation table are circular, so every operation is a byte
bijection and the whole substitution can be undone.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import InvalidBlockError
from .keymat import KEY_BYTES, SecretKey, as_key, feedback_update

BLOCK_SIZE = KEY_BYTES
KEY_MODULUS = 18

# right-shift applied to the previous byte to extract the op code, per pass
PASS_POSITIONS = (5, 6, 7)


def _rotl(p: int) -> int:
    return ((p << 1) | (p >> 7)) & 0xFF


def _rotr(p: int) -> int:
    return ((p >> 1) | (p << 7)) & 0xFF


def apply_table_op(code: int, p: int, k: int) -> int:
    """Apply operation ``code`` (0-7) to byte ``p`` using sub-key byte ``k``."""
    m = k % KEY_MODULUS
    if code == 0:
        return _rotl(p)
    if code == 1:
        return _rotr(p)
    if code == 2:
        return ~p & 0xFF
    if code == 3:
        return p ^ m
    if code == 4:
        return (~p & 0xFF) ^ m
    if code == 5:
        return ~(p ^ m) & 0xFF
    if code == 6:
        return ~_rotl(p) & 0xFF
    if code == 7:
        return ~_rotr(p) & 0xFF
    raise ValueError(f"op code must be in 0..7, got {code}")


def invert_table_op(code: int, c: int, k: int) -> int:
    """Return the byte ``p`` with ``apply_table_op(code, p, k) == c``."""
    m = k % KEY_MODULUS
    if code == 0:
        return _rotr(c)
    if code == 1:
        return _rotl(c)
    if code == 2:
        return ~c & 0xFF
    if code == 3:
        return c ^ m
    if code in (4, 5):
        # NOT(p) ^ m and NOT(p ^ m) are the same byte
        return ~(c ^ m) & 0xFF
    if code == 6:
        return _rotr(~c & 0xFF)
    if code == 7:
        return _rotl(~c & 0xFF)
    raise ValueError(f"op code must be in 0..7, got {code}")


def _build_tables():
    fwd, inv = [], []
    for code in range(8):
        for m in range(KEY_MODULUS):
            fwd.append(bytes(apply_table_op(code, p, m) for p in range(256)))
            inv.append(bytes(invert_table_op(code, c, m) for c in range(256)))
    return tuple(fwd), tuple(inv)


# indexed by code * 18 + (k mod 18), then by the byte
_FWD, _INV = _build_tables()


def _check_block(block) -> list[int]:
    p = list(block)
    if not 1 <= len(p) <= BLOCK_SIZE:
        raise InvalidBlockError(f"block length must be 1..{BLOCK_SIZE}, got {len(p)}")
    return p


def fkm(block: Sequence[int], key: SecretKey) -> list[int]:
    """Forward key mixing: ``p_i ^= k_i ^ old(p_{i-1})``."""
    p = _check_block(block)
    k = key.subkeys
    prev = p[0]
    p[0] = prev ^ k[0]
    for i in range(1, len(p)):
        cur = p[i]
        p[i] = cur ^ k[i] ^ prev
        prev = cur
    return p


def bkm(block: Sequence[int], key: SecretKey) -> list[int]:
    """Backward key mixing, the mirror image of :func:`fkm`."""
    p = _check_block(block)
    k = key.subkeys
    last = len(p) - 1
    nxt = p[last]
    p[last] = nxt ^ k[last]
    for i in range(last - 1, -1, -1):
        cur = p[i]
        p[i] = cur ^ k[i] ^ nxt
        nxt = cur
    return p


def fkm_inverse(block: Sequence[int], key: SecretKey) -> list[int]:
    c = _check_block(block)
    k = key.subkeys
    c[0] ^= k[0]
    for i in range(1, len(c)):
        c[i] ^= k[i] ^ c[i - 1]
    return c


def bkm_inverse(block: Sequence[int], key: SecretKey) -> list[int]:
    c = _check_block(block)
    k = key.subkeys
    last = len(c) - 1
    c[last] ^= k[last]
    for i in range(last - 1, -1, -1):
        c[i] ^= k[i] ^ c[i + 1]
    return c


def _encrypt_block(p: list[int], k: bytes) -> None:
    """In-place substitution of one block with working key ``k``."""
    fwd = _FWD
    n = len(p)
    m = [x % KEY_MODULUS for x in k]

    # pass 1: p1 ^= k1, 3-bit codes, then backward mixing
    prev = p[0]
    p[0] = prev ^ k[0]
    for i in range(1, n):
        cur = p[i]
        p[i] = fwd[(prev >> 5) * 18 + m[i]][cur]
        prev = cur
    last = n - 1
    nxt = p[last]
    p[last] = nxt ^ k[last]
    for i in range(last - 1, -1, -1):
        cur = p[i]
        p[i] = cur ^ k[i] ^ nxt
        nxt = cur

    # pass 2: 2-bit codes, then forward mixing
    prev = p[0]
    for i in range(1, n):
        cur = p[i]
        p[i] = fwd[(prev >> 6) * 18 + m[i]][cur]
        prev = cur
    prev = p[0]
    p[0] = prev ^ k[0]
    for i in range(1, n):
        cur = p[i]
        p[i] = cur ^ k[i] ^ prev
        prev = cur

    # pass 3: 1-bit codes, no mixing
    prev = p[0]
    for i in range(1, n):
        cur = p[i]
        p[i] = fwd[(prev >> 7) * 18 + m[i]][cur]
        prev = cur


def _decrypt_block(c: list[int], k: bytes) -> None:
    """In-place inverse of :func:`_encrypt_block`."""
    inv = _INV
    n = len(c)
    m = [x % KEY_MODULUS for x in k]

    # undo pass 3 ops; codes come from bytes already recovered
    for i in range(1, n):
        c[i] = inv[(c[i - 1] >> 7) * 18 + m[i]][c[i]]

    # undo forward mixing, then pass 2 ops
    c[0] ^= k[0]
    for i in range(1, n):
        c[i] ^= k[i] ^ c[i - 1]
    for i in range(1, n):
        c[i] = inv[(c[i - 1] >> 6) * 18 + m[i]][c[i]]

    # undo backward mixing, then pass 1 ops and the k1 whitening
    last = n - 1
    c[last] ^= k[last]
    for i in range(last - 1, -1, -1):
        c[i] ^= k[i] ^ c[i + 1]
    c[0] ^= k[0]
    for i in range(1, n):
        c[i] = inv[(c[i - 1] >> 5) * 18 + m[i]][c[i]]


def substitute_block(block: Sequence[int], key: SecretKey) -> tuple[bytes, SecretKey]:
    """Encrypt one block; returns the ciphertext and the next working key."""
    p = _check_block(block)
    _encrypt_block(p, key.subkeys)
    out = bytes(p)
    return out, feedback_update(key, out)


def desubstitute_block(cipher: Sequence[int], key: SecretKey) -> tuple[bytes, SecretKey]:
    """Decrypt one block encrypted under working key ``key``.

    The next working key depends only on the ciphertext, so it is the same
    value :func:`substitute_block` returned during encryption.
    """
    c = _check_block(cipher)
    next_key = feedback_update(key, c)
    _decrypt_block(c, key.subkeys)
    return bytes(c), next_key


def substitute_stream(data: bytes, key: SecretKey | str) -> tuple[bytes, SecretKey]:
    """Encrypt a byte string block by block with ciphertext feedback.

    The last block may be shorter than 18 bytes; nothing is padded. Returns
    the ciphertext and the working key left after the final block.
    """
    k = bytearray(as_key(key).subkeys)
    out = bytearray(data)
    for start in range(0, len(out), BLOCK_SIZE):
        p = list(out[start:start + BLOCK_SIZE])
        _encrypt_block(p, bytes(k))
        for i, c in enumerate(p):
            k[i] ^= c
        out[start:start + len(p)] = bytes(p)
    return bytes(out), SecretKey(bytes(k))


def iter_working_keys(cipher: bytes, key: SecretKey | str) -> Iterator[SecretKey]:
    """Yield the working key each block of ``cipher`` was encrypted under.

    Lets a caller decrypt arbitrary block ranges independently: block ``b``
    only needs the ``b``-th key from this sequence.
    """
    k = bytearray(as_key(key).subkeys)
    for start in range(0, len(cipher), BLOCK_SIZE):
        yield SecretKey(bytes(k))
        for i, c in enumerate(cipher[start:start + BLOCK_SIZE]):
            k[i] ^= c


def desubstitute_stream(cipher: bytes, key: SecretKey | str) -> bytes:
    k = bytearray(as_key(key).subkeys)
    out = bytearray(cipher)
    for start in range(0, len(out), BLOCK_SIZE):
        c = list(out[start:start + BLOCK_SIZE])
        working = bytes(k)
        for i, x in enumerate(c):
            k[i] ^= x
        _decrypt_block(c, working)
        out[start:start + len(c)] = bytes(c)
    return bytes(out)
