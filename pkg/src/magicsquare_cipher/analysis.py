"""Statistical checks for image ciphers.

Histograms, Shannon entropy, Pearson correlation (plain vs cipher and
between adjacent pixels), NPCR/UACI for differential attacks, MSE/PSNR, and
a key-sensitivity experiment. Images are uint8 arrays of shape ``(H, W)`` or
``(H, W, C)``; a ``channel`` of ``None`` means the whole image.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidDimensionError, InvalidImageError, UndefinedCorrelationError
from .keymat import SecretKey, as_key
from .pipeline import decrypt_image, encrypt_image
from .permutation import DEFAULT_ITERATIONS

CHANNEL_NAMES = {1: ("gray",), 3: ("R", "G", "B")}

# Bit groups turning the reference key C6DA750B4C1F78D329EA25E6B15CF9E47D21
# into B6DA..., ...7D22 and ...29FA...: first hex digit C->B, last digit 1->2,
# nineteenth digit E->F.
PUBLISHED_KEY_FLIPS: tuple[tuple[int, ...], ...] = ((1, 2, 3), (142, 143), (75,))


def _hwc(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim == 2:
        return arr[:, :, None]
    if arr.ndim != 3:
        raise InvalidImageError(f"expected (H, W) or (H, W, C), got shape {arr.shape}")
    return arr


def _same_shape(a, b) -> tuple[np.ndarray, np.ndarray]:
    a, b = _hwc(a), _hwc(b)
    if a.shape != b.shape:
        raise InvalidDimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a, b


def _select(img: np.ndarray, channel: int | None) -> np.ndarray:
    return img if channel is None else img[:, :, channel]


def histogram(img, channel: int | None = 0) -> np.ndarray:
    """256-bin value counts for one channel (or all samples when ``channel`` is None)."""
    values = _select(_hwc(img), channel)
    return np.bincount(values.ravel(), minlength=256)[:256].astype(np.int64)


def entropy(values) -> float:
    """Shannon entropy in bits of a byte sequence."""
    v = np.asarray(values, dtype=np.uint8).ravel()
    if v.size == 0:
        raise ValueError("entropy of an empty sequence is undefined")
    p = np.bincount(v, minlength=256) / v.size
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum()) + 0.0


def pearson(x, y) -> float:
    """Product-moment correlation coefficient.

    If exactly one side is constant the covariance is zero and 0.0 is
    returned; if both are, :class:`UndefinedCorrelationError` is raised.
    """
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.size != y.size:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 2:
        raise ValueError("need at least two samples")
    dx = x - x.mean()
    dy = y - y.mean()
    sx = math.sqrt(float(dx @ dx))
    sy = math.sqrt(float(dy @ dy))
    if sx == 0 and sy == 0:
        raise UndefinedCorrelationError("both sequences are constant")
    if sx == 0 or sy == 0:
        return 0.0
    r = float(dx @ dy) / (sx * sy)
    return max(-1.0, min(1.0, r))


def adjacent_pairs(img, orientation: str, channel: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Every horizontally or vertically adjacent pair of samples in one channel."""
    plane = _hwc(img)[:, :, channel]
    if orientation == "horizontal":
        if plane.shape[1] < 2:
            raise InvalidDimensionError("need width >= 2 for horizontal pairs")
        return plane[:, :-1].ravel(), plane[:, 1:].ravel()
    if orientation == "vertical":
        if plane.shape[0] < 2:
            raise InvalidDimensionError("need height >= 2 for vertical pairs")
        return plane[:-1, :].ravel(), plane[1:, :].ravel()
    raise ValueError(f"orientation must be 'horizontal' or 'vertical', got {orientation!r}")


def npcr(c1, c2, channel: int | None = None) -> float:
    """Percentage of pixels that differ.

    With ``channel=None`` a pixel counts as changed if any of its channels differs.
    """
    a, b = _same_shape(c1, c2)
    if channel is None:
        changed = (a != b).any(axis=2)
    else:
        changed = a[:, :, channel] != b[:, :, channel]
    return 100.0 * float(changed.sum()) / changed.size


def uaci(c1, c2, channel: int | None = None) -> float:
    """Mean absolute intensity difference as a percentage of 255."""
    a, b = _same_shape(c1, c2)
    a, b = _select(a, channel), _select(b, channel)
    diff = np.abs(a.astype(np.int64) - b.astype(np.int64))
    return 100.0 * float(diff.sum()) / (255.0 * diff.size)


def mse(plain, cipher, channel: int | None = 0) -> float:
    a, b = _same_shape(plain, cipher)
    a, b = _select(a, channel), _select(b, channel)
    d = a.astype(np.int64) - b.astype(np.int64)
    return float((d * d).sum()) / d.size


def psnr(plain, cipher, channel: int | None = 0) -> float:
    """Peak signal-to-noise ratio in dB; ``inf`` when the inputs are identical."""
    err = mse(plain, cipher, channel)
    if err == 0:
        return math.inf
    return 20.0 * math.log10(255.0 / math.sqrt(err))


def chi_square_uniform(counts) -> float:
    """Chi-square statistic of a 256-bin histogram against the uniform distribution."""
    counts = np.asarray(counts, dtype=np.float64)
    expected = counts.sum() / counts.size
    return float(((counts - expected) ** 2).sum() / expected)


@dataclass
class Correlation:
    value: float
    undefined: bool = False


def safe_pearson(x, y) -> Correlation:
    try:
        return Correlation(pearson(x, y))
    except UndefinedCorrelationError:
        return Correlation(0.0, undefined=True)


@dataclass
class AnalysisReport:
    width: int
    height: int
    channels: list[str]
    entropy: dict = field(default_factory=dict)
    plain_cipher_correlation: dict = field(default_factory=dict)
    adjacent_correlation: dict = field(default_factory=dict)
    npcr: dict = field(default_factory=dict)
    uaci: dict = field(default_factory=dict)
    differential_scope: str = "cipher-vs-cipher"
    psnr: dict = field(default_factory=dict)
    chi_square: dict = field(default_factory=dict)
    histograms: dict = field(default_factory=dict, repr=False)
    extra: dict = field(default_factory=dict)

    def to_dict(self, include_histograms: bool = False) -> dict:
        d = asdict(self)
        if not include_histograms:
            d.pop("histograms")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def write(self, path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    def write_histogram_csvs(self, directory, prefix: str = "") -> list[Path]:
        """One ``bin,count`` CSV per image and channel; returns the paths written."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for image_name, per_channel in self.histograms.items():
            for ch, counts in per_channel.items():
                path = directory / f"{prefix}{image_name}_{ch}.csv"
                write_histogram_csv(counts, path)
                written.append(path)
        return written


def write_histogram_csv(counts: Sequence[int], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["bin", "count"])
        for b, c in enumerate(counts):
            w.writerow([b, int(c)])


def _psnr_entry(value: float) -> dict:
    if math.isinf(value):
        return {"db": "inf", "identical": True}
    return {"db": value, "identical": False}


def _corr_entry(c: Correlation) -> dict:
    return {"value": c.value, "undefined": c.undefined}


def analyze(plain, cipher, cipher2=None) -> AnalysisReport:
    """Run every metric on a plain/cipher pair.

    ``cipher2`` is the ciphertext of a plaintext differing in one pixel; when
    given, NPCR/UACI compare the two ciphertexts, otherwise they compare
    plain against cipher and ``differential_scope`` says so.
    """
    p, c = _same_shape(plain, cipher)
    h, w, nc = p.shape
    names = list(CHANNEL_NAMES.get(nc, tuple(str(i) for i in range(nc))))
    rep = AnalysisReport(width=w, height=h, channels=names)

    for img_name, img in (("plain", p), ("cipher", c)):
        rep.entropy[img_name] = {n: entropy(img[:, :, i]) for i, n in enumerate(names)}
        rep.histograms[img_name] = {n: histogram(img, i).tolist() for i, n in enumerate(names)}
        rep.chi_square[img_name] = {
            n: chi_square_uniform(rep.histograms[img_name][n]) for n in names
        }
        adj = {}
        for orient in ("horizontal", "vertical"):
            if (orient == "horizontal" and w < 2) or (orient == "vertical" and h < 2):
                continue
            adj[orient] = {
                n: _corr_entry(safe_pearson(*adjacent_pairs(img, orient, i)))
                for i, n in enumerate(names)
            }
        rep.adjacent_correlation[img_name] = adj

    if p.size >= 2:
        for i, a in enumerate(names):
            for j, b in enumerate(names):
                rep.plain_cipher_correlation[f"C_{a}{b}"] = _corr_entry(
                    safe_pearson(p[:, :, i], c[:, :, j])
                )

    if cipher2 is not None:
        c1, c2 = _same_shape(c, cipher2)
    else:
        c1, c2 = p, c
        rep.differential_scope = "plain-vs-cipher"
    rep.npcr = {n: npcr(c1, c2, i) for i, n in enumerate(names)}
    rep.npcr["whole"] = npcr(c1, c2, None)
    rep.uaci = {n: uaci(c1, c2, i) for i, n in enumerate(names)}
    rep.uaci["whole"] = uaci(c1, c2, None)
    rep.psnr = {n: _psnr_entry(psnr(p, c, i)) for i, n in enumerate(names)}
    return rep


@dataclass
class SensitivityTrial:
    flipped_bits: list[int]
    vs_plain: dict
    vs_cipher: dict
    exact: bool


@dataclass
class SensitivityReport:
    trials: list[SensitivityTrial]
    pairwise: dict

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def key_sensitivity_report(
    img,
    key: SecretKey | str,
    bit_flips: Iterable[int | Sequence[int]] | None = None,
    iterations: int = DEFAULT_ITERATIONS,
) -> SensitivityReport:
    """Encrypt ``img`` with ``key`` and decrypt it with slightly wrong keys.

    Each entry of ``bit_flips`` is a bit index (0 = MSB of the first sub-key)
    or a group of indices flipped together. ``None`` uses
    :data:`PUBLISHED_KEY_FLIPS`; an empty list runs a single control trial with
    the correct key. Reports per-channel correlations of every decryption
    against the plaintext and the ciphertext, and between each pair of wrong
    decryptions.
    """
    key = as_key(key)
    plain = _hwc(img)
    names = CHANNEL_NAMES.get(plain.shape[2], tuple(str(i) for i in range(plain.shape[2])))
    if bit_flips is None:
        bit_flips = PUBLISHED_KEY_FLIPS
    groups = [(g,) if isinstance(g, (int, np.integer)) else tuple(g) for g in bit_flips]
    if not groups:
        groups = [()]
    cipher = encrypt_image(np.asarray(img), key, iterations)
    decrypted = []
    trials = []
    for g in groups:
        wrong = key.flip_bits(g) if g else key
        dec = _hwc(decrypt_image(cipher, wrong, iterations))
        decrypted.append(dec)
        trials.append(SensitivityTrial(
            flipped_bits=[int(b) for b in g],
            vs_plain={n: _corr_entry(safe_pearson(plain[:, :, i], dec[:, :, i])) for i, n in enumerate(names)},
            vs_cipher={n: _corr_entry(safe_pearson(_hwc(cipher)[:, :, i], dec[:, :, i])) for i, n in enumerate(names)},
            exact=bool(np.array_equal(dec, plain)),
        ))
    pairwise = {}
    for a in range(len(decrypted)):
        for b in range(a + 1, len(decrypted)):
            pairwise[f"{a}-{b}"] = {
                n: _corr_entry(safe_pearson(decrypted[a][:, :, i], decrypted[b][:, :, i]))
                for i, n in enumerate(names)
            }
    return SensitivityReport(trials=trials, pairwise=pairwise)
