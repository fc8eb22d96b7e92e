"""Deterministic photo-like RGB test images.

The standard test corpus is not redistributable here, so the statistical
tests use synthetic stand-ins with the properties that matter for cipher
analysis: strong adjacent-pixel correlation, skewed histograms, flat
regions and edges.
"""

import numpy as np
from scipy import ndimage

NAMES = ("gradient", "waves", "shapes", "texture", "mixed")


def _to_u8(a):
    return np.clip(np.rint(a), 0, 255).astype(np.uint8)


def make_image(name, size=512, seed=0):
    rng = np.random.default_rng([seed, NAMES.index(name)])
    y, x = np.mgrid[0:size, 0:size] / size
    if name == "gradient":
        chans = [255 * x, 255 * y, 255 * (1 - x) * y + 20 * np.sin(9 * x)]
        img = np.stack(chans, -1) + rng.normal(0, 2, (size, size, 3))
    elif name == "waves":
        chans = []
        for c in range(3):
            f = rng.uniform(1, 6, 3)
            ph = rng.uniform(0, 2 * np.pi, 3)
            chans.append(128 + 70 * np.sin(2 * np.pi * f[0] * x + ph[0]) * np.cos(2 * np.pi * f[1] * y + ph[1])
                         + 30 * np.sin(2 * np.pi * f[2] * x * y + ph[2]))
        img = np.stack(chans, -1) + rng.normal(0, 3, (size, size, 3))
    elif name == "shapes":
        img = np.full((size, size, 3), 40.0)
        for _ in range(25):
            cx, cy, r = rng.uniform(0, 1, 2).tolist() + [rng.uniform(0.03, 0.2)]
            mask = (x - cx) ** 2 + (y - cy) ** 2 < r * r
            img[mask] = rng.uniform(0, 255, 3)
        img += rng.normal(0, 1.5, img.shape)
    elif name == "texture":
        noise = rng.normal(0, 1, (size, size, 3))
        img = ndimage.gaussian_filter(noise, sigma=(6, 6, 0))
        img = 128 + 60 * img / img.std()
    elif name == "mixed":
        noise = ndimage.gaussian_filter(rng.normal(0, 1, (size, size, 3)), sigma=(3, 3, 0))
        img = 90 + 120 * x[..., None] * np.array([1.0, 0.7, 0.4]) + 25 * noise / noise.std()
        img[size // 3: size // 2, :] = 230
    else:
        raise KeyError(name)
    return _to_u8(img)


def corpus(size=512):
    return {name: make_image(name, size) for name in NAMES}
