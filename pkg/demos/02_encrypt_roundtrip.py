# %% [markdown]
# # Encrypting an image file and getting it back

# %%
import tempfile
from pathlib import Path

import numpy as np

from magicsquare_cipher import SecretKey, decrypt_image, encrypt_image, imageio

# %% [markdown]
# A smooth synthetic picture: two gradients and a bright disc.

# %%
y, x = np.mgrid[0:256, 0:320]
img = np.stack([x * 255 // 319, y, np.full_like(x, 90)], -1).astype(np.uint8)
img[(x - 160) ** 2 + (y - 128) ** 2 < 60 ** 2] = (250, 230, 40)

key = SecretKey.generate()  # keep the hex form somewhere safe: key.hex()
cipher = encrypt_image(img, key)
print(img.shape, cipher.shape, cipher.dtype)

# %% [markdown]
# The ciphertext has the same size and format as the input, so it can be
# written out as an ordinary PPM and viewed as noise.

# %%
work = Path(tempfile.mkdtemp())
imageio.save(img, work / "plain.ppm")
imageio.save(cipher, work / "cipher.ppm")

back = decrypt_image(imageio.load(work / "cipher.ppm"), key)
print("byte-identical:", np.array_equal(back, img))

# %% [markdown]
# Sizes that are not multiples of the 18-byte block, or smaller than the
# smallest 51x51 tile, still round trip. The tiny one only gets substitution.

# %%
import warnings

for shape in [(3, 7, 3), (60, 61), (101, 53, 3)]:
    a = np.random.default_rng(0).integers(0, 256, shape, dtype=np.uint8)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ok = np.array_equal(decrypt_image(encrypt_image(a, key), key), a)
    print(shape, ok)
