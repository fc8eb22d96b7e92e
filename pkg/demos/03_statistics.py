# %% [markdown]
# # Statistical checks on a ciphertext

# %%
import numpy as np

from magicsquare_cipher import analysis, encrypt_image, parse_key

key = parse_key("C6DA750B4C1F78D329EA25E6B15CF9E47D21")

rng = np.random.default_rng(1)
y, x = np.mgrid[0:384, 0:384] / 384
img = np.stack([128 + 100 * np.sin(6 * x) * np.cos(4 * y),
                255 * x * y,
                200 - 150 * y], -1)
img = np.clip(img + rng.normal(0, 3, img.shape), 0, 255).astype(np.uint8)
cipher = encrypt_image(img, key)

# %%
report = analysis.analyze(img, cipher)
for ch in ("R", "G", "B"):
    print(ch, "entropy plain %.3f cipher %.3f" % (report.entropy["plain"][ch], report.entropy["cipher"][ch]))

# %% [markdown]
# Neighbouring pixels go from almost perfectly correlated to uncorrelated.

# %%
for orient in ("horizontal", "vertical"):
    p = analysis.pearson(*analysis.adjacent_pairs(img, orient, 0))
    c = analysis.pearson(*analysis.adjacent_pairs(cipher, orient, 0))
    print(f"{orient:10s} plain {p:.4f} cipher {c:.4f}")

# %% [markdown]
# Differential behaviour: change one byte of the plaintext and compare the
# two ciphertexts. A change early in the byte stream reaches almost every
# later block through key feedback; a change near the end has little left
# to spread into, and the first channel of each block lags behind the others.

# %%
for pos in (0, img.size // 2):
    mod = img.copy()
    mod.reshape(-1)[pos] ^= 1
    c2 = encrypt_image(mod, key)
    per = ["%s %.1f%%" % (n, analysis.npcr(cipher, c2, i)) for i, n in enumerate("RGB")]
    print(f"byte {pos:6d}: NPCR", ", ".join(per), "| whole %.1f%%" % analysis.npcr(cipher, c2))

# %%
print("cipher chi-square vs uniform:", {k: round(v) for k, v in report.chi_square["cipher"].items()})
print("PSNR dB:", {k: v["db"] for k, v in report.to_dict()["psnr"].items()})
