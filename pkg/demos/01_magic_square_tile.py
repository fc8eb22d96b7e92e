# %% [markdown]
# # Scrambling a tile with a magic square
#
# The permutation stage builds an odd-order magic square with the Siamese
# walk, then moves the pixel with row-major index v to the cell where the
# square holds v.

# %%
import numpy as np

from magicsquare_cipher.permutation import scramble_tile, siamese_square, unscramble_tile

sq = siamese_square(5)
print(sq)
print("row sums", sq.sum(axis=1), "column sums", sq.sum(axis=0))
print("diagonals", np.trace(sq), np.trace(sq[:, ::-1]))

# %% [markdown]
# A 5x5 tile of pixel values. Pixel 1 (value 12) lands where the square
# holds 1, top row middle; pixel 2 (value 242) lands where it holds 2.

# %%
tile = np.array([
    [12, 242, 130, 55, 99],
    [167, 203, 57, 17, 226],
    [65, 69, 6, 77, 133],
    [219, 245, 101, 45, 77],
    [3, 18, 55, 201, 55],
], dtype=np.uint8)

out = scramble_tile(tile, sq)
print(out)
print("restored:", np.array_equal(unscramble_tile(out, sq), tile))

# %% [markdown]
# The multiset of values never changes, which is why the permutation alone
# leaves histograms untouched.

# %%
print(sorted(out.ravel()) == sorted(tile.ravel()))
