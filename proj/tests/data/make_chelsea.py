"""Regenerates chelsea_256.pgm from scikit-image's bundled (public domain) "chelsea" photo."""
import numpy as np
from skimage import color, data, transform

img = color.rgb2gray(data.chelsea())
h = min(img.shape)
off = (img.shape[1] - h) // 2
img = transform.resize(img[:h, off:off + h], (256, 256), anti_aliasing=True)
img = np.round((img - img.min()) / (img.max() - img.min()) * 255).astype(np.uint8)
with open("chelsea_256.pgm", "wb") as f:
    f.write(b"P5\n256 256\n255\n")
    f.write(img.tobytes())
