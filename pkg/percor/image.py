"""8-bit RGB images and texel lookup."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Image:
    """``pixels`` has shape (height, width, 3) and dtype uint8; row 0 is the top."""

    pixels: np.ndarray

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels)
        if self.pixels.ndim != 3 or self.pixels.shape[2] != 3:
            raise ValueError(f"expected (height, width, 3) pixels, got shape {self.pixels.shape}")
        if self.pixels.dtype != np.uint8:
            self.pixels = np.clip(np.rint(self.pixels), 0, 255).astype(np.uint8)

    @classmethod
    def blank(cls, width: int, height: int, color=(0, 0, 0)) -> "Image":
        pixels = np.empty((height, width, 3), dtype=np.uint8)
        pixels[:, :] = color
        return cls(pixels)

    @classmethod
    def from_float(cls, rgb: np.ndarray) -> "Image":
        """From channel values in [0, 1]."""
        return cls(np.clip(np.rint(np.asarray(rgb, dtype=float) * 255.0), 0, 255).astype(np.uint8))

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    def as_float(self) -> np.ndarray:
        return self.pixels.astype(float) / 255.0

    def texel(self, u, v) -> np.ndarray:
        """Nearest texel at (u, v) in [0, 1]^2 with clamped addressing, as floats in [0, 1]."""
        tx = np.clip(np.floor(np.asarray(u, dtype=float) * self.width), 0, self.width - 1).astype(int)
        ty = np.clip(np.floor(np.asarray(v, dtype=float) * self.height), 0, self.height - 1).astype(int)
        return self.pixels[ty, tx].astype(float) / 255.0

    def diff(self, other: "Image") -> "Image":
        """Per-channel absolute difference."""
        if self.pixels.shape != other.pixels.shape:
            raise ValueError("images differ in size")
        return Image(np.abs(self.pixels.astype(int) - other.pixels.astype(int)).astype(np.uint8))

    def count_different(self, other: "Image") -> int:
        return int(np.any(self.pixels != other.pixels, axis=2).sum())


def checker(size: int, tiles: int, dark=(32, 32, 32), light=(224, 224, 224)) -> Image:
    """``size`` x ``size`` checkerboard with ``tiles`` squares per side."""
    if size <= 0 or tiles <= 0:
        raise ValueError("checker size and tile count must be positive")
    idx = (np.arange(size) * tiles) // size
    mask = (idx[:, None] + idx[None, :]) % 2 == 1
    pixels = np.empty((size, size, 3), dtype=np.uint8)
    pixels[~mask] = light
    pixels[mask] = dark
    return Image(pixels)
