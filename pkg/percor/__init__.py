"""Perspective-correct shading and texturing methods for a CPU rasterizer."""

__version__ = "0.1.0"
