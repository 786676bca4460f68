"""Binary PPM (P6, maxval 255) reading and writing."""

from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np

from percor.errors import BadMagic, TruncatedData
from percor.image import Image


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """First ``count`` whitespace-separated header tokens and the offset after them.

    Comments run from ``#`` to the end of the line.
    """
    tokens = []
    pos = 0
    while len(tokens) < count:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos >= len(data):
            raise TruncatedData("header ends early")
        if data[pos : pos + 1] == b"#":
            end = data.find(b"\n", pos)
            if end < 0:
                raise TruncatedData("header ends inside a comment")
            pos = end + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def decode_ppm(data: bytes) -> Image:
    if data[:2] != b"P6":
        raise BadMagic(f"expected a binary P6 image, found {data[:2]!r}")
    tokens, pos = _header_tokens(data, 4)
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise BadMagic(f"malformed header: {b' '.join(tokens)!r}") from None
    if maxval != 255:
        raise BadMagic(f"only maxval 255 is supported, found {maxval}")
    if width <= 0 or height <= 0:
        raise BadMagic(f"bad image size {width}x{height}")
    # exactly one whitespace byte separates the header from the raster
    body = data[pos + 1 :]
    expected = width * height * 3
    if len(body) < expected:
        raise TruncatedData(f"expected {expected} bytes of pixels, found {len(body)}")
    pixels = np.frombuffer(body[:expected], dtype=np.uint8).reshape(height, width, 3).copy()
    return Image(pixels)


def encode_ppm(image: Image) -> bytes:
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(image.pixels, dtype=np.uint8).tobytes()


def read_ppm(path: Union[str, Path]) -> Image:
    return decode_ppm(Path(path).read_bytes())


def write_ppm(path: Union[str, Path], image: Image) -> None:
    Path(path).write_bytes(encode_ppm(image))
