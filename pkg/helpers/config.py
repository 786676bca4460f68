"""Scene files: parsing, serializing and texture lookup.

The grammar is documented in docs/scene-format.md. In short: ``key = value``
lines, ``#`` comments, and repeated ``[quad]`` / ``[triangle]`` blocks whose
vertex lists separate vertices with ``;``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Union

from percor.errors import ConfigParse, MissingTexture
from percor.image import Image, checker
from helpers.ppm import read_ppm

SHADINGS = ("flat", "gouraud", "linear", "normals")
SHAPE_KINDS = {"quad": 4, "triangle": 3}
AUTO = "auto"


@dataclass(frozen=True)
class ShapeConfig:
    kind: str
    vertices: tuple[tuple[float, float, float], ...]
    uvs: tuple[tuple[float, float], ...]
    colors: tuple[tuple[float, float, float], ...]
    normals: tuple[tuple[float, float, float], ...]


@dataclass(frozen=True)
class SceneConfig:
    width: int = 256
    height: int = 256
    frustum: tuple[float, float, float, float, float, float] = (-1.0, 1.0, -1.0, 1.0, 1.0, 100.0)
    texture: str = "checker:256:8"
    background: tuple[int, int, int] = (0, 0, 0)
    method: str = "exact"
    du: float = 1.0 / 256
    x_int: float | None = None
    eps: float = 1e-3
    dt0: float | None = None
    aniso: int = 0
    shading: str = "flat"
    shapes: tuple[ShapeConfig, ...] = field(default_factory=tuple)


class _Reader:
    def __init__(self, path: str | None):
        self.path = path
        self.line = 0

    def error(self, message: str) -> ConfigParse:
        return ConfigParse(message, self.path, self.line)

    def numbers(self, value: str, count: int | None = None) -> tuple[float, ...]:
        try:
            out = tuple(float(v) for v in value.split())
        except ValueError:
            raise self.error(f"expected numbers, got {value!r}") from None
        if count is not None and len(out) != count:
            raise self.error(f"expected {count} numbers, got {len(out)}")
        return out

    def number(self, value: str) -> float:
        return self.numbers(value, 1)[0]

    def optional(self, value: str) -> float | None:
        return None if value == AUTO else self.number(value)

    def integer(self, value: str) -> int:
        try:
            return int(value)
        except ValueError:
            raise self.error(f"expected an integer, got {value!r}") from None

    def vectors(self, value: str, size: int, count: int) -> tuple[tuple[float, ...], ...]:
        parts = [p for p in value.split(";") if p.strip()]
        if len(parts) != count:
            raise self.error(f"expected {count} entries separated by ';', got {len(parts)}")
        return tuple(self.numbers(p, size) for p in parts)


def _finish_shape(reader: _Reader, kind: str, values: dict[str, str], start: int) -> ShapeConfig:
    count = SHAPE_KINDS[kind]
    reader.line = start
    if "vertices" not in values:
        raise reader.error(f"[{kind}] block has no vertices")
    if "uvs" not in values:
        raise reader.error(f"[{kind}] block has no uvs")
    reader.line = values.get("@vertices", start)
    vertices = reader.vectors(values["vertices"], 3, count)
    reader.line = values.get("@uvs", start)
    uvs = reader.vectors(values["uvs"], 2, count)
    colors = ((1.0, 1.0, 1.0),) * count
    normals = ((0.0, 0.0, 1.0),) * count
    if "colors" in values:
        reader.line = values["@colors"]
        colors = reader.vectors(values["colors"], 3, count)
    if "normals" in values:
        reader.line = values["@normals"]
        normals = reader.vectors(values["normals"], 3, count)
    return ShapeConfig(kind, vertices, uvs, colors, normals)


SHAPE_KEYS = ("vertices", "uvs", "colors", "normals")


def parse_scene(text: str, path: str | None = None) -> SceneConfig:
    reader = _Reader(path)
    scene = SceneConfig()
    shapes: list[ShapeConfig] = []
    block: tuple[str, int] | None = None
    values: dict = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        reader.line = number
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]") or line[1:-1].strip() not in SHAPE_KINDS:
                raise reader.error(f"unknown section {line!r}; expected [quad] or [triangle]")
            if block is not None:
                shapes.append(_finish_shape(reader, block[0], values, block[1]))
                reader.line = number
            block = (line[1:-1].strip(), number)
            values = {}
            continue
        if "=" not in line:
            raise reader.error(f"expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))

        if block is not None:
            if key not in SHAPE_KEYS:
                raise reader.error(f"unknown key {key!r} in [{block[0]}]")
            values[key] = value
            values[f"@{key}"] = number
            continue

        if key == "width":
            scene = replace(scene, width=reader.integer(value))
        elif key == "height":
            scene = replace(scene, height=reader.integer(value))
        elif key == "frustum":
            scene = replace(scene, frustum=reader.numbers(value, 6))
        elif key == "texture":
            scene = replace(scene, texture=value)
        elif key == "background":
            scene = replace(scene, background=tuple(int(v) for v in reader.numbers(value, 3)))
        elif key == "method":
            scene = replace(scene, method=value)
        elif key == "du":
            scene = replace(scene, du=reader.number(value))
        elif key == "x_int":
            scene = replace(scene, x_int=reader.optional(value))
        elif key == "eps":
            scene = replace(scene, eps=reader.number(value))
        elif key == "dt0":
            scene = replace(scene, dt0=reader.optional(value))
        elif key == "aniso":
            scene = replace(scene, aniso=reader.integer(value))
        elif key == "shading":
            if value not in SHADINGS:
                raise reader.error(f"unknown shading {value!r}; expected one of {', '.join(SHADINGS)}")
            scene = replace(scene, shading=value)
        else:
            raise reader.error(f"unknown key {key!r}")

    if block is not None:
        shapes.append(_finish_shape(reader, block[0], values, block[1]))
    if scene.width <= 0 or scene.height <= 0:
        raise ConfigParse(f"image size must be positive, got {scene.width}x{scene.height}", path)
    return replace(scene, shapes=tuple(shapes))


def _fmt(values) -> str:
    return " ".join(repr(float(v)) for v in values)


def _fmt_list(rows) -> str:
    return "; ".join(_fmt(row) for row in rows)


def dumps(scene: SceneConfig) -> str:
    """Text that parses back to ``scene``."""
    lines = [
        f"width = {scene.width}",
        f"height = {scene.height}",
        f"frustum = {_fmt(scene.frustum)}",
        f"texture = {scene.texture}",
        f"background = {' '.join(str(int(c)) for c in scene.background)}",
        f"method = {scene.method}",
        f"du = {scene.du!r}",
        f"x_int = {AUTO if scene.x_int is None else repr(scene.x_int)}",
        f"eps = {scene.eps!r}",
        f"dt0 = {AUTO if scene.dt0 is None else repr(scene.dt0)}",
        f"aniso = {scene.aniso}",
        f"shading = {scene.shading}",
    ]
    for shape in scene.shapes:
        lines += [
            "",
            f"[{shape.kind}]",
            f"vertices = {_fmt_list(shape.vertices)}",
            f"uvs = {_fmt_list(shape.uvs)}",
            f"colors = {_fmt_list(shape.colors)}",
            f"normals = {_fmt_list(shape.normals)}",
        ]
    return "\n".join(lines) + "\n"


def load_scene(path: Union[str, Path]) -> SceneConfig:
    """Parse a scene file and check that the texture it names exists."""
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise ConfigParse("scene file not found", str(path)) from None
    scene = parse_scene(text, str(path))
    if not scene.texture.startswith("checker:"):
        texture = texture_path(scene, path.parent)
        if not texture.is_file():
            raise MissingTexture(f"texture {scene.texture!r} not found (looked for {texture})")
    return scene


def texture_path(scene: SceneConfig, base_dir: Union[str, Path]) -> Path:
    texture = Path(scene.texture)
    return texture if texture.is_absolute() else Path(base_dir) / texture


def load_texture(scene: SceneConfig, base_dir: Union[str, Path] = ".") -> Image:
    if scene.texture.startswith("checker:"):
        parts = scene.texture.split(":")
        try:
            return checker(int(parts[1]), int(parts[2]))
        except (IndexError, ValueError):
            raise ConfigParse(f"procedural texture must read checker:<size>:<tiles>, got {scene.texture!r}") from None
    path = texture_path(scene, base_dir)
    if not path.is_file():
        raise MissingTexture(f"texture {scene.texture!r} not found (looked for {path})")
    return read_ppm(path)
