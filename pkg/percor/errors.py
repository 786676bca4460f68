"""Exceptions raised by the percor core.

Every error derives from PercorError so the CLI can catch one type and map it
to an exit code.
"""

from __future__ import annotations


class PercorError(Exception):
    """Base class for all lab errors."""


# geometry
class PointBehindCamera(PercorError):
    pass


class OutsideVolume(PercorError):
    pass


class DegenerateViewport(PercorError):
    pass


class InvalidFrustum(PercorError):
    pass


# shade
class InvalidDepth(PercorError):
    pass


class ParallelNormals(PercorError):
    pass


# texmap
class DegenerateQuad(PercorError):
    pass


class BehindProjection(PercorError):
    """The projective denominator g*x + h*y + i is not positive."""


class NonConvergence(PercorError):
    pass


class AnchorOutOfRange(PercorError):
    pass


class CoincidentNodes(PercorError):
    pass


class AffineRow(PercorError):
    """Tangents at the row ends are parallel; use the affine path."""


class SingularSystem(PercorError):
    pass


class ClassMismatch(PercorError):
    pass


# raster
class DegenerateTriangle(PercorError):
    pass


class HorizontalDegeneracy(PercorError):
    """Constant-depth lines are vertical (B = 0); swap axes."""


class SlopeMismatch(PercorError):
    pass


class HDegenerate(PercorError):
    """h = 0: the NRL family degenerates to vertical lines."""


class ZeroVector(PercorError):
    pass


# cli / files
class ConfigParse(PercorError):
    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        self.message = message
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{where}{message}")


class MissingTexture(PercorError):
    pass


class BadMagic(PercorError):
    pass


class TruncatedData(PercorError):
    pass


class UnknownMethod(PercorError):
    pass
