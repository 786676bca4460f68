from pathlib import Path

import numpy as np
from rich import print as rprint

from helpers.config import SceneConfig, ShapeConfig, load_texture
from helpers.ppm import write_ppm
from percor.geometry import Frustum, Viewport, WorldPoint, project
from percor.image import Image
from percor.methods import MethodParams, get_method
from percor.primitives import ScreenTriangle, Vertex, edge
from percor.raster.aniso import aniso_footprint, aniso_sample
from percor.texmap.projective import ProjectiveTexMap, derive_from_quad, map_from_triangle

# light direction for the "normals" shading, in the scene's depth convention
LIGHT = np.array([0.0, 0.0, 1.0])


def method_params(scene: SceneConfig) -> MethodParams:
    return MethodParams(du=scene.du, x_int=scene.x_int, eps=scene.eps, dt0=scene.dt0)


class RenderService:
    """Projects scene shapes and draws them with a chosen texture-coordinate method"""

    @staticmethod
    def project_shape(scene: SceneConfig, shape: ShapeConfig) -> tuple[np.ndarray, np.ndarray]:
        """Screen positions (n, 2) and world depths (n,) of a shape's vertices."""
        frustum = Frustum(*scene.frustum)
        viewport = Viewport(0.0, float(scene.width), 0.0, float(scene.height))
        screen = [project(WorldPoint(*v), frustum, viewport) for v in shape.vertices]
        xy = np.array([(p.x, p.y) for p in screen])
        depths = np.array([v[2] for v in shape.vertices], dtype=float)
        return xy, depths

    @staticmethod
    def shape_triangles(scene: SceneConfig, shape: ShapeConfig) -> tuple[ProjectiveTexMap, list[ScreenTriangle]]:
        """The shape's texture map and the screen triangles that cover it."""
        xy, depths = RenderService.project_shape(scene, shape)
        vertices = [
            Vertex(float(x), float(y), float(z), color=c, normal=n, uv=uv)
            for (x, y), z, c, n, uv in zip(xy, depths, shape.colors, shape.normals, shape.uvs)
        ]
        if shape.kind == "quad":
            m = derive_from_quad(xy, shape.uvs)
            a, b, c, d = vertices
            return m, [ScreenTriangle((a, b, c)), ScreenTriangle((a, c, d))]
        return map_from_triangle(xy, depths, shape.uvs), [ScreenTriangle(tuple(vertices))]

    @staticmethod
    def _shade(tri: ScreenTriangle, xs: np.ndarray, ys: np.ndarray, shading: str) -> np.ndarray:
        """Per-pixel rgb factor from screen barycentrics."""
        a, b, c = tri.vertices
        area = edge(a.x, a.y, b.x, b.y, c.x, c.y)
        lam = np.stack(
            [
                edge(b.x, b.y, c.x, c.y, xs, ys) / area,
                edge(c.x, c.y, a.x, a.y, xs, ys) / area,
                edge(a.x, a.y, b.x, b.y, xs, ys) / area,
            ],
            axis=1,
        )
        inv_z = lam @ (1.0 / tri.depths())
        depth = 1.0 / inv_z
        # perspective-correct weights: lam_i / z_i renormalized
        weights = lam / tri.depths() * depth[:, None]
        colors = np.array([v.color for v in tri.vertices])
        if shading == "flat":
            factor = np.ones((xs.size, 3))
        elif shading == "gouraud":
            factor = weights @ colors
        elif shading == "linear":
            factor = lam @ colors
        else:
            normals = weights @ np.array([v.normal for v in tri.vertices])
            length = np.linalg.norm(normals, axis=1, keepdims=True)
            normals = normals / np.where(length > 0.0, length, 1.0)
            factor = np.repeat(np.clip(normals @ LIGHT, 0.0, 1.0)[:, None], 3, axis=1) * (weights @ colors)
        return np.clip(factor, 0.0, 1.0)

    @staticmethod
    def render(
        scene: SceneConfig,
        base_dir: str | Path = ".",
        method: str | None = None,
        shading: str | None = None,
        aniso: int | None = None,
    ) -> Image:
        """Draw the shapes of ``scene`` in order; a later shape paints over an earlier one."""
        uv_method = get_method(method or scene.method)
        shading = shading or scene.shading
        aniso = scene.aniso if aniso is None else aniso
        params = method_params(scene)
        texture = load_texture(scene, base_dir)

        frame = np.empty((scene.height, scene.width, 3))
        frame[:, :] = np.asarray(scene.background, dtype=float) / 255.0

        for shape in scene.shapes:
            m, triangles = RenderService.shape_triangles(scene, shape)
            for tri in triangles:
                xs, ys, us, vs = uv_method.run(m, tri, params)
                keep = (xs >= 0) & (xs < scene.width) & (ys >= 0) & (ys < scene.height)
                xs, ys, us, vs = xs[keep], ys[keep], us[keep], vs[keep]
                if xs.size == 0:
                    continue
                factor = RenderService._shade(tri, xs, ys, shading)
                if aniso > 0:
                    texels = np.array(
                        [
                            aniso_sample(texture, aniso_footprint(m, x, y), (u, v), aniso)
                            for x, y, u, v in zip(xs, ys, us, vs)
                        ]
                    )
                else:
                    texels = texture.texel(us, vs)
                cols, rows = xs.astype(int), ys.astype(int)
                frame[rows, cols] = texels * factor
        return Image.from_float(frame)

    @staticmethod
    def render_to_file(scene: SceneConfig, out: str | Path, base_dir: str | Path = ".", **options) -> Image:
        image = RenderService.render(scene, base_dir, **options)
        write_ppm(out, image)
        rprint(f"[bold green]✅ Wrote {image.width}x{image.height} image to {out}[/bold green]")
        return image
