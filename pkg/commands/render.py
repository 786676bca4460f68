from pathlib import Path

import click

from helpers.config import SHADINGS, load_scene
from helpers.exits import fail
from percor.errors import PercorError
from percor.methods import get_method
from services.render import RenderService


def register_render_commands(cli):
    """Register the render command with the CLI"""

    @cli.command()
    @click.argument("config")
    @click.option("--method", "-m", help="Texture-coordinate method (defaults to the scene's)")
    @click.option("--out", "-o", required=True, help="Output P6 PPM path")
    @click.option("--shading", type=click.Choice(SHADINGS), help="Shading model (defaults to the scene's)")
    @click.option("--aniso", type=click.IntRange(min=0), help="Anisotropic samples per axis, 0 for nearest texel")
    def render(config, method, out, shading, aniso):
        """Render a scene file to a PPM image.

        Examples:
          - render scenes/tilted.scene --out tilted.ppm
          - render scenes/tilted.scene --method affine --out swim.ppm
          - render scenes/shaded.scene --shading normals --aniso 4 --out lit.ppm
        """
        try:
            if method:
                get_method(method)
            scene = load_scene(config)
            RenderService.render_to_file(
                scene,
                out,
                Path(config).parent,
                method=method,
                shading=shading,
                aniso=aniso,
            )
        except (PercorError, OSError) as error:
            fail(error)

    return render
