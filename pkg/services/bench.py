from pathlib import Path

from rich import print as rprint
from rich.console import Console
from rich.table import Table

from helpers.config import SceneConfig
from helpers.ppm import write_ppm
from percor.analysis import ErrorReport, UvScene, compare_uv_method, write_csv
from services.render import RenderService, method_params

console = Console()


class BenchService:
    """Error and operation-count comparison of texture-coordinate methods on a scene"""

    @staticmethod
    def uv_scenes(scene: SceneConfig) -> list[UvScene]:
        """One comparison scene per shape, named by kind and position."""
        return [
            UvScene(f"{shape.kind}{index}", *RenderService.shape_triangles(scene, shape))
            for index, shape in enumerate(scene.shapes)
        ]

    @staticmethod
    def compare(scene: SceneConfig, methods: list[str]) -> list[ErrorReport]:
        """Measure every method against exact division on every shape.

        Args:
            scene: Parsed scene
            methods: Method names, validated by the registry

        Returns:
            One report per (method, shape) pair, methods outermost
        """
        params = method_params(scene)
        shapes = BenchService.uv_scenes(scene)
        return [
            compare_uv_method(uv_scene, method, du=scene.du, params=params)
            for method in methods
            for uv_scene in shapes
        ]

    @staticmethod
    def print_reports(reports: list[ErrorReport]) -> None:
        table = Table(title="📐 Method Comparison")
        table.add_column("Method", style="cyan", no_wrap=True)
        table.add_column("Shape", style="magenta")
        table.add_column("Pixels", justify="right")
        table.add_column("Max abs", justify="right")
        table.add_column("Max rel", justify="right", style="yellow")
        table.add_column("Mean rel", justify="right")
        table.add_column("Divs", justify="right", style="green")
        table.add_column("Muls", justify="right")
        table.add_column("Adds", justify="right")
        for report in reports:
            ops = report.ops.as_dict()
            table.add_row(
                report.method,
                report.scene,
                str(report.pixels),
                f"{report.max_abs:.3g}",
                f"{report.max_rel:.3%}",
                f"{report.mean_rel:.3%}",
                str(ops["divs"]),
                str(ops["muls"]),
                str(ops["adds"]),
            )
        console.print(table)

    @staticmethod
    def write_diff_images(scene: SceneConfig, methods: list[str], out_dir: str | Path, base_dir: str | Path = ".") -> list[Path]:
        """Write ``<method>-diff.ppm`` per method: its render against the exact one."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        exact = RenderService.render(scene, base_dir, method="exact")
        written = []
        for method in methods:
            image = RenderService.render(scene, base_dir, method=method)
            path = out_dir / f"{method}-diff.ppm"
            write_ppm(path, image.diff(exact))
            rprint(f"🖼️  {method}: {image.count_different(exact)} pixels differ from exact -> {path}")
            written.append(path)
        return written

    @staticmethod
    def run(
        scene: SceneConfig,
        methods: list[str],
        csv_path: str | Path | None = None,
        diff_dir: str | Path | None = None,
        base_dir: str | Path = ".",
    ) -> list[ErrorReport]:
        reports = BenchService.compare(scene, methods)
        BenchService.print_reports(reports)
        if csv_path:
            write_csv(reports, csv_path)
            rprint(f"[bold green]✅ Wrote {len(reports)} reports to {csv_path}[/bold green]")
        if diff_dir:
            BenchService.write_diff_images(scene, methods, diff_dir, base_dir)
        return reports
