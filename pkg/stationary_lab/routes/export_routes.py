import click

from ..controllers.export_controller import export as export_samples
from . import data_options, emit


@click.command("export")
@data_options
@click.option("--kind", type=click.Choice(["csv", "obj"]), required=True)
@click.option("--path", required=True, help="Relative paths land under <output-dir>/export/.")
@click.option("--L", "L", type=float, default=1.0, show_default=True)
@click.option("--n", "n", type=int, default=21, show_default=True)
@click.option("--coords", default="0,1,2", show_default=True, help="Three ambient coordinates for OBJ.")
@click.pass_context
def export(ctx, fields, config_path, kind, path, L, n, coords):
    """Write a CSV sample table or an OBJ mesh."""
    try:
        picked = [int(c) for c in coords.split(",")]
    except ValueError:
        raise click.BadParameter("expected comma-separated integers", param_hint="--coords")
    emit(*export_samples(fields, kind, path, L, n, picked, config_path, ctx.obj.get("output_dir")))
