import click

from ..controllers.scenario_controller import catalog, run
from . import _float_list, data_options, emit, key_values


@click.command("scenario")
@click.argument("name")
@data_options
@click.option("--L", "L", type=float, default=None, help="Grid half-width.")
@click.option("--n", "n", type=int, default=None, help="Samples per axis.")
@click.option("--fd-step", type=float, default=None)
@click.option("--param", "params", multiple=True, help="Scenario parameter KEY=VALUE, e.g. C=4.")
@click.option("--tol", "tolerances", multiple=True, help="Check tolerance ID=VALUE.")
@click.option("--radii", callback=_float_list, default=None, help="Comma-separated square half-widths.")
@click.option("--output", "outputs", multiple=True, help="KIND:PATH with KIND in csv, obj, json.")
@click.pass_context
def scenario(ctx, name, fields, config_path, L, n, fd_step, params, tolerances, radii, outputs):
    """Run a catalog scenario and print its report."""
    data = {k: v for k, v in fields.items() if v is not None}
    grid = {k: v for k, v in (("L", L), ("n", n)) if v is not None}
    overrides = {
        "data": data or None,
        "grid": grid or None,
        "fd_step": fd_step,
        "params": key_values(params, "--param") or None,
        "tolerances": key_values(tolerances, "--tol") or None,
        "radii": radii,
        "seed": ctx.obj.get("seed"),
        "outputs": _outputs(outputs) or None,
    }
    emit(*run(name, config_path, overrides, ctx.obj.get("output_dir")))


def _outputs(specs):
    out = []
    for spec in specs:
        kind, sep, path = spec.partition(":")
        if not sep or not path:
            raise click.BadParameter(f"expected KIND:PATH, got {spec!r}", param_hint="--output")
        out.append({"kind": kind, "path": path})
    return out


@click.command("list")
def list_scenarios():
    """List the scenario catalog."""
    emit(*catalog())
