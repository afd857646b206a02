import click

from ..controllers import analysis_controller
from . import _float_list, data_options, emit


@click.command("classify")
@data_options
def classify(fields, config_path):
    """Trichotomy case and area-increasing verdict of the data."""
    emit(*analysis_controller.classify(fields, config_path))


@click.command("w-stats")
@data_options
@click.option("--L", "L", type=float, default=20.0, show_default=True)
@click.option("--n", "n", type=int, default=401, show_default=True)
def w_stats(fields, config_path, L, n):
    """Empirical range of W on a grid against the closed form."""
    emit(*analysis_controller.w_stats(fields, L, n, config_path))


@click.command("verify")
@data_options
@click.option("--component", "components", multiple=True,
              help="Graph component in x1, x2; repeat for each coordinate. Replaces the data flags.")
@click.option("--L", "L", type=float, default=1.0, show_default=True)
@click.option("--n", "n", type=int, default=5, show_default=True)
@click.option("--h", "h", type=float, default=None, help="Finite-difference step.")
def verify(fields, config_path, components, L, n, h):
    """Stationarity residual of a graph on [-L, L]^2."""
    emit(*analysis_controller.verify(fields, L, n, h, components, config_path))


@click.command("curvature")
@data_options
@click.option("--u1", type=float, default=0.0, show_default=True)
@click.option("--u2", type=float, default=0.0, show_default=True)
@click.option("--h", "h", type=float, default=None, help="Step of the Laplacian oracle.")
def curvature(fields, config_path, u1, u2, h):
    """Gauss and normal curvature at u1 + i u2."""
    emit(*analysis_controller.curvature(fields, u1, u2, h, config_path))


@click.command("total-curvature")
@data_options
@click.option("--radii", callback=_float_list, default="2,4,8,16,32", show_default=True)
@click.option("--tol", type=float, default=None, help="Relative cubature tolerance.")
@click.option("--normal", is_flag=True, help="Integrate |Kperp| instead of |K|.")
def total_curvature(fields, config_path, radii, tol, normal):
    """Partial total curvature over growing parameter squares."""
    emit(*analysis_controller.total_curvature(fields, radii, tol, normal, config_path))
