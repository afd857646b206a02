import click

from .config import Config
from .extensions import init_logging, pool


def create_app():
    """Build the `stationary-lab` command group with every command registered."""
    init_logging(Config.LOG_LEVEL)
    pool.configure(Config.THREADS)

    @click.group(name="stationary-lab")
    @click.option("--threads", type=int, default=None, help="Worker threads for grid sweeps.")
    @click.option("--seed", type=int, default=None, help="Seed of randomized sample sets.")
    @click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
                  default=None)
    @click.option("--output-dir", type=click.Path(file_okay=False), default=None)
    @click.pass_context
    def cli(ctx, threads, seed, log_level, output_dir):
        if log_level:
            init_logging(log_level)
        pool.configure(threads if threads is not None else Config.THREADS)
        ctx.obj = {"seed": seed, "output_dir": output_dir or Config.OUTPUT_DIR}

    # Import and register commands
    from .routes.analysis_routes import classify, curvature, total_curvature, verify, w_stats
    from .routes.export_routes import export
    from .routes.scenario_routes import list_scenarios, scenario

    for command in (scenario, list_scenarios, classify, w_stats, verify, curvature, total_curvature, export):
        cli.add_command(command)

    return cli
