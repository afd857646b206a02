import functools

import click

from ..repositories import SampleRepository


def emit(payload, code):
    """Echo a controller payload as JSON and leave with its exit code."""
    click.echo(SampleRepository.dumps(payload))
    click.get_current_context().exit(code)


def _float_list(ctx, param, value):
    if value is None:
        return None
    try:
        return [float(x) for x in value.split(",") if x.strip()]
    except ValueError:
        raise click.BadParameter("expected comma-separated numbers")


def data_options(fn):
    """--a/--b/--consts/--beta/--m/--family/--v/--config shared by the data-driven commands."""
    options = [
        click.option("--a", "a", type=float, default=None, help="Re c."),
        click.option("--b", "b", type=float, default=None, help="-Im c, must be > 0."),
        click.option("--consts", callback=_float_list, default=None,
                     help="Comma-separated constant components d_1..d_(m-2)."),
        click.option("--beta", default=None, help="Entire function of z, e.g. 'sinh(z)'."),
        click.option("--m", "m", type=int, default=None, help="Codimension, >= 2."),
        click.option("--family", type=click.Choice(["canonical", "lightlike"]), default=None),
        click.option("--v", "v", callback=_float_list, default=None,
                     help="Unit vector of the lightlike family."),
        click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                     help="JSON file with the data fields."),
    ]
    for option in reversed(options):
        fn = option(fn)

    @functools.wraps(fn)
    def wrapper(*args, a, b, consts, beta, m, family, v, **kwargs):
        fields = {"a": a, "b": b, "consts": consts, "beta": beta, "m": m, "family": family, "v": v}
        return fn(*args, fields=fields, **kwargs)

    return wrapper


def key_values(pairs, flag):
    out = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise click.BadParameter(f"expected KEY=VALUE, got {pair!r}", param_hint=flag)
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise click.BadParameter(f"{value!r} is not a number", param_hint=flag)
    return out
