"""Console script for simplicial_contextuality."""

import logging
import logging.config
import os
import sys

import click
import yaml

from simplicial_contextuality.analysis_config import FORMATS, LAYOUTS, AnalysisConfig
from simplicial_contextuality.commands import EXIT_OK, Command, Verb, run
from simplicial_contextuality.exceptions import ContextualityError
from simplicial_contextuality.local_config import LOGGING_CFG
from simplicial_contextuality.semiring import SEMIRINGS

log = logging.getLogger()


def setup_logging(verbose: bool = False):
    if os.path.exists(LOGGING_CFG):
        with open(LOGGING_CFG, 'rt') as f:
            logging.config.dictConfig(yaml.safe_load(f.read()))
    else:
        logging.basicConfig(level=logging.INFO)
        formatter = logging.Formatter(fmt='%(asctime)s %(levelname)-8s %(message)s', datefmt='%Y-%m-%d %H:%M:%S')
        screen_handler = logging.StreamHandler(stream=sys.stderr)
        screen_handler.setFormatter(formatter)
        log.addHandler(screen_handler)
    if verbose:
        logging.getLogger('simplicial_contextuality').setLevel(logging.DEBUG)


def common_options(fn):
    options = [
        click.option('-c', '--config', type=click.Path(exists=True), help="path to an analysis toml file."),
        click.option('-s', '--semiring', type=click.Choice(sorted(SEMIRINGS)), help="override the model semiring."),
        click.option('-f', '--format', 'fmt', type=click.Choice(FORMATS), help="output format."),
        click.option('--cap', type=int, help="vertex enumeration variable cap."),
        click.option('-w', '--num-workers', type=int, help="vertex enumeration workers."),
        click.option('--float', 'show_float', is_flag=True, help="add decimal approximations."),
        click.option('-o', '--out', type=click.Path(), help="write the output to this file."),
        click.option('-v', '--verbose', is_flag=True),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _execute(verb, inputs, config, semiring, fmt, cap, num_workers, show_float, out, verbose, **extra):
    setup_logging(verbose)
    try:
        conf = AnalysisConfig(config)
    except ContextualityError as err:
        raise click.UsageError(str(err))
    if verbose and config:
        click.echo(f"using settings in {config}", err=True)

    cmd = Command(
        verb,
        list(inputs),
        format=fmt or conf.format,
        semiring=semiring or conf.semiring,
        cap=cap or conf.cap,
        num_workers=num_workers or conf.num_workers,
        show_float=show_float or conf.float,
        layout=extra.get('layout') or conf.layout,
        labels=extra.get('labels'),
        space=extra.get('space'),
    )
    report = run(cmd)
    if report.exit_code != EXIT_OK and 'error' in report.data:
        click.echo(f"Error: {report.text}", err=True)
        sys.exit(report.exit_code)
    if out:
        with open(out, 'w') as f:
            f.write(report.output + '\n')
        click.echo(f"wrote {out}", err=True)
    else:
        click.echo(report.output)
    sys.exit(report.exit_code)


@click.group()
def scx():
    """Contextuality analysis of simplicial distributions."""
    pass


def _model_verb(verb: Verb, help_text: str, nargs: int = 1):
    @scx.command(name=verb.value, help=help_text)
    @click.argument('inputs', nargs=nargs, type=click.Path(exists=True))
    @common_options
    def command(inputs, **kwargs):
        _execute(verb, inputs if nargs != 1 else [inputs], **kwargs)

    command.__name__ = f"cli_{verb.name.lower()}"
    return command


_model_verb(Verb.VALIDATE, 'validate a model or empirical model file')
_model_verb(Verb.CHECK, 'decide noncontextuality, with a witness when noncontextual')
_model_verb(Verb.CF, 'compute the contextual fraction')
_model_verb(Verb.STRONG, 'decide strong contextuality')
_model_verb(Verb.WI, 'decide weak invertibility, with a witness over the units')
_model_verb(Verb.IF, 'compute the invertible fraction')
_model_verb(Verb.MULT, 'multiply two models in their convex monoid', nargs=2)
_model_verb(Verb.INVERSE, 'invert a model in its convex monoid')
_model_verb(Verb.CHSH, 'CHSH correlators and inequalities for a model on the CHSH cone')
_model_verb(Verb.HOMOTOPY, 'distribution homotopies between two deterministic labellings')
_model_verb(Verb.GLUE, 'glue two models along a shared subspace')


@scx.command(name='isupp', help='the invertible support, or membership of one map with --map')
@click.argument('model', type=click.Path(exists=True))
@click.option('-m', '--map', 'labels', help="labels of a deterministic map, e.g. x0=0,x1=1.")
@common_options
def cli_isupp(model, labels, **kwargs):
    _execute(Verb.ISUPP, [model], labels=labels, **kwargs)


@scx.command(name='realize', help='convert an empirical model file into a simplicial distribution')
@click.argument('model', type=click.Path(exists=True))
@click.option('-l', '--layout', type=click.Choice(LAYOUTS))
@common_options
def cli_realize(model, layout, **kwargs):
    _execute(Verb.REALIZE, [model], layout=layout, **kwargs)


@scx.command(name='vertices', help='vertices of the polytope of a scenario file or standard space')
@click.argument('scenario', required=False, type=click.Path(exists=True))
@click.option('--space', help="a standard space name, see `scx spaces`.")
@common_options
def cli_vertices(scenario, space, **kwargs):
    _execute(Verb.VERTICES, [scenario] if scenario else [], space=space, **kwargs)


@scx.command(name='spaces', help='list the standard spaces')
@common_options
def cli_spaces(**kwargs):
    _execute(Verb.SPACES, [], **kwargs)


if __name__ == "__main__":
    scx()  # pragma: no cover
