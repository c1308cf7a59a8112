import sys
import contextlib

import click
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

from sparsedetect import output
from sparsedetect.errors import DomainError, ResourceLimitError
from sparsedetect.designs import FAMILY_ALIASES, DESIGN_FAMILIES
from sparsedetect.lowerbound import PRIORS
from sparsedetect.tests import TEST_RULES, TEST_ALIASES

LOGLEVELS = ['trace', 'debug', 'info', 'warning', 'error', 'critical']
DESIGNS = sorted(FAMILY_ALIASES) + sorted(DESIGN_FAMILIES)
TESTS = sorted(TEST_RULES) + sorted(TEST_ALIASES)


def _load_config(ctx, param, value):
    """Eager callback: read a flat YAML mapping into the command's default map"""
    if value is None:
        return value

    try:
        with open(value, 'r') as f:
            content = YAML(typ='safe').load(f)
    except (OSError, YAMLError) as exc:
        raise click.BadParameter('cannot read config file: {}'.format(exc), ctx=ctx, param=param)

    if content is None:
        content = {}
    if not isinstance(content, dict):
        raise click.BadParameter('config file must hold a flat key: value mapping', ctx=ctx, param=param)

    # keys are option names, e.g. 'test' for --test or 'noise_sigma' for --noise-sigma
    known = {}
    for p in ctx.command.params:
        for opt in p.opts:
            known[opt.lstrip('-').replace('-', '_')] = p.name
    known.pop('config', None)

    defaults = {}
    for key, val in content.items():
        name = known.get(str(key).replace('-', '_'))
        if name is None:
            raise click.BadParameter('unknown key {!r} in config file'.format(key), ctx=ctx, param=param)
        defaults[name] = val

    ctx.default_map = dict(ctx.default_map or {}, **defaults)
    return value


def config_option(func):
    return click.option(
        '--config', type=click.Path(exists=True, dir_okay=False), default=None,
        is_eager=True, expose_value=False, callback=_load_config,
        help='YAML file with option values (flags given on the command line take precedence)'
    )(func)


def size_options(func):
    options = [
        click.option('--n', type=click.IntRange(min=1), default=100, show_default=True,
                     help='Number of observations'),
        click.option('--p', type=click.IntRange(min=1), default=100, show_default=True,
                     help='Number of regressors'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def sparsity_options(func):
    options = [
        click.option('--k', type=int, default=None, help='Number of nonzero coefficients'),
        click.option('--beta', type=float, default=None, help='Sparsity index, k = round(p^(1 - beta))'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def signal_options(func):
    options = [
        click.option('--r', type=float, default=None, help='Separation radius'),
        click.option('--x', type=float, default=None,
                     help='Rescaled intensity, r = x sqrt(k log(p) / n)'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def noise_options(func):
    options = [
        click.option('--sigma', 'sigma_mode', type=click.Choice(['known', 'unknown']), default='known',
                     show_default=True, help='Whether the noise level is known to the tests'),
        click.option('--sigma-unknown', is_flag=True, default=False,
                     help='Same as --sigma unknown'),
        click.option('--noise-sigma', type=float, default=1., show_default=True,
                     help='Standard deviation of the noise'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def design_option(func):
    return click.option(
        '--design', type=click.Choice(DESIGNS), default='gaussian', show_default=True,
        help='Distribution of the design entries'
    )(func)


def test_options(func):
    options = [
        click.option('--test', 'test_name', type=click.Choice(TESTS), default='psi_hc', show_default=True,
                     help='Decision rule'),
        click.option('--alpha', type=float, default=0.05, show_default=True, help='Nominal level'),
        click.option('--a', type=float, default=0.1, show_default=True,
                     help='Margin a of the HC threshold (1 + a) sqrt(2 log log p)'),
        click.option('--cutoff', type=float, default=0.5, show_default=True,
                     help='Largest p-value entering the HC maximum'),
        click.option('--t-np', type=float, default=None,
                     help='Threshold of psi0_T (default sqrt(n) r^2 / 2)'),
        click.option('--u', type=float, default=None, help='Multiplier of the L(u) statistic'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def run_options(func):
    options = [
        click.option('--reps', type=click.IntRange(min=1), default=1000, show_default=True,
                     help='Replications per hypothesis'),
        click.option('--seed', type=click.IntRange(min=0), default=0, show_default=True,
                     help='Base seed of the random streams'),
        click.option('--threads', type=click.IntRange(min=1), default=None,
                     help='Worker threads (default: runtime setting num_threads)'),
        click.option('--sign-pattern', type=click.Choice(['random', 'positive']), default='random',
                     show_default=True, help='Signs of the alternative coefficients'),
        click.option('--fixed-signal', is_flag=True, default=False,
                     help='Use one alternative per cell instead of a fresh one per replication'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def output_options(func):
    options = [
        click.option('--out', type=click.Path(dir_okay=False, writable=True), default=None,
                     help='Write results to FILE instead of standard output'),
        click.option('--json', 'as_json', is_flag=True, default=False,
                     help='Emit JSON instead of the default format'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def prior_options(func):
    options = [
        click.option('--prior', type=click.Choice(PRIORS), default='three_point', show_default=True,
                     help='Least-favorable prior of the oracle'),
        click.option('--c', type=float, default=0.9, show_default=True,
                     help='Prior constant c in (0, 1)'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def problem_settings(kwargs):
    """Pop the problem options from the parsed command arguments"""
    sigma_mode = kwargs.pop('sigma_mode', 'known')
    sigma_unknown = kwargs.pop('sigma_unknown', False)
    variance_known = sigma_mode == 'known' and not sigma_unknown
    settings = dict(
        n=kwargs.pop('n'), p=kwargs.pop('p'), k=kwargs.pop('k', None), beta=kwargs.pop('beta', None),
        r=kwargs.pop('r', None), x=kwargs.pop('x', None),
        sigma=kwargs.pop('noise_sigma', 1.), variance_known=variance_known,
        design=kwargs.pop('design', 'gaussian_iid'),
        sign_pattern=kwargs.pop('sign_pattern', 'random'),
        fixed_signal=kwargs.pop('fixed_signal', False),
        seed=kwargs.pop('seed', 0),
    )
    return settings


def test_settings(kwargs):
    return dict(
        name=kwargs.pop('test_name'), alpha=kwargs.pop('alpha'), a=kwargs.pop('a'),
        cutoff=kwargs.pop('cutoff'), t_np=kwargs.pop('t_np'), u=kwargs.pop('u'),
    )


def parse_float_list(text, name):
    try:
        return [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise click.BadParameter('{} must be a comma-separated list of numbers (got {!r})'.format(name, text))


@contextlib.contextmanager
def domain_errors():
    """Turn library precondition errors into usage errors (exit code 2)"""
    try:
        yield
    except (DomainError, ResourceLimitError) as exc:
        raise click.UsageError(str(exc))


@contextlib.contextmanager
def output_stream(path):
    if path is None:
        yield sys.stdout
        return
    with open(path, 'w', newline='') as f:
        yield f


def write_results(results, out, as_json, manifest, extra_fields=()):
    """CSV (or JSON) results; CSV files get their manifest written alongside"""
    manifest = manifest.finish()
    with output_stream(out) as stream:
        if as_json:
            output.write_json(dict(results=list(results), manifest=manifest.as_dict()), stream)
        else:
            output.write_csv(results, stream, extra_fields=extra_fields)

    if out is not None and not as_json:
        output.write_manifest(manifest, out)
