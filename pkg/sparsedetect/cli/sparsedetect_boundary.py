#!/usr/bin/env python

import click

from sparsedetect import settings
from sparsedetect.boundary import classify_regime
from sparsedetect.model import ProblemConfig
from sparsedetect.output import RunManifest, write_json, format_value
from sparsedetect.cli.options import (
    config_option, size_options, sparsity_options, signal_options, noise_options,
    output_options, problem_settings, domain_errors, output_stream
)


def boundary_report(cfg, sharp_threshold=None, unknown_variance_threshold=None, with_signal=False):
    """Detection boundary quantities of a configuration, as a flat mapping"""
    report = classify_regime(cfg, sharp_threshold, unknown_variance_threshold)
    payload = dict(
        n=cfg.n, p=cfg.p, beta=report.beta, k=report.k,
        regime=report.regime,
        rate=report.boundary_rate,
        sharp_constant_applicable=report.sharp_constant_applicable,
        unknown_variance_detectable=report.unknown_variance_detectable,
        ratios=dict(
            sharp_condition=report.sharp_condition_ratio,
            unknown_variance=report.unknown_variance_ratio,
        ),
    )
    if report.phi is not None:
        payload.update(phi=report.phi, sharp_radius=report.sharp_radius)
    if with_signal:
        payload.update(r=cfg.r, x=cfg.x)
    return payload


def _print_table(payload):
    rows = []
    for key, value in payload.items():
        if isinstance(value, dict):
            rows.extend(('{} ratio'.format(sub), val) for sub, val in value.items())
        else:
            rows.append((key, value))
    width = max(len(key) for key, _ in rows)
    for key, value in rows:
        click.echo('{key:<{width}}  {value}'.format(key=key, width=width, value=format_value(value)))


@click.command('sparsedetect-boundary')
@config_option
@size_options
@sparsity_options
@signal_options
@noise_options
@click.option('--sharp-threshold', type=float,
              default=settings.BOUNDARY_SETTINGS['sharp_threshold'].default, show_default=True,
              help='Largest k log(p) / sqrt(n) for which the sharp constant applies')
@click.option('--unknown-variance-threshold', type=float,
              default=settings.BOUNDARY_SETTINGS['unknown_variance_threshold'].default, show_default=True,
              help='Largest k log(p) / n at which detection with unknown variance is possible')
@output_options
def cli(out, as_json, sharp_threshold, unknown_variance_threshold, **kwargs):
    """Detection boundary, sharp constant and sparsity regime of a configuration"""
    problem = problem_settings(kwargs)
    with_signal = problem['r'] is not None or problem['x'] is not None
    if not with_signal:
        problem['x'] = 0.

    with domain_errors():
        cfg = ProblemConfig(**problem)
        payload = boundary_report(cfg, sharp_threshold, unknown_variance_threshold, with_signal)

    if as_json or out is not None:
        manifest = RunManifest.start('boundary', cfg.as_dict(), cfg.seed).finish()
        payload['manifest'] = manifest.as_dict()
        with output_stream(out) as stream:
            write_json(payload, stream)
    else:
        _print_table(payload)


if __name__ == '__main__':
    cli()
