#!/usr/bin/env python

import click
import numpy as np

from sparsedetect.lowerbound import bayes_risk_oracle, make_prior, P_MAX_EXACT
from sparsedetect.errors import ResourceLimitError
from sparsedetect.model import ProblemConfig
from sparsedetect.output import RunManifest, write_json, format_value
from sparsedetect.cli.options import (
    config_option, size_options, sparsity_options, signal_options, design_option, prior_options,
    output_options, problem_settings, domain_errors, output_stream
)


@click.command('sparsedetect-oracle')
@config_option
@size_options
@sparsity_options
@signal_options
@design_option
@prior_options
@click.option('--reps', type=click.IntRange(min=1), default=1000, show_default=True,
              help='Null replications')
@click.option('--seed', type=click.IntRange(min=0), default=0, show_default=True,
              help='Seed of the random stream')
@click.option('--p-max-exact', type=click.IntRange(min=1), default=P_MAX_EXACT, show_default=True,
              help='Largest p for which the three-point likelihood ratio is enumerated')
@output_options
def cli(prior, c, reps, p_max_exact, out, as_json, **kwargs):
    """Bayes-risk oracle: smallest total error against the least-favorable prior"""
    problem = problem_settings(kwargs)
    signal = problem['r'] if problem['r'] is not None else problem['x']

    with domain_errors():
        # a zero signal gives the degenerate prior, which needs no enumeration
        if prior == 'three_point' and problem['p'] > p_max_exact and signal != 0:
            raise ResourceLimitError(
                'oracle needs the exact likelihood ratio, p = {} exceeds the limit of {}'
                .format(problem['p'], p_max_exact)
            )
        cfg = ProblemConfig(**problem)
        prior_params = make_prior(cfg, prior, c)
        estimate = bayes_risk_oracle(
            cfg, prior_params, reps, np.random.default_rng(cfg.seed), c=c, p_max_exact=p_max_exact
        )

    payload = dict(
        gamma_hat=estimate.gamma_hat, stderr=estimate.stderr, reps=estimate.reps,
        prior=dict(prior_params._asdict(), kind=prior),
    )

    if as_json or out is not None:
        manifest = RunManifest.start('oracle', dict(cfg.as_dict(), prior=prior, c=c, reps=reps), cfg.seed)
        payload['manifest'] = manifest.finish().as_dict()
        with output_stream(out) as stream:
            write_json(payload, stream)
        return

    click.echo('gamma_hat = {} +- {} ({} replications)'.format(
        format_value(estimate.gamma_hat), format_value(estimate.stderr), estimate.reps
    ))
    click.echo('prior: {} ({})'.format(prior, ', '.join(
        '{}={}'.format(key, format_value(val)) for key, val in prior_params._asdict().items()
    )))


if __name__ == '__main__':
    cli()
