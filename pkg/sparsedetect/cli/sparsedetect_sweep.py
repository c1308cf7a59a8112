#!/usr/bin/env python

import click

from sparsedetect.montecarlo import SweepGrid, run_sweep, unknown_variance_sweep
from sparsedetect.output import RunManifest
from sparsedetect.tests import TestSpec
from sparsedetect.cli.options import (
    config_option, size_options, noise_options, design_option, test_options, run_options,
    output_options, problem_settings, test_settings, parse_float_list, domain_errors, write_results
)


@click.command('sparsedetect-sweep')
@config_option
@size_options
@click.option('--betas', required=True, metavar='LIST',
              help='Comma-separated, strictly increasing sparsity indices')
@click.option('--xs', required=True, metavar='LIST',
              help='Comma-separated, strictly increasing rescaled intensities')
@click.option('--sigmas', default=None, metavar='LIST',
              help='Rerun every cell with these noise levels in unknown-variance mode')
@noise_options
@design_option
@test_options
@run_options
@output_options
def cli(betas, xs, sigmas, reps, threads, out, as_json, **kwargs):
    """(beta, x) phase diagram of a test, one CSV row per cell"""
    beta_values = parse_float_list(betas, '--betas')
    x_values = parse_float_list(xs, '--xs')
    sigma_values = parse_float_list(sigmas, '--sigmas') if sigmas is not None else None

    problem = problem_settings(kwargs)
    test = test_settings(kwargs)

    with domain_errors():
        grid = SweepGrid.from_settings(beta_values, x_values, reps, **problem)
        spec = TestSpec(**test)
        manifest = RunManifest.start('sweep', dict(
            grid.base.as_dict(), betas=beta_values, xs=x_values, sigmas=sigma_values,
            test=spec._asdict(), reps=reps
        ), grid.base_seed)

        if sigma_values is None:
            results = run_sweep(grid, spec, threads)
            extra_fields = ()
        else:
            results = unknown_variance_sweep(grid, sigma_values, spec, threads)
            extra_fields = ('sigma', 'sigma_sensitive')

    write_results(results, out, as_json, manifest, extra_fields)


if __name__ == '__main__':
    cli()
