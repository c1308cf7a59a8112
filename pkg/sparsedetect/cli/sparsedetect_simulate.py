#!/usr/bin/env python

import click

from sparsedetect.cli.options import (
    config_option, size_options, sparsity_options, signal_options, noise_options, design_option,
    test_options, run_options, output_options, problem_settings, test_settings, domain_errors,
    write_results
)


def simulate(settings, test, reps, threads=None):
    """Estimate the errors of one test on one configuration"""
    from sparsedetect.model import ProblemConfig
    from sparsedetect.montecarlo import estimate_errors
    from sparsedetect.tests import TestSpec

    cfg = ProblemConfig(**settings)
    spec = TestSpec(**test)
    return cfg, spec, estimate_errors(cfg, spec, reps, threads)


@click.command('sparsedetect-simulate')
@config_option
@size_options
@sparsity_options
@signal_options
@noise_options
@design_option
@test_options
@run_options
@output_options
def cli(reps, threads, out, as_json, **kwargs):
    """Monte Carlo estimate of the type I, type II and total error of a test"""
    from sparsedetect.output import RunManifest

    problem = problem_settings(kwargs)
    test = test_settings(kwargs)

    with domain_errors():
        manifest = RunManifest.start('simulate', dict(problem, test=test, reps=reps), problem['seed'])
        cfg, spec, result = simulate(problem, test, reps, threads)

    manifest = manifest._replace(config=dict(cfg.as_dict(), test=spec._asdict(), reps=reps))
    write_results([result], out, as_json, manifest)


if __name__ == '__main__':
    cli()
