#!/usr/bin/env python

import sys

import click

from sparsedetect.output import write_json


@click.command('sparsedetect-selftest')
@click.option('--json', 'as_json', is_flag=True, default=False, help='Machine-readable pass list')
def cli(as_json):
    """Run the fast invariant suite; exit code 1 if any check fails"""
    from sparsedetect.selftest import run_selftest

    results = run_selftest()
    failed = [r.name for r in results if not r.passed]

    if as_json:
        write_json(dict(
            passed=[r.name for r in results if r.passed],
            failed=failed,
            checks=results,
        ), sys.stdout)
    else:
        for r in results:
            click.echo('{:<22} {}'.format(r.name, 'ok' if r.passed else 'FAILED: ' + r.message))

    if failed:
        click.echo('selftest failed: {}'.format(', '.join(failed)), err=True)
        sys.exit(1)


if __name__ == '__main__':
    cli()
