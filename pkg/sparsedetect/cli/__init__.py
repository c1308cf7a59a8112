#!/usr/bin/env python

try:
    import click
    have_click = True
except ImportError:
    have_click = False

if not have_click:
    raise ImportError('The sparsedetect command line tools require click (e.g. through `pip install click`)')

del click
del have_click

from . import (
    sparsedetect, sparsedetect_boundary, sparsedetect_simulate, sparsedetect_sweep,
    sparsedetect_oracle, sparsedetect_selftest
)

sparsedetect.cli.add_command(sparsedetect_boundary.cli, 'boundary')
sparsedetect.cli.add_command(sparsedetect_simulate.cli, 'simulate')
sparsedetect.cli.add_command(sparsedetect_sweep.cli, 'sweep')
sparsedetect.cli.add_command(sparsedetect_oracle.cli, 'oracle')
sparsedetect.cli.add_command(sparsedetect_selftest.cli, 'selftest')

cli = sparsedetect.cli
