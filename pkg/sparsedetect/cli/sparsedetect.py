import click

from sparsedetect._version import __version__
from sparsedetect.cli.options import LOGLEVELS


@click.group('sparsedetect')
@click.version_option(version=__version__)
@click.option('-v', '--loglevel', default='info', type=click.Choice(LOGLEVELS),
              help='Log level used for output (default: info)', envvar='SPARSEDETECT_LOGLEVEL')
@click.option('--progress', default='auto', type=click.Choice(['auto', 'always', 'never']),
              help='Progress reporting: bar on a terminal (auto), log lines (always) or none',
              envvar='SPARSEDETECT_PROGRESS')
def cli(loglevel, progress):
    """Detection tests and boundaries for sparse linear regression"""
    from sparsedetect import runtime_settings, logs
    runtime_settings.loglevel = loglevel
    runtime_settings.progress = progress
    logs.setup_logging(loglevel=loglevel)


if __name__ == '__main__':
    cli()
