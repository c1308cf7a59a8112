import sys
import functools
from time import perf_counter

from loguru import logger

try:
    import tqdm
except ImportError:
    has_tqdm = False
else:
    has_tqdm = True

from . import logs, runtime_settings as rs

BAR_FORMAT = (
    ' {label}: {done:>7}/{total:<7} | {percentage:>5.1f}% | '
    '{rate:.1f} reps/s | {eta:.1f}{eta_unit} left'
)


def format_seconds(seconds):
    for factor, unit in ((3600., 'h'), (60., 'm')):
        if seconds >= factor:
            return seconds / factor, unit
    return seconds, 's'


def _progress_fields(label, done, total, elapsed):
    rate = done / elapsed if elapsed > 0 else 0.
    if rate > 0:
        eta, eta_unit = format_seconds((total - done) / rate)
    else:
        eta, eta_unit = 0., 's'
    percentage = 100. * done / total if total else 100.
    return dict(
        label=label, done=done, total=total, percentage=percentage,
        rate=rate, eta=eta, eta_unit=eta_unit
    )


class LoggingProgressBar:
    """A simple progress report to logger.info

    Serves as a fallback where TQDM is not available or not feasible (writing to a file,
    non-interactive sessions).
    """

    def __init__(self, total, label='Replications', report_every=0.1):
        self._total = total
        self._label = label
        self._report_step = max(1, int(total * report_every))

    def __enter__(self):
        self._start = perf_counter()
        self._done = 0
        self._last_report = 0
        return self

    def __exit__(self, *args, **kwargs):
        if self._done != self._last_report:
            self.flush()

    def advance(self, amount=1):
        self._done += amount
        if self._done - self._last_report >= self._report_step or self._done >= self._total:
            self.flush()

    def flush(self):
        self._last_report = self._done
        logger.info(BAR_FORMAT, **_progress_fields(
            self._label, self._done, self._total, perf_counter() - self._start
        ))


class FancyProgressBar:
    """A progress bar based on TQDM that stays at the bottom of the terminal."""

    def __init__(self, total, label='Replications'):
        self._total = total
        self._label = label
        self._done = 0

        class _ReplicationTQDM(tqdm.tqdm):
            """Stripped down version of tqdm.tqdm

            We only need TQDM to handle dynamic updates to the progress indicator.
            """
            @property
            def format_dict(other):
                d = super().format_dict
                d.update(_progress_fields(self._label, self._done, self._total, d['elapsed']))
                return d

            def format_meter(other, *args, bar_format, **kwargs):
                return bar_format.format(**kwargs)

        self._pbar = _ReplicationTQDM(
            file=sys.stderr,
            bar_format=BAR_FORMAT
        )

    def __enter__(self, *args, **kwargs):
        self._done = 0
        logs.setup_logging(
            loglevel=rs.loglevel,
            stream_sink=functools.partial(self._pbar.write, file=sys.stderr, end='')
        )
        self._pbar.__enter__(*args, **kwargs)
        return self

    def __exit__(self, *args, **kwargs):
        logs.setup_logging(loglevel=rs.loglevel)
        self._pbar.__exit__(*args, **kwargs)

    def advance(self, amount=1):
        self._done += amount
        self._pbar.update(0)


class NullProgressBar:
    def __init__(self, total, label=None):
        pass

    def __enter__(self):
        return self

    def __exit__(self, *args, **kwargs):
        pass

    def advance(self, amount=1):
        pass


def get_progress_bar(total, label='Replications', use_tqdm=None):
    mode = rs.progress
    if mode == 'never':
        return NullProgressBar(total, label)

    if use_tqdm is None:
        use_tqdm = sys.stderr.isatty() and has_tqdm

    if use_tqdm and not has_tqdm:
        raise RuntimeError('tqdm failed to import. Try `pip install tqdm` or set use_tqdm=False.')

    if use_tqdm:
        return FancyProgressBar(total, label=label)

    if mode == 'always':
        return LoggingProgressBar(total, label=label)

    return NullProgressBar(total, label)
