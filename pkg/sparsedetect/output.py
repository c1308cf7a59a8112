"""CSV and JSON codecs for results, and the run manifest accompanying every output file.

Floats are written with 9 significant digits.
"""

import csv
import json
import datetime
from collections import namedtuple

import numpy as np
from ruamel.yaml import YAML

from .montecarlo import CSV_FIELDS, CellResult

FLOAT_FORMAT = '{:.9g}'

_INT_FIELDS = ('n', 'p', 'k', 'reps', 'seed')
_STR_FIELDS = ('test',)


def format_value(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return FLOAT_FORMAT.format(value)
    return str(value)


def round_float(value):
    """Value as it reads back from its 9-digit representation"""
    return float(FLOAT_FORMAT.format(value))


def write_csv(results, stream, extra_fields=()):
    """One header line plus one row per :class:`CellResult`, LF line endings"""
    fields = CSV_FIELDS + tuple(extra_fields)
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(fields)
    for result in results:
        writer.writerow([format_value(getattr(result, field)) for field in fields])


def _parse_field(field, text):
    if text == '':
        return None
    if field in _INT_FIELDS:
        return int(text)
    if field in _STR_FIELDS:
        return text
    if field == 'sigma_sensitive':
        return text == 'true'
    return float(text)


def read_csv(stream):
    """Parse rows written by :func:`write_csv` back into :class:`CellResult` objects"""
    reader = csv.reader(stream)
    header = next(reader)
    missing = set(CSV_FIELDS) - set(header)
    if missing:
        raise ValueError('CSV header lacks columns {}'.format(', '.join(sorted(missing))))
    results = []
    for row in reader:
        if not row:
            continue
        values = {field: _parse_field(field, text) for field, text in zip(header, row)}
        results.append(CellResult(**values))
    return results


def jsonable(value):
    """Recursively convert results to JSON types, floats rounded to 9 significant digits"""
    if hasattr(value, '_asdict'):
        value = value._asdict()
    if isinstance(value, dict):
        return {str(key): jsonable(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(val) for val in value]
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    try:
        as_float = float(value)
    except (TypeError, ValueError):
        return str(value)
    if as_float != as_float or as_float in (float('inf'), float('-inf')):
        return str(as_float)
    return round_float(as_float)


def write_json(payload, stream):
    json.dump(jsonable(payload), stream, indent=2, sort_keys=True)
    stream.write('\n')


def _timestamp():
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec='seconds')


class RunManifest(namedtuple('RunManifest', ('command', 'config', 'seed', 'version', 'started', 'finished'))):
    """Provenance of an output file: command, resolved parameters, seed, version, timestamps."""

    __slots__ = ()

    @classmethod
    def start(cls, command, config, seed=None):
        from . import __version__
        return cls(command, dict(config), seed, __version__, _timestamp(), None)

    def finish(self):
        return self._replace(finished=_timestamp())

    def as_dict(self):
        return jsonable(self)


def manifest_path(path):
    return '{}.manifest.yml'.format(path)


def write_manifest(manifest, path):
    """Write the manifest next to an output file, as YAML"""
    yaml = YAML(typ='safe')
    yaml.default_flow_style = False
    with open(manifest_path(path), 'w') as f:
        yaml.dump(manifest.as_dict(), f)


def read_manifest(path):
    yaml = YAML(typ='safe')
    with open(manifest_path(path), 'r') as f:
        return yaml.load(f)
