import io
import json
import math

import numpy as np

from sparsedetect import output
from sparsedetect.montecarlo import CellResult, CSV_FIELDS


def _result(**kwargs):
    values = dict(
        beta=0.75, x=1. / 3., n=4000, p=4096, k=8, test='psi_hc',
        alpha_hat=0.0125, beta_hat=0.3, gamma_hat=0.3125,
        se_alpha=math.sqrt(0.0125 * 0.9875 / 400), se_beta=0.0229128785, reps=400, seed=7,
    )
    values.update(kwargs)
    return CellResult(**values)


def test_csv_layout():
    stream = io.StringIO()
    output.write_csv([_result()], stream)
    text = stream.getvalue()
    lines = text.split('\n')
    assert lines[0] == ','.join(CSV_FIELDS)
    assert lines[1].startswith('0.75,0.333333333,4000,4096,8,psi_hc,0.0125,0.3,0.3125,')
    assert lines[2] == ''
    assert '\r' not in text


def test_csv_rewrite_is_stable():
    results = [_result(), _result(beta=0.8, x=2., test='psi_star', seed=8)]
    first = io.StringIO()
    output.write_csv(results, first)
    parsed = output.read_csv(io.StringIO(first.getvalue()))
    assert [r.test for r in parsed] == ['psi_hc', 'psi_star']
    assert parsed[0].x == output.round_float(1. / 3.)
    assert parsed[0].n == 4000

    second = io.StringIO()
    output.write_csv(parsed, second)
    assert second.getvalue() == first.getvalue()


def test_csv_sigma_columns():
    results = [_result(sigma=0.1, sigma_sensitive=True), _result(sigma=10., sigma_sensitive=True)]
    stream = io.StringIO()
    output.write_csv(results, stream, extra_fields=('sigma', 'sigma_sensitive'))
    header, first = stream.getvalue().split('\n')[:2]
    assert header.endswith(',seed,sigma,sigma_sensitive')
    assert first.endswith(',0.1,true')
    parsed = output.read_csv(io.StringIO(stream.getvalue()))
    assert parsed[1].sigma == 10.
    assert parsed[1].sigma_sensitive is True


def test_json_payload():
    payload = dict(
        value=np.float64(1. / 3.), flag=np.bool_(True), count=np.int64(3),
        sentinel=-math.inf, results=[_result()],
    )
    stream = io.StringIO()
    output.write_json(payload, stream)
    parsed = json.loads(stream.getvalue())
    assert parsed['value'] == 0.333333333
    assert parsed['flag'] is True
    assert parsed['count'] == 3
    assert parsed['sentinel'] == '-inf'
    assert parsed['results'][0]['test'] == 'psi_hc'
    assert parsed['results'][0]['sigma'] is None


def test_manifest(tmp_path):
    manifest = output.RunManifest.start('simulate', dict(n=100, beta=0.75, test='psi_hc'), seed=3)
    assert manifest.finished is None
    manifest = manifest.finish()
    assert manifest.finished is not None

    target = str(tmp_path / 'results.csv')
    output.write_manifest(manifest, target)
    assert output.manifest_path(target).endswith('results.csv.manifest.yml')

    loaded = output.read_manifest(target)
    assert loaded['command'] == 'simulate'
    assert loaded['seed'] == 3
    assert loaded['config'] == dict(n=100, beta=0.75, test='psi_hc')
    assert loaded['version'] == manifest.version
