import json
import logging

import numpy as np
import pytest

from paritybell.results import (emit, format_float, render, to_csv,
                                to_dataframe, to_json, to_text)

DOCUMENT = {'n_modes': 2, 'value': 2.8284271247461903, 'pass': True,
            'settings': [[0., 0., 1.], [1., 0., 0.]],
            'rows': [{'r': 0.1, 'ok': True}, {'r': 1., 'ok': False}]}


def test_format_float():
    assert format_float(1.) == '1.0'
    assert format_float(0.1) == '0.10000000000000001'
    assert format_float(1e20) == '1e+20'
    assert format_float(np.float64(-2.5)) == '-2.5'
    assert format_float(np.nan) == 'null'
    assert format_float(np.inf) == 'null'


def test_json_layout():
    text = to_json({'a': 1, 'b': [1., 2], 'ok': True, 'none': None,
                    'rows': [{'x': 0.5}]})
    assert text == ('{\n  "a": 1,\n  "b": [1.0, 2],\n  "ok": true,\n'
                    '  "none": null,\n  "rows": [\n    {\n'
                    '      "x": 0.5\n    }\n  ]\n}\n')


def test_json_is_valid_and_exact():
    decoded = json.loads(to_json(DOCUMENT))
    assert list(decoded) == list(DOCUMENT)
    assert decoded['value'] == DOCUMENT['value']
    assert decoded['rows'][0]['r'] == 0.1
    assert to_json(DOCUMENT) == to_json(dict(DOCUMENT))


def test_json_numpy_values():
    decoded = json.loads(to_json({'a': np.arange(3), 'b': np.bool_(False),
                                  'c': np.float64(np.nan)}))
    assert decoded == {'a': [0, 1, 2], 'b': False, 'c': None}
    with pytest.raises(TypeError):
        to_json({'a': object()})


def test_dataframe_views():
    assert list(to_dataframe(DOCUMENT).columns) == ['r', 'ok']
    single = to_dataframe({'a': 1, 's': [1, 2]})
    assert single.shape == (1, 2)
    assert single['s'][0] == '[1, 2]'


def test_csv():
    assert to_csv(DOCUMENT) == 'r,ok\n0.10000000000000001,True\n1,False\n'
    assert to_csv({'a': 1, 'b': 2.5, 's': [1, 2]}) == \
        'a,b,s\n1,2.5,"[1, 2]"\n'


def test_text():
    text = to_text(DOCUMENT, title='chsh')
    lines = text.splitlines()
    assert lines[0] == '=============================='
    assert lines[1] == 'Parity Bell chsh:'
    assert '    value    = 2.8284271247461903' in lines
    assert '    pass     = True' in lines
    assert 'rows' not in text.split('==============================')[1]


def test_render_formats():
    assert render(DOCUMENT, 'json') == to_json(DOCUMENT)
    assert render(DOCUMENT, 'csv') == to_csv(DOCUMENT)
    with pytest.raises(ValueError):
        render(DOCUMENT, 'xml')


def test_emit_to_file(tmp_path, caplog):
    out = tmp_path / 'result.json'
    with caplog.at_level(logging.INFO):
        emit(DOCUMENT, 'json', out=str(out))
    assert out.read_text() == to_json(DOCUMENT)
    assert 'File saved to' in caplog.text


def test_emit_to_stdout(capsys):
    emit({'a': 1}, 'csv')
    assert capsys.readouterr().out == 'a\n1\n'
