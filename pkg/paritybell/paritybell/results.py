#! /usr/bin/env python
# -*- coding: utf-8 -*-
"""
Parity Bell - results.py

GNU Public License
http://www.gnu.org/licenses/

Parity Bell is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

Result documents and their sinks. A document is a flat dict of
snake_case keys; list-valued 'rows' hold tabular results (one dict
per row). Floats are always written with 17 significant digits.
"""

import io
import json
import logging
import sys

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

FORMATS = ('json', 'csv', 'text')

_FLOAT_FORMAT = '%.17g'


def format_float(value):
    """
    17 significant digits, always recognizably a float. Non-finite
    values become null.
    """
    value = float(value)
    if not np.isfinite(value):
        return 'null'
    text = _FLOAT_FORMAT % value
    if not any(char in text for char in '.e'):
        text += '.0'
    return text


def _encode(obj, indent, level):
    pad = ' '*(indent*(level+1))
    end = ' '*(indent*level)
    if isinstance(obj, (bool, np.bool_)):
        return 'true' if obj else 'false'
    if obj is None:
        return 'null'
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return '{}'
        items = ['{0}{1}: {2}'.format(pad, json.dumps(str(key)),
                                      _encode(value, indent, level+1))
                 for key, value in obj.items()]
        return '{\n' + ',\n'.join(items) + '\n' + end + '}'
    if isinstance(obj, (list, tuple)):
        if not obj:
            return '[]'
        if all(not isinstance(item, (dict, list, tuple, np.ndarray))
               for item in obj):
            return '[' + ', '.join(_encode(item, indent, level+1)
                                   for item in obj) + ']'
        items = [pad + _encode(item, indent, level+1) for item in obj]
        return '[\n' + ',\n'.join(items) + '\n' + end + ']'
    raise TypeError("Cannot encode {0!r} as JSON.".format(obj))


def to_json(document, indent=2):
    """
    Encode a document as JSON. Key order is preserved, so equal
    documents give byte-identical text.
    """
    return _encode(document, indent, 0) + '\n'


def to_dataframe(document):
    """
    The tabular view of a document: its 'rows' if present, otherwise
    a single row of its scalar entries.
    """
    if 'rows' in document:
        return pd.DataFrame(list(document['rows']))
    row = {}
    for key, value in document.items():
        if isinstance(value, (dict, list, tuple, np.ndarray)):
            row[key] = to_json(value, indent=0).replace('\n', '')
        else:
            row[key] = value
    return pd.DataFrame([row])


def to_csv(document):
    buf = io.StringIO()
    to_dataframe(document).to_csv(buf, index=False,
                                  float_format=_FLOAT_FORMAT,
                                  lineterminator='\n')
    return buf.getvalue()


def to_text(document, title='Results'):
    """
    Human-readable summary, one key per line.
    """
    scalars = {key: value for key, value in document.items()
               if key != 'rows'}
    width = max([len(key) for key in scalars] + [1])
    lines = ['==============================',
             'Parity Bell {0}:'.format(title)]
    for key, value in scalars.items():
        if isinstance(value, (float, np.floating)):
            value = format_float(value)
        elif isinstance(value, (dict, list, tuple, np.ndarray)):
            value = to_json(value, indent=0).replace('\n', '')
        lines.append('    {0} = {1}'.format(key.ljust(width), value))
    lines.append('==============================')
    text = '\n'.join(lines) + '\n'
    if 'rows' in document:
        text += to_dataframe(document).to_string(
            index=False, float_format=lambda x: format_float(x)) + '\n'
    return text


def render(document, fmt='json', title='Results'):
    if fmt == 'json':
        return to_json(document)
    if fmt == 'csv':
        return to_csv(document)
    if fmt == 'text':
        return to_text(document, title=title)
    raise ValueError("Unknown output format {0!r}; expected one of {1}.".
                     format(fmt, FORMATS))


def emit(document, fmt='json', out=None, title='Results'):
    """
    Render a document and write it to a file or stdout.

    Inputs:
      document :: dictionary
        The result document
      fmt :: string
        'json', 'csv' or 'text'
      out :: string or None
        Output filename. If None, write to stdout.
      title :: string
        Heading of the text format

    Returns: Nothing
    """
    text = render(document, fmt=fmt, title=title)
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, 'w', newline='') as fout:
        fout.write(text)
    logger.info("File saved to: {0}".format(out))
