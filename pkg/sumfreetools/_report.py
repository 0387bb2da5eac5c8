'''Versioned CSV and JSON emission for reports.'''

# Standard library imports
import io
import csv
import sys
import json
import math
import dataclasses
from fractions import Fraction

# Third party imports
import numpy as np


SCHEMA_VERSION = 1


def json_safe(obj):
    '''Convert a record into plain JSON types.

    Fractions become ``"p/q"`` strings so they stay exact, dataclasses become
    dicts, and non-finite floats become None.
    '''
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: json_safe(getattr(obj, f.name))
                for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [json_safe(v) for v in items]
    if isinstance(obj, np.ndarray):
        return json_safe(obj.tolist())
    if isinstance(obj, np.generic):
        return json_safe(obj.item())
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def format_json(record):
    '''Return the record as schema-tagged JSON text, keys sorted.'''
    payload = {'schema': SCHEMA_VERSION}
    payload.update(json_safe(record) if isinstance(record, dict)
                   else {'result': json_safe(record)})
    return json.dumps(payload, indent=2, sort_keys=True) + '\n'


def format_csv(header, rows):
    '''Return CSV text starting with a ``# schema=1`` line and the header row.

    ``rows`` hold sequences in header order or dicts keyed by the header. None is
    written as an empty field.
    '''
    buffer = io.StringIO()
    buffer.write(f'# schema={SCHEMA_VERSION}\n')
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        if isinstance(row, dict):
            row = [row.get(key) for key in header]
        writer.writerow(['' if v is None else _cell(v) for v in row])
    return buffer.getvalue()


def parse_csv(text):
    '''Read text written by ``format_csv`` back into a header and string rows.'''
    lines = [line for line in text.splitlines() if not line.startswith('#')]
    reader = csv.reader(lines)
    header = next(reader, [])
    return header, [row for row in reader]


def emit(text, path=None):
    '''Write text to ``path``, or to stdout when no path is given.'''
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, 'w', newline='') as f:
        f.write(text)


def _cell(value):
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.generic):
        return _cell(value.item())
    return value
