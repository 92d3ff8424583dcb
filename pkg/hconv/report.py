import importlib.resources
import json
import math
import typing
from collections.abc import Iterable

import numpy as np

from .geometry import CheckReport

CONSISTENT = 'consistent'
CONTRADICTION = 'contradiction'
INFORMATIONAL = 'informational'

_TYPES = {
    'object': dict,
    'array': list,
    'string': str,
    'boolean': bool,
    'null': type(None),
}


def _clean(value):
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, CheckReport):
        return _clean(value.to_dict())
    elif isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    elif isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    elif isinstance(value, complex):
        return [_clean(value.real), _clean(value.imag)]
    elif isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def build_report(
    command: str,
    params: dict[str, typing.Any],
    case: int | str | None,
    satisfied: bool,
    checks: Iterable[CheckReport],
    verdict: str,
    **extra,
) -> dict[str, typing.Any]:
    from . import __version__

    report = {
        'command': command,
        'params': params,
        'hypothesis': {'case': case, 'satisfied': satisfied},
        'checks': list(checks),
    }
    report.update(extra)
    report['verdict'] = verdict
    report['version'] = __version__
    return _clean(report)


def _encode(value, depth: int) -> str:
    pad = '  ' * (depth + 1)
    if isinstance(value, dict):
        if not value:
            return '{}'
        items = [f'{pad}{json.dumps(k)}: {_encode(v, depth + 1)}' for k, v in value.items()]
        return '{\n' + ',\n'.join(items) + '\n' + '  ' * depth + '}'
    elif isinstance(value, list):
        if not value:
            return '[]'
        items = [pad + _encode(v, depth + 1) for v in value]
        return '[\n' + ',\n'.join(items) + '\n' + '  ' * depth + ']'
    elif isinstance(value, float):
        return f'{value:.17g}'
    return json.dumps(value)


def dumps(report: dict[str, typing.Any]) -> str:
    # floats at 17 significant digits, so output is byte-stable
    return _encode(_clean(report), 0) + '\n'



def load_schema() -> dict[str, typing.Any]:
    text = importlib.resources.files(__package__).joinpath('report.schema.json').read_text()
    return json.loads(text)


def _type_ok(value, name: str) -> bool:
    if name == 'integer':
        return isinstance(value, int) and not isinstance(value, bool)
    elif name == 'number':
        return isinstance(value, (int, float)) and not isinstance(value, bool)
    return isinstance(value, _TYPES[name])


def schema_errors(value, schema: dict | None = None, path: str = '$') -> list[str]:
    """Structural check against the subset of JSON schema used by the report."""
    if schema is None:
        schema = load_schema()
    errors = []
    expected = schema.get('type')
    if expected:
        names = expected if isinstance(expected, list) else [expected]
        if not any(_type_ok(value, name) for name in names):
            return [f'{path}: expected {"/".join(names)}, got {type(value).__name__}']
    if 'enum' in schema and value not in schema['enum']:
        errors.append(f'{path}: {value!r} not in {schema["enum"]}')
    if isinstance(value, dict):
        for key in schema.get('required', []):
            if key not in value:
                errors.append(f'{path}: missing {key!r}')
        for key, sub in schema.get('properties', {}).items():
            if key in value:
                errors += schema_errors(value[key], sub, f'{path}.{key}')
    elif isinstance(value, list) and 'items' in schema:
        for i, item in enumerate(value):
            errors += schema_errors(item, schema['items'], f'{path}[{i}]')
    return errors
