"""The ``--map`` mini-language. Positional arguments fill the unnamed parameters in order."""

import ast
import dataclasses
import math
import operator
import re
import typing
from collections.abc import Callable

from .convolution import harmonic_convolve
from .errors import MapSpecError
from .mappings import Dilatation
from .mappings import HarmonicMap
from .mappings import MobiusShifted
from .mappings import Monomial
from .mappings import ReflectedMobius
from .mappings import f0
from .mappings import f_a_gamma
from .mappings import identity
from .mappings import shear_slanted
from .mappings import strip_map
from .series import DEFAULT_ORDER

_CALL = re.compile(r'\s*([A-Za-z_]\w*)\s*\(')
_KEYWORD = re.compile(r'\s*([A-Za-z_]\w*)\s*=(?!=)')
_BARE = re.compile(r'\s*([A-Za-z_]\w*)\s*(?=[,)]|\Z)')

_CONSTANTS = {'pi': math.pi, 'tau': math.tau}
_BINARY = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}

MAP = 'map'
DILATATION = 'dilatation'
NUMBER = 'number'


@dataclasses.dataclass(frozen=True)
class Constructor:
    kind: str
    params: tuple[tuple[str, str, typing.Any], ...]
    build: Callable[..., typing.Any]


_REQUIRED = object()

CONSTRUCTORS = {
    'identity': Constructor(MAP, (), lambda order: identity(order)),
    'f0': Constructor(MAP, (), lambda order: f0(order)),
    'shear': Constructor(
        MAP,
        (('gamma', NUMBER, 0.0), ('a', NUMBER, 0.0), ('omega', DILATATION, _REQUIRED)),
        lambda order, gamma, a, omega: shear_slanted(gamma, a, omega, order),
    ),
    'fa': Constructor(
        MAP,
        (('a', NUMBER, 0.0), ('gamma', NUMBER, 0.0)),
        lambda order, a, gamma: f_a_gamma(a, gamma, order),
    ),
    'strip': Constructor(
        MAP,
        (('beta', NUMBER, math.pi / 2), ('omega', DILATATION, _REQUIRED)),
        lambda order, beta, omega: strip_map(beta, omega, order),
    ),
    'conv': Constructor(
        MAP,
        (('f', MAP, _REQUIRED), ('F', MAP, _REQUIRED)),
        lambda order, f, F: harmonic_convolve(f, F),
    ),
    'mobius': Constructor(
        DILATATION,
        (('a', NUMBER, 0.0), ('theta', NUMBER, 0.0), ('gamma', NUMBER, 0.0)),
        lambda order, a, theta, gamma: MobiusShifted(a, theta, gamma),
    ),
    'monomial': Constructor(
        DILATATION,
        (('theta', NUMBER, 0.0), ('n', NUMBER, 1)),
        lambda order, theta, n: Monomial(theta, n),
    ),
    'reflected': Constructor(
        DILATATION,
        (('a', NUMBER, 0.0), ('gamma', NUMBER, 0.0)),
        lambda order, a, gamma: ReflectedMobius(a, gamma),
    ),
}


def _number(node: ast.AST) -> float:
    if isinstance(node, ast.Constant) and type(node.value) in (int, float):
        return node.value
    elif isinstance(node, ast.Name) and node.id in _CONSTANTS:
        return _CONSTANTS[node.id]
    elif isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
        return _BINARY[type(node.op)](_number(node.left), _number(node.right))
    elif isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _UNARY[type(node.op)](_number(node.operand))
    raise MapSpecError(f'not a number: {ast.unparse(node)!r}')


def evaluate_number(expr: str) -> float:
    try:
        tree = ast.parse(expr.strip(), mode='eval')
    except SyntaxError as e:
        raise MapSpecError(f'cannot parse number {expr!r}') from e
    try:
        return _number(tree.body)
    except (ZeroDivisionError, OverflowError) as e:
        raise MapSpecError(f'cannot evaluate {expr!r}: {e}') from e


class _Parser:
    def __init__(self, text: str, order: int):
        self.text = text
        self.pos = 0
        self.order = order

    def fail(self, msg: str) -> typing.NoReturn:
        raise MapSpecError(f'{msg} at offset {self.pos} in {self.text!r}')

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def parse(self):
        value = self.value()
        self.skip()
        if self.pos != len(self.text):
            self.fail('trailing input')
        return value

    def value(self):
        m = _CALL.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return self.call(m.group(1))
        m = _BARE.match(self.text, self.pos)
        if m and m.group(1) in CONSTRUCTORS:
            self.pos = m.end()
            return build(m.group(1), [], {}, self.order)
        return self.number()

    def number(self) -> float:
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == '(':
                depth += 1
            elif ch == ')':
                if depth == 0:
                    break
                depth -= 1
            elif ch == ',' and depth == 0:
                break
            self.pos += 1
        expr = self.text[start:self.pos]
        if not expr.strip():
            self.fail('expected a value')
        return evaluate_number(expr)

    def call(self, name: str):
        if name not in CONSTRUCTORS:
            self.fail(f'unknown constructor {name!r}')
        args = []
        kwargs = {}
        self.skip()
        if self.text.startswith(')', self.pos):
            self.pos += 1
        else:
            while True:
                m = _KEYWORD.match(self.text, self.pos)
                if m:
                    self.pos = m.end()
                    if m.group(1) in kwargs:
                        self.fail(f'{name}: {m.group(1)} given twice')
                    kwargs[m.group(1)] = self.value()
                else:
                    args.append(self.value())
                self.skip()
                if self.text.startswith(',', self.pos):
                    self.pos += 1
                elif self.text.startswith(')', self.pos):
                    self.pos += 1
                    break
                else:
                    self.fail("expected ',' or ')'")
        return build(name, args, kwargs, self.order)


def _kind(value) -> str:
    if isinstance(value, HarmonicMap):
        return MAP
    elif isinstance(value, Dilatation):
        return DILATATION
    return NUMBER


def build(name: str, args: list, kwargs: dict, order: int = DEFAULT_ORDER):
    ctor = CONSTRUCTORS[name]
    names = [p[0] for p in ctor.params]
    unknown = set(kwargs) - set(names)
    if unknown:
        raise MapSpecError(f'{name}: unknown parameter(s) {", ".join(sorted(unknown))}')

    free = [n for n in names if n not in kwargs]
    if len(args) > len(free):
        raise MapSpecError(f'{name}: too many arguments')
    bound = dict(kwargs)
    bound.update(zip(free, args))

    for pname, kind, default in ctor.params:
        if pname not in bound:
            if default is _REQUIRED:
                raise MapSpecError(f'{name}: missing {pname}')
            bound[pname] = default
        elif _kind(bound[pname]) != kind:
            raise MapSpecError(f'{name}: {pname} must be a {kind}, got a {_kind(bound[pname])}')
    return ctor.build(order, **bound)


def parse_map(text: str, order: int = DEFAULT_ORDER) -> HarmonicMap:
    value = _Parser(text, order).parse()
    if not isinstance(value, HarmonicMap):
        raise MapSpecError(f'{text!r} does not describe a mapping')
    return value


def parse_dilatation(text: str) -> Dilatation:
    value = _Parser(text, DEFAULT_ORDER).parse()
    if not isinstance(value, Dilatation):
        raise MapSpecError(f'{text!r} does not describe a dilatation')
    return value
