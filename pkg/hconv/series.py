import typing

import numpy as np
from numpy.polynomial import polynomial

from .errors import NearZeroConstantTerm

DEFAULT_ORDER = 128
EPS0 = 1e-12

Scalar = complex | float | int
Points = typing.Union[Scalar, np.ndarray]


class PowerSeries:
    """Truncated power series c_0 + c_1 z + ... + c_N z^N.

    Instances are immutable. Binary operations on series of different orders
    truncate to the smaller order.
    """

    __slots__ = ('coeffs',)

    def __init__(self, coeffs):
        coeffs = np.array(coeffs, dtype=complex)
        if coeffs.ndim != 1 or len(coeffs) == 0:
            raise ValueError('coefficients must be a non-empty vector')
        coeffs.flags.writeable = False
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zeros(cls, order: int) -> 'PowerSeries':
        return cls(np.zeros(order + 1))

    @classmethod
    def constant(cls, value: Scalar, order: int) -> 'PowerSeries':
        coeffs = np.zeros(order + 1, dtype=complex)
        coeffs[0] = value
        return cls(coeffs)

    @classmethod
    def monomial(cls, k: int, order: int, c: Scalar = 1) -> 'PowerSeries':
        coeffs = np.zeros(order + 1, dtype=complex)
        if k <= order:
            coeffs[k] = c
        return cls(coeffs)

    @classmethod
    def geometric(cls, order: int, ratio: Scalar = 1, start: int = 0) -> 'PowerSeries':
        # sum_{n >= start} ratio^n z^n
        n = np.arange(order + 1)
        coeffs = np.power(complex(ratio), n)
        coeffs[:start] = 0
        return cls(coeffs)

    def __repr__(self) -> str:
        head = ', '.join(f'{c:.6g}' for c in self.coeffs[:4])
        return f'PowerSeries([{head}{", ..." if self.order > 3 else ""}], order={self.order})'

    def __getitem__(self, n: int) -> complex:
        return complex(self.coeffs[n])

    def __call__(self, z: Points):
        return evaluate(self, z)

    def __neg__(self) -> 'PowerSeries':
        return PowerSeries(-self.coeffs)

    def __add__(self, other: 'PowerSeries | Scalar') -> 'PowerSeries':
        return add(self, _lift(other, self.order))

    __radd__ = __add__

    def __sub__(self, other: 'PowerSeries | Scalar') -> 'PowerSeries':
        return add(self, -_lift(other, self.order))

    def __rsub__(self, other: Scalar) -> 'PowerSeries':
        return add(-self, _lift(other, self.order))

    def __mul__(self, other: 'PowerSeries | Scalar') -> 'PowerSeries':
        if isinstance(other, PowerSeries):
            return multiply(self, other)
        return PowerSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other: 'PowerSeries | Scalar') -> 'PowerSeries':
        if isinstance(other, PowerSeries):
            return multiply(self, reciprocal(other))
        return PowerSeries(self.coeffs / other)

    def truncate(self, order: int) -> 'PowerSeries':
        if order >= self.order:
            return self
        return PowerSeries(self.coeffs[:order + 1])

    def extend(self, order: int) -> 'PowerSeries':
        if order <= self.order:
            return self.truncate(order)
        coeffs = np.zeros(order + 1, dtype=complex)
        coeffs[:len(self.coeffs)] = self.coeffs
        return PowerSeries(coeffs)

    def allclose(self, other: 'PowerSeries', tol: float = 1e-12) -> bool:
        a, b = _match(self, other)
        return bool(np.all(np.abs(a - b) <= tol))


def _lift(value: 'PowerSeries | Scalar', order: int) -> PowerSeries:
    if isinstance(value, PowerSeries):
        return value
    return PowerSeries.constant(value, order)


def _match(s: PowerSeries, t: PowerSeries) -> tuple[np.ndarray, np.ndarray]:
    n = min(len(s.coeffs), len(t.coeffs))
    return s.coeffs[:n], t.coeffs[:n]


def add(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    a, b = _match(s, t)
    return PowerSeries(a + b)


def multiply(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    a, b = _match(s, t)
    return PowerSeries(np.convolve(a, b)[:len(a)])


def reciprocal(s: PowerSeries, eps0: float = EPS0) -> PowerSeries:
    c = s.coeffs
    if abs(c[0]) <= eps0:
        raise NearZeroConstantTerm(f'constant term {c[0]!r} is too close to zero')
    b = np.zeros_like(c)
    b[0] = 1 / c[0]
    for n in range(1, len(c)):
        b[n] = -np.dot(c[1:n + 1], b[n - 1::-1]) * b[0]
    return PowerSeries(b)


def derivative(s: PowerSeries) -> PowerSeries:
    if s.order == 0:
        return PowerSeries.zeros(0)
    return PowerSeries(s.coeffs[1:] * np.arange(1, s.order + 1))


def antiderivative(s: PowerSeries) -> PowerSeries:
    coeffs = np.zeros_like(s.coeffs)
    coeffs[1:] = s.coeffs[:-1] / np.arange(1, s.order + 1)
    return PowerSeries(coeffs)


def hadamard(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    a, b = _match(s, t)
    return PowerSeries(a * b)


def rotate(s: PowerSeries, phi: float) -> PowerSeries:
    """Coefficients of z -> s(e^{i phi} z)."""
    return PowerSeries(s.coeffs * np.exp(1j * phi * np.arange(s.order + 1)))


def evaluate(s: PowerSeries, z: Points):
    # numpy's polyval is Horner's scheme
    value = polynomial.polyval(z, s.coeffs)
    if np.ndim(value) == 0:
        return complex(value)
    return value
