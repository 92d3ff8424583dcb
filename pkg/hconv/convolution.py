"""Harmonic convolution and closed-form dilatations of convolutions."""

import cmath
import dataclasses
import functools
import math
import typing
from collections.abc import Callable

import numpy as np

from .errors import DenominatorVanishes
from .errors import InvalidParameter
from .mappings import Dilatation
from .mappings import HarmonicMap
from .mappings import MobiusShifted
from .mappings import f0
from .rootcheck import ComplexPolynomial
from .rootcheck import t_polynomial
from .series import Points
from .series import PowerSeries
from .series import derivative
from .series import hadamard
from .series import reciprocal

DENOMINATOR_TOL = 1e-12
UNIMODULAR_TOL = 1e-12
CASE1_TOL = 1e-12

Evaluator = Callable[[Points], typing.Any]


def _pointwise(fn):
    @functools.wraps(fn)
    def wrapper(z):
        z = np.asarray(z, dtype=complex)
        value = fn(z)
        return complex(value) if z.ndim == 0 else value
    return wrapper


def _guard(den: np.ndarray, z: np.ndarray, what: str) -> None:
    small = np.flatnonzero(np.abs(den) < DENOMINATOR_TOL)
    if len(small):
        witness = complex(np.ravel(z)[small[0]])
        raise DenominatorVanishes(
            f'{what} denominator vanishes at z = {witness:.6g}', witness=witness
        )


def _check_a(a: float) -> None:
    if not -1 < a < 1:
        raise InvalidParameter(f'a must lie in (-1, 1), got {a!r}')


@dataclasses.dataclass(frozen=True)
class MobiusDilatation:
    """unimodular_factor * z^k * prod (z + A_j) / (1 + conj(A_j) z)"""

    unimodular_factor: complex
    z_power: int
    zeros: tuple[complex, ...]

    def __post_init__(self):
        if abs(abs(self.unimodular_factor) - 1) > UNIMODULAR_TOL:
            raise InvalidParameter(
                f'|unimodular_factor| = {abs(self.unimodular_factor):.17g}, expected 1'
            )
        if self.z_power < 0:
            raise InvalidParameter(f'z_power must be >= 0, got {self.z_power}')
        object.__setattr__(self, 'zeros', tuple(complex(a) for a in self.zeros))

    def __call__(self, z: Points):
        z = np.asarray(z, dtype=complex)
        value = self.unimodular_factor * np.power(z, self.z_power)
        for a in self.zeros:
            value = value * (z + a) / (1 + np.conj(a) * z)
        return complex(value) if z.ndim == 0 else value

    @property
    def t_star(self) -> ComplexPolynomial:
        # prod (1 + conj(A_j) z)
        poly = np.array([1], dtype=complex)
        for a in self.zeros:
            poly = np.convolve(poly, [1, np.conj(a)])
        return ComplexPolynomial(poly)


def harmonic_convolve(f: HarmonicMap, F: HarmonicMap) -> HarmonicMap:
    params = {}
    if 'gamma' in f.params and 'gamma' in F.params:
        params['gamma'] = f.params['gamma'] + F.params['gamma']
    return HarmonicMap(
        h=hadamard(f.h, F.h),
        g=hadamard(f.g, F.g),
        label=f'conv({f.label}, {F.label})',
        params=params,
    )


def series_dilatation(F: HarmonicMap) -> PowerSeries:
    return derivative(F.g) * reciprocal(derivative(F.h))


def _f0_star_evaluator(omega: Dilatation, gamma: float) -> Evaluator:
    e = cmath.exp(1j * gamma)

    @_pointwise
    def evaluate(z):
        w = omega(z)
        dw = omega.derivative(z)
        shifted = w - z * dw / 2
        num = w * w + e * e * shifted + e * dw / 2
        den = 1 + shifted / (e * e) + z * z * dw / (2 * e)
        _guard(den, z, 'f0 * f dilatation')
        return -z / e * num / den

    return evaluate


def dilatation_f0_star(
    f: HarmonicMap, gamma: float, a: float
) -> tuple[Evaluator, PowerSeries]:
    # closed form and the series oracle (g0 * g)' / (h0 * h)'
    _check_a(a)
    if f.omega is None:
        raise InvalidParameter(f'{f.label} carries no dilatation')
    oracle = series_dilatation(harmonic_convolve(f0(f.order), f))
    return _f0_star_evaluator(f.omega, gamma), oracle


def dilatation_mobius_case(a: float, theta: float, gamma: float) -> MobiusDilatation:
    """-z e^{3i gamma} e^{2i theta} t(z) / t*(z) with the zeros of t as -A, -B."""
    _check_a(a)
    t = t_polynomial(a, theta, gamma)
    c, b = complex(t.coeffs[0]), complex(t.coeffs[1])

    # stable quadratic formula: take the larger of -b +- sqrt first
    root = cmath.sqrt(b * b - 4 * c)
    q = -(b + root) / 2 if abs(b + root) >= abs(b - root) else -(b - root) / 2
    roots = (q, c / q) if q != 0 else (0j, 0j)
    zeros = sorted((-r for r in roots), key=abs, reverse=True)
    return MobiusDilatation(
        unimodular_factor=-cmath.exp(3j * gamma) * cmath.exp(2j * theta),
        z_power=1,
        zeros=tuple(zeros),
    )


def closed_form_gap(a: float, theta: float, gamma: float, z: Points) -> float:
    general = _f0_star_evaluator(MobiusShifted(a, theta, gamma), gamma)
    factored = dilatation_mobius_case(a, theta, gamma)
    return float(np.max(np.abs(general(z) - factored(z))))


def dilatation_fa_star(f: HarmonicMap, a: float, gamma: float) -> Evaluator:
    _check_a(a)
    hp = derivative(f.h)
    hpp = derivative(hp)
    gp = derivative(f.g)
    gpp = derivative(gp)
    c = cmath.exp(1j * gamma)

    @_pointwise
    def evaluate(z):
        w = c * z
        num = 2 * a * gp(w) - (1 - a) * w * gpp(w)
        den = 2 * hp(w) + (1 - a) * w * hpp(w)
        _guard(den, z, 'f_a * f dilatation')
        return c * c * num / den

    return evaluate


def mobius_case(a: float, theta: float, gamma: float) -> int | None:
    cos = math.cos(theta - gamma)
    if abs(cos + 1) <= CASE1_TOL:
        return 1 if -1 / 3 <= a < 1 else None
    return 2 if a * a < 1 / (5 - 4 * cos) else None


def power_hypothesis(n: int, a: float) -> bool:
    # a = (n - 2)/(n + 2) is admitted even after rounding
    return (n - 2) / (n + 2) - 1e-12 <= a < 1


class UValues(typing.NamedTuple):
    u: typing.Any
    X: typing.Any
    terms: tuple[typing.Any, ...]


class SValues(typing.NamedTuple):
    S: typing.Any
    X: typing.Any
    T: typing.Any
    T_factored: typing.Any


def _scalar(value, z: np.ndarray):
    if z.ndim:
        return value
    return complex(value) if np.iscomplexobj(value) else float(value)


def _check_n(n: int) -> None:
    if int(n) != n or n < 1:
        raise InvalidParameter(f'n must be a positive integer, got {n!r}')


def u_halfplane(z: Points, n: int, theta: float, gamma1: float) -> UValues:
    _check_n(n)
    z = np.asarray(z, dtype=complex)
    w = z * cmath.exp(1j * gamma1)
    v = cmath.exp(1j * (theta - 2 * gamma1)) * np.power(z, n)
    terms = (2 * w / (1 - w), -n * v / (1 + v))
    u = terms[0] + terms[1]
    return UValues(
        _scalar(u, z),
        _scalar(u.real, z),
        tuple(_scalar(t, z) for t in terms),
    )


def u_strip(z: Points, beta: float, theta: float, n: int) -> UValues:
    _check_n(n)
    if not 0 < beta < math.pi:
        raise InvalidParameter(f'beta must lie in (0, pi), got {beta!r}')
    z = np.asarray(z, dtype=complex)
    lo = cmath.exp(-1j * beta) * z
    hi = cmath.exp(1j * beta) * z
    v = cmath.exp(1j * theta) * np.power(z, n)
    terms = (-lo / (1 + lo), -hi / (1 + hi), -n * v / (1 + v))
    u = terms[0] + terms[1] + terms[2]
    return UValues(
        _scalar(u, z),
        _scalar(u.real, z),
        tuple(_scalar(t, z) for t in terms),
    )


def _s_values(z: np.ndarray, u, n: int, theta: float, gamma: float, a: float) -> SValues:
    _check_a(a)
    u = np.asarray(u, dtype=complex)
    den = 2 + (1 - a) * u
    _guard(den, z, 'S')
    S = cmath.exp(1j * (2 * gamma + theta)) * np.power(z, n) * (
        2 * a - (1 - a) * n - (1 - a) * u
    ) / den
    X = u.real
    T = (2 + (1 - a) * X) ** 2 - (2 * a - (1 - a) * n - (1 - a) * X) ** 2
    T_factored = (1 - a) * (2 * (1 + a) - (1 - a) * n) * (2 + n + 2 * X)
    return SValues(*(_scalar(v, z) for v in (S, X, T, T_factored)))


def S_halfplane(
    z: Points, n: int, theta: float, gamma1: float, gamma: float, a: float
) -> SValues:
    z = np.asarray(z, dtype=complex)
    u = u_halfplane(z, n, theta, gamma1).u
    return _s_values(z, u, n, theta, gamma, a)


def S_strip(
    z: Points, n: int, theta: float, beta: float, gamma: float, a: float
) -> SValues:
    z = np.asarray(z, dtype=complex)
    u = u_strip(z, beta, theta, n).u
    return _s_values(z, u, n, theta, gamma, a)


def T_check(values: SValues):
    T = np.asarray(values.T)
    return np.abs(T - np.asarray(values.T_factored)) / np.maximum(1, np.abs(T))
