import cmath
import dataclasses
import logging
import math
import typing

import numpy as np

from .errors import InvalidParameter
from .geometry import CheckReport
from .series import DEFAULT_ORDER
from .series import Points
from .series import PowerSeries
from .series import antiderivative
from .series import derivative
from .series import reciprocal

logger = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-10


def _check_a(a: float) -> None:
    if not -1 < a < 1:
        raise InvalidParameter(f'a must lie in (-1, 1), got {a!r}')


def _check_beta(beta: float) -> None:
    if not 0 < beta < math.pi:
        raise InvalidParameter(f'beta must lie in (0, pi), got {beta!r}')


class Dilatation:
    def __call__(self, z: Points):
        raise NotImplementedError

    def derivative(self, z: Points):
        raise NotImplementedError

    def series(self, order: int) -> PowerSeries:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def at_zero(self) -> complex:
        return complex(self(0j))


@dataclasses.dataclass(frozen=True)
class MobiusShifted(Dilatation):
    """omega(z) = e^{2i gamma} (z e^{i theta} + a) / (1 + a z e^{i theta})"""

    a: float
    theta: float
    gamma: float

    def __post_init__(self):
        _check_a(self.a)
        object.__setattr__(self, 'theta', self.theta % math.tau)
        object.__setattr__(self, 'gamma', self.gamma % math.tau)

    def __call__(self, z):
        q = np.exp(1j * self.theta) * z
        return np.exp(2j * self.gamma) * (q + self.a) / (1 + self.a * q)

    def derivative(self, z):
        q = np.exp(1j * self.theta)
        return (
            np.exp(2j * self.gamma) * q * (1 - self.a ** 2)
            / (1 + self.a * q * z) ** 2
        )

    def series(self, order):
        q = cmath.exp(1j * self.theta)
        n = np.arange(1, order + 1)
        coeffs = np.empty(order + 1, dtype=complex)
        coeffs[0] = self.a
        coeffs[1:] = (-self.a) ** (n - 1) * q ** n * (1 - self.a ** 2)
        return PowerSeries(cmath.exp(2j * self.gamma) * coeffs)

    def describe(self):
        return f'mobius(a={self.a:g}, theta={self.theta:g}, gamma={self.gamma:g})'


@dataclasses.dataclass(frozen=True)
class Monomial(Dilatation):
    """omega(z) = e^{i theta} z^n"""

    theta: float
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidParameter(f'n must be a positive integer, got {self.n!r}')
        object.__setattr__(self, 'n', int(self.n))
        object.__setattr__(self, 'theta', self.theta % math.tau)

    def __call__(self, z):
        return np.exp(1j * self.theta) * np.power(z, self.n)

    def derivative(self, z):
        return self.n * np.exp(1j * self.theta) * np.power(z, self.n - 1)

    def series(self, order):
        return PowerSeries.monomial(self.n, order, cmath.exp(1j * self.theta))

    def describe(self):
        return f'monomial(theta={self.theta:g}, n={self.n})'


@dataclasses.dataclass(frozen=True)
class ReflectedMobius(Dilatation):
    """omega(z) = -e^{2i gamma} (e^{i gamma} z - a) / (1 - a e^{i gamma} z)"""

    a: float
    gamma: float

    def __post_init__(self):
        _check_a(self.a)
        object.__setattr__(self, 'gamma', self.gamma % math.tau)

    def __call__(self, z):
        c = np.exp(1j * self.gamma)
        return -np.exp(2j * self.gamma) * (c * z - self.a) / (1 - self.a * c * z)

    def derivative(self, z):
        c = np.exp(1j * self.gamma)
        return (
            np.exp(2j * self.gamma) * c * (self.a ** 2 - 1)
            / (1 - self.a * c * z) ** 2
        )

    def series(self, order):
        c = cmath.exp(1j * self.gamma)
        n = np.arange(1, order + 1)
        coeffs = np.empty(order + 1, dtype=complex)
        coeffs[0] = self.a
        coeffs[1:] = self.a ** (n - 1) * c ** n * (self.a ** 2 - 1)
        return PowerSeries(cmath.exp(2j * self.gamma) * coeffs)

    def describe(self):
        return f'reflected(a={self.a:g}, gamma={self.gamma:g})'


@dataclasses.dataclass(frozen=True, eq=False)
class SeriesGiven(Dilatation):
    omega: PowerSeries
    sample_radius: float = 0.9

    def __post_init__(self):
        r = np.linspace(0, self.sample_radius, 16)[:, None]
        phi = np.linspace(0, math.tau, 64, endpoint=False)[None, :]
        peak = float(np.max(np.abs(self.omega(r * np.exp(1j * phi)))))
        if peak >= 1:
            raise InvalidParameter(
                f'|omega| reaches {peak:g} >= 1 on |z| <= {self.sample_radius}'
            )

    def __call__(self, z):
        return self.omega(z)

    def derivative(self, z):
        return derivative(self.omega)(z)

    def series(self, order):
        return self.omega.extend(order)

    def describe(self):
        return f'series(order={self.omega.order})'


DilatationSpec = MobiusShifted | Monomial | ReflectedMobius | SeriesGiven


@dataclasses.dataclass(frozen=True, eq=False)
class HarmonicMap:
    h: PowerSeries
    g: PowerSeries
    label: str
    params: dict[str, typing.Any] = dataclasses.field(default_factory=dict)
    omega: Dilatation | None = None

    @property
    def order(self) -> int:
        return min(self.h.order, self.g.order)

    def __call__(self, z: Points):
        return self.h(z) + np.conj(self.g(z))

    def dilatation(self, z: Points):
        return derivative(self.g)(z) / derivative(self.h)(z)

    def jacobian(self, z: Points):
        return np.abs(derivative(self.h)(z)) ** 2 - np.abs(derivative(self.g)(z)) ** 2

    def truncate(self, order: int) -> 'HarmonicMap':
        return dataclasses.replace(self, h=self.h.truncate(order), g=self.g.truncate(order))

    @property
    def normalized_class(self) -> str | None:
        tol = NORMALIZATION_TOL
        if abs(self.h[0]) > tol or abs(self.g[0]) > tol or abs(self.h[1] - 1) > tol:
            return None
        return 'H0' if abs(self.g[1]) <= tol else 'H'


def _pin(h: PowerSeries, g: PowerSeries, g1: complex) -> tuple[PowerSeries, PowerSeries]:
    # normalization is set, not computed
    hc = h.coeffs.copy()
    gc = g.coeffs.copy()
    hc[0], hc[1] = 0, 1
    gc[0], gc[1] = 0, g1
    return PowerSeries(hc), PowerSeries(gc)


def identity(order: int = DEFAULT_ORDER) -> HarmonicMap:
    return HarmonicMap(
        h=PowerSeries.monomial(1, order),
        g=PowerSeries.zeros(order),
        label='identity',
    )


def f0(order: int = DEFAULT_ORDER) -> HarmonicMap:
    n = np.arange(order + 1)
    h = (n + 1) / 2
    g = (1 - n) / 2
    h[0] = g[0] = 0
    return HarmonicMap(
        h=PowerSeries(h),
        g=PowerSeries(g),
        label='f0',
        params={'gamma': 0.0, 'a': 0.0, 'target': 'halfplane', 'offset': -0.5},
        omega=Monomial(math.pi, 1),
    )


def halfplane_offset(a: float) -> float:
    return -(1 + a) / 2


def strip_bounds(beta: float) -> tuple[float, float]:
    s = 2 * math.sin(beta)
    return (beta - math.pi) / s, beta / s


def shear_slanted(
    gamma: float, a: float, omega: Dilatation, order: int = DEFAULT_ORDER
) -> HarmonicMap:
    """Shear h + e^{-2i gamma} g = (1 + a) z / (1 - e^{i gamma} z) with g' = omega h'."""
    _check_a(a)
    gamma = gamma % math.tau
    rot = cmath.exp(-2j * gamma)
    c = cmath.exp(1j * gamma)

    n = np.arange(order + 1)
    rhs_prime = PowerSeries((1 + a) * (n + 1) * np.power(c, n))
    w = omega.series(order)
    hp = rhs_prime * reciprocal(1 + rot * w)

    w0 = omega.at_zero()
    if abs(rot * w0 - a) > NORMALIZATION_TOL:
        raise InvalidParameter(
            f'omega(0) = {w0:.6g} is incompatible with h\'(0) = 1, '
            f'expected a*e^(2i*gamma) = {a / rot:.6g}'
        )

    h, g = _pin(antiderivative(hp), antiderivative(w * hp), w0)
    logger.debug('shear_slanted gamma=%g a=%g %s order=%d', gamma, a, omega.describe(), order)
    return HarmonicMap(
        h=h,
        g=g,
        label=f'shear(gamma={gamma:g}, a={a:g}, {omega.describe()})',
        params={
            'gamma': gamma,
            'a': a,
            'target': 'halfplane',
            'offset': halfplane_offset(a),
        },
        omega=omega,
    )


def f_a_gamma(a: float, gamma: float, order: int = DEFAULT_ORDER) -> HarmonicMap:
    _check_a(a)
    gamma = gamma % math.tau
    c = cmath.exp(1j * gamma)
    n = np.arange(order + 1)
    # I_gamma = z / (1 - cz) has coefficients c^{n-1}
    i_n = np.power(c, n - 1.0)
    h = ((1 + a) + (1 - a) * n) / 2 * i_n
    g = cmath.exp(2j * gamma) * ((1 + a) - (1 - a) * n) / 2 * i_n
    h, g = _pin(PowerSeries(h), PowerSeries(g), cmath.exp(2j * gamma) * a)
    return HarmonicMap(
        h=h,
        g=g,
        label=f'fa(a={a:g}, gamma={gamma:g})',
        params={
            'gamma': gamma,
            'a': a,
            'target': 'halfplane',
            'offset': halfplane_offset(a),
        },
        omega=ReflectedMobius(a, gamma),
    )


def psi_series(beta: float, order: int = DEFAULT_ORDER) -> PowerSeries:
    _check_beta(beta)
    n = np.arange(1, order + 1)
    coeffs = np.zeros(order + 1)
    coeffs[1:] = (-1.0) ** (n + 1) * np.sin(n * beta) / (n * math.sin(beta))
    coeffs[1] = 1
    return PowerSeries(coeffs)


def strip_map(beta: float, omega: Dilatation, order: int = DEFAULT_ORDER) -> HarmonicMap:
    _check_beta(beta)
    w0 = omega.at_zero()
    if abs(w0) > NORMALIZATION_TOL:
        raise InvalidParameter(f'strip mappings need omega(0) = 0, got {w0:.6g}')

    psi_prime = derivative(psi_series(beta, order + 1))
    w = omega.series(order)
    hp = psi_prime * reciprocal(1 + w)
    h, g = _pin(antiderivative(hp), antiderivative(w * hp), 0)
    lo, hi = strip_bounds(beta)
    return HarmonicMap(
        h=h,
        g=g,
        label=f'strip(beta={beta:g}, {omega.describe()})',
        params={'beta': beta, 'target': 'strip', 'bounds': (lo, hi)},
        omega=omega,
    )


def validate_normalization(
    h1_plus_g1: PowerSeries, omega: Dilatation, tol: float = NORMALIZATION_TOL
) -> CheckReport:
    """(h + g)'(0) = h'(0) (1 + omega(0)) must hold with h'(0) = 1."""
    w0 = omega.at_zero()
    expected = 1 + w0
    if h1_plus_g1.order < 1:
        return CheckReport(
            name='normalization',
            passed=False,
            max_value=abs(expected),
            witness=0j,
            samples=1,
            tolerance=tol,
            threshold=tol,
            notes="order 0 series has no linear term; inconsistent with h'(0) = 1",
        )
    actual = h1_plus_g1[1]
    gap = abs(actual - expected)
    return CheckReport(
        name='normalization',
        passed=gap < tol,
        max_value=gap,
        witness=0j,
        samples=1,
        tolerance=tol,
        threshold=tol,
        notes=(
            f"(h+g)'(0) = {actual:.6g}, 1 + omega(0) = {expected:.6g}; "
            + ('consistent' if gap < tol else "inconsistent with h'(0) = 1")
        ),
    )
