import cmath
import dataclasses
import enum
import math
import typing

import numpy as np
from numpy.polynomial import polynomial

from .errors import InconclusiveBoundary
from .errors import InvalidParameter
from .errors import NoConvergence

if typing.TYPE_CHECKING:
    from .convolution import MobiusDilatation

COEFF_TOL = 1e-12
DOMINANCE_TOL = 1e-10
BOUNDARY_TOL = 1e-10
MAX_SWEEPS = 500


class ComplexPolynomial:
    __slots__ = ('coeffs',)

    def __init__(self, coeffs):
        coeffs = np.array(coeffs, dtype=complex).ravel()
        if len(coeffs) == 0:
            raise ValueError('polynomial needs at least one coefficient')
        nonzero = np.flatnonzero(np.abs(coeffs) > COEFF_TOL)
        coeffs = coeffs[:nonzero[-1] + 1] if len(nonzero) else coeffs[:1]
        coeffs.flags.writeable = False
        self.coeffs = coeffs

    @classmethod
    def from_roots(cls, roots, leading: complex = 1) -> 'ComplexPolynomial':
        return cls(polynomial.polyfromroots(roots) * leading)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        value = polynomial.polyval(z, self.coeffs)
        return complex(value) if np.ndim(value) == 0 else value

    def __repr__(self) -> str:
        return f'ComplexPolynomial({self.coeffs.tolist()!r})'

    def allclose(self, other: 'ComplexPolynomial', tol: float = 1e-10) -> bool:
        if self.degree != other.degree:
            return False
        return bool(np.all(np.abs(self.coeffs - other.coeffs) <= tol))


def conjugate_reciprocal(p: ComplexPolynomial) -> ComplexPolynomial:
    """p*(z) = z^d conj(p(1/conj(z)))"""
    return ComplexPolynomial(np.conj(p.coeffs[::-1]))


def cohn_reduce(p: ComplexPolynomial) -> ComplexPolynomial:
    """t_1(z) = (conj(a_d) p(z) - a_0 p*(z)) / z

    With |a_d| > |a_0|, p has exactly one zero more in |z| < 1 than t_1.
    """
    c = p.coeffs
    if p.degree < 1:
        raise InvalidParameter('cannot reduce a constant polynomial')
    if abs(c[-1]) <= abs(c[0]) + DOMINANCE_TOL:
        raise InconclusiveBoundary(
            f'leading coefficient {abs(c[-1]):.6g} does not dominate '
            f'constant term {abs(c[0]):.6g}'
        )
    q = np.conj(c[-1]) * c - c[0] * np.conj(c[::-1])
    return ComplexPolynomial(q[1:])


def _normalized(p: ComplexPolynomial) -> ComplexPolynomial:
    return ComplexPolynomial(p.coeffs / np.max(np.abs(p.coeffs)))


def _self_inversive(p: ComplexPolynomial) -> bool:
    c = p.coeffs
    star = np.conj(c[::-1])
    lam = star[-1] / c[-1]
    return (
        abs(abs(lam) - 1) <= DOMINANCE_TOL
        and bool(np.all(np.abs(star - lam * c) <= DOMINANCE_TOL))
    )


def roots_in_disk_count(p: ComplexPolynomial) -> int:
    count = 0
    p = _normalized(p)
    while p.degree > 0:
        lead, const = abs(p.coeffs[-1]), abs(p.coeffs[0])
        if lead > const + DOMINANCE_TOL:
            count += 1
            p = _normalized(cohn_reduce(p))
        elif const > lead + DOMINANCE_TOL:
            # zeros of p* are the reflections of those of p in |z| = 1
            return count + p.degree - roots_in_disk_count(conjugate_reciprocal(p))
        elif _self_inversive(p) and p.degree % 2 == 0:
            return count + p.degree // 2
        else:
            raise InconclusiveBoundary(
                f'|a_d| = |a_0| = {lead:.6g} at degree {p.degree}'
            )
    return count


def brute_force_roots(
    p: ComplexPolynomial, max_sweeps: int = MAX_SWEEPS
) -> list[complex]:
    """All roots by Durand-Kerner iteration, polished with Newton steps."""
    if p.degree < 1:
        raise InvalidParameter('polynomial must have degree >= 1')
    c = p.coeffs / p.coeffs[-1]
    d = p.degree
    radius = 1 + float(np.max(np.abs(c[:-1])))
    z = radius * np.exp(1j * (2 * math.pi * np.arange(d) / d + 0.4))

    for _ in range(max_sweeps):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        delta = polynomial.polyval(z, c) / diff.prod(axis=1)
        z = z - delta
        if np.max(np.abs(delta)) <= 1e-15 * max(1.0, float(np.max(np.abs(z)))):
            break

    dc = polynomial.polyder(c)
    for _ in range(3):
        value = polynomial.polyval(z, c)
        slope = polynomial.polyval(z, dc)
        step = np.where(np.abs(slope) > 1e-300, value / np.where(slope == 0, 1, slope), 0)
        better = np.abs(polynomial.polyval(z - step, c)) < np.abs(value)
        z = np.where(better, z - step, z)

    residual = np.abs(p(z))
    target = 1e-8 * float(np.max(np.abs(p.coeffs)))
    if np.max(residual) >= target:
        raise NoConvergence(f'residual {np.max(residual):.3g} above {target:.3g}')
    return [complex(root) for root in z]


class Blaschke(enum.Enum):
    BoundedByOne = 'BoundedByOne'
    Unbounded = 'Unbounded'
    Boundary = 'Boundary'

    @property
    def bounded(self) -> bool:
        return self is not Blaschke.Unbounded


def classify_blaschke(m: 'MobiusDilatation', tol: float = BOUNDARY_TOL) -> Blaschke:
    peak = max((abs(zero) for zero in m.zeros), default=0.0)
    if peak > 1 + tol:
        return Blaschke.Unbounded
    elif peak >= 1 - tol:
        return Blaschke.Boundary
    else:
        return Blaschke.BoundedByOne


def t_polynomial(a: float, theta: float, gamma: float) -> ComplexPolynomial:
    """t(z) = z^2 + (3a+1)/2 e^{-i theta} z + a e^{-2i theta} + (1-a)/2 e^{-i(gamma+theta)}"""
    q = cmath.exp(-1j * theta)
    a0 = a * q * q + (1 - a) / 2 * cmath.exp(-1j * gamma) * q
    a1 = (3 * a + 1) / 2 * q
    return ComplexPolynomial([a0, a1, 1])


@dataclasses.dataclass(frozen=True)
class Case2:
    a0: complex
    a1: complex
    a2: complex
    leading_gap: float
    leading_gap_formula: float
    t1: ComplexPolynomial | None
    u: complex
    v: float
    z0: complex | None
    uv_gap: float
    uv_gap_formula: float


def case2_quantities(a: float, theta: float, gamma: float) -> Case2:
    # t1 only exists while the leading coefficient of t dominates
    t = t_polynomial(a, theta, gamma)
    a0, a1, a2 = (complex(c) for c in t.coeffs)
    leading_gap = abs(a2) ** 2 - abs(a0) ** 2
    cos = math.cos(theta - gamma)
    u = (3 * a + 1) * (cmath.exp(-1j * gamma) - 2 * cmath.exp(-1j * theta))
    v = a * (5 - 4 * cos) + 3
    return Case2(
        a0=a0,
        a1=a1,
        a2=a2,
        leading_gap=leading_gap,
        leading_gap_formula=(1 - a) / 4 * (a * (5 - 4 * cos) + 3),
        t1=cohn_reduce(t) if abs(a2) > abs(a0) + DOMINANCE_TOL else None,
        u=u,
        v=v,
        z0=u / v if abs(v) > COEFF_TOL else None,
        uv_gap=abs(v) ** 2 - abs(u) ** 2,
        uv_gap_formula=4 * (1 + cos) * (1 - a ** 2 * (5 - 4 * cos)),
    )
