"""Sampled verification on the unit disk. Witnesses, never proofs."""

import csv
import dataclasses
import logging
import math
import typing
from collections.abc import Callable

import numpy as np

from .errors import DegenerateCurve
from .errors import InvalidParameter
from .series import DEFAULT_ORDER

if typing.TYPE_CHECKING:
    from .mappings import HarmonicMap

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]

DEFAULT_RMAX = 0.99
DEFAULT_NR = 60
DEFAULT_NPHI = 240
DEFAULT_CURVE_R = 0.995
DEFAULT_CURVE_M = 1024
DEFAULT_LINES = 200
MIN_CURVE_POINTS = 64
DEAD_BAND = 1e-12
CROSSING_TOL = 2e-3
REFINE_FACTOR = 4
MAX_REFINE_ROUNDS = 12
MAX_CURVE_POINTS = 1 << 14
WITNESS_NOTE = 'sampled witness, not a proof'


@dataclasses.dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    max_value: float
    witness: complex | None
    samples: int
    tolerance: float
    threshold: float
    notes: str = ''

    def to_dict(self) -> dict[str, typing.Any]:
        return {
            'name': self.name,
            'pass': self.passed,
            'max_value': self.max_value,
            'witness': (
                None if self.witness is None
                else [self.witness.real, self.witness.imag]
            ),
            'samples': self.samples,
            'tolerance': self.tolerance,
            'notes': f'threshold={self.threshold:g}; {self.notes}'.rstrip('; '),
        }


def required_order(
    r: float, growth: float = 3, tol: float = 1e-9, minimum: int = DEFAULT_ORDER
) -> int:
    """A truncation order N >= minimum with N^growth * r^N <= tol."""
    if not 0 < r < 1:
        raise InvalidParameter(f'radius must lie in (0, 1), got {r!r}')
    n = max(minimum, 1)
    log_r = math.log(r)
    while growth * math.log(n) + n * log_r > math.log(tol):
        n = max(n + 1, int(n * 1.05))
    return n


def _check_radius(r: float) -> None:
    if not 0 < r < 1:
        raise InvalidParameter(f'radius must lie in (0, 1), got {r!r}')


def polar_grid(r_max: float, n_r: int, n_phi: int) -> np.ndarray:
    _check_radius(r_max)
    if n_r < 1 or n_phi < 1:
        raise InvalidParameter('grid needs n_r >= 1 and n_phi >= 1')
    r = np.arange(1, n_r + 1) / n_r * r_max
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    ring = (r[:, None] * np.exp(1j * phi)[None, :]).ravel()
    return np.concatenate([[0j], ring])


def grid_max_modulus(
    evaluate: Evaluator,
    r_max: float = DEFAULT_RMAX,
    n_r: int = DEFAULT_NR,
    n_phi: int = DEFAULT_NPHI,
    *,
    threshold: float = 1.0,
    name: str = 'max-modulus',
) -> CheckReport:
    z = polar_grid(r_max, n_r, n_phi)
    values = np.abs(evaluate(z))
    values = np.where(np.isfinite(values), values, np.inf)
    i = int(np.argmax(values))
    return CheckReport(
        name=name,
        passed=bool(values[i] < threshold),
        max_value=float(values[i]),
        witness=complex(z[i]),
        samples=len(z),
        tolerance=0.0,
        threshold=threshold,
        notes=f'max |value| on |z| <= {r_max:g}; {WITNESS_NOTE}',
    )


def _degree(coeffs: np.ndarray) -> int:
    nonzero = np.flatnonzero(coeffs)
    return int(nonzero[-1]) if len(nonzero) else 0


def _check_order(f: 'HarmonicMap', r: float) -> int:
    needed = required_order(r)
    degree = max(_degree(f.h.coeffs[: f.order + 1]), _degree(f.g.coeffs[: f.order + 1]))
    # low degree polynomials are exact at any order
    if f.order < needed and 2 * degree > f.order:
        raise InvalidParameter(
            f'{f.label}: order {f.order} is too low for r={r:g}, need at least {needed}'
        )
    return needed


def jacobian_positive(
    f: 'HarmonicMap',
    r_max: float = DEFAULT_RMAX,
    n_r: int = DEFAULT_NR,
    n_phi: int = DEFAULT_NPHI,
) -> CheckReport:
    needed = _check_order(f, r_max)
    if f.order > needed:
        f = f.truncate(needed)

    z = polar_grid(r_max, n_r, n_phi)
    jac = f.jacobian(z)
    i = int(np.argmin(jac))
    return CheckReport(
        name='jacobian',
        passed=bool(jac[i] > 0),
        max_value=float(-jac[i]),
        witness=complex(z[i]),
        samples=len(z),
        tolerance=0.0,
        threshold=0.0,
        notes=f"max_value is -min(|h'|^2 - |g'|^2) on |z| <= {r_max:g}; {WITNESS_NOTE}",
    )


@dataclasses.dataclass(frozen=True, eq=False)
class BoundaryCurve:
    radius: float
    points: np.ndarray
    phi: np.ndarray | None = None

    def __post_init__(self):
        points = np.asarray(self.points, dtype=complex).ravel()
        if len(points) < MIN_CURVE_POINTS:
            raise InvalidParameter(
                f'curves need at least {MIN_CURVE_POINTS} points, got {len(points)}'
            )
        if self.phi is None:
            phi = 2 * math.pi * np.arange(len(points)) / len(points)
        else:
            phi = np.asarray(self.phi, dtype=float).ravel()
            if len(phi) != len(points) or np.any(np.diff(phi) <= 0):
                raise InvalidParameter('phi must be strictly increasing, one per point')
        object.__setattr__(self, 'points', points)
        object.__setattr__(self, 'phi', phi)

    def rotated(self, phi: float) -> 'BoundaryCurve':
        return BoundaryCurve(self.radius, self.points * np.exp(1j * phi), self.phi)

    def to_csv(self, fh: typing.TextIO) -> None:
        writer = csv.writer(fh, lineterminator='\n')
        writer.writerow(['phi', 're_w', 'im_w'])
        for phi, w in zip(self.phi, self.points):
            writer.writerow([f'{phi:.17g}', f'{w.real:.17g}', f'{w.imag:.17g}'])


def _refine(
    f: 'HarmonicMap', r: float, phi: np.ndarray, w: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    # halve every step much longer than the typical one
    typical = float(np.median(np.abs(np.roll(w, -1) - w)))
    for _ in range(MAX_REFINE_ROUNDS):
        steps = np.abs(np.roll(w, -1) - w)
        coarse = np.flatnonzero(steps > REFINE_FACTOR * typical)
        if len(coarse) == 0 or len(phi) + len(coarse) > MAX_CURVE_POINTS:
            break
        following = np.append(phi[1:], phi[0] + 2 * math.pi)
        mid = (phi[coarse] + following[coarse]) / 2
        phi = np.concatenate([phi, mid])
        w = np.concatenate([w, f(r * np.exp(1j * mid))])
        order = np.argsort(phi, kind='stable')
        phi, w = phi[order], w[order]
    logger.debug('refined curve at r=%g to %d points', r, len(phi))
    return phi, w


def boundary_curve(
    f: 'HarmonicMap',
    r: float = DEFAULT_CURVE_R,
    m: int = DEFAULT_CURVE_M,
    *,
    refine: bool = False,
) -> BoundaryCurve:
    _check_radius(r)
    if m < MIN_CURVE_POINTS:
        raise InvalidParameter(f'curves need at least {MIN_CURVE_POINTS} points, got {m}')
    _check_order(f, r)
    phi = 2 * math.pi * np.arange(m) / m
    w = f(r * np.exp(1j * phi))
    if refine:
        phi, w = _refine(f, r, phi, w)
    return BoundaryCurve(r, w, phi)


def circle_curve(r: float = 1.0, m: int = 256) -> BoundaryCurve:
    return BoundaryCurve(r, r * np.exp(2j * math.pi * np.arange(m) / m))


def crescent_fixture(m: int = 256) -> BoundaryCurve:
    # outline of 1 <= |w| <= 2, pi/4 <= arg w <= 3pi/4; the line Im w = 0.9
    # meets it in two intervals
    k = m // 4
    t = np.linspace(0, 1, k, endpoint=False)
    lo, hi = math.pi / 4, 3 * math.pi / 4
    outer = 2 * np.exp(1j * (lo + (hi - lo) * t))
    left = np.exp(1j * hi) * (2 - t)
    inner = np.exp(1j * (hi - (hi - lo) * t))
    right = np.exp(1j * lo) * (1 + t)
    points = np.concatenate([outer, left, inner, right])
    return BoundaryCurve(1.0, points)


def _crossings(
    im: np.ndarray, levels: np.ndarray, band: float = DEAD_BAND
) -> tuple[np.ndarray, np.ndarray]:
    # start every row at the topmost sample, which lies above all levels
    start = int(np.argmax(im))
    shifted = np.roll(im, -start)
    d = shifted[None, :] - levels[:, None]
    s = np.where(np.abs(d) <= band, 0, np.sign(d))

    # samples inside the band inherit the previous sign, so counts stay even
    idx = np.where(s != 0, np.arange(s.shape[1])[None, :], 0)
    np.maximum.accumulate(idx, axis=1, out=idx)
    s = np.take_along_axis(s, idx, axis=1)

    changes = s != np.roll(s, 1, axis=1)
    first = (np.argmax(changes, axis=1) + start) % len(im)
    return changes.sum(axis=1), first


def convex_in_direction_check(
    curve: BoundaryCurve, alpha: float, n_lines: int = DEFAULT_LINES
) -> CheckReport:
    rotated = curve.points * np.exp(-1j * alpha)
    im = rotated.imag
    lo, hi = float(im.min()), float(im.max())
    if hi - lo < 1e-9:
        raise DegenerateCurve(f'curve has imaginary extent {hi - lo:g} in direction {alpha:g}')

    levels = lo + (hi - lo) * np.arange(1, n_lines + 1) / (n_lines + 1)
    # wobble smaller than the band is not a crossing
    band = max(DEAD_BAND, min(CROSSING_TOL * (hi - lo), (hi - lo) / (n_lines + 1) / 2))
    counts, first = _crossings(im, levels, band)
    worst = int(np.argmax(counts))
    logger.debug('direction %g: crossing counts in [%d, %d]', alpha, counts.min(), counts.max())
    return CheckReport(
        name='convex-in-direction',
        passed=bool(np.all(counts == 2)),
        max_value=float(counts[worst]),
        witness=complex(curve.points[first[worst]]),
        samples=len(curve.points) * n_lines,
        tolerance=band,
        threshold=3,
        notes=(
            f'direction alpha={alpha:g} taken as the line through 0 and e^(i alpha); '
            f'max crossings over {n_lines} lines at r={curve.radius:g}; {WITNESS_NOTE}'
        ),
    )


def image_bound_check(
    curve: BoundaryCurve, params: dict[str, typing.Any], tol: float = 0.05
) -> CheckReport:
    w = curve.points
    target = params.get('target')
    if target == 'halfplane':
        excess = params['offset'] - (np.exp(1j * params['gamma']) * w).real
        notes = f"Re(e^(i gamma) w) > {params['offset']:g}"
    elif target == 'strip':
        lo, hi = params['bounds']
        excess = np.maximum(lo - w.real, w.real - hi)
        notes = f'{lo:g} < Re w < {hi:g}'
    else:
        raise InvalidParameter(f'no image bound known for target {target!r}')

    i = int(np.argmax(excess))
    return CheckReport(
        name='image-bound',
        passed=bool(excess[i] < tol),
        max_value=float(excess[i]),
        witness=complex(w[i]),
        samples=len(w),
        tolerance=tol,
        threshold=tol,
        notes=f'{notes} at r={curve.radius:g}; {WITNESS_NOTE}',
    )
