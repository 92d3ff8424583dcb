import argparse
import dataclasses
import logging
import math
import pathlib
import sys
import typing
from collections.abc import Callable

import numpy as np

from .convolution import DENOMINATOR_TOL
from .convolution import S_halfplane
from .convolution import S_strip
from .convolution import SValues
from .convolution import T_check
from .convolution import dilatation_fa_star
from .convolution import dilatation_mobius_case
from .convolution import harmonic_convolve
from .convolution import closed_form_gap
from .convolution import series_dilatation
from .convolution import mobius_case
from .convolution import power_hypothesis
from .errors import DenominatorVanishes
from .errors import HconvError
from .errors import InvalidParameter
from .geometry import DEFAULT_CURVE_M
from .geometry import DEFAULT_CURVE_R
from .geometry import DEFAULT_LINES
from .geometry import DEFAULT_NPHI
from .geometry import DEFAULT_NR
from .geometry import DEFAULT_RMAX
from .geometry import MIN_CURVE_POINTS
from .geometry import CheckReport
from .geometry import boundary_curve
from .geometry import convex_in_direction_check
from .geometry import grid_max_modulus
from .geometry import image_bound_check
from .geometry import jacobian_positive
from .geometry import polar_grid
from .geometry import required_order
from .mappings import HarmonicMap
from .mappings import MobiusShifted
from .mappings import Monomial
from .mappings import ReflectedMobius
from .mappings import f0
from .mappings import f_a_gamma
from .mappings import shear_slanted
from .mappings import strip_map
from .mappings import validate_normalization
from .mapspec import parse_map
from .report import CONSISTENT
from .report import CONTRADICTION
from .report import INFORMATIONAL
from .report import build_report
from .report import dumps
from .rootcheck import BOUNDARY_TOL
from .rootcheck import classify_blaschke
from .selftest import run_all
from .series import DEFAULT_ORDER
from .series import PowerSeries
from .workers import map_ordered

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONTRADICTION = 1
EXIT_USAGE = 2

FAMILY_RADII = (0.2, 0.4, 0.6, 0.8, 0.95)
IDENTITY_RADIUS = 0.8
S_TOL = 1e-9
T_TOL = 1e-9
CLOSED_FORM_TOL = 1e-9
IDENTITY_TOL = 1e-8


@dataclasses.dataclass(frozen=True)
class GridConfig:
    order: int = DEFAULT_ORDER
    r_max: float = DEFAULT_RMAX
    n_r: int = DEFAULT_NR
    n_phi: int = DEFAULT_NPHI
    curve_r: float = DEFAULT_CURVE_R
    curve_m: int = DEFAULT_CURVE_M
    lines: int = DEFAULT_LINES

    def __post_init__(self):
        if self.order < 2:
            raise InvalidParameter(f'order must be >= 2, got {self.order}')
        for name in ('r_max', 'curve_r'):
            if not 0 < getattr(self, name) < 1:
                raise InvalidParameter(f'{name} must lie in (0, 1), got {getattr(self, name)}')
        if self.n_r < 1 or self.n_phi < 1 or self.lines < 1:
            raise InvalidParameter('nr, nphi and lines must be positive')
        if self.curve_m < MIN_CURVE_POINTS:
            raise InvalidParameter(f'curves need at least {MIN_CURVE_POINTS} points')

    @property
    def curve_order(self) -> int:
        return max(self.order, required_order(max(self.curve_r, self.r_max)))

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'GridConfig':
        return cls(
            order=args.order,
            r_max=args.rmax,
            n_r=args.nr,
            n_phi=args.nphi,
            curve_r=args.curve_r,
            curve_m=args.curve_m,
            lines=args.lines,
        )

    def to_dict(self) -> dict[str, typing.Any]:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class SweepConfig:
    a_range: tuple[float, float, int] = (-0.95, 0.95, 41)
    angle_range: tuple[float, float, int] = (-math.pi, math.pi, 41)
    gamma: float = 0.0
    gamma1: float = 0.0
    n: int = 1
    beta: float = math.pi / 2
    grid: GridConfig = dataclasses.field(default_factory=GridConfig)

    def __post_init__(self):
        lo, hi, steps = self.a_range
        if steps < 2 or self.angle_range[2] < 2:
            raise InvalidParameter('sweeps need at least 2 steps per axis')
        if not -1 < lo <= hi < 1:
            raise InvalidParameter(f'a range must lie in (-1, 1), got ({lo}, {hi})')
        if self.angle_range[0] > self.angle_range[1]:
            raise InvalidParameter('angle range is empty')
        if int(self.n) != self.n or self.n < 1:
            raise InvalidParameter(f'n must be a positive integer, got {self.n}')
        if not 0 < self.beta < math.pi:
            raise InvalidParameter(f'beta must lie in (0, pi), got {self.beta}')

    def a_values(self) -> np.ndarray:
        lo, hi, steps = self.a_range
        return np.linspace(lo, hi, int(steps))

    def angle_values(self) -> np.ndarray:
        # (lo, hi], so the default axis contains pi and not -pi
        lo, hi, steps = self.angle_range
        return np.linspace(lo, hi, int(steps) + 1)[1:]

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'SweepConfig':
        return cls(
            a_range=(args.a_min, args.a_max, args.a_steps),
            angle_range=(args.angle_min, args.angle_max, args.angle_steps),
            gamma=args.gamma,
            gamma1=getattr(args, 'gamma1', 0.0),
            n=getattr(args, 'n', 1),
            beta=getattr(args, 'beta', math.pi / 2),
            grid=GridConfig.from_args(args),
        )

    def to_dict(self) -> dict[str, typing.Any]:
        return dataclasses.asdict(self)


def _extreme(
    name: str,
    values: np.ndarray,
    z: np.ndarray,
    threshold: float,
    notes: str,
    *,
    strict: bool = False,
    tolerance: float = 0.0,
) -> CheckReport:
    values = np.where(np.isnan(values), np.inf, values)
    i = int(np.argmax(values))
    peak = float(values[i])
    return CheckReport(
        name=name,
        passed=peak < threshold if strict else peak <= threshold,
        max_value=peak,
        witness=complex(z[i]),
        samples=len(z),
        tolerance=tolerance,
        threshold=threshold,
        notes=notes,
    )


def _vanished(name: str, e: DenominatorVanishes) -> CheckReport:
    return CheckReport(
        name=name,
        passed=False,
        max_value=math.inf,
        witness=e.witness,
        samples=0,
        tolerance=DENOMINATOR_TOL,
        threshold=0,
        notes=str(e),
    )


def _guarded(name: str, fn: Callable[..., CheckReport], *args, **kwargs) -> CheckReport:
    try:
        return fn(*args, **kwargs)
    except DenominatorVanishes as e:
        return _vanished(name, e)


def _count_check(name: str, violations: int, total: int, notes: str) -> CheckReport:
    return CheckReport(
        name=name,
        passed=violations == 0,
        max_value=float(violations),
        witness=None,
        samples=total,
        tolerance=0.0,
        threshold=0,
        notes=notes,
    )


def _verdict(satisfied: bool, checks: list[CheckReport]) -> str:
    if not satisfied:
        return INFORMATIONAL
    return CONSISTENT if all(c.passed for c in checks) else CONTRADICTION


def convolution_checks(F: HarmonicMap, alpha: float, grid: GridConfig) -> list[CheckReport]:
    jac = jacobian_positive(F, grid.r_max, grid.n_r, grid.n_phi)
    curve = boundary_curve(F, grid.curve_r, grid.curve_m, refine=True)
    convex = convex_in_direction_check(curve, alpha, grid.lines)
    return [jac, convex]


def _blaschke_check(m) -> CheckReport:
    cls = classify_blaschke(m)
    peak = max((abs(zero) for zero in m.zeros), default=0.0)
    return CheckReport(
        name='blaschke',
        passed=cls.bounded,
        max_value=peak,
        witness=None,
        samples=len(m.zeros),
        tolerance=BOUNDARY_TOL,
        threshold=1,
        notes=f'classification={cls.value}; max |A_j|',
    )


def _closed_form_check(a: float, theta: float, gamma: float, grid: GridConfig) -> CheckReport:
    z = polar_grid(grid.r_max, grid.n_r, grid.n_phi)
    gap = closed_form_gap(a, theta, gamma, z)
    return CheckReport(
        name='closed-form',
        passed=gap <= CLOSED_FORM_TOL,
        max_value=gap,
        witness=None,
        samples=len(z),
        tolerance=CLOSED_FORM_TOL,
        threshold=CLOSED_FORM_TOL,
        notes='general f0 * f dilatation against its factored Blaschke form',
    )


def verify_t1(a: float, theta: float, gamma: float, grid: GridConfig) -> dict[str, typing.Any]:
    case = mobius_case(a, theta, gamma)
    m = dilatation_mobius_case(a, theta, gamma)
    f = shear_slanted(gamma, a, MobiusShifted(a, theta, gamma), grid.curve_order)
    F = harmonic_convolve(f0(grid.curve_order), f)
    checks = [
        _blaschke_check(m),
        grid_max_modulus(m, grid.r_max, grid.n_r, grid.n_phi, name='dilatation-max-modulus'),
        _guarded('closed-form', _closed_form_check, a, theta, gamma, grid),
        *convolution_checks(F, -gamma, grid),
    ]
    satisfied = case is not None
    return build_report(
        'verify-t1',
        {'a': a, 'theta': theta, 'gamma': gamma, 'grid': grid.to_dict()},
        case,
        satisfied,
        checks,
        _verdict(satisfied, checks),
    )


def s_checks(values: SValues, z: np.ndarray, n: int, boundary: bool) -> list[CheckReport]:
    note = '; a = (n-2)/(n+2), T vanishes identically' if boundary else ''
    return [
        _extreme(
            'S-max-modulus', np.abs(values.S), z, 1 + S_TOL,
            f'max |S| on the grid{note}', tolerance=S_TOL,
        ),
        _extreme(
            'T-nonnegative', -np.asarray(values.T), z, T_TOL,
            f'max_value is -min T{note}', tolerance=T_TOL,
        ),
        _extreme(
            'T-identity', T_check(values), z, T_TOL,
            'expanded against factored T, relative to max(1, |T|)', tolerance=T_TOL,
        ),
        _extreme(
            'X-bound', -(np.asarray(values.X) + 1 + n / 2), z, 0.0,
            'max_value is -min(X + 1 + n/2)', strict=True,
        ),
    ]


def _identity_check(
    f: HarmonicMap,
    F: HarmonicMap,
    a: float,
    gamma: float,
    s_of: Callable[[np.ndarray], SValues],
    grid: GridConfig,
) -> CheckReport:
    z = polar_grid(IDENTITY_RADIUS, max(grid.n_r // 4, 1), max(grid.n_phi // 4, 1))
    closed = dilatation_fa_star(f, a, gamma)(z)
    by_s = s_of(np.exp(1j * gamma) * z).S
    oracle = series_dilatation(F)(z)
    gap = np.maximum(np.abs(closed - by_s), np.abs(closed - oracle))
    return _extreme(
        'dilatation-identity', gap, z, IDENTITY_TOL,
        f'f_a * f dilatation against S(e^(i gamma) z) and the series quotient, |z| <= {IDENTITY_RADIUS}',
        tolerance=IDENTITY_TOL,
    )


def _s_report(
    command: str,
    params: dict[str, typing.Any],
    n: int,
    a: float,
    gamma: float,
    f: HarmonicMap,
    s_of: Callable[[np.ndarray], SValues],
    alpha: float,
    grid: GridConfig,
) -> dict[str, typing.Any]:
    satisfied = power_hypothesis(n, a)
    boundary = abs(a - (n - 2) / (n + 2)) <= 1e-12
    z = polar_grid(grid.r_max, grid.n_r, grid.n_phi)
    F = harmonic_convolve(f, f_a_gamma(a, gamma, f.order))
    try:
        checks = s_checks(s_of(z), z, n, boundary)
    except DenominatorVanishes as e:
        checks = [_vanished('S-max-modulus', e)]
    checks += [
        _guarded('dilatation-identity', _identity_check, f, F, a, gamma, s_of, grid),
        *convolution_checks(F, alpha, grid),
    ]
    return build_report(
        command,
        params | {'grid': grid.to_dict()},
        'a >= (n-2)/(n+2)',
        satisfied,
        checks,
        _verdict(satisfied, checks),
    )


def verify_t2(
    n: int, theta: float, gamma1: float, gamma: float, a: float, grid: GridConfig
) -> dict[str, typing.Any]:
    f = shear_slanted(gamma1, 0.0, Monomial(theta, n), grid.curve_order)
    return _s_report(
        'verify-t2',
        {'n': n, 'theta': theta, 'gamma1': gamma1, 'gamma': gamma, 'a': a},
        n,
        a,
        gamma,
        f,
        lambda z: S_halfplane(z, n, theta, gamma1, gamma, a),
        -(gamma1 + gamma),
        grid,
    )


def verify_t3(
    n: int, theta: float, beta: float, gamma: float, a: float, grid: GridConfig
) -> dict[str, typing.Any]:
    f = strip_map(beta, Monomial(theta, n), grid.curve_order)
    return _s_report(
        'verify-t3',
        {'n': n, 'theta': theta, 'beta': beta, 'gamma': gamma, 'a': a},
        n,
        a,
        gamma,
        f,
        lambda z: S_strip(z, n, theta, beta, gamma, a),
        -gamma,
        grid,
    )


def _t1_cell(cell: tuple[float, float, float, GridConfig]) -> dict[str, typing.Any]:
    a, angle, gamma, grid = cell
    theta = gamma + angle
    m = dilatation_mobius_case(a, theta, gamma)
    cls = classify_blaschke(m)
    peak = grid_max_modulus(m, grid.r_max, grid.n_r, grid.n_phi).max_value
    return {
        'a': a,
        'angle': angle,
        'theta': theta,
        'case': mobius_case(a, theta, gamma),
        'classification': cls.value,
        'max_zero_modulus': max(abs(zero) for zero in m.zeros),
        'max_abs_dilatation': peak,
        'bounded': cls.bounded and peak < 1,
    }


def sweep_t1(config: SweepConfig) -> dict[str, typing.Any]:
    cells = [
        (float(a), float(angle), config.gamma, config.grid)
        for a in config.a_values()
        for angle in config.angle_values()
    ]
    rows = map_ordered(_t1_cell, cells)
    hypothesis = [row for row in rows if row['case'] is not None]
    violations = sum(not row['bounded'] for row in hypothesis)
    checks = [
        _count_check(
            'hypothesis-region', violations, len(hypothesis),
            'cells meeting a sufficient condition with an unbounded dilatation',
        ),
    ]
    return build_report(
        'sweep-t1',
        config.to_dict(),
        'mobius cases 1 and 2 per cell',
        True,
        checks,
        _verdict(True, checks),
        summary={
            'cells': len(rows),
            'hypothesis_cells': len(hypothesis),
            'empirically_bounded_cells': sum(row['bounded'] for row in rows),
        },
        cells=rows,
    )


def _s_cell(cell) -> dict[str, typing.Any]:
    a, theta, n, s_of, grid = cell
    z = polar_grid(grid.r_max, grid.n_r, grid.n_phi)
    row = {'a': a, 'theta': theta, 'hypothesis': power_hypothesis(n, a)}
    try:
        values = s_of(z, theta, a)
    except DenominatorVanishes as e:
        row.update(denominator_vanishes=e.witness, consistent=False)
        return row
    row.update(
        max_abs_S=float(np.max(np.abs(values.S))),
        min_T=float(np.min(values.T)),
        min_X_margin=float(np.min(np.asarray(values.X) + 1 + n / 2)),
        max_T_discrepancy=float(np.max(T_check(values))),
    )
    row['consistent'] = (
        row['max_abs_S'] <= 1 + S_TOL
        and row['min_T'] >= -T_TOL
        and row['min_X_margin'] > 0
        and row['max_T_discrepancy'] <= T_TOL
    )
    return row


def _s_sweep(command: str, config: SweepConfig, s_of) -> dict[str, typing.Any]:
    cells = [
        (float(a), float(config.gamma + angle), config.n, s_of, config.grid)
        for a in config.a_values()
        for angle in config.angle_values()
    ]
    rows = map_ordered(_s_cell, cells)
    hypothesis = [row for row in rows if row['hypothesis']]
    violations = sum(not row['consistent'] for row in hypothesis)
    discrepancies = sum(row.get('max_T_discrepancy', 0) > T_TOL for row in rows)
    checks = [
        _count_check(
            'hypothesis-region', violations, len(hypothesis),
            'cells with a >= (n-2)/(n+2) where |S| < 1, T >= 0 or X > -1-n/2 fails',
        ),
        _count_check(
            'T-identity', discrepancies, len(rows),
            'cells where expanded and factored T disagree',
        ),
    ]
    return build_report(
        command,
        config.to_dict(),
        'a >= (n-2)/(n+2) per cell',
        True,
        checks,
        _verdict(True, checks),
        summary={
            'cells': len(rows),
            'hypothesis_cells': len(hypothesis),
            'empirically_bounded_cells': sum(row.get('max_abs_S', math.inf) < 1 for row in rows),
        },
        cells=rows,
    )


def sweep_t2(config: SweepConfig) -> dict[str, typing.Any]:
    n, gamma1, gamma = config.n, config.gamma1, config.gamma

    def s_of(z, theta, a):
        return S_halfplane(z, n, theta, gamma1, gamma, a)

    return _s_sweep('sweep-t2', config, s_of)


def sweep_t3(config: SweepConfig) -> dict[str, typing.Any]:
    n, beta, gamma = config.n, config.beta, config.gamma

    def s_of(z, theta, a):
        return S_strip(z, n, theta, beta, gamma, a)

    return _s_sweep('sweep-t3', config, s_of)


def validate_normalization_report(a: float, order: int) -> dict[str, typing.Any]:
    omega = ReflectedMobius(a, 0.0)
    plain = PowerSeries.geometric(order, 1, start=1)
    checks = [
        dataclasses.replace(validate_normalization(plain, omega), name='normalization-z/(1-z)'),
        dataclasses.replace(
            validate_normalization((1 + a) * plain, omega), name='normalization-(1+a)z/(1-z)'
        ),
    ]
    # the plain sum is only consistent when omega(0) = a vanishes
    expected = (abs(a) <= 1e-10, True)
    agrees = all(c.passed == e for c, e in zip(checks, expected))
    return build_report(
        'validate-normalization',
        {'a': a, 'omega': omega.describe()},
        'omega(0) = a',
        True,
        checks,
        CONSISTENT if agrees else CONTRADICTION,
    )


def verify_pair(f1: HarmonicMap, f2: HarmonicMap, grid: GridConfig) -> dict[str, typing.Any]:
    for f in (f1, f2):
        if f.params.get('target') != 'halfplane':
            raise InvalidParameter(f'{f.label} is not a slanted half-plane mapping')
    F = harmonic_convolve(f1, f2)
    alpha = -(f1.params['gamma'] + f2.params['gamma'])
    jac = jacobian_positive(F, grid.r_max, grid.n_r, grid.n_phi)
    checks = [jac]
    if jac.passed:
        curve = boundary_curve(F, grid.curve_r, grid.curve_m, refine=True)
        checks.append(convex_in_direction_check(curve, alpha, grid.lines))
    return build_report(
        'verify-pair',
        {'map1': f1.label, 'map2': f2.label, 'direction': alpha, 'grid': grid.to_dict()},
        'locally univalent',
        jac.passed,
        checks,
        _verdict(jac.passed, checks),
    )


def render(expr: str, r: float, m: int, path: str | None, family: bool, order: int) -> list[str]:
    radii = (*FAMILY_RADII, r) if family else (r,)
    F = parse_map(expr, max(order, required_order(max(radii))))
    curve = boundary_curve(F, r, m)
    written = []
    if path is None or path == '-':
        curve.to_csv(sys.stdout)
    else:
        target = pathlib.Path(path)
        with target.open('w', newline='') as fh:
            curve.to_csv(fh)
        written.append(str(target))
        if family:
            for radius in radii:
                sibling = target.with_name(f'{target.stem}-r{radius:g}{target.suffix}')
                with sibling.open('w', newline='') as fh:
                    boundary_curve(F, radius, m).to_csv(fh)
                written.append(str(sibling))
    if 'target' in F.params:
        bound = image_bound_check(curve, F.params)
        logger.info('%s: %s max excess %.3g', F.label, bound.name, bound.max_value)
    return written


def selftest(seed: int) -> dict[str, typing.Any]:
    checks = run_all(seed)
    return build_report(
        'selftest',
        {'seed': seed},
        'randomised corpora',
        True,
        checks,
        _verdict(True, checks),
    )


def _add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--order', type=int, default=DEFAULT_ORDER, help='series truncation order')
    parser.add_argument('--rmax', type=float, default=DEFAULT_RMAX, help='radius of the sample grid')
    parser.add_argument('--nr', type=int, default=DEFAULT_NR, help='number of grid radii')
    parser.add_argument('--nphi', type=int, default=DEFAULT_NPHI, help='number of grid angles')
    parser.add_argument('--curve-r', type=float, default=DEFAULT_CURVE_R, help='radius of the boundary curve')
    parser.add_argument('--curve-m', type=int, default=DEFAULT_CURVE_M, help='points on the boundary curve')
    parser.add_argument('--lines', type=int, default=DEFAULT_LINES, help='lines per convexity check')


def _add_sweep(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--a-min', type=float, default=-0.95)
    parser.add_argument('--a-max', type=float, default=0.95)
    parser.add_argument('--a-steps', type=int, default=41)
    parser.add_argument('--angle-min', type=float, default=-math.pi)
    parser.add_argument('--angle-max', type=float, default=math.pi)
    parser.add_argument('--angle-steps', type=int, default=41)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--json', metavar='PATH', help='write the report here instead of stdout')
    parser.add_argument('-v', '--verbose', action='count', default=0)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='hconv', description='numeric checks for convolutions of harmonic mappings'
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('verify-t1', help='f0 * f with a shifted Mobius dilatation')
    p.add_argument('--a', type=float, required=True)
    p.add_argument('--theta', type=float, required=True)
    p.add_argument('--gamma', type=float, default=0.0)
    _add_grid(p)
    _add_common(p)

    p = sub.add_parser('verify-t2', help='f * f_a for a slanted half-plane f')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--theta', type=float, default=0.0)
    p.add_argument('--gamma1', type=float, default=0.0)
    p.add_argument('--gamma', type=float, default=0.0)
    p.add_argument('--a', type=float, required=True)
    _add_grid(p)
    _add_common(p)

    p = sub.add_parser('verify-t3', help='f * f_a for an asymmetric strip f')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--theta', type=float, default=0.0)
    p.add_argument('--beta', type=float, required=True)
    p.add_argument('--gamma', type=float, default=0.0)
    p.add_argument('--a', type=float, required=True)
    _add_grid(p)
    _add_common(p)

    p = sub.add_parser('sweep-t1', help='grid over a and theta - gamma')
    p.add_argument('--gamma', type=float, default=0.0)
    _add_sweep(p)
    _add_grid(p)
    _add_common(p)

    p = sub.add_parser('sweep-t2', help='grid over a and theta for the half-plane case')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--gamma1', type=float, default=0.0)
    p.add_argument('--gamma', type=float, default=0.0)
    _add_sweep(p)
    _add_grid(p)
    _add_common(p)

    p = sub.add_parser('sweep-t3', help='grid over a and theta for the strip case')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--beta', type=float, required=True)
    p.add_argument('--gamma', type=float, default=0.0)
    _add_sweep(p)
    _add_grid(p)
    _add_common(p)

    p = sub.add_parser('render', help='write a boundary curve as CSV')
    p.add_argument('--map', required=True, help='mapping, e.g. "conv(f0, fa(a=0.5))"')
    p.add_argument('--r', type=float, default=DEFAULT_CURVE_R)
    p.add_argument('--m', type=int, default=DEFAULT_CURVE_M)
    p.add_argument('--csv', metavar='PATH', help='output file, stdout if omitted')
    p.add_argument('--family', action='store_true', help=f'also write radii {FAMILY_RADII}')
    p.add_argument('--order', type=int, default=DEFAULT_ORDER)
    p.add_argument('-v', '--verbose', action='count', default=0)

    p = sub.add_parser('validate-normalization', help="check (h+g)'(0) against omega(0)")
    p.add_argument('--a', type=float, required=True)
    p.add_argument('--order', type=int, default=DEFAULT_ORDER)
    _add_common(p)

    p = sub.add_parser('verify-pair', help='convolution of two slanted half-plane mappings')
    p.add_argument('--map1', required=True)
    p.add_argument('--map2', required=True)
    _add_grid(p)
    _add_common(p)

    p = sub.add_parser('selftest', help='randomised oracle corpora')
    p.add_argument('--seed', type=int, default=0)
    _add_common(p)

    return parser


def run(args: argparse.Namespace) -> dict[str, typing.Any] | None:
    if args.command == 'verify-t1':
        return verify_t1(args.a, args.theta, args.gamma, GridConfig.from_args(args))
    elif args.command == 'verify-t2':
        grid = GridConfig.from_args(args)
        return verify_t2(args.n, args.theta, args.gamma1, args.gamma, args.a, grid)
    elif args.command == 'verify-t3':
        grid = GridConfig.from_args(args)
        return verify_t3(args.n, args.theta, args.beta, args.gamma, args.a, grid)
    elif args.command == 'sweep-t1':
        return sweep_t1(SweepConfig.from_args(args))
    elif args.command == 'sweep-t2':
        return sweep_t2(SweepConfig.from_args(args))
    elif args.command == 'sweep-t3':
        return sweep_t3(SweepConfig.from_args(args))
    elif args.command == 'render':
        render(args.map, args.r, args.m, args.csv, args.family, args.order)
        return None
    elif args.command == 'validate-normalization':
        return validate_normalization_report(args.a, args.order)
    elif args.command == 'verify-pair':
        grid = GridConfig.from_args(args)
        order = grid.curve_order
        return verify_pair(parse_map(args.map1, order), parse_map(args.map2, order), grid)
    elif args.command == 'selftest':
        return selftest(args.seed)
    raise AssertionError(args.command)


def main(argv: list[str] | None = None) -> int:
    try:
        args = make_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    level = max(logging.DEBUG, logging.WARNING - 10 * args.verbose)
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')

    try:
        report = run(args)
        if report is not None:
            text = dumps(report)
            if args.json:
                pathlib.Path(args.json).write_text(text)
            else:
                sys.stdout.write(text)
    except (HconvError, OSError) as e:
        print(f'hconv: {e}', file=sys.stderr)
        return EXIT_USAGE

    if report is not None and report['verdict'] == CONTRADICTION:
        logger.warning('%s: a check failed although the hypotheses hold', args.command)
        return EXIT_CONTRADICTION
    return EXIT_OK
