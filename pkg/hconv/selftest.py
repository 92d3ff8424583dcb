"""Randomised corpora behind ``selftest``."""

import logging
import math

import numpy as np

from .convolution import S_halfplane
from .convolution import T_check
from .convolution import dilatation_f0_star
from .convolution import dilatation_mobius_case
from .errors import HconvError
from .geometry import CheckReport
from .mappings import MobiusShifted
from .mappings import shear_slanted
from .rootcheck import ComplexPolynomial
from .rootcheck import brute_force_roots
from .rootcheck import conjugate_reciprocal
from .rootcheck import roots_in_disk_count
from .rootcheck import t_polynomial
from .series import DEFAULT_ORDER

logger = logging.getLogger(__name__)

CIRCLE_MARGIN = 1e-3


def random_disk_points(rng: np.random.Generator, count: int, radius: float) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(0, 1, count))
    return r * np.exp(1j * rng.uniform(0, math.tau, count))


def random_polynomial(rng: np.random.Generator, max_degree: int = 5) -> ComplexPolynomial:
    d = int(rng.integers(1, max_degree + 1))
    while True:
        # roots spread over |z| < 2 so both sides of the circle are populated
        roots = random_disk_points(rng, d, 2.0)
        if np.all(np.abs(np.abs(roots) - 1) > CIRCLE_MARGIN):
            lead = complex(*rng.normal(size=2))
            if abs(lead) > 0.1:
                return ComplexPolynomial.from_roots(roots, lead)


def root_count_corpus(rng: np.random.Generator, count: int = 1000) -> CheckReport:
    mismatches = 0
    for _ in range(count):
        p = random_polynomial(rng)
        roots = brute_force_roots(p)
        expected = int(np.sum(np.abs(roots) < 1))
        try:
            actual = roots_in_disk_count(p)
        except HconvError:
            actual = -1
        if actual != expected:
            mismatches += 1
            logger.info('root count %d != oracle %d for %r', actual, expected, p)
    return CheckReport(
        name='root-count-oracle',
        passed=mismatches == 0,
        max_value=float(mismatches),
        witness=None,
        samples=count,
        tolerance=CIRCLE_MARGIN,
        threshold=0,
        notes=f'Cohn count against Durand-Kerner roots, degree <= 5; mismatches={mismatches}',
    )


def _random_params(rng: np.random.Generator, a_max: float = 0.99) -> tuple[float, float, float]:
    a = float(rng.uniform(-a_max, a_max))
    theta, gamma = (float(v) for v in rng.uniform(0, math.tau, 2))
    return a, theta, gamma


def mobius_structure_corpus(rng: np.random.Generator, count: int = 200) -> CheckReport:
    worst = 0.0
    for _ in range(count):
        a, theta, gamma = _random_params(rng)
        m = dilatation_mobius_case(a, theta, gamma)
        t = t_polynomial(a, theta, gamma)
        A, B = m.zeros
        gap = max(
            float(np.max(np.abs(m.t_star.coeffs - conjugate_reciprocal(t).coeffs))),
            abs(A * B - t.coeffs[0]),
            abs(A + B - t.coeffs[1]),
        )
        worst = max(worst, gap)
    return CheckReport(
        name='mobius-structure',
        passed=worst <= 1e-10,
        max_value=worst,
        witness=None,
        samples=count,
        tolerance=1e-10,
        threshold=1e-10,
        notes='t* rebuilt from the zeros against z^2 conj(t(1/conj z)), and Vieta',
    )


def f0_oracle_corpus(
    rng: np.random.Generator, count: int = 50, points: int = 100, order: int = DEFAULT_ORDER
) -> CheckReport:
    worst = 0.0
    witness = None
    for _ in range(count):
        # a^2 < 1/9 keeps every theta inside the sufficient region
        a, theta, gamma = _random_params(rng, a_max=1 / 3)
        f = shear_slanted(gamma, a, MobiusShifted(a, theta, gamma), order)
        closed, oracle = dilatation_f0_star(f, gamma, a)
        z = random_disk_points(rng, points, 0.85)
        gap = np.abs(closed(z) - oracle(z))
        i = int(np.argmax(gap))
        if gap[i] > worst:
            worst, witness = float(gap[i]), complex(z[i])
    return CheckReport(
        name='f0-dilatation-oracle',
        passed=worst < 1e-8,
        max_value=worst,
        witness=witness,
        samples=count * points,
        tolerance=1e-8,
        threshold=1e-8,
        notes=f"closed form against (g0*g)'/(h0*h)' at order {order}, |z| <= 0.85",
    )


def t_identity_corpus(rng: np.random.Generator, count: int = 200, points: int = 100) -> CheckReport:
    worst = 0.0
    witness = None
    for _ in range(count):
        n = int(rng.integers(1, 7))
        a, theta, gamma = _random_params(rng)
        gamma1 = float(rng.uniform(0, math.tau))
        z = random_disk_points(rng, points, 0.99)
        gap = T_check(S_halfplane(z, n, theta, gamma1, gamma, a))
        i = int(np.argmax(gap))
        if gap[i] > worst:
            worst, witness = float(gap[i]), complex(z[i])
    return CheckReport(
        name='T-identity',
        passed=worst <= 1e-9,
        max_value=worst,
        witness=witness,
        samples=count * points,
        tolerance=1e-9,
        threshold=1e-9,
        notes='expanded against factored T, relative to max(1, |T|)',
    )


def run_all(seed: int) -> list[CheckReport]:
    rng = np.random.default_rng(seed)
    return [
        root_count_corpus(rng),
        mobius_structure_corpus(rng),
        f0_oracle_corpus(rng),
        t_identity_corpus(rng),
    ]
