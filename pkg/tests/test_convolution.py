import cmath
import math

import numpy as np

from hconv.convolution import MobiusDilatation
from hconv.convolution import S_halfplane
from hconv.convolution import S_strip
from hconv.convolution import T_check
from hconv.convolution import dilatation_f0_star
from hconv.convolution import dilatation_fa_star
from hconv.convolution import dilatation_mobius_case
from hconv.convolution import harmonic_convolve
from hconv.convolution import closed_form_gap
from hconv.convolution import series_dilatation
from hconv.convolution import mobius_case
from hconv.convolution import power_hypothesis
from hconv.convolution import u_halfplane
from hconv.convolution import u_strip
from hconv.errors import DenominatorVanishes
from hconv.errors import InvalidParameter
from hconv.mappings import Dilatation
from hconv.mappings import HarmonicMap
from hconv.mappings import Monomial
from hconv.mappings import f0
from hconv.mappings import f_a_gamma
from hconv.mappings import identity
from hconv.mappings import shear_slanted
from hconv.mappings import strip_map
from hconv.selftest import f0_oracle_corpus
from hconv.selftest import mobius_structure_corpus
from hconv.selftest import random_disk_points
from hconv.selftest import t_identity_corpus
from tests.utils import HconvTestCase


class Constant(Dilatation):
    def __init__(self, value):
        self.value = value

    def __call__(self, z):
        return self.value + 0 * np.asarray(z)

    def derivative(self, z):
        return 0 * np.asarray(z)

    def describe(self):
        return f'constant({self.value})'


class TestHarmonicConvolve(HconvTestCase):
    def test_coefficientwise(self):
        f = f_a_gamma(0.2, 0.3, 32)
        F = strip_map(1.0, Monomial(0, 1), 32)
        conv = harmonic_convolve(f, F)
        self.assert_close(conv.h.coeffs, f.h.coeffs * F.h.coeffs)
        self.assert_close(conv.g.coeffs, f.g.coeffs * F.g.coeffs)
        self.assertTrue(conv.label.startswith('conv(fa('))

    def test_rotation_angles_add(self):
        conv = harmonic_convolve(f_a_gamma(0.1, 0.5), f_a_gamma(0.1, 0.25))
        self.assertAlmostEqual(conv.params['gamma'], 0.75)
        self.assertNotIn('gamma', harmonic_convolve(identity(), f0()).params)

    def test_commutative(self):
        f, F = f0(40), f_a_gamma(0.5, 1.0, 40)
        self.assert_series_close(harmonic_convolve(f, F).h, harmonic_convolve(F, f).h, tol=0)

    def test_orders_truncate(self):
        self.assertEqual(harmonic_convolve(f0(20), f0(30)).order, 20)


class TestF0Star(HconvTestCase):
    def test_f0_with_itself(self):
        closed, oracle = dilatation_f0_star(f0(), 0, 0)
        z = random_disk_points(self.rng(11), 100, 0.85)
        expected = z * (2 * z + 1) / (z + 2)
        self.assert_close(closed(z), expected, tol=1e-12)
        self.assert_close(oracle(z), expected, tol=1e-8)

    def test_scalar_point(self):
        closed, _ = dilatation_f0_star(f0(), 0, 0)
        self.assertIsInstance(closed(0.5), complex)
        self.assertAlmostEqual(closed(0.5), 0.4)

    def test_against_series(self):
        with self.assert_duration(60):
            report = f0_oracle_corpus(self.rng(12), 50, 100)
        self.assertTrue(report.passed, report)
        self.assertEqual(report.samples, 5000)

    def test_monomial_omega(self):
        gamma = 0.9
        f = shear_slanted(gamma, 0, Monomial(2.0, 2))
        closed, oracle = dilatation_f0_star(f, gamma, 0)
        z = random_disk_points(self.rng(13), 100, 0.85)
        self.assert_close(closed(z), oracle(z), tol=1e-8)

    def test_needs_dilatation(self):
        bare = identity(8)
        with self.assertRaises(InvalidParameter):
            dilatation_f0_star(bare, 0, 0)

    def test_vanishing_denominator(self):
        f = HarmonicMap(identity(8).h, identity(8).g, 'constant', omega=Constant(-1))
        closed, _ = dilatation_f0_star(f, 0, 0)
        with self.assertRaises(DenominatorVanishes) as cm:
            closed(np.array([0.3, 0.5]))
        self.assertEqual(cm.exception.witness, 0.3)


class TestMobiusCase(HconvTestCase):
    def test_case1_zeros(self):
        for theta in (0.0, 1.0, 2.5):
            gamma = theta - math.pi
            for a in (-1 / 3, -0.2, 0, 0.5, 0.9):
                m = dilatation_mobius_case(a, theta, gamma)
                q = cmath.exp(-1j * theta)
                expected = [q, (3 * a - 1) / 2 * q]
                # order of the zeros is not part of the contract
                self.assertEqual(len(m.zeros), 2)
                for zero in expected:
                    self.assertLess(min(abs(zero - z) for z in m.zeros), 1e-12, (a, theta))
                for zero in m.zeros:
                    self.assertLess(min(abs(zero - z) for z in expected), 1e-12, (a, theta))
                self.assertEqual(mobius_case(a, theta, gamma), 1)

    def test_structure(self):
        report = mobius_structure_corpus(self.rng(14), 200)
        self.assertTrue(report.passed, report)

    def test_factor_and_power(self):
        a, theta, gamma = 0.4, 1.3, 0.2
        m = dilatation_mobius_case(a, theta, gamma)
        self.assertEqual(m.z_power, 1)
        self.assertAlmostEqual(m.unimodular_factor, -cmath.exp(3j * gamma + 2j * theta))
        self.assertEqual(m(0j), 0)

    def test_matches_general_formula(self):
        rng = self.rng(15)
        z = random_disk_points(rng, 200, 0.99)
        for _ in range(20):
            theta, gamma = rng.uniform(0, math.tau, 2)
            # inside the sufficient region, so no pole of the closed form enters the disk
            bound = 0.95 / math.sqrt(5 - 4 * math.cos(theta - gamma))
            a = float(rng.uniform(-bound, bound))
            self.assertLess(closed_form_gap(a, theta, gamma, z), 1e-9)

    def test_rejects_a(self):
        with self.assertRaises(InvalidParameter):
            dilatation_mobius_case(1, 0, 0)


class TestMobiusDilatation(HconvTestCase):
    def test_unimodular(self):
        with self.assertRaises(InvalidParameter):
            MobiusDilatation(2, 1, ())
        with self.assertRaises(InvalidParameter):
            MobiusDilatation(1, -1, ())

    def test_t_star(self):
        m = MobiusDilatation(1, 0, (0.5j, 2))
        self.assert_close(m.t_star.coeffs, [1, 2 - 0.5j, -1j])

    def test_evaluate(self):
        m = MobiusDilatation(1j, 2, (0.5,))
        z = np.array([0.1, 0.3j])
        self.assert_close(m(z), 1j * z ** 2 * (z + 0.5) / (1 + 0.5 * z))


class TestHypotheses(HconvTestCase):
    def test_mobius_case(self):
        self.assertEqual(mobius_case(0.3, math.pi / 2, 0), 2)
        self.assertEqual(mobius_case(0.5, math.pi, 0), 1)
        self.assertEqual(mobius_case(-1 / 3, math.pi, 0), 1)
        self.assertIsNone(mobius_case(-0.5, math.pi, 0))
        self.assertIsNone(mobius_case(0.9, math.pi / 2, 0))
        self.assertEqual(mobius_case(0.9, 0, 0), 2)

    def test_power_hypothesis(self):
        self.assertTrue(power_hypothesis(4, 1 / 3))
        self.assertFalse(power_hypothesis(4, 0.3))
        self.assertTrue(power_hypothesis(1, 0))
        self.assertFalse(power_hypothesis(1, -0.5))
        self.assertFalse(power_hypothesis(2, 1))


class TestFaStar(HconvTestCase):
    def test_matches_series_quotient(self):
        a, gamma = 0.5, 0.4
        f = shear_slanted(0, 0, Monomial(0.4, 1))
        F = harmonic_convolve(f, f_a_gamma(a, gamma, f.order))
        z = random_disk_points(self.rng(16), 100, 0.5)
        self.assert_close(dilatation_fa_star(f, a, gamma)(z), series_dilatation(F)(z), tol=1e-8)

    def test_halfplane_is_S(self):
        n, theta, gamma1, gamma, a = 2, 1.0, 0.5, 0.3, 0.6
        f = shear_slanted(gamma1, 0, Monomial(theta, n), 256)
        z = random_disk_points(self.rng(17), 100, 0.8)
        s = S_halfplane(np.exp(1j * gamma) * z, n, theta, gamma1, gamma, a)
        self.assert_close(dilatation_fa_star(f, a, gamma)(z), s.S, tol=1e-8)

    def test_strip_is_S(self):
        n, theta, beta, gamma, a = 3, -0.7, 2.0, 1.1, 0.3
        f = strip_map(beta, Monomial(theta, n), 256)
        z = random_disk_points(self.rng(18), 100, 0.8)
        s = S_strip(np.exp(1j * gamma) * z, n, theta, beta, gamma, a)
        self.assert_close(dilatation_fa_star(f, a, gamma)(z), s.S, tol=1e-8)


class TestS(HconvTestCase):
    def test_t_identity(self):
        report = t_identity_corpus(self.rng(19), 200, 100)
        self.assertTrue(report.passed, report)

    def test_t_vanishes_on_boundary(self):
        z = random_disk_points(self.rng(20), 200, 0.99)
        values = S_halfplane(z, 4, 0.5, 0.2, 0.1, 1 / 3)
        self.assertLess(np.max(np.abs(values.T_factored)), 1e-12)
        self.assertLess(np.max(T_check(values)), 1e-9)

    def test_modulus_below_one(self):
        z = random_disk_points(self.rng(21), 2000, 0.99)
        for n in (1, 2, 3, 5):
            a = (n - 2) / (n + 2) + 0.1
            s = S_halfplane(z, n, 0.3, 1.2, 0.4, a)
            self.assertLessEqual(np.max(np.abs(s.S)), 1 + 1e-9)
            self.assertGreaterEqual(np.min(s.T), -1e-9)
            s = S_strip(z, n, 0.3, 1.0, 0.4, a)
            self.assertLessEqual(np.max(np.abs(s.S)), 1 + 1e-9)

    def test_x_bound(self):
        z = random_disk_points(self.rng(22), 2000, 0.999)
        for n in (1, 4):
            s = S_halfplane(z, n, 2.0, 0.7, 0, 0.5)
            self.assertTrue(np.all(s.X > -1 - n / 2))

    def test_scalar(self):
        s = S_halfplane(0.3j, 1, 0, 0, 0, 0)
        self.assertIsInstance(s.S, complex)
        self.assertIsInstance(s.X, float)


class TestU(HconvTestCase):
    def test_halfplane_terms(self):
        u = u_halfplane(0.5, 1, 0, 0)
        self.assertAlmostEqual(u.terms[0], 2)
        self.assertAlmostEqual(u.terms[1], -1 / 3)
        self.assertAlmostEqual(u.u, 5 / 3)
        self.assertAlmostEqual(u.X, 5 / 3)

    def test_strip_terms(self):
        z = random_disk_points(self.rng(23), 2000, 0.999)
        u = u_strip(z, 1.2, 0.4, 3)
        self.assertEqual(len(u.terms), 3)
        self.assertTrue(np.all(u.terms[0].real > -0.5))
        self.assertTrue(np.all(u.terms[1].real > -0.5))
        self.assertTrue(np.all(u.terms[2].real > -1.5))

    def test_strip_rejects_beta(self):
        with self.assertRaises(InvalidParameter):
            u_strip(0.1, 0, 0, 1)

    def test_rejects_n(self):
        with self.assertRaises(InvalidParameter):
            u_halfplane(0.1, 0, 0, 0)
        with self.assertRaises(InvalidParameter):
            S_halfplane(0.1, 1.5, 0, 0, 0, 0)
