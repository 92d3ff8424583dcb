import cmath
import math

import numpy as np

from hconv.convolution import MobiusDilatation
from hconv.convolution import dilatation_mobius_case
from hconv.convolution import mobius_case
from hconv.errors import InconclusiveBoundary
from hconv.errors import InvalidParameter
from hconv.rootcheck import Blaschke
from hconv.rootcheck import ComplexPolynomial
from hconv.rootcheck import brute_force_roots
from hconv.rootcheck import case2_quantities
from hconv.rootcheck import classify_blaschke
from hconv.rootcheck import cohn_reduce
from hconv.rootcheck import conjugate_reciprocal
from hconv.rootcheck import roots_in_disk_count
from hconv.rootcheck import t_polynomial
from hconv.selftest import random_disk_points
from hconv.selftest import root_count_corpus
from tests.utils import HconvTestCase


def poly(*roots, leading=1):
    return ComplexPolynomial.from_roots(roots, leading)


class TestComplexPolynomial(HconvTestCase):
    def test_trims_leading_zeros(self):
        p = ComplexPolynomial([1, 2, 0, 1e-13])
        self.assertEqual(p.degree, 1)

    def test_zero_polynomial(self):
        self.assertEqual(ComplexPolynomial([0, 0]).degree, 0)

    def test_from_roots(self):
        p = poly(0.5, 2)
        self.assert_close(p.coeffs, [1, -2.5, 1])
        self.assertAlmostEqual(p(0.5), 0)


class TestConjugateReciprocal(HconvTestCase):
    def test_coefficients(self):
        p = ComplexPolynomial([0.5, 0.5, 1])
        self.assert_close(conjugate_reciprocal(p).coeffs, [1, 0.5, 0.5])

    def test_palindrome(self):
        p = ComplexPolynomial([1, 1, 1])
        self.assertTrue(conjugate_reciprocal(p).allclose(p))

    def test_involution(self):
        p = ComplexPolynomial([1 + 2j, -0.5j, 3])
        self.assertTrue(conjugate_reciprocal(conjugate_reciprocal(p)).allclose(p))

    def test_reflects_roots(self):
        rng = self.rng(6)
        for _ in range(20):
            d = int(rng.integers(1, 6))
            roots = rng.uniform(0.3, 1.8, d) * np.exp(1j * rng.uniform(0, math.tau, d))
            star = conjugate_reciprocal(ComplexPolynomial.from_roots(roots, 1 - 0.5j))
            found = np.array(brute_force_roots(star))
            for r in 1 / np.conj(roots):
                self.assertLess(np.min(np.abs(found - r)), 1e-6)


class TestCohnReduce(HconvTestCase):
    def test_root_at_origin(self):
        t1 = cohn_reduce(ComplexPolynomial([0, 1]))
        self.assertEqual(t1.degree, 0)

    def test_constant_rejected(self):
        with self.assertRaises(InvalidParameter):
            cohn_reduce(ComplexPolynomial([3]))

    def test_not_dominant(self):
        with self.assertRaises(InconclusiveBoundary):
            cohn_reduce(ComplexPolynomial([2, 0, 1]))
        with self.assertRaises(InconclusiveBoundary):
            cohn_reduce(ComplexPolynomial([1, 0, 1]))

    def test_preserves_interior_count(self):
        rng = self.rng(7)
        checked = 0
        while checked < 100:
            d = int(rng.integers(2, 6))
            roots = random_disk_points(rng, d, 2.0)
            if np.any(np.abs(np.abs(roots) - 1) < 1e-3):
                continue
            p = ComplexPolynomial.from_roots(roots)
            if abs(p.coeffs[-1]) <= abs(p.coeffs[0]) + 1e-10:
                continue
            t1 = cohn_reduce(p)
            inside = int(np.sum(np.abs(roots) < 1))
            reduced = int(np.sum(np.abs(brute_force_roots(t1)) < 1)) if t1.degree else 0
            self.assertEqual(reduced + 1, inside, p)
            checked += 1


class TestRootsInDiskCount(HconvTestCase):
    def test_examples(self):
        self.assertEqual(roots_in_disk_count(ComplexPolynomial([0, 0, 1])), 2)
        self.assertEqual(roots_in_disk_count(poly(2, 0.5)), 1)
        self.assertEqual(roots_in_disk_count(poly(0.5, 1 / 3)), 2)
        self.assertEqual(roots_in_disk_count(poly(2)), 0)
        self.assertEqual(roots_in_disk_count(poly(-3)), 0)
        self.assertEqual(roots_in_disk_count(poly(0.9j, -3, 2 + 1j)), 1)

    def test_scale_invariant(self):
        p = poly(0.2, 0.7j, 4)
        self.assertEqual(roots_in_disk_count(p), 2)
        self.assertEqual(roots_in_disk_count(ComplexPolynomial(p.coeffs * 1e6)), 2)

    def test_root_on_circle(self):
        with self.assertRaises(InconclusiveBoundary):
            roots_in_disk_count(poly(1))

    def test_random_corpus(self):
        with self.assert_duration(30):
            report = root_count_corpus(self.rng(8), 1000)
        self.assertTrue(report.passed, report.notes)
        self.assertEqual(report.samples, 1000)


class TestBruteForceRoots(HconvTestCase):
    def test_imaginary_unit(self):
        roots = sorted(brute_force_roots(ComplexPolynomial([1, 0, 1])), key=lambda r: r.imag)
        self.assert_close(roots, [-1j, 1j], tol=1e-8)

    def test_quadratic_formula(self):
        t = t_polynomial(0.3, 1.1, 0.4)
        c, b = t.coeffs[0], t.coeffs[1]
        root = cmath.sqrt(b * b - 4 * c)
        expected = sorted([(-b + root) / 2, (-b - root) / 2], key=lambda r: (r.real, r.imag))
        found = sorted(brute_force_roots(t), key=lambda r: (r.real, r.imag))
        self.assert_close(found, expected, tol=1e-10)

    def test_reconstruction(self):
        rng = self.rng(9)
        for _ in range(10):
            c = rng.normal(size=6) + 1j * rng.normal(size=6)
            p = ComplexPolynomial(c)
            rebuilt = ComplexPolynomial.from_roots(brute_force_roots(p), c[-1])
            self.assert_close(rebuilt.coeffs, p.coeffs, tol=1e-7)

    def test_constant_rejected(self):
        with self.assertRaises(InvalidParameter):
            brute_force_roots(ComplexPolynomial([2]))


class TestClassifyBlaschke(HconvTestCase):
    def sampled_max(self, m, r=0.999, count=10_000):
        z = random_disk_points(self.rng(10), count, r)
        return float(np.max(np.abs(m(z))))

    def test_case1_zeros_on_circle(self):
        theta = 0.8
        for a in (-1 / 3, 0, 0.5, 0.99):
            q = cmath.exp(-1j * theta)
            m = MobiusDilatation(1, 1, (q, (3 * a - 1) / 2 * q))
            kind = classify_blaschke(m)
            self.assertIs(kind, Blaschke.Boundary)
            self.assertTrue(kind.bounded)

    def test_origin(self):
        m = MobiusDilatation(1j, 1, (0, 0))
        self.assertIs(classify_blaschke(m), Blaschke.BoundedByOne)
        self.assertLess(self.sampled_max(m), 1)

    def test_unbounded(self):
        m = MobiusDilatation(1, 1, (2,))
        self.assertIs(classify_blaschke(m), Blaschke.Unbounded)
        self.assertFalse(Blaschke.Unbounded.bounded)
        z = 0.99 * np.exp(1j * np.linspace(0, math.tau, 512))
        self.assertGreater(np.max(np.abs(m(z))), 1)

    def test_bounded_samples_below_one(self):
        m = dilatation_mobius_case(0.3, math.pi / 2, 0)
        self.assertIs(classify_blaschke(m), Blaschke.BoundedByOne)
        self.assertLess(self.sampled_max(m), 1)


class TestCase2Quantities(HconvTestCase):
    def test_grid(self):
        admissible = 0
        for gamma in (0, 0.7):
            for a in np.linspace(-0.95, 0.95, 41):
                for diff in np.linspace(-math.pi, math.pi, 42)[1:]:
                    a, theta = float(a), float(diff + gamma)
                    q = case2_quantities(a, theta, gamma)
                    self.assertAlmostEqual(q.leading_gap, q.leading_gap_formula, delta=1e-10)
                    self.assertAlmostEqual(q.uv_gap, q.uv_gap_formula, delta=1e-10)

                    if q.t1 is None:
                        self.assertLessEqual(q.leading_gap, 1e-9)
                        continue
                    self.assertAlmostEqual(q.t1.coeffs[-1], q.leading_gap_formula, delta=1e-10)
                    if q.leading_gap_formula > 1e-6:
                        root = -q.t1.coeffs[0] / q.t1.coeffs[-1]
                        self.assertAlmostEqual(root, q.z0, delta=1e-9 * max(1, abs(q.z0)))

                    if mobius_case(a, theta, gamma) == 2:
                        admissible += 1
                        self.assertGreater(q.leading_gap, 0)
                        self.assertLess(abs(q.z0), 1)
                        t = t_polynomial(a, theta, gamma)
                        self.assertEqual(roots_in_disk_count(t), 2, (a, theta))
        self.assertGreater(admissible, 200)

    def test_reduction_undefined(self):
        # a(5 - 4cos(theta - gamma)) + 3 < 0, so |a_0| > |a_2|
        q = case2_quantities(-0.9, math.pi, 0)
        self.assertIsNone(q.t1)
        self.assertLess(q.leading_gap, 0)
        self.assertAlmostEqual(q.leading_gap, q.leading_gap_formula, delta=1e-12)
        self.assertAlmostEqual(q.uv_gap, q.uv_gap_formula, delta=1e-12)
        self.assertAlmostEqual(q.z0, q.u / q.v)

    def test_right_angle(self):
        q = case2_quantities(0.3, math.pi / 2, 0)
        self.assertAlmostEqual(q.v, 0.3 * 5 + 3)
        self.assertAlmostEqual(q.u, 1.9 * (1 + 2j))
