import contextlib
import time
import unittest

import numpy as np


class HconvTestCase(unittest.TestCase):
    def rng(self, seed: int = 0) -> np.random.Generator:
        return np.random.default_rng(seed)

    def assert_close(self, actual, expected, tol=1e-10, msg=None):
        actual = np.asarray(actual, dtype=complex)
        expected = np.asarray(expected, dtype=complex)
        gap = float(np.max(np.abs(actual - expected), initial=0))
        self.assertLessEqual(gap, tol, msg)

    def assert_series_close(self, s, t, tol=1e-12):
        n = min(len(s.coeffs), len(t.coeffs))
        self.assert_close(s.coeffs[:n], t.coeffs[:n], tol)

    @contextlib.contextmanager
    def assert_duration(self, limit):
        start = time.monotonic()
        try:
            yield
        finally:
            actual = time.monotonic() - start
            self.assertLess(actual, limit)
