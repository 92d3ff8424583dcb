import os
import time
from unittest import mock

from hconv.workers import WorkerPool
from hconv.workers import default_workers
from hconv.workers import map_ordered
from tests.utils import HconvTestCase


class TestWorkers(HconvTestCase):
    def test_map_ordered(self):
        def slow_square(x):
            time.sleep(0.01 * (5 - x))
            return x * x

        self.assertEqual(map_ordered(slow_square, range(5), max_workers=5), [0, 1, 4, 9, 16])

    def test_parallel(self):
        with self.assert_duration(0.35):
            map_ordered(time.sleep, [0.1] * 4, max_workers=4)

    def test_exception(self):
        def fail(x):
            if x == 2:
                raise NotImplementedError
            return x

        with self.assertRaises(NotImplementedError):
            map_ordered(fail, range(4), max_workers=2)

    def test_empty(self):
        self.assertEqual(map_ordered(str, []), [])

    def test_pool(self):
        with WorkerPool(max_workers=2) as pool:
            futures = [pool.submit(pow, 2, k) for k in range(6)]
            pool.wait()
        self.assertTrue(all(f.done for f in futures))
        self.assertEqual([f.unwrap() for f in futures], [1, 2, 4, 8, 16, 32])
        self.assertLessEqual(len(pool.workers), 2)


class TestDefaultWorkers(HconvTestCase):
    def test_env(self):
        with mock.patch.dict(os.environ, {'HCONV_WORKERS': '3'}):
            self.assertEqual(default_workers(), 3)
        with mock.patch.dict(os.environ, {'HCONV_WORKERS': '0'}):
            self.assertEqual(default_workers(), 1)

    def test_bad_env(self):
        with mock.patch.dict(os.environ, {'HCONV_WORKERS': 'many'}):
            with self.assertLogs('hconv.workers', 'WARNING'):
                self.assertGreaterEqual(default_workers(), 1)

    def test_default(self):
        with mock.patch.dict(os.environ):
            os.environ.pop('HCONV_WORKERS', None)
            self.assertEqual(default_workers(), min(32, (os.cpu_count() or 1) + 4))
