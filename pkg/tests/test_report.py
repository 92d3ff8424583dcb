import json
import math

import numpy as np

import hconv
from hconv.geometry import CheckReport
from hconv.report import CONSISTENT
from hconv.report import build_report
from hconv.report import dumps
from hconv.report import load_schema
from hconv.report import schema_errors
from tests.utils import HconvTestCase


def check(**kwargs):
    fields = {
        'name': 'jacobian',
        'passed': True,
        'max_value': -0.5,
        'witness': 0.5j,
        'samples': 10,
        'tolerance': 0.0,
        'threshold': 0.0,
    }
    fields.update(kwargs)
    return CheckReport(**fields)


class TestReport(HconvTestCase):
    def test_build(self):
        report = build_report('verify-t1', {'a': np.float64(0.3)}, 2, True, [check()], CONSISTENT)
        self.assertEqual(report['version'], hconv.__version__)
        self.assertEqual(report['hypothesis'], {'case': 2, 'satisfied': True})
        self.assertEqual(report['checks'][0]['witness'], [0.0, 0.5])
        self.assertIs(type(report['params']['a']), float)
        self.assertEqual(schema_errors(report), [])

    def test_non_finite(self):
        report = build_report('x', {'z': 1 + 2j}, None, False, [check(max_value=math.inf)], 'informational')
        self.assertIsNone(report['checks'][0]['max_value'])
        self.assertEqual(report['params']['z'], [1.0, 2.0])
        self.assertEqual(json.loads(dumps(report)), report)

    def test_dumps_stable(self):
        report = build_report('x', {'a': 0.1}, 1, True, [], CONSISTENT, cells=[{'a': 1 / 3}])
        text = dumps(report)
        self.assertTrue(text.endswith('\n'))
        self.assertIn('"a": 0.33333333333333331', text)
        self.assertIn('"a": 0.10000000000000001', text)
        self.assertEqual(text, dumps(json.loads(text)))
        self.assertEqual(json.loads(text)['cells'][0]['a'], 1 / 3)

    def test_dumps_layout(self):
        report = {'b': [1, 2.5, None, True], 'c': {}, 'd': []}
        self.assertEqual(json.loads(dumps(report)), report)
        self.assertIn('  "b": [\n    1,\n    2.5,\n    null,\n    true\n  ],', dumps(report))

    def test_schema_errors(self):
        report = build_report('x', {}, 1, True, [check()], CONSISTENT)
        del report['version']
        report['verdict'] = 'maybe'
        report['checks'][0]['samples'] = 1.5
        errors = schema_errors(report)
        self.assertEqual(len(errors), 3, errors)
        self.assertIn("$: missing 'version'", errors)

    def test_schema_loads(self):
        schema = load_schema()
        self.assertIn('verdict', schema['required'])
