import unittest

import numpy as np


class Base(unittest.TestCase):
    """Shared assertions for array-valued results."""

    def assertArrayClose(self, actual, expected, atol=1e-12, rtol=0.0, msg=None):
        actual = np.asarray(actual)
        expected = np.asarray(expected)
        self.assertEqual(actual.shape, expected.shape, msg)
        if not np.allclose(actual, expected, atol=atol, rtol=rtol):
            worst = float(np.max(np.abs(actual - expected))) if actual.size else 0.0
            self.fail(msg or f"arrays differ (max abs deviation {worst:.3e}, atol={atol})")

    def assertRelClose(self, actual, expected, rel, msg=None):
        self.assertTrue(
            abs(actual - expected) <= rel * abs(expected),
            msg or f"{actual!r} not within {rel:.1e} relative of {expected!r}",
        )

    def assertProbability(self, value, tolerance=1e-12):
        self.assertGreaterEqual(value, -tolerance)
        self.assertLessEqual(value, 1.0 + tolerance)
