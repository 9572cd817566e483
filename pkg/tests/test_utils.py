from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import unittest

import numpy as np

from avsdf import utils


class TestUtils(unittest.TestCase):

    def test_error_hierarchy(self):
        assert issubclass(utils.InsufficientSamples, ValueError)
        assert issubclass(utils.NoConvergence, utils.EstimationFailure)
        assert issubclass(utils.ZeroPressureChannel, ArithmeticError)
        assert issubclass(utils.PoleSingularity, ZeroDivisionError)
        assert issubclass(utils.SummationOverflow, OverflowError)
        assert not issubclass(utils.SkipSample, utils.EstimationFailure)
        for err in (utils.NearZeroReferenceRow, utils.TrajectoryOutOfRange,
                    utils.ParseError, utils.SkipSample):
            assert issubclass(err, utils.AvsdfError)

    def test_error_details(self):
        err = utils.InsufficientSamples(3, 2, 'dephase_step')
        assert err.needed == 3
        assert err.available == 2
        assert 'dephase_step' in str(err)

        err = utils.ParseError(3, 'empty key')
        assert err.line == 3
        assert err.reason == 'empty key'
        assert str(err) == 'line 3: empty key'

        err = utils.NoConvergence('stuck', 10)
        assert err.max_iter == 10

    def test_derive_seed(self):
        seed = utils.derive_seed(42, 1, 2)
        assert seed == utils.derive_seed(42, 1, 2)
        assert 0 <= seed <= utils.SEED_MAX
        others = set(
            utils.derive_seed(42, idx, trial)
            for idx in range(5) for trial in range(20)
        )
        assert len(others) == 100
        assert utils.derive_seed(42, 1, 2) != utils.derive_seed(43, 1, 2)
        assert utils.derive_seed(42, 1, 2) != utils.derive_seed(42, 2, 1)
        assert utils.derive_seed(utils.SEED_MAX) >= 0

        with self.assertRaises(TypeError):
            utils.derive_seed(-1)
        with self.assertRaises(TypeError):
            utils.derive_seed(2**64)
        with self.assertRaises(TypeError):
            utils.derive_seed(1.5)

    def test_make_rng(self):
        first = utils.make_rng(7).standard_normal(10)
        second = utils.make_rng(7).standard_normal(10)
        assert np.array_equal(first, second)
        assert not np.array_equal(first, utils.make_rng(8).standard_normal(10))
        assert isinstance(utils.make_rng(7).bit_generator, np.random.Philox)

    def test_wrap_angle(self):
        assert utils.wrap_angle(-0.5) == 2*np.pi - 0.5
        assert utils.wrap_angle(2*np.pi) == 0
        assert utils.wrap_angle(-1e-20) == 0
        assert np.allclose(utils.wrap_angle([7., -7.]),
                           [7 - 2*np.pi, 4*np.pi - 7])

    def test_wrap_degrees(self):
        assert utils.wrap_degrees(358.) == -2.
        assert utils.wrap_degrees(-358.) == 2.
        assert utils.wrap_degrees(180.) == 180.
        assert utils.wrap_degrees(-180.) == 180.
        assert utils.wrap_degrees(0.) == 0.
        assert isinstance(utils.wrap_degrees(10.), float)
        assert np.allclose(utils.wrap_degrees([190., -190.]), [-170., 170.])

    def test_sample_std(self):
        assert utils.sample_std([]) == 0
        assert utils.sample_std([3.]) == 0
        assert np.isclose(utils.sample_std([1., 2., 3., 4.]),
                          np.std([1., 2., 3., 4.], ddof=1))


if __name__ == '__main__':
    unittest.main()
