from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import unittest

import numpy as np
import scipy.linalg

from avsdf import crb
from avsdf.sigmodel import Doa, PpsCoeffs
from avsdf.utils import PoleSingularity, SummationOverflow, make_rng


class TestPowerSum(unittest.TestCase):

    def test_values(self):
        assert crb.power_sum(0, 500) == 500
        assert crb.power_sum(1, 100) == 5050
        assert crb.power_sum(2, 10) == 385
        assert crb.power_sum(3, 10) == 3025

    def test_overflow(self):
        with self.assertRaises(SummationOverflow):
            crb.power_sum(200, 1000)
        with self.assertRaises(OverflowError):
            crb.fim_closed(1., 100, 1000, 1., 0.1)


class TestClosedForm(unittest.TestCase):

    def test_fim_entries(self):
        fisher = crb.fim_closed(np.pi/2, 2, 500, 1., 0.01)
        jmat = fisher.j
        assert fisher.param_order == ['alpha', 'beta', 'b0', 'b1', 'b2']
        assert np.isclose(jmat[0, 0], 100000., rtol=1e-12)
        assert jmat[1, 1] == jmat[0, 0]
        assert np.isclose(jmat[2, 2], 4*500/0.01, rtol=1e-12)
        assert np.isclose(jmat[2, 3], 4/0.01*125250, rtol=1e-12)
        assert jmat[3, 2] == jmat[2, 3]
        assert not np.any(jmat[:2, 2:])
        assert not np.any(jmat[2:, :2])
        assert jmat[0, 1] == 0
        fisher.validate()

        scaled = crb.fim_closed(np.pi/3, 2, 20, 0.5, 1.).j
        assert np.isclose(scaled[2, 4], 4*0.25*crb.power_sum(2, 20))
        assert np.isclose(scaled[1, 1], 2*20*0.75)

    def test_fim_positive_definite(self):
        for q in range(1, 6):
            for n in (q + 1, 32):
                fisher = crb.fim_closed(1.1, q, n, 1., 0.2)
                diag = np.sqrt(np.diag(fisher.j))
                _, pivots, _ = scipy.linalg.ldl(
                    fisher.j/np.outer(diag, diag)
                )
                assert np.all(np.linalg.eigvalsh(pivots) > 0)

    def test_crb_examples(self):
        bound = crb.crb_closed(np.pi/4, 500, 0.1)
        assert np.isclose(bound.crb_alpha, 1e-4, rtol=1e-12)
        assert np.isclose(bound.crb_beta, 2e-4, rtol=1e-12)
        assert np.isclose(bound.std_alpha_deg, 0.5729578, atol=1e-6)
        bound.validate()

        bound = crb.crb_closed(np.pi/2, 500, 0.1)
        assert bound.crb_alpha == bound.crb_beta

        for alpha in np.linspace(0.1, np.pi - 0.1, 7):
            bound = crb.crb_closed(alpha, 64, 0.3)
            assert bound.crb_beta >= bound.crb_alpha

    def test_crb_errors(self):
        with self.assertRaises(PoleSingularity):
            crb.crb_closed(0., 500, 0.1)
        with self.assertRaises(ZeroDivisionError):
            crb.crb_closed(np.pi, 500, 0.1)
        with self.assertRaises(ValueError):
            crb.crb_closed(1., 0, 0.1)
        with self.assertRaises(ValueError):
            crb.crb_closed(1., 10, 0.)
        with self.assertRaises(ValueError):
            crb.fim_closed(1., 0, 10, 1., 0.1)

    def test_crb_from_fisher(self):
        fisher = crb.fim_closed(np.pi/3, 2, 32, 1., 0.1)
        full = crb.crb_from_fisher(fisher)
        closed = crb.crb_closed(np.pi/3, 32, 0.1)
        assert np.isclose(full.crb_alpha, closed.crb_alpha, rtol=1e-12)
        assert np.isclose(full.crb_beta, closed.crb_beta, rtol=1e-12)
        assert full.crb_b.shape == (3,)
        assert np.all(full.crb_b > 0)
        assert np.allclose(
            np.dot(fisher.inverse(), fisher.j), np.eye(5), atol=1e-6
        )

    def test_fisher_matrix_validation(self):
        with self.assertRaises(ValueError):
            crb.FisherMatrix(j=[[1., 2.], [0., 1.]],
                             param_order=['alpha', 'beta']).validate()
        with self.assertRaises(ValueError):
            crb.FisherMatrix(j=np.eye(3),
                             param_order=['alpha', 'beta']).validate()
        with self.assertRaises(ValueError):
            crb.CrbResult(crb_alpha=2., crb_beta=1.).validate()


class TestNumericFisher(unittest.TestCase):

    def test_matches_closed_form(self):
        rng = make_rng(8)
        for q in (1, 2, 3):
            doa = Doa(alpha=rng.uniform(0.3, 2.8), beta=rng.uniform(0, 6.))
            coeffs = PpsCoeffs(
                b=np.r_[rng.uniform(0, 0.5, q), rng.uniform(0.01, 0.5)]
            )
            closed = crb.fim_closed(doa.alpha, q, 32, 1., 0.5).j
            numeric = crb.fim_numeric(doa, coeffs, 32, 1., 0.5).j
            scale = np.sqrt(np.outer(np.diag(closed), np.diag(closed)))
            assert (np.abs(numeric - closed)/scale).max() < 1e-4

    def test_direction_bound_independent_of_phase(self):
        rng = make_rng(9)
        doa = Doa.from_degrees(50, 10)
        closed = crb.crb_closed(doa.alpha, 24, 0.1)
        for idx in range(10):
            q = 1 + idx % 5
            coeffs = PpsCoeffs(
                b=np.r_[rng.uniform(0, 0.5, q), rng.uniform(0.01, 0.5)]
            )
            again = crb.crb_closed(doa.alpha, 24, 0.1)
            assert again.crb_alpha == closed.crb_alpha
            assert again.crb_beta == closed.crb_beta
            full = crb.crb_from_fisher(
                crb.fim_closed(doa.alpha, q, 24, 1., 0.1)
            )
            assert np.isclose(full.crb_alpha, closed.crb_alpha, rtol=1e-12)
            assert np.isclose(full.crb_beta, closed.crb_beta, rtol=1e-12)
            if q > 3:
                continue
            bound = crb.crb_from_fisher(
                crb.fim_numeric(doa, coeffs, 24, 1., 0.1)
            )
            assert np.isclose(bound.crb_alpha, closed.crb_alpha, rtol=1e-4)
            assert np.isclose(bound.crb_beta, closed.crb_beta, rtol=1e-4)


if __name__ == '__main__':
    unittest.main()
