from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import unittest

import numpy as np

from avsdf import sigmodel
from avsdf.utils import TrajectoryOutOfRange, make_rng


class TestDoa(unittest.TestCase):

    def test_doa(self):
        doa = sigmodel.Doa(alpha=1., beta=-np.pi/2)
        assert doa.beta == 1.5*np.pi
        doa.validate()
        with self.assertRaises(ValueError):
            doa.alpha = 3.5
        with self.assertRaises(ValueError):
            doa.alpha = -0.1

        doa = sigmodel.Doa.from_degrees(45, 60)
        alpha_deg, beta_deg = doa.as_degrees()
        assert np.isclose(alpha_deg, 45.)
        assert np.isclose(beta_deg, 60.)
        assert repr(doa).startswith('Doa(alpha=0.785398')

    def test_pps_coeffs(self):
        coeffs = sigmodel.PpsCoeffs(b=[0.05, 0.1, 0.13])
        assert coeffs.q == 2
        coeffs.validate()
        assert np.isclose(coeffs.phase(2.), 0.05 + 0.2 + 0.52)
        assert sigmodel.PpsCoeffs().q is None

        with self.assertRaises(ValueError):
            sigmodel.PpsCoeffs(b=[1.]).validate()
        with self.assertRaises(ValueError):
            sigmodel.PpsCoeffs(b=[0.1, 0.]).validate()

    def test_snapshot_matrix(self):
        snaps = sigmodel.SnapshotMatrix(data=np.zeros((4, 5)), ts=0.5, t0=1.)
        assert snaps.n_samples == 5
        assert np.allclose(snaps.times(), [1., 1.5, 2., 2.5, 3.])
        snaps.validate()
        snaps.ts = -1.
        with self.assertRaises(ValueError):
            snaps.validate()
        with self.assertRaises(ValueError):
            sigmodel.SnapshotMatrix(data=np.zeros((4, 0))).validate()
        with self.assertRaises(ValueError):
            sigmodel.SnapshotMatrix(data=np.zeros((3, 5)))

    def test_noise_spec(self):
        with self.assertRaises(ValueError):
            sigmodel.NoiseSpec(sigma2=-0.1)
        assert not np.any(sigmodel.NoiseSpec().draw((4, 10)))

        noise = sigmodel.NoiseSpec(sigma2=0.5, seed=3)
        block = noise.draw((4, 6))
        parts = make_rng(3).standard_normal((2, 4, 6))
        assert np.allclose(block, 0.5*(parts[0] + 1j*parts[1]))


class TestManifold(unittest.TestCase):

    def test_steering_vector_examples(self):
        vec = sigmodel.steering_vector(sigmodel.Doa(alpha=0., beta=0.))
        assert np.allclose(vec.a, [0., 0., 1., 1.], rtol=0, atol=1e-15)

        vec = sigmodel.steering_vector(sigmodel.Doa.from_degrees(90, 0))
        assert np.allclose(vec.a, [1., 0., 0., 1.], rtol=0, atol=1e-12)

        vec = sigmodel.steering_vector(sigmodel.Doa.from_degrees(45, 60))
        assert np.allclose(vec.a, [0.353553, 0.612372, 0.707107, 1.],
                           rtol=0, atol=1e-6)
        assert vec.a[3] == 1.

    def test_steering_vector_properties(self):
        rng = make_rng(11)
        for _ in range(100):
            doa = sigmodel.Doa(
                alpha=rng.uniform(np.deg2rad(10.), np.deg2rad(170.)),
                beta=rng.uniform(0., 2*np.pi),
            )
            a = sigmodel.steering_vector(doa).a
            assert abs(np.dot(a, a) - 2.) < 1e-12
            assert abs(np.arccos(a[2]) - doa.alpha) < 1e-12
            beta = np.mod(np.arctan2(a[1], a[0]), 2*np.pi)
            assert abs(np.angle(np.exp(1j*(beta - doa.beta)))) < 1e-12

    def test_manifold_matrix(self):
        alpha = np.array([0.3, 1.2])
        beta = np.array([2., 5.])
        cols = sigmodel.manifold_matrix(alpha, beta)
        assert cols.shape == (4, 2)
        for idx in range(2):
            doa = sigmodel.Doa(alpha=alpha[idx], beta=beta[idx])
            assert np.allclose(cols[:, idx],
                               sigmodel.steering_vector(doa).a)

    def test_pps_sample(self):
        assert sigmodel.pps_sample([0.], 3.) == 1
        assert np.isclose(sigmodel.pps_sample([0., 0.3], 2.),
                          np.exp(0.6j))
        coeffs = sigmodel.PpsCoeffs(b=[0.05, 0.1, 0.13])
        assert np.isclose(sigmodel.pps_sample(coeffs, 0.), np.exp(0.05j))
        samples = sigmodel.pps_sample(coeffs, np.arange(100.))
        assert np.allclose(np.abs(samples), 1.)


class TestSynthesis(unittest.TestCase):

    def setUp(self):
        self.doa = sigmodel.Doa.from_degrees(45, 60)
        self.coeffs = sigmodel.PpsCoeffs(b=[0.05, 0.1, 0.13])

    def test_static_noiseless(self):
        snaps = sigmodel.synth_static(self.doa, self.coeffs, 50, 0.5,
                                      sigmodel.NoiseSpec(), t0=2.)
        assert snaps.data.shape == (4, 50)
        assert snaps.ts == 0.5
        assert snaps.t0 == 2.
        times = 2. + 0.5*np.arange(50)
        want = np.outer(sigmodel.steering_vector(self.doa).a,
                        sigmodel.pps_sample(self.coeffs, times))
        assert np.allclose(snaps.data, want, rtol=0, atol=1e-14)

        with self.assertRaises(ValueError):
            sigmodel.synth_static(self.doa, self.coeffs, 0, 1.,
                                  sigmodel.NoiseSpec())
        with self.assertRaises(ValueError):
            sigmodel.synth_static(self.doa, self.coeffs, 10, 0.,
                                  sigmodel.NoiseSpec())
        with self.assertRaises(ValueError):
            sigmodel.synth_static(self.doa, sigmodel.PpsCoeffs(b=[1.]), 10,
                                  1., sigmodel.NoiseSpec())

    def test_static_noise(self):
        clean = sigmodel.synth_static(self.doa, self.coeffs, 100000, 1.,
                                      sigmodel.NoiseSpec()).data
        noisy = sigmodel.synth_static(
            self.doa, self.coeffs, 100000, 1.,
            sigmodel.NoiseSpec(sigma2=0.01, seed=5),
        ).data
        again = sigmodel.synth_static(
            self.doa, self.coeffs, 100000, 1.,
            sigmodel.NoiseSpec(sigma2=0.01, seed=5),
        ).data
        assert np.array_equal(noisy, again)
        noise = noisy - clean
        power = np.mean(np.abs(noise)**2, axis=1)
        assert np.all(np.abs(power/0.01 - 1.) < 0.02)

        other = sigmodel.synth_static(
            self.doa, self.coeffs, 100000, 1.,
            sigmodel.NoiseSpec(sigma2=0.01, seed=6),
        ).data - clean
        first, second = noise[0], other[0]
        corr = abs(np.vdot(first, second))/np.sqrt(
            np.vdot(first, first).real*np.vdot(second, second).real
        )
        assert corr < 3/np.sqrt(len(first))

    def test_trajectory(self):
        traj = sigmodel.Trajectory(alpha0=np.pi/2, beta0=np.pi,
                                   omega_alpha=0.01, omega_beta=-0.012)
        alpha, beta = traj.angles([0., 100.])
        assert alpha[0] == np.pi/2
        assert np.isclose(alpha[1], np.pi/2 + np.sin(1.))
        assert np.isclose(beta[1], np.pi + np.sin(-1.2))
        doa = traj.doa_at(100.)
        assert np.isclose(doa.alpha, alpha[1])
        traj.check(np.arange(1000.))

        _, wrapped = sigmodel.truth_angles(
            sigmodel.Trajectory(alpha0=1., beta0=0.1, omega_beta=1.),
            [-np.pi/2],
        )
        assert np.isclose(wrapped[0], 2*np.pi - 0.9)

        high = sigmodel.Trajectory(alpha0=np.deg2rad(170.), beta0=0.,
                                   omega_alpha=0.01)
        with self.assertRaises(TrajectoryOutOfRange):
            high.check(np.arange(1000.))
        with self.assertRaises(TrajectoryOutOfRange):
            sigmodel.synth_moving(high, self.coeffs, 1000, 1.,
                                  sigmodel.NoiseSpec())

    def test_moving_matches_static(self):
        still = sigmodel.Trajectory(alpha0=self.doa.alpha,
                                    beta0=self.doa.beta, amplitude=0.)
        moving = sigmodel.synth_moving(still, self.coeffs, 30, 1.,
                                       sigmodel.NoiseSpec(sigma2=0.1, seed=2))
        static = sigmodel.synth_static(self.doa, self.coeffs, 30, 1.,
                                       sigmodel.NoiseSpec(sigma2=0.1, seed=2))
        assert np.allclose(moving.data, static.data, rtol=0, atol=1e-14)

    def test_moving_columns(self):
        traj = sigmodel.Trajectory(alpha0=np.pi/2, beta0=np.pi,
                                   omega_alpha=0.01, omega_beta=-0.012)
        snaps = sigmodel.synth_moving(traj, self.coeffs, 200, 1.,
                                      sigmodel.NoiseSpec())
        for idx in (0, 57, 199):
            doa = traj.doa_at(float(idx))
            want = (sigmodel.steering_vector(doa).a *
                    sigmodel.pps_sample(self.coeffs, float(idx)))
            assert np.allclose(snaps.data[:, idx], want, atol=1e-12)


if __name__ == '__main__':
    unittest.main()
