"""sigmodel.py: acoustic vector-sensor measurement model

A single acoustic vector sensor collocates three orthogonal particle
velocity sensors with a pressure sensor. For a unit-power plane wave from
elevation :code:`alpha` and azimuth :code:`beta` the four channels respond
with the steering vector

.. code::

    a = [sin(alpha) cos(beta), sin(alpha) sin(beta), cos(alpha), 1]

and a polynomial-phase source contributes :code:`s(t) = exp(j sum b_k t^k)`.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import logging

import numpy as np
from numpy.polynomial import polynomial as poly
import properties

from .props import Angle, ComplexArray, RealArray
from .utils import (
    SEED_MAX,
    TrajectoryOutOfRange,
    make_rng,
    wrap_angle,
)

logger = logging.getLogger(__name__)


class Doa(properties.HasProperties):
    """Direction of arrival of a single source, in radians"""

    alpha = Angle(
        'Elevation angle, measured from the z-axis',
        min=0.,
        max=np.pi,
    )
    beta = Angle(
        'Azimuth angle, measured from the x-axis',
        wrap=True,
    )

    @classmethod
    def from_degrees(cls, alpha_deg, beta_deg):
        """Construct a Doa from angles in degrees"""
        return cls(alpha=np.deg2rad(alpha_deg), beta=np.deg2rad(beta_deg))

    def as_degrees(self):
        """Return (alpha, beta) in degrees"""
        return float(np.rad2deg(self.alpha)), float(np.rad2deg(self.beta))

    def __repr__(self):
        return 'Doa(alpha={!r}, beta={!r})'.format(self.alpha, self.beta)


class PpsCoeffs(properties.HasProperties):
    """Coefficients of a polynomial-phase signal

    The phase is :code:`b[0] + b[1] t + ... + b[q] t^q` with :code:`b[k]`
    in rad/s^k. The leading coefficient must be nonzero so that the
    degree is exactly :code:`q`.
    """

    b = RealArray(
        'Phase polynomial coefficients b_0..b_q, lowest order first',
        shape=('*',),
    )

    @properties.Integer('Polynomial degree q')
    def q(self):
        """Degree of the phase polynomial"""
        if self.b is None:
            return None
        return len(self.b) - 1

    @properties.validator
    def _check_degree(self):
        """Require a true degree of at least one"""
        if len(self.b) < 2:
            raise properties.ValidationError(
                'A polynomial-phase signal needs at least b_0 and b_1',
                'invalid', 'b', self,
            )
        if self.b[-1] == 0:
            raise properties.ValidationError(
                'Leading coefficient b_q must be nonzero',
                'invalid', 'b', self,
            )

    def phase(self, t):
        """Phase in radians at time(s) t"""
        return poly.polyval(t, self.b)


class ManifoldVector(properties.HasProperties):
    """Steering vector of the acoustic vector sensor

    The velocity triad contributes the unit direction vector; the
    pressure element is identically one, so the squared norm is 2.
    """

    u = properties.Vector3(
        'Unit direction vector [u_x, u_y, u_z]',
        length=1.,
    )

    @RealArray('Steering vector [u_x, u_y, u_z, 1]', shape=(4,))
    def a(self):
        """Four-element manifold with the pressure element pinned to 1"""
        if self.u is None:
            return None
        return np.r_[np.asarray(self.u, dtype=float), 1.]


class SnapshotMatrix(properties.HasProperties):
    """Complex 4 x N vector-sensor measurements

    Column :code:`n` (0-based) is sampled at :code:`t0 + n*ts`.
    """

    data = ComplexArray(
        'Complex snapshots, one column per sampling instant',
        shape=(4, '*'),
    )
    ts = properties.Float(
        'Sampling interval, seconds',
        default=1.,
    )
    t0 = properties.Float(
        'Time of the first column, seconds',
        default=0.,
    )

    @properties.Integer('Number of snapshot columns')
    def n_samples(self):
        """Number of columns N"""
        if self.data is None:
            return None
        return self.data.shape[1]

    @properties.validator
    def _check_sampling(self):
        """Require at least one column and a positive interval"""
        if self.ts <= 0:
            raise properties.ValidationError(
                'Sampling interval must be positive', 'invalid', 'ts', self,
            )
        if self.data.shape[1] < 1:
            raise properties.ValidationError(
                'A snapshot matrix needs at least one column',
                'invalid', 'data', self,
            )

    def times(self):
        """Sampling instant of every column"""
        return self.t0 + self.ts*np.arange(self.n_samples)


class NoiseSpec(properties.HasProperties):
    """Circular complex Gaussian sensor noise

    Each channel receives :code:`sqrt(sigma2/2) (x + j y)` with independent
    standard normal :code:`x`, :code:`y`, drawn from a Philox4x64
    generator seeded with :code:`seed`. The real parts of the whole
    block are drawn first, then the imaginary parts.
    """

    sigma2 = properties.Float(
        'Per-channel noise variance (SNR = 1/sigma2)',
        min=0.,
        default=0.,
    )
    seed = properties.Integer(
        'Seed of the noise generator',
        min=0,
        max=SEED_MAX,
        default=0,
    )

    def draw(self, shape):
        """Draw one complex noise block of the given shape"""
        if self.sigma2 == 0:
            return np.zeros(shape, dtype=complex)
        rng = make_rng(self.seed)
        parts = rng.standard_normal((2,) + tuple(shape))
        return np.sqrt(self.sigma2/2)*(parts[0] + 1j*parts[1])


class Trajectory(properties.HasProperties):
    """Sinusoidal source motion

    .. code::

        alpha(t) = alpha0 + amplitude sin(omega_alpha t)
        beta(t) = beta0 + amplitude sin(omega_beta t)
    """

    alpha0 = Angle('Center elevation', min=0., max=np.pi)
    beta0 = Angle('Center azimuth', wrap=True)
    omega_alpha = properties.Float(
        'Elevation rate, radians per unit time',
        default=0.,
    )
    omega_beta = properties.Float(
        'Azimuth rate, radians per unit time',
        default=0.,
    )
    amplitude = properties.Float(
        'Excursion of both angles, radians',
        min=0.,
        default=1.,
    )

    def angles(self, times):
        """Elevation and azimuth arrays at the given times"""
        times = np.asarray(times, dtype=float)
        alpha = self.alpha0 + self.amplitude*np.sin(self.omega_alpha*times)
        beta = self.beta0 + self.amplitude*np.sin(self.omega_beta*times)
        return alpha, beta

    def check(self, times):
        """Raise TrajectoryOutOfRange unless elevation stays in (0, pi)"""
        alpha, _ = self.angles(times)
        if np.any(alpha <= 0) or np.any(alpha >= np.pi):
            raise TrajectoryOutOfRange(
                'Elevation leaves (0, pi): range [{:.6f}, {:.6f}] rad over '
                '{} samples'.format(alpha.min(), alpha.max(), alpha.size)
            )

    def doa_at(self, t):
        """Doa of the source at time t"""
        alpha, beta = self.angles(t)
        return Doa(alpha=float(alpha), beta=float(beta))


def manifold_matrix(alpha, beta):
    """Steering vectors for arrays of angles, one column per angle pair"""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    sin_a = np.sin(alpha)
    return np.array([
        sin_a*np.cos(beta),
        sin_a*np.sin(beta),
        np.cos(alpha),
        np.ones_like(alpha),
    ])


def steering_vector(doa):
    """Manifold vector for a direction of arrival"""
    doa.validate()
    col = manifold_matrix(doa.alpha, doa.beta)
    return ManifoldVector(u=col[:3])


def pps_sample(coeffs, t):
    """Unit-modulus polynomial-phase sample(s) at time(s) t

    **Parameters**:

    * **coeffs** - :class:`PpsCoeffs` or a sequence b_0..b_q
    * **t** - scalar time or array of times, seconds
    """
    if isinstance(coeffs, PpsCoeffs):
        b = coeffs.b
    else:
        b = np.asarray(coeffs, dtype=float)
    return np.exp(1j*poly.polyval(t, b))


def _validated(*objs):
    for obj in objs:
        obj.validate()


def synth_static(doa, coeffs, n, ts, noise, t0=0.):
    """Snapshots of a fixed source

    Column :code:`m` is :code:`a s(t0 + m ts) + w_m`.
    """
    _validated(doa, coeffs, noise)
    if n < 1:
        raise ValueError('n must be at least 1')
    if ts <= 0:
        raise ValueError('ts must be positive')
    times = t0 + ts*np.arange(n)
    a = manifold_matrix(doa.alpha, doa.beta)
    data = np.outer(a, pps_sample(coeffs, times)) + noise.draw((4, n))
    logger.debug('synthesized %d static snapshots, sigma2=%g', n,
                 noise.sigma2)
    return SnapshotMatrix(data=data, ts=ts, t0=t0)


def synth_moving(traj, coeffs, m, ts, noise, t0=0.):
    """Snapshots of a source following a trajectory

    Column :code:`n` is :code:`a(alpha(t_n), beta(t_n)) s(t_n) + w_n` with
    :code:`t_n = t0 + n ts`. The whole trajectory is checked before any
    data is produced.
    """
    _validated(traj, coeffs, noise)
    if m < 1:
        raise ValueError('m must be at least 1')
    if ts <= 0:
        raise ValueError('ts must be positive')
    times = t0 + ts*np.arange(m)
    traj.check(times)
    alpha, beta = traj.angles(times)
    data = manifold_matrix(alpha, beta)*pps_sample(coeffs, times)
    data = data + noise.draw((4, m))
    logger.debug('synthesized %d moving-source snapshots, sigma2=%g', m,
                 noise.sigma2)
    return SnapshotMatrix(data=data, ts=ts, t0=t0)


def truth_angles(traj, times):
    """Trajectory angles with the azimuth wrapped into [0, 2*pi)"""
    alpha, beta = traj.angles(times)
    return alpha, wrap_angle(beta)
