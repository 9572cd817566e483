"""tracking.py: forgetting-factor tracking of a moving source"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from collections import namedtuple
import logging

import numpy as np
import properties

from .dephase import DephaseConfig, track_preprocess
from .props import RealArray
from .sigmodel import Doa, SnapshotMatrix, Trajectory, truth_angles
from .utils import SkipSample, wrap_angle, wrap_degrees

logger = logging.getLogger(__name__)

SKIP_TOL = 1e-12

TrackPoint = namedtuple(
    'TrackPoint',
    ['n', 'time', 'estimate', 'truth', 'alpha_err_deg', 'beta_err_deg'],
)


class TrackState(properties.HasProperties):
    """Current manifold estimate of a tracker"""

    a_hat = RealArray(
        'Manifold estimate [u_x, u_y, u_z, 1]',
        shape=(4,),
    )
    n = properties.Integer(
        'Number of updates applied since initialization',
        min=0,
        default=0,
    )

    @properties.validator
    def _check_pinned(self):
        if self.a_hat[3] != 1:
            raise properties.ValidationError(
                'Pressure element of the manifold estimate must be 1',
                'invalid', 'a_hat', self,
            )


class ForgettingSpec(properties.HasProperties):
    """Forgetting factors of a single- or multiple-factor tracker

    SFF uses one factor for every component; MFF uses :code:`lambdas[0]`,
    :code:`lambdas[1]`, :code:`lambdas[2]` for :code:`u_x`, :code:`u_y`,
    :code:`u_z` respectively.
    """

    method = properties.StringChoice(
        'Tracker type',
        choices=['SFF', 'MFF'],
        default='SFF',
    )
    lambdas = properties.List(
        'Forgetting factors, each in (0, 1)',
        prop=properties.Float('', min=0., max=1.),
        min_length=1,
        max_length=3,
        coerce=True,
    )

    @properties.validator
    def _check_lambdas(self):
        needed = 1 if self.method == 'SFF' else 3
        if len(self.lambdas) != needed:
            raise properties.ValidationError(
                '{} needs {} forgetting factor{}, got {}'.format(
                    self.method, needed, '' if needed == 1 else 's',
                    len(self.lambdas),
                ),
                'invalid', 'lambdas', self,
            )
        if any(lam <= 0 or lam >= 1 for lam in self.lambdas):
            raise properties.ValidationError(
                'Forgetting factors must lie strictly between 0 and 1',
                'invalid', 'lambdas', self,
            )

    def label(self):
        """Short description, e.g. SFF(0.7) or MFF(0.9/0.8/0.7)"""
        return '{}({})'.format(
            self.method, '/'.join('{:g}'.format(lam) for lam in self.lambdas)
        )


def instant_manifold(z_breve, literal=False):
    """Single-sample manifold estimate from a pre-processed snapshot

    By default the snapshot is divided by its pressure element and the
    real part taken, :code:`Re(z / z_4)`, which removes any common phase.
    With :code:`literal=True` the real parts are divided instead,
    :code:`Re(z) / Re(z_4)`, which is only exact when the common phase
    is a multiple of pi.

    Raises :class:`SkipSample` when the divisor is numerically zero.
    """
    z_breve = np.asarray(z_breve, dtype=complex)
    size = np.linalg.norm(z_breve)
    divisor = z_breve[3].real if literal else z_breve[3]
    if size == 0 or abs(divisor) < SKIP_TOL*size:
        raise SkipSample('Pressure element is numerically zero')
    if literal:
        inst = z_breve.real/divisor
    else:
        inst = (z_breve/divisor).real
    inst[3] = 1.
    return inst


def sff_update(state, inst, lam):
    """Single-forgetting-factor recursion

    :code:`a(n) = lam a(n-1) + (1 - lam) m(n)`
    """
    a_hat = lam*state.a_hat + (1 - lam)*np.asarray(inst, dtype=float)
    a_hat[3] = 1.
    return TrackState(a_hat=a_hat, n=state.n + 1)


def mff_update(state, inst, lambdas):
    """Multiple-forgetting-factor recursion, one factor per component"""
    lam = np.array([lambdas[0], lambdas[1], lambdas[2], 1.])
    a_hat = lam*state.a_hat + (1 - lam)*np.asarray(inst, dtype=float)
    a_hat[3] = 1.
    return TrackState(a_hat=a_hat, n=state.n + 1)


def sff_batch(instants, lam):
    """Normalized exponentially weighted average of instant estimates

    :code:`sum lam^(N-1-n) m(n) / sum lam^(N-1-n)`, the batch form of the
    SFF recursion; the two agree once the initial transient has decayed.
    """
    instants = np.asarray(instants, dtype=float)
    if instants.ndim != 2 or instants.shape[1] != 4 or len(instants) == 0:
        raise ValueError('Expected an N x 4 array of instant estimates')
    weights = lam**np.arange(len(instants))[::-1]
    a_hat = np.dot(weights, instants)/weights.sum()
    a_hat[3] = 1.
    return a_hat


def doa_from_state(state):
    """Elevation and azimuth of a tracker state"""
    u_x, u_y, u_z = state.a_hat[:3]
    return Doa(
        alpha=float(np.arccos(np.clip(u_z, -1., 1.))),
        beta=float(wrap_angle(np.arctan2(u_y, u_x))),
    )


def angular_error(est, truth):
    """Errors in degrees, azimuth wrapped into (-180, 180]"""
    alpha_err = float(np.rad2deg(est.alpha - truth.alpha))
    beta_err = wrap_degrees(np.rad2deg(est.beta - truth.beta))
    return alpha_err, beta_err


def _update(state, inst, spec):
    if spec.method == 'MFF':
        return mff_update(state, inst, spec.lambdas)
    return sff_update(state, inst, spec.lambdas[0])


def _truths(truth, times):
    if truth is None:
        return [None]*len(times)
    if isinstance(truth, Doa):
        return [truth]*len(times)
    alpha, beta = truth_angles(truth, times)
    return [Doa(alpha=float(a), beta=float(b)) for a, b in zip(alpha, beta)]


def track_run(z, q, spec, preprocess, truth=None, literal=False,
              dephase=None):
    """Track the direction of a moving polynomial-phase source

    **Parameters**:

    * **z** - :class:`SnapshotMatrix`
    * **q** - phase-polynomial degree
    * **spec** - :class:`ForgettingSpec`
    * **preprocess** - if True, remove the source phase with
      :func:`track_preprocess`; otherwise raw snapshots feed the tracker
    * **truth** - :class:`Trajectory` or static :class:`Doa` to score
      against; errors are None without it
    * **literal** - use :code:`Re(z) / Re(z_4)` instant estimates
    * **dephase** - :class:`DephaseConfig` of the pre-processing (unit lag)

    **Returns** a list of :class:`TrackPoint`, one per input step once
    the state is initialized from the first usable sample. Steps whose
    sample cannot be used repeat the held estimate.
    """
    spec.validate()
    if not isinstance(z, SnapshotMatrix):
        z = SnapshotMatrix(data=z)
    if truth is not None and not isinstance(truth, (Doa, Trajectory)):
        raise TypeError('truth must be a Doa or a Trajectory')
    if preprocess:
        if z.n_samples <= q:
            return []
        stream = track_preprocess(z, q, dephase or DephaseConfig())
    else:
        stream = z
    times = stream.times()
    truths = _truths(truth, times)

    points = []
    state = None
    skipped = 0
    for idx, column in enumerate(stream.data.T):
        try:
            inst = instant_manifold(column, literal)
        except SkipSample:
            skipped += 1
            if state is None:
                continue
        else:
            if state is None:
                state = TrackState(a_hat=inst, n=0)
            else:
                state = _update(state, inst, spec)
            estimate = doa_from_state(state)
        if truths[idx] is None:
            errors = (None, None)
        else:
            errors = angular_error(estimate, truths[idx])
        points.append(TrackPoint(
            idx, float(times[idx]), estimate, truths[idx], *errors
        ))
    if skipped:
        logger.warning('%s: %d of %d samples skipped', spec.label(), skipped,
                       len(times))
    logger.debug('%s preprocess=%s: %d track points', spec.label(),
                 preprocess, len(points))
    return points
