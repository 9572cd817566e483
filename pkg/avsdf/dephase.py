"""dephase.py: recursive dephasing of polynomial-phase snapshots

One dephasing step multiplies every snapshot by the conjugate of a
reference element a fixed lag later:

.. code::

    z'(t) = z(t) conj(z_i(t + delta))

which lowers the degree of the phase polynomial by one. After
:code:`q - 1` steps a degree-q source becomes a pure tone whose frequency
depends only on :code:`b_q`; a constant-frequency stream then forms the
two shifted blocks of an ESPRIT matrix pencil.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import logging

import numpy as np
from numpy.polynomial import Polynomial
import properties

from .props import ComplexArray
from .sigmodel import SnapshotMatrix, manifold_matrix
from .utils import InsufficientSamples, NearZeroReferenceRow

logger = logging.getLogger(__name__)

NEAR_ZERO_REFERENCE = 1e-9


class DephaseConfig(properties.HasProperties):
    """Reference selection and lag of the dephasing recursion"""

    delay_samples = properties.Integer(
        'Dephasing lag d, in samples',
        min=1,
        default=1,
    )
    mode = properties.StringChoice(
        'Reference element: a single row, or the sum over all rows',
        choices=['single', 'sum'],
        default='single',
    )
    row_index = properties.Integer(
        'Reference row (1-based) when mode is single; row 4 is the '
        'pressure channel',
        min=1,
        max=4,
        default=4,
    )


class PencilDataset(properties.HasProperties):
    """Stacked 8 x N' matrix pencil :code:`Y = [Y1; Y2]`

    :code:`Y2` is :code:`Y1` advanced by :code:`pencil_delay_samples`
    columns, so noiseless data satisfy :code:`Y2 = rho Y1`.
    """

    y = ComplexArray(
        'Stacked pencil blocks, top four rows Y1 and bottom four rows Y2',
        shape=(8, '*'),
    )
    pencil_delay_samples = properties.Integer(
        'Pencil displacement in samples',
        min=1,
        default=1,
    )
    q = properties.Integer(
        'Phase-polynomial degree of the source',
        min=1,
        default=1,
    )
    delta_samples = properties.Integer(
        'Dephasing lag used to produce the linear-phase stream',
        min=1,
        default=1,
    )

    @properties.validator
    def _check_columns(self):
        if self.y.shape[1] < 1:
            raise properties.ValidationError(
                'A pencil needs at least one column', 'invalid', 'y', self,
            )

    @property
    def y1(self):
        """Top block"""
        return self.y[:4]

    @property
    def y2(self):
        """Bottom (displaced) block"""
        return self.y[4:]


def _as_data(z):
    if isinstance(z, SnapshotMatrix):
        return z.data
    return np.asarray(z, dtype=complex)


def _reference(z, cfg):
    if cfg.mode == 'sum':
        return z.sum(axis=0)
    return z[cfg.row_index - 1]


def dephase_step(z, cfg):
    """One conjugate-lag multiplication

    Output column :code:`n` is input column :code:`n` times the conjugate
    of the reference element of column :code:`n + d`; it keeps the
    timestamp of input column :code:`n`.

    **Parameters**:

    * **z** - 4 x N complex array (or :class:`SnapshotMatrix`)
    * **cfg** - :class:`DephaseConfig`

    **Returns** a 4 x (N - d) complex array
    """
    cfg.validate()
    z = _as_data(z)
    lag = cfg.delay_samples
    if z.shape[1] <= lag:
        raise InsufficientSamples(lag + 1, z.shape[1], 'dephase_step')
    ref = _reference(z, cfg)
    scale = np.mean(np.linalg.norm(z, axis=0))
    if np.mean(np.abs(ref)) < NEAR_ZERO_REFERENCE*scale:
        raise NearZeroReferenceRow(
            'Reference {} is numerically zero for this direction; use '
            'row_index=4 (pressure channel) or mode=sum'.format(
                'sum' if cfg.mode == 'sum' else 'row {}'.format(cfg.row_index)
            )
        )
    return z[:, :-lag]*np.conj(ref[lag:])


def reduce_to_linear(z, q, cfg):
    """Apply :code:`q - 1` dephasing steps

    Noiseless output columns are :code:`a_tilde exp(j w t)` with
    :code:`w = (-1)^(q-1) q! b_q delta^(q-1)`. For :code:`q = 1` the data
    are returned unchanged.

    **Returns** a 4 x (N - (q-1) d) complex array
    """
    if q < 1:
        raise ValueError('Degree q must be at least 1, not {}'.format(q))
    cfg.validate()
    data = _as_data(z)
    consumed = (q - 1)*cfg.delay_samples
    if data.shape[1] <= consumed:
        raise InsufficientSamples(consumed + 1, data.shape[1],
                                  'reduce_to_linear')
    for _ in range(q - 1):
        data = dephase_step(data, cfg)
    logger.debug('reduced degree %d stream to %d linear-phase columns',
                 q, data.shape[1])
    return np.array(data, dtype=complex)


def build_pencil(z1, pencil_delay_samples, q=1, delta_samples=1):
    """Stack a linear-phase stream with its displaced copy

    :code:`Y1` holds columns :code:`0..N'-1` and :code:`Y2` columns
    :code:`D..D+N'-1` where :code:`N' = N1 - D`.
    """
    z1 = _as_data(z1)
    shift = int(pencil_delay_samples)
    if shift < 1:
        raise ValueError('pencil_delay_samples must be at least 1')
    if z1.shape[1] <= shift:
        raise InsufficientSamples(shift + 1, z1.shape[1], 'build_pencil')
    y = np.vstack([z1[:, :-shift], z1[:, shift:]])
    return PencilDataset(
        y=y,
        pencil_delay_samples=shift,
        q=q,
        delta_samples=delta_samples,
    )


def track_preprocess(z, q, cfg=None):
    """Remove the source phase from every window of q + 1 snapshots

    Applies the dephasing step :code:`q` times with unit lag so that each
    output column depends on :code:`q + 1` contiguous inputs. For a
    degree-q source the residual phase is the constant
    :code:`(-1)^q q! b_q ts^q`, so the output tracks the manifold alone.

    **Returns** a :class:`SnapshotMatrix` of :code:`M - q` columns; column
    :code:`n` is stamped with the time of input column :code:`n`.
    """
    cfg = cfg or DephaseConfig()
    cfg.validate()
    if cfg.delay_samples != 1:
        raise ValueError(
            'Tracking pre-processing uses unit lag; delay_samples is '
            '{}'.format(cfg.delay_samples)
        )
    if q < 1:
        raise ValueError('Degree q must be at least 1, not {}'.format(q))
    if not isinstance(z, SnapshotMatrix):
        z = SnapshotMatrix(data=z)
    data = z.data
    if data.shape[1] <= q:
        raise InsufficientSamples(q + 1, data.shape[1], 'track_preprocess')
    for _ in range(q):
        data = dephase_step(data, cfg)
    return SnapshotMatrix(data=data, ts=z.ts, t0=z.t0)


def closed_form_linear(doa, coeffs, n, ts, cfg, steps=None, t0=0.):
    """Noiseless output of :code:`steps` dephasing steps, in closed form

    Independent of :func:`dephase_step`: the phase polynomial is
    differenced symbolically, :code:`p(t) - p(t + delta)`, and the complex
    amplitude follows :code:`c <- |c|^2 conj(r)` where :code:`r` is the
    reference element of the steering vector (or the sum of its elements).

    **Parameters**:

    * **doa**, **coeffs** - source direction and phase coefficients
    * **n**, **ts**, **t0** - sampling of the original snapshots
    * **cfg** - :class:`DephaseConfig`
    * **steps** - number of dephasing steps; defaults to :code:`q - 1`
      (the output of :func:`reduce_to_linear`); :code:`q` with unit lag
      reproduces :func:`track_preprocess`
    """
    cfg.validate()
    if steps is None:
        steps = coeffs.q - 1
    lag = cfg.delay_samples
    n_out = n - steps*lag
    if n_out < 1:
        raise InsufficientSamples(steps*lag + 1, n, 'closed_form_linear')
    a = manifold_matrix(doa.alpha, doa.beta)
    if cfg.mode == 'sum':
        ref = a.sum()
    else:
        ref = a[cfg.row_index - 1]
    phase = Polynomial(coeffs.b)
    shift = Polynomial([lag*ts, 1.])
    amp = 1. + 0j
    for _ in range(steps):
        phase = phase - phase(shift)
        amp = abs(amp)**2*np.conj(ref)
    times = t0 + ts*np.arange(n_out)
    return np.outer(amp*a, np.exp(1j*phase(times)))
