"""esprit.py: one-source ESPRIT on the dephased matrix pencil

The dominant eigenvector of the 8 x 8 pencil correlation splits into two
4-vectors related by the invariant factor :code:`rho`. Their scalar
least-squares ratio estimates :code:`rho`, their average estimates the
steering vector up to a complex scale, and the ratios of the velocity
elements to the pressure element give the direction.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import logging
import math
import warnings

import numpy as np
import properties

from .dephase import DephaseConfig, build_pencil, reduce_to_linear
from .props import ComplexArray
from .sigmodel import Doa, SnapshotMatrix
from .utils import (
    ElevationAtPole,
    NoConvergence,
    ZeroPressureChannel,
    ZeroReference,
    ZeroRho,
    wrap_angle,
)

logger = logging.getLogger(__name__)

EIG_TOL = 1e-12
EIG_MAX_ITER = 10000
HERMITIAN_TOL = 1e-12
TIE_RATIO = 1 - 1e-9
TIE_MAX_ITER = 64
POLE_MARGIN = 1e-9


class DoaEstimate(properties.HasProperties):
    """Direction estimate with the pipeline intermediates"""

    doa = properties.Instance('Estimated direction of arrival', Doa)
    rho = properties.Complex('Estimated invariant factor of the pencil')
    bq_hat = properties.Float(
        'Estimated leading phase coefficient; only set when the branch '
        'integer m_b is supplied',
        required=False,
    )
    v1 = ComplexArray('Top half of the dominant eigenvector', shape=(4,))
    v2 = ComplexArray('Bottom half of the dominant eigenvector', shape=(4,))
    a_tilde_hat = ComplexArray(
        'Steering vector estimate, within an unknown complex scale',
        shape=(4,),
    )
    eigenvalue = properties.Float(
        'Dominant eigenvalue of the pencil correlation',
        min=0.,
    )
    at_pole = properties.Boolean(
        'Elevation estimate sits at a pole; azimuth carries no information',
        default=False,
    )

    @properties.validator
    def _check_rho(self):
        if abs(self.rho) == 0:
            raise properties.ValidationError(
                'Invariant factor must be nonzero', 'invalid', 'rho', self,
            )


def correlation(y):
    """Hermitian correlation :code:`Y Y^H` of a pencil dataset"""
    data = y.y if isinstance(y, properties.HasProperties) else np.asarray(y)
    corr = np.dot(data, data.conj().T)
    return (corr + corr.conj().T)/2


def _power_iterate(r, vec, tol, max_iter):
    """Iterate from vec; return (eigenvalue, vector, iterations, converged)"""
    lam = 0.
    for count in range(1, max_iter + 1):
        prod = np.dot(r, vec)
        lam = np.vdot(vec, prod).real
        if np.linalg.norm(prod - lam*vec) <= tol*abs(lam):
            return lam, vec, count, True
        size = np.linalg.norm(prod)
        if size == 0:
            return 0., vec, count, False
        vec = prod/size
    return lam, vec, max_iter, False


def _start_vector(r):
    """All-ones start, or the largest-diagonal column if that is orthogonal"""
    dim = r.shape[0]
    vec = np.ones(dim, dtype=complex)/np.sqrt(dim)
    if np.linalg.norm(np.dot(r, vec)) > 1e-8*np.linalg.norm(r):
        return vec
    col = r[:, int(np.argmax(np.abs(np.diag(r))))]
    size = np.linalg.norm(col)
    if size == 0:
        return vec
    return col/size


def dominant_eigvec(r, tol=EIG_TOL, max_iter=EIG_MAX_ITER):
    """Dominant eigenpair of a Hermitian matrix by power iteration

    The returned eigenvector has unit norm and its largest-modulus
    element is real and positive. On success
    :code:`||r v - lam v|| <= tol lam`.

    A degenerate top of the spectrum is reported rather than resolved
    arbitrarily: if the runner-up eigenvalue, estimated on the deflated
    matrix :code:`r - lam v v^H`, reaches :code:`(1 - 1e-9) lam`, or if
    :code:`lam` is zero, :class:`NoConvergence` is raised.

    **Parameters**:

    * **r** - Hermitian matrix (within 1e-12 relative asymmetry)
    * **tol** - relative residual tolerance
    * **max_iter** - iteration limit

    **Returns** :code:`(eigenvalue, eigenvector)`
    """
    r = np.asarray(r, dtype=complex)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ValueError('Expected a square matrix, got shape {}'.format(
            r.shape
        ))
    scale = np.linalg.norm(r)
    if np.linalg.norm(r - r.conj().T) > HERMITIAN_TOL*scale:
        raise ValueError('Matrix is not Hermitian')
    r = (r + r.conj().T)/2
    if scale == 0:
        raise NoConvergence('Zero matrix has no dominant eigenvector',
                            max_iter)

    lam, vec, count, converged = _power_iterate(
        r, _start_vector(r), tol, max_iter
    )
    if not converged:
        raise NoConvergence(
            'Power iteration residual above {} after {} iterations'.format(
                tol, count
            ),
            max_iter,
        )
    if lam <= 0:
        raise NoConvergence('Dominant eigenvalue is zero', max_iter)
    logger.debug('power iteration converged in %d iterations, lambda=%g',
                 count, lam)

    deflated = r - lam*np.outer(vec, vec.conj())
    runner_up, _, _, _ = _power_iterate(
        deflated, _start_vector(deflated), tol, min(max_iter, TIE_MAX_ITER)
    )
    if runner_up >= TIE_RATIO*lam:
        raise NoConvergence(
            'Top eigenvalues are degenerate ({:g} vs {:g})'.format(
                lam, runner_up
            ),
            max_iter,
        )

    vec = vec/np.linalg.norm(vec)
    idx = int(np.argmax(np.abs(vec)))
    vec = vec*np.conj(vec[idx])/abs(vec[idx])
    vec[idx] = abs(vec[idx])
    return float(lam), vec


def estimate_rho(v1, v2):
    """Scalar least-squares solution of :code:`v2 = rho v1`"""
    v1 = np.asarray(v1, dtype=complex)
    v2 = np.asarray(v2, dtype=complex)
    energy = np.vdot(v1, v1).real
    if np.sqrt(energy) < 1e-14:
        raise ZeroReference('Reference half of the eigenvector vanished')
    return complex(np.vdot(v1, v2)/energy)


def _frequency_scale(q, delta, pencil_delay):
    return (-1)**(q - 1)*math.factorial(q)*delta**(q - 1)*pencil_delay


def pencil_rho(bq, q, delta, pencil_delay):
    """Noiseless invariant factor for leading coefficient bq

    :code:`rho = exp(j (-1)^(q-1) q! bq delta^(q-1) pencil_delay)`
    """
    return np.exp(1j*_frequency_scale(q, delta, pencil_delay)*bq)


def estimate_bq(rho, q, delta, pencil_delay, m_b=0):
    """Leading phase coefficient from the invariant factor

    :code:`m_b` selects the phase branch; it must come from prior
    knowledge of the range of :code:`b_q`.
    """
    scale = _frequency_scale(q, delta, pencil_delay)
    if scale == 0:
        raise ValueError('pencil_delay * delta^(q-1) must be nonzero')
    return float((np.angle(rho) + 2*np.pi*m_b)/scale)


def estimate_manifold(v1, v2, rho):
    """Average of the two steering-vector estimates, :code:`(v1 + v2/rho)/2`"""
    if abs(rho) < np.finfo(float).tiny:
        raise ZeroRho('Invariant factor is zero')
    v1 = np.asarray(v1, dtype=complex)
    v2 = np.asarray(v2, dtype=complex)
    return (v1 + v2/rho)/2


def _doa_from_ratios(a_tilde_hat):
    a_tilde_hat = np.asarray(a_tilde_hat, dtype=complex)
    size = np.linalg.norm(a_tilde_hat)
    if size == 0 or abs(a_tilde_hat[3]) <= 1e-12*size:
        raise ZeroPressureChannel('Pressure element of the estimate vanished')
    u_x, u_y, u_z = (a_tilde_hat[:3]/a_tilde_hat[3]).real
    alpha = np.arccos(np.clip(u_z, -1., 1.))
    beta = wrap_angle(np.arctan2(u_y, u_x))
    at_pole = abs(u_z) > 1 - POLE_MARGIN
    return Doa(alpha=float(alpha), beta=float(beta)), bool(at_pole)


def _warn_pole(doa):
    warnings.warn(
        'Elevation estimate {:.3g} rad is at a pole; azimuth is '
        'unreliable'.format(doa.alpha),
        ElevationAtPole,
    )


def extract_doa(a_tilde_hat):
    """Direction from a (scaled) steering vector estimate

    The velocity elements are divided by the pressure element and their
    real parts taken. :class:`ElevationAtPole` is warned when the
    elevation sits at a pole; the azimuth is still returned.
    """
    doa, at_pole = _doa_from_ratios(a_tilde_hat)
    if at_pole:
        _warn_pole(doa)
    return doa


def estimate_doa_pipeline(z, q, cfg=None, pencil_delay=1, m_b=None,
                          tol=EIG_TOL, max_iter=EIG_MAX_ITER):
    """Direction of a degree-q polynomial-phase source from snapshots

    Reduces the data to linear phase, builds the pencil, and runs
    one-source ESPRIT on it.

    **Parameters**:

    * **z** - :class:`SnapshotMatrix` (a bare 4 x N array is taken as
      sampled with ts = 1)
    * **q** - phase-polynomial degree
    * **cfg** - :class:`DephaseConfig`, default row 4 with unit lag
    * **pencil_delay** - pencil displacement in samples
    * **m_b** - branch integer; if given, :code:`bq_hat` is filled

    **Returns** a :class:`DoaEstimate`
    """
    cfg = cfg or DephaseConfig()
    if not isinstance(z, SnapshotMatrix):
        z = SnapshotMatrix(data=z)
    z1 = reduce_to_linear(z, q, cfg)
    pencil = build_pencil(z1, pencil_delay, q, cfg.delay_samples)
    lam, vec = dominant_eigvec(correlation(pencil), tol, max_iter)
    v1, v2 = vec[:4], vec[4:]
    rho = estimate_rho(v1, v2)
    a_tilde_hat = estimate_manifold(v1, v2, rho)
    doa, at_pole = _doa_from_ratios(a_tilde_hat)
    if at_pole:
        _warn_pole(doa)
    estimate = DoaEstimate(
        doa=doa,
        rho=rho,
        v1=v1,
        v2=v2,
        a_tilde_hat=a_tilde_hat,
        eigenvalue=lam,
        at_pole=at_pole,
    )
    if m_b is not None:
        estimate.bq_hat = estimate_bq(
            rho, q, cfg.delay_samples*z.ts, pencil_delay*z.ts, m_b
        )
    logger.debug('pipeline estimate alpha=%.6f beta=%.6f |rho|=%.6f',
                 doa.alpha, doa.beta, abs(rho))
    return estimate
