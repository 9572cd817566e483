"""crb.py: Fisher information and Cramer-Rao bounds

Parameters are ordered :code:`[alpha, beta, b_0, ..., b_q]`. With
:code:`K = sigma2 I` the Fisher information of the stacked noiseless
snapshots :code:`m(kappa)` is

.. code::

    J_ij = (2 / sigma2) Re(dm/dkappa_i^H dm/dkappa_j)

The direction block decouples from the phase block, so the direction
bounds do not depend on the phase coefficients or the degree.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import math

import numpy as np
import properties

from .props import RealArray
from .sigmodel import manifold_matrix, pps_sample
from .utils import PoleSingularity, SummationOverflow

POLE_TOL = 1e-9
FD_STEP = 1e-5


class FisherMatrix(properties.HasProperties):
    """Real symmetric Fisher information matrix"""

    j = RealArray('Fisher information', shape=('*', '*'))
    param_order = properties.List(
        'Parameter name of every row and column',
        prop=properties.String(''),
    )

    @properties.validator
    def _check_shape(self):
        dim = self.j.shape[0]
        if self.j.shape[1] != dim or len(self.param_order) != dim:
            raise properties.ValidationError(
                'Fisher matrix must be square with one name per row',
                'invalid', 'j', self,
            )
        if not np.allclose(self.j, self.j.T, rtol=1e-12, atol=0):
            raise properties.ValidationError(
                'Fisher matrix must be symmetric', 'invalid', 'j', self,
            )

    def inverse(self):
        """Inverse via diagonal equilibration and a linear solve"""
        diag = np.sqrt(np.abs(np.diag(self.j)))
        diag[diag == 0] = 1.
        scaled = self.j/np.outer(diag, diag)
        inv = np.linalg.solve(scaled, np.eye(len(diag)))
        return inv/np.outer(diag, diag)


class CrbResult(properties.HasProperties):
    """Cramer-Rao bounds on the direction, in rad^2"""

    crb_alpha = properties.Float('Bound on the elevation variance', min=0.)
    crb_beta = properties.Float('Bound on the azimuth variance', min=0.)
    crb_b = RealArray(
        'Bounds on the phase coefficients, when the full Fisher matrix '
        'was inverted',
        shape=('*',),
        required=False,
    )

    @properties.Float('Elevation standard deviation bound, degrees')
    def std_alpha_deg(self):
        if self.crb_alpha is None:
            return None
        return math.degrees(math.sqrt(self.crb_alpha))

    @properties.Float('Azimuth standard deviation bound, degrees')
    def std_beta_deg(self):
        if self.crb_beta is None:
            return None
        return math.degrees(math.sqrt(self.crb_beta))

    @properties.validator
    def _check_order(self):
        if self.crb_alpha <= 0:
            raise properties.ValidationError(
                'Elevation bound must be positive', 'invalid', 'crb_alpha',
                self,
            )
        if self.crb_beta < self.crb_alpha*(1 - 1e-9):
            raise properties.ValidationError(
                'Azimuth bound cannot be below the elevation bound',
                'invalid', 'crb_beta', self,
            )


def param_names(q):
    """Row names of a degree-q Fisher matrix"""
    return ['alpha', 'beta'] + ['b{}'.format(ell) for ell in range(q + 1)]


def power_sum(k, n):
    """Compensated :code:`sum_{m=1..n} m^k`

    Raises :class:`SummationOverflow` if the sum leaves the double range.
    """
    with np.errstate(over='ignore'):
        terms = np.arange(1, n + 1, dtype=float)**k
    try:
        total = math.fsum(terms)
    except (OverflowError, ValueError):
        total = float('inf')
    if not math.isfinite(total):
        raise SummationOverflow(
            'sum of m^{} for m <= {} overflows'.format(k, n)
        )
    return total


def _check_inputs(n, sigma2):
    if n < 1:
        raise ValueError('Snapshot count must be at least 1')
    if not sigma2 > 0:
        raise ValueError('Noise variance must be positive')


def fim_closed(alpha, q, n, ts, sigma2):
    """Closed-form Fisher matrix for snapshots at :code:`t = m ts`, m=1..n

    .. code::

        J[alpha, alpha] = 2 n / sigma2
        J[beta, beta] = 2 n sin(alpha)^2 / sigma2
        J[b_l1, b_l2] = (4 / sigma2) ts^(l1+l2) sum_m m^(l1+l2)

    and zero between the direction and phase blocks.
    """
    _check_inputs(n, sigma2)
    if q < 1:
        raise ValueError('Degree q must be at least 1')
    jmat = np.zeros((q + 3, q + 3))
    jmat[0, 0] = 2*n/sigma2
    jmat[1, 1] = 2*n*np.sin(alpha)**2/sigma2
    sums = {}
    for ell1 in range(q + 1):
        for ell2 in range(q + 1):
            order = ell1 + ell2
            if order not in sums:
                entry = 4/sigma2*ts**order*power_sum(order, n)
                if not math.isfinite(entry):
                    raise SummationOverflow(
                        'Fisher entry of order {} overflows'.format(order)
                    )
                sums[order] = entry
            jmat[2 + ell1, 2 + ell2] = sums[order]
    return FisherMatrix(j=jmat, param_order=param_names(q))


def crb_closed(alpha, n, sigma2):
    """Closed-form direction bounds

    :code:`CRB(alpha) = sigma2 / (2 n)` and
    :code:`CRB(beta) = sigma2 / (2 n sin(alpha)^2)`.
    """
    _check_inputs(n, sigma2)
    sin_alpha = math.sin(alpha)
    if abs(sin_alpha) < POLE_TOL:
        raise PoleSingularity(
            'Azimuth is unidentifiable at elevation {:g} rad'.format(alpha)
        )
    crb_alpha = sigma2/(2*n)
    return CrbResult(
        crb_alpha=crb_alpha,
        crb_beta=crb_alpha/sin_alpha**2,
    )


def crb_from_fisher(fisher):
    """Bounds for every parameter from a full Fisher matrix inversion"""
    fisher.validate()
    inv = fisher.inverse()
    return CrbResult(
        crb_alpha=inv[0, 0],
        crb_beta=inv[1, 1],
        crb_b=np.diag(inv)[2:],
    )


def _model(kappa, times):
    """Stacked noiseless snapshots for parameters kappa"""
    steer = manifold_matrix(kappa[0], kappa[1])
    return np.outer(steer, pps_sample(kappa[2:], times)).ravel()


def fim_numeric(doa, coeffs, n, ts, sigma2, step=FD_STEP):
    """Fisher matrix from central finite differences of the model

    The step of parameter i is :code:`step max(1, |kappa_i|)`; for
    :code:`b_l` it is further divided by :code:`max(1, n ts)^l` so that
    the phase perturbation stays below :code:`step` over the record.
    """
    _check_inputs(n, sigma2)
    if not step > 0:
        raise ValueError('Finite-difference step must be positive')
    doa.validate()
    coeffs.validate()
    kappa = np.r_[doa.alpha, doa.beta, coeffs.b]
    times = ts*np.arange(1, n + 1)
    span = max(1., n*ts)
    derivs = []
    for idx, value in enumerate(kappa):
        size = step*max(1., abs(value))
        if idx >= 2:
            size /= span**(idx - 2)
        upper = kappa.copy()
        lower = kappa.copy()
        upper[idx] += size
        lower[idx] -= size
        derivs.append(
            (_model(upper, times) - _model(lower, times))/(upper[idx] -
                                                           lower[idx])
        )
    derivs = np.array(derivs)
    jmat = 2*np.real(np.dot(derivs.conj(), derivs.T))/sigma2
    jmat = (jmat + jmat.T)/2
    return FisherMatrix(j=jmat, param_order=param_names(coeffs.q))
