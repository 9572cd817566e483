"""selftest.py: built-in consistency suites for field diagnostics"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from collections import namedtuple
import logging

import numpy as np

from .crb import fim_closed, fim_numeric
from .dephase import (
    DephaseConfig,
    closed_form_linear,
    reduce_to_linear,
    track_preprocess,
)
from .esprit import estimate_doa_pipeline
from .sigmodel import Doa, NoiseSpec, PpsCoeffs, synth_static
from .tracking import angular_error
from .utils import make_rng

logger = logging.getLogger(__name__)

SuiteResult = namedtuple('SuiteResult', ['name', 'passed', 'detail'])

EXACT_TOL = 1e-6
ORACLE_TOL = 1e-9
FIM_TOL = 1e-4


def random_coeffs(rng, q, bq_range=(0.01, 0.5)):
    """Random phase coefficients with the leading one in bq_range"""
    lower = rng.uniform(0., 0.5, size=q)
    return PpsCoeffs(b=np.r_[lower, rng.uniform(*bq_range)])


def random_doa(rng, alpha_range_deg=(10., 170.)):
    """Random direction with elevation inside alpha_range_deg"""
    return Doa.from_degrees(
        rng.uniform(*alpha_range_deg), rng.uniform(0., 360.)
    )


def noiseless_exactness(cases=50, seed=0, n=64):
    """Noiseless pipeline recovers random directions for q = 1..5"""
    rng = make_rng(seed)
    worst = 0.
    for _ in range(cases):
        q = int(rng.integers(1, 6))
        doa = random_doa(rng)
        coeffs = random_coeffs(rng, q)
        data = synth_static(doa, coeffs, n, 1., NoiseSpec())
        est = estimate_doa_pipeline(data, q).doa
        alpha_err, beta_err = angular_error(est, doa)
        worst = max(worst, np.deg2rad(abs(alpha_err)),
                    np.deg2rad(abs(beta_err)))
    return SuiteResult(
        'noiseless-exactness',
        bool(worst < EXACT_TOL),
        '{} cases, worst error {:.3e} rad'.format(cases, worst),
    )


def dephase_oracle(seed=0, max_q=4, max_n=12):
    """Dephasing matches the closed-form difference oracle"""
    rng = make_rng(seed)
    worst = 0.
    count = 0
    configs = [DephaseConfig(row_index=row) for row in (1, 2, 3, 4)]
    configs.append(DephaseConfig(mode='sum'))
    for q in range(1, max_q + 1):
        for n in range(q + 1, max_n + 1):
            doa = random_doa(rng, (20., 160.))
            coeffs = random_coeffs(rng, q)
            data = synth_static(doa, coeffs, n, 1., NoiseSpec())
            for cfg in configs:
                pairs = [(
                    reduce_to_linear(data, q, cfg),
                    closed_form_linear(doa, coeffs, n, 1., cfg),
                ), (
                    track_preprocess(data, q, cfg).data,
                    closed_form_linear(doa, coeffs, n, 1., cfg, steps=q),
                )]
                for got, want in pairs:
                    scale = max(np.abs(want).max(), 1e-300)
                    worst = max(worst, np.abs(got - want).max()/scale)
                    count += 1
    return SuiteResult(
        'dephase-oracle',
        bool(worst < ORACLE_TOL),
        '{} comparisons, worst relative error {:.3e}'.format(count, worst),
    )


def crb_decoupling(seed=0, max_q=3, n=32):
    """Closed-form Fisher matrix decouples and matches finite differences"""
    rng = make_rng(seed)
    worst = 0.
    cross_zero = True
    for q in range(1, max_q + 1):
        doa = random_doa(rng)
        coeffs = random_coeffs(rng, q)
        closed = fim_closed(doa.alpha, q, n, 1., 1.).j
        numeric = fim_numeric(doa, coeffs, n, 1., 1.).j
        cross_zero = cross_zero and not np.any(closed[:2, 2:])
        cross_zero = cross_zero and closed[0, 1] == 0
        scale = np.sqrt(np.outer(np.diag(closed), np.diag(closed)))
        worst = max(worst, (np.abs(numeric - closed)/scale).max())
    return SuiteResult(
        'crb-decoupling',
        bool(cross_zero and worst < FIM_TOL),
        'cross terms zero: {}, worst scaled deviation {:.3e}'.format(
            cross_zero, worst
        ),
    )


def run_selftest(seed=0, cases=50):
    """Run every suite; returns a list of :class:`SuiteResult`"""
    results = [
        noiseless_exactness(cases, seed),
        dephase_oracle(seed),
        crb_decoupling(seed),
    ]
    for result in results:
        logger.info('%s: %s (%s)', result.name,
                    'PASS' if result.passed else 'FAIL', result.detail)
    return results
