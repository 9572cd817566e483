"""montecarlo.py: seeded trial runners for SNR sweeps and tracking runs

Every trial draws its noise from a generator seeded with
:func:`avsdf.utils.derive_seed` of the run seed and the trial indices, so
results do not depend on the number of worker threads or on scheduling.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
import logging
import math

import numpy as np
import properties

from .crb import crb_closed
from .dephase import DephaseConfig
from .esprit import estimate_doa_pipeline
from .props import SnrDb
from .sigmodel import Doa, NoiseSpec, PpsCoeffs, synth_moving, synth_static
from .tracking import ForgettingSpec, angular_error, track_run
from .utils import (
    SEED_MAX,
    EstimationFailure,
    InsufficientSamples,
    derive_seed,
    sample_std,
)

logger = logging.getLogger(__name__)

SweepRow = namedtuple('SweepRow', [
    'snr_db',
    'alpha_bias_deg',
    'alpha_std_deg',
    'beta_bias_deg',
    'beta_std_deg',
    'crb_alpha_deg',
    'crb_beta_deg',
    'failed_trials',
])

TrackStatsRow = namedtuple('TrackStatsRow', [
    'method',
    'preprocess',
    'lambda1',
    'lambda2',
    'lambda3',
    'mean_alpha_err_deg',
    'std_alpha_err_deg',
    'mean_beta_err_deg',
    'std_beta_err_deg',
])

TraceRow = namedtuple('TraceRow', [
    'n',
    'method',
    'preprocess',
    'alpha_true_deg',
    'alpha_est_deg',
    'alpha_err_deg',
    'beta_true_deg',
    'beta_est_deg',
    'beta_err_deg',
])

TABLE_LAMBDAS = (0.9, 0.8, 0.7)


def sigma2_from_snr(snr_db):
    """Noise variance for SNR = 1/sigma2 in dB; inf gives 0"""
    if math.isinf(snr_db) and snr_db > 0:
        return 0.
    return 10**(-snr_db/10)


def snr_from_sigma2(sigma2):
    """SNR in dB, :code:`-10 log10(sigma2)`"""
    if sigma2 == 0:
        return float('inf')
    return -10*math.log10(sigma2)


class SweepConfig(properties.HasProperties):
    """Monte Carlo sweep of the direction estimator over SNR"""

    doa = properties.Instance('True source direction', Doa)
    coeffs = properties.Instance('Source phase coefficients', PpsCoeffs)
    n_snapshots = properties.Integer('Snapshots per trial', min=1)
    snr_db_grid = properties.List(
        'SNR points in dB; inf is noiseless',
        prop=SnrDb(''),
        min_length=1,
    )
    trials = properties.Integer('Trials per SNR point', min=1)
    seed = properties.Integer(
        'Run seed',
        min=0,
        max=SEED_MAX,
        default=0,
    )
    dephase = properties.Instance(
        'Dephasing configuration',
        DephaseConfig,
        default=DephaseConfig,
    )
    pencil_delay = properties.Integer(
        'Pencil displacement in samples',
        min=1,
        default=1,
    )
    ts = properties.Float('Sampling interval, seconds', default=1.)

    @properties.validator
    def _check_geometry(self):
        if not 0 < self.doa.alpha < np.pi:
            raise properties.ValidationError(
                'Sweep elevation must lie strictly between the poles',
                'invalid', 'doa', self,
            )
        if self.ts <= 0:
            raise properties.ValidationError(
                'Sampling interval must be positive', 'invalid', 'ts', self,
            )


def _map(func, items, threads):
    """Ordered map, on a thread pool when threads > 1"""
    if threads <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def _doa_trial(cfg, sigma2, seed):
    noise = NoiseSpec(sigma2=sigma2, seed=seed)
    data = synth_static(cfg.doa, cfg.coeffs, cfg.n_snapshots, cfg.ts, noise)
    try:
        estimate = estimate_doa_pipeline(
            data, cfg.coeffs.q, cfg.dephase, cfg.pencil_delay
        )
    except EstimationFailure as err:
        logger.debug('trial seed %d failed: %s', seed, err)
        return None
    return angular_error(estimate.doa, cfg.doa)


def _moments(values):
    if not values:
        return float('nan'), float('nan')
    return float(np.mean(values)), sample_std(values)


def run_doa_sweep(cfg, threads=1):
    """Bias and spread of the direction estimate at every SNR point

    Trial :code:`t` of SNR point :code:`i` uses noise seed
    :code:`derive_seed(cfg.seed, i, t)`. Trials whose estimate breaks
    down are counted in :code:`failed_trials` and left out of the
    moments. Azimuth errors are wrapped into (-180, 180] degrees.

    **Returns** a list of :class:`SweepRow`, one per SNR point
    """
    cfg.validate()
    rows = []
    for idx, snr_db in enumerate(cfg.snr_db_grid):
        sigma2 = sigma2_from_snr(snr_db)
        seeds = [derive_seed(cfg.seed, idx, trial)
                 for trial in range(cfg.trials)]
        results = _map(
            lambda seed, sigma2=sigma2: _doa_trial(cfg, sigma2, seed),
            seeds,
            threads,
        )
        good = [res for res in results if res is not None]
        alpha_bias, alpha_std = _moments([res[0] for res in good])
        beta_bias, beta_std = _moments([res[1] for res in good])
        if sigma2 == 0:
            crb_alpha_deg = crb_beta_deg = 0.
        else:
            bound = crb_closed(cfg.doa.alpha, cfg.n_snapshots, sigma2)
            crb_alpha_deg = bound.std_alpha_deg
            crb_beta_deg = bound.std_beta_deg
        row = SweepRow(
            snr_db=float(snr_db),
            alpha_bias_deg=alpha_bias,
            alpha_std_deg=alpha_std,
            beta_bias_deg=beta_bias,
            beta_std_deg=beta_std,
            crb_alpha_deg=crb_alpha_deg,
            crb_beta_deg=crb_beta_deg,
            failed_trials=len(results) - len(good),
        )
        logger.info(
            'SNR %g dB: alpha std %.4g deg (bound %.4g), beta std %.4g deg '
            '(bound %.4g), %d failed',
            snr_db, alpha_std, crb_alpha_deg, beta_std, crb_beta_deg,
            row.failed_trials,
        )
        rows.append(row)
    return rows


def table_specs():
    """Tracker settings in table order

    MFF(0.9, 0.8, 0.7) without then with pre-processing, followed by SFF
    at 0.9, 0.8 and 0.7, each without then with pre-processing.
    """
    specs = []
    mff = ForgettingSpec(method='MFF', lambdas=list(TABLE_LAMBDAS))
    specs += [(mff, False), (mff, True)]
    for lam in TABLE_LAMBDAS:
        sff = ForgettingSpec(method='SFF', lambdas=[lam])
        specs += [(sff, False), (sff, True)]
    return specs


def _stats_row(spec, preprocess, points):
    lambdas = list(spec.lambdas) + [None]*(3 - len(spec.lambdas))
    alpha_mean, alpha_std = _moments([pt.alpha_err_deg for pt in points])
    beta_mean, beta_std = _moments([pt.beta_err_deg for pt in points])
    return TrackStatsRow(
        spec.method, preprocess, lambdas[0], lambdas[1], lambdas[2],
        alpha_mean, alpha_std, beta_mean, beta_std,
    )


def _trace_rows(spec, preprocess, points):
    label = spec.label()
    return [
        TraceRow(
            pt.n, label, preprocess,
            math.degrees(pt.truth.alpha), math.degrees(pt.estimate.alpha),
            pt.alpha_err_deg,
            math.degrees(pt.truth.beta), math.degrees(pt.estimate.beta),
            pt.beta_err_deg,
        )
        for pt in points
    ]


def run_tracking_experiment(traj, coeffs, m, ts, sigma2, specs, seed,
                            burn_in=50, literal=True, dephase=None,
                            threads=1):
    """Paired comparison of trackers on one moving-source dataset

    One dataset is synthesized with noise seed :code:`seed`; every
    :code:`(ForgettingSpec, preprocess)` pair in :code:`specs` tracks that
    same dataset. Points with step index below :code:`burn_in` are left
    out of the statistics and of the trace.

    **Returns** :code:`(stats_rows, trace_rows)`: one
    :class:`TrackStatsRow` per spec in input order, and the
    :class:`TraceRow` list of every spec concatenated.
    """
    coeffs.validate()
    if m <= coeffs.q:
        raise InsufficientSamples(coeffs.q + 1, m, 'run_tracking_experiment')
    data = synth_moving(traj, coeffs, m, ts, NoiseSpec(sigma2=sigma2,
                                                       seed=seed))

    def _run(item):
        spec, preprocess = item
        points = track_run(data, coeffs.q, spec, preprocess, truth=traj,
                           literal=literal, dephase=dephase)
        return [pt for pt in points if pt.n >= burn_in]

    runs = _map(_run, specs, threads)
    stats = []
    trace = []
    for (spec, preprocess), points in zip(specs, runs):
        row = _stats_row(spec, preprocess, points)
        logger.info(
            '%s %s pre-processing: alpha std %.4g deg, beta std %.4g deg',
            spec.label(), 'with' if preprocess else 'without',
            row.std_alpha_err_deg, row.std_beta_err_deg,
        )
        stats.append(row)
        trace += _trace_rows(spec, preprocess, points)
    return stats, trace
