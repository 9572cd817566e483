"""avsdf

Direction finding of polynomial-phase sources with a single acoustic
vector sensor: recursive dephasing followed by one-source ESPRIT,
forgetting-factor tracking of moving sources, and Cramer-Rao bounds.

import avsdf
doa = avsdf.Doa.from_degrees(45, 60)
coeffs = avsdf.PpsCoeffs(b=[0.05, 0.1, 0.13])
data = avsdf.synth_static(doa, coeffs, 500, 1., avsdf.NoiseSpec(sigma2=0.01))
estimate = avsdf.estimate_doa_pipeline(data, coeffs.q)
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import logging

from .crb import (
    CrbResult,
    FisherMatrix,
    crb_closed,
    crb_from_fisher,
    fim_closed,
    fim_numeric,
    power_sum,
)
from .dephase import (
    DephaseConfig,
    PencilDataset,
    build_pencil,
    closed_form_linear,
    dephase_step,
    reduce_to_linear,
    track_preprocess,
)
from .esprit import (
    DoaEstimate,
    correlation,
    dominant_eigvec,
    estimate_bq,
    estimate_doa_pipeline,
    estimate_manifold,
    estimate_rho,
    extract_doa,
    pencil_rho,
)
from .montecarlo import (
    SweepConfig,
    SweepRow,
    TraceRow,
    TrackStatsRow,
    run_doa_sweep,
    run_tracking_experiment,
    table_specs,
)
from .sigmodel import (
    Doa,
    ManifoldVector,
    NoiseSpec,
    PpsCoeffs,
    SnapshotMatrix,
    Trajectory,
    pps_sample,
    steering_vector,
    synth_moving,
    synth_static,
)
from .tracking import (
    ForgettingSpec,
    TrackPoint,
    TrackState,
    angular_error,
    doa_from_state,
    instant_manifold,
    mff_update,
    sff_batch,
    sff_update,
    track_run,
)
from .utils import (
    AvsdfError,
    ElevationAtPole,
    EstimationFailure,
    InsufficientSamples,
    NearZeroReferenceRow,
    NoConvergence,
    ParseError,
    PoleSingularity,
    SkipSample,
    SummationOverflow,
    TrajectoryOutOfRange,
    ZeroPressureChannel,
    ZeroReference,
    ZeroRho,
    derive_seed,
)

logging.getLogger(__name__).addHandler(logging.NullHandler())

__version__ = '0.1.0'
__author__ = 'avsdf developers'
__license__ = 'MIT'

try:
    del absolute_import, division, print_function, unicode_literals
except NameError:
    # Error cleaning namespace
    pass
