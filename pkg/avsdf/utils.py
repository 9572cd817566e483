"""utils.py: exception types, seed derivation and angle helpers"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import numpy as np
from six import integer_types

TWO_PI = 2*np.pi

SEED_MAX = 2**64 - 1


class AvsdfError(Exception):
    """Base class for errors raised by avsdf operations"""


class InsufficientSamples(AvsdfError, ValueError):
    """Exception raised when a data record is too short for an operation

    **Parameters**

    * **needed** - Minimum number of columns required
    * **available** - Number of columns supplied
    """

    def __init__(self, needed, available, what='operation'):
        self.needed = needed
        self.available = available
        super(InsufficientSamples, self).__init__(
            '{} requires more than {} snapshot columns; {} were '
            'supplied'.format(what, needed - 1, available)
        )


class NearZeroReferenceRow(AvsdfError, ValueError):
    """Exception raised when the dephasing reference row is (nearly) zero"""


class TrajectoryOutOfRange(AvsdfError, ValueError):
    """Exception raised when a trajectory leaves the open elevation range"""


class EstimationFailure(AvsdfError, ArithmeticError):
    """Base class for numerical breakdowns of a single estimate

    Monte Carlo runs count these as failed trials rather than aborting.
    """


class NoConvergence(EstimationFailure):
    """Power iteration did not produce a well-separated dominant pair"""

    def __init__(self, message, max_iter=None):
        super(NoConvergence, self).__init__(message)
        self.max_iter = max_iter


class ZeroReference(EstimationFailure):
    """The reference sub-vector of the pencil eigenvector vanished"""


class ZeroRho(EstimationFailure):
    """The estimated invariant factor is zero"""


class ZeroPressureChannel(EstimationFailure):
    """The pressure element of a manifold estimate vanished"""


class SkipSample(AvsdfError):
    """A tracker input sample cannot be normalized; the update is skipped"""


class PoleSingularity(AvsdfError, ZeroDivisionError):
    """Azimuth is unidentifiable at the elevation poles"""


class SummationOverflow(AvsdfError, OverflowError):
    """A power sum of the Fisher matrix left the double-precision range"""


class ParseError(AvsdfError, ValueError):
    """Exception raised on malformed configuration text

    **Parameters**

    * **line** - 1-based line number of the offending text
    * **reason** - Short description of the problem
    """

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super(ParseError, self).__init__(
            'line {}: {}'.format(line, reason)
        )


class ElevationAtPole(UserWarning):
    """Warning issued when an elevation estimate sits at a pole

    The azimuth returned alongside it carries no information.
    """


def derive_seed(seed, *indices):
    """Derive an independent 64-bit seed from a base seed and indices

    The derivation uses :class:`numpy.random.SeedSequence` so that every
    (seed, indices) tuple maps to a statistically independent stream
    regardless of the order in which streams are consumed.
    """
    if not isinstance(seed, integer_types) or not 0 <= seed <= SEED_MAX:
        raise TypeError('seed must be an unsigned 64-bit integer')
    entropy = [int(seed)] + [int(idx) for idx in indices]
    state = np.random.SeedSequence(entropy).generate_state(1, np.uint64)
    return int(state[0])


def make_rng(seed):
    """Counter-based Philox4x64 generator for one noise realization"""
    return np.random.Generator(np.random.Philox(int(seed)))


def wrap_angle(value):
    """Normalize radians into [0, 2*pi)"""
    wrapped = np.mod(value, TWO_PI)
    # np.mod of a tiny negative number rounds up to exactly 2*pi
    return np.where(wrapped >= TWO_PI, 0., wrapped)


def wrap_degrees(value):
    """Wrap a degree difference into (-180, 180]"""
    wrapped = 180. - np.mod(180. - np.asarray(value, dtype=float), 360.)
    if wrapped.ndim == 0:
        return float(wrapped)
    return wrapped


def sample_std(values):
    """Sample standard deviation (ddof=1), 0 for fewer than two values"""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return 0.
    return float(np.std(values, ddof=1))
