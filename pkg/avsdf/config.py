"""config.py: flat key=value experiment settings

Settings files hold one :code:`key=value` pair per line. Blank lines and
text after :code:`#` are ignored; list values are comma-separated. Every
command has a settings class whose property names are the accepted keys,
so type conversion and range checks come from the properties themselves.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import os

import numpy as np
import properties
from six import integer_types, string_types

from .dephase import DephaseConfig
from .montecarlo import SweepConfig, table_specs
from .props import SnrDb
from .sigmodel import Doa, PpsCoeffs, Trajectory
from .tracking import ForgettingSpec
from .utils import SEED_MAX, ParseError

THREADS_ENV = 'AVSDF_THREADS'


class Settings(properties.HasProperties):
    """Base class of command settings

    Subclasses list the keys without defaults in :code:`required_keys`;
    :code:`aliases` maps config keys to property names where a key is not
    a valid Python identifier.
    """

    required_keys = ()
    aliases = {}

    @classmethod
    def prop_name(cls, key):
        """Property name of a config key"""
        return cls.aliases.get(key, key)

    @classmethod
    def key_name(cls, name):
        """Config key of a property name"""
        for key, value in cls.aliases.items():
            if value == name:
                return key
        return name


def _dephase(settings):
    return DephaseConfig(
        delay_samples=getattr(settings, 'delay', 1),
        mode=settings.mode,
        row_index=settings.row,
    )


class SweepSettings(Settings):
    """Keys of the doa-sweep command"""

    required_keys = (
        'alpha_deg', 'beta_deg', 'b', 'snapshots', 'trials', 'snr_db',
    )

    alpha_deg = properties.Float('Source elevation, degrees', min=0.,
                                 max=180.)
    beta_deg = properties.Float('Source azimuth, degrees')
    b = properties.List('Phase coefficients b_0..b_q',
                        prop=properties.Float(''), min_length=2)
    snapshots = properties.Integer('Snapshots per trial', min=1)
    trials = properties.Integer('Trials per SNR point', min=1)
    snr_db = properties.List('SNR grid in dB', prop=SnrDb(''),
                             min_length=1)
    ts = properties.Float('Sampling interval, seconds', min=0., default=1.)
    delay = properties.Integer('Dephasing lag in samples', min=1, default=1)
    pencil_delay = properties.Integer('Pencil displacement in samples',
                                      min=1, default=1)
    mode = properties.StringChoice('Dephasing reference',
                                   choices=['single', 'sum'],
                                   default='single')
    row = properties.Integer('Reference row for single mode', min=1, max=4,
                             default=4)
    seed = properties.Integer('Run seed', min=0, max=SEED_MAX, default=0)

    def to_config(self):
        """Domain :class:`~avsdf.montecarlo.SweepConfig`, angles in radians"""
        return SweepConfig(
            doa=Doa.from_degrees(self.alpha_deg, self.beta_deg),
            coeffs=PpsCoeffs(b=self.b),
            n_snapshots=self.snapshots,
            snr_db_grid=self.snr_db,
            trials=self.trials,
            seed=self.seed,
            dephase=_dephase(self),
            pencil_delay=self.pencil_delay,
            ts=self.ts,
        )


class TrackSettings(Settings):
    """Keys of the track command"""

    required_keys = ('b',)
    aliases = {'lambda': 'lambdas'}

    b = properties.List('Phase coefficients b_0..b_q',
                        prop=properties.Float(''), min_length=2)
    alpha0_deg = properties.Float('Center elevation, degrees', min=0.,
                                  max=180., default=90.)
    beta0_deg = properties.Float('Center azimuth, degrees', default=180.)
    omega_alpha = properties.Float('Elevation rate, rad per unit time',
                                   default=0.01)
    omega_beta = properties.Float('Azimuth rate, rad per unit time',
                                  default=-0.012)
    amplitude = properties.Float('Excursion of both angles, radians',
                                 min=0., default=1.)
    samples = properties.Integer('Number of snapshots M', min=1,
                                 default=1000)
    ts = properties.Float('Sampling interval, seconds', min=0., default=1.)
    sigma2 = properties.Float('Per-channel noise variance', min=0.,
                              default=0.01)
    seed = properties.Integer('Noise seed', min=0, max=SEED_MAX, default=0)
    burn_in = properties.Integer('Steps left out of the statistics', min=0,
                                 default=50)
    method = properties.StringChoice(
        'table for the eight table rows, or a single tracker type',
        choices=['table', 'SFF', 'MFF'],
        default='table',
    )
    lambdas = properties.List(
        'Forgetting factors; one tracker per value for SFF, exactly three '
        'for MFF',
        prop=properties.Float('', min=0., max=1.),
        default=list,
    )
    preprocess = properties.StringChoice(
        'Which pre-processing arms to run',
        choices=['both', 'with', 'without'],
        default='both',
    )
    manifold_form = properties.StringChoice(
        'Instant manifold estimator: literal Re(z)/Re(z_4) or ratio '
        'Re(z/z_4)',
        choices=['literal', 'ratio'],
        default='literal',
    )
    mode = properties.StringChoice('Dephasing reference',
                                   choices=['single', 'sum'],
                                   default='single')
    row = properties.Integer('Reference row for single mode', min=1, max=4,
                             default=4)

    @properties.validator
    def _check_lambdas(self):
        count = len(self.lambdas)
        if self.method == 'table' and count:
            reason = 'method=table uses the fixed table factors'
        elif self.method == 'SFF' and not count:
            reason = 'method=SFF needs at least one forgetting factor'
        elif self.method == 'MFF' and count != 3:
            reason = 'method=MFF needs exactly three forgetting factors'
        else:
            reason = None
        if reason:
            raise properties.ValidationError(reason, 'invalid', 'lambda',
                                             self)

    def arms(self):
        """Pre-processing flags to run, without before with"""
        return {
            'both': [False, True],
            'with': [True],
            'without': [False],
        }[self.preprocess]

    def specs(self):
        """(ForgettingSpec, preprocess) pairs in output order"""
        arms = self.arms()
        if self.method == 'table':
            return [pair for pair in table_specs() if pair[1] in arms]
        if self.method == 'MFF':
            trackers = [ForgettingSpec(method='MFF', lambdas=self.lambdas)]
        else:
            trackers = [ForgettingSpec(method='SFF', lambdas=[lam])
                        for lam in self.lambdas]
        return [(spec, flag) for spec in trackers for flag in arms]

    def trajectory(self):
        """Source :class:`~avsdf.sigmodel.Trajectory`, angles in radians"""
        return Trajectory(
            alpha0=np.deg2rad(self.alpha0_deg),
            beta0=np.deg2rad(self.beta0_deg),
            omega_alpha=self.omega_alpha,
            omega_beta=self.omega_beta,
            amplitude=self.amplitude,
        )

    def coeffs(self):
        """Source :class:`~avsdf.sigmodel.PpsCoeffs`"""
        return PpsCoeffs(b=self.b)

    def dephase(self):
        """Pre-processing :class:`~avsdf.dephase.DephaseConfig`"""
        return _dephase(self)


class CrbSettings(Settings):
    """Keys of the crb command"""

    required_keys = ('alpha_deg', 'snapshots', 'sigma2')

    alpha_deg = properties.Float('Source elevation, degrees', min=0.,
                                 max=180.)
    snapshots = properties.Integer('Snapshot count N', min=1)
    sigma2 = properties.Float('Per-channel noise variance', min=0.)

    @properties.validator
    def _check_sigma2(self):
        if self.sigma2 <= 0:
            raise properties.ValidationError(
                'Noise variance must be positive', 'invalid', 'sigma2', self,
            )


class SelftestSettings(Settings):
    """Keys of the selftest command"""

    seed = properties.Integer('Seed of the random cases', min=0,
                              max=SEED_MAX, default=0)
    cases = properties.Integer('Random cases in the exactness suite',
                               min=1, default=50)


SETTINGS = {
    'doa-sweep': SweepSettings,
    'track': TrackSettings,
    'crb': CrbSettings,
    'selftest': SelftestSettings,
}


def _split_pair(text, line):
    if '=' not in text:
        raise ParseError(line, 'expected key=value, got {!r}'.format(text))
    key, value = text.split('=', 1)
    key = key.strip()
    if not key:
        raise ParseError(line, 'empty key')
    return key, value.strip()


def parse_pairs(text):
    """Parse settings text into an ordered list of (key, value, line)"""
    pairs = []
    seen = set()
    for line, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0].strip()
        if not content:
            continue
        key, value = _split_pair(content, line)
        if key in seen:
            raise ParseError(line, 'duplicate key {!r}'.format(key))
        seen.add(key)
        pairs.append((key, value, line))
    return pairs


def parse_override(text):
    """Split one command-line :code:`key=value` override"""
    return _split_pair(text.split('#', 1)[0].strip(), 0)


def _convert(prop, key, value, settings):
    try:
        if isinstance(prop, properties.List):
            items = [item.strip() for item in value.split(',')]
            if items == ['']:
                items = []
            return prop.deserialize(items)
        return prop.deserialize(value)
    except (TypeError, ValueError) as err:
        raise properties.ValidationError(
            'Invalid value {!r} for key {!r}: {}'.format(value, key, err),
            'invalid', key, settings,
        )


def parse_config(text, command, overrides=None):
    """Validated settings for a command

    **Parameters**:

    * **text** - settings file content
    * **command** - one of :code:`doa-sweep`, :code:`track`, :code:`crb`,
      :code:`selftest`
    * **overrides** - (key, value) pairs that replace file values

    Raises :class:`~avsdf.utils.ParseError` on malformed lines and
    :class:`properties.ValidationError` on unknown, missing or invalid
    keys.
    """
    cls = SETTINGS[command]
    values = dict((key, value) for key, value, _ in parse_pairs(text))
    for key, value in overrides or ():
        values[key] = value
    settings = cls()
    for key in sorted(values):
        name = cls.prop_name(key)
        prop = cls._props.get(name)
        if prop is None:
            raise properties.ValidationError(
                'Unknown key {!r} for {}'.format(key, command),
                'unknown', key, settings,
            )
        value = _convert(prop, key, values[key], settings)
        try:
            setattr(settings, name, value)
        except properties.ValidationError as err:
            raise properties.ValidationError(
                'Invalid value for key {!r}: {}'.format(key, err),
                'invalid', key, settings,
            )
    for key in cls.required_keys:
        if key not in values:
            raise properties.ValidationError(
                'Missing required key {!r} for {}'.format(key, command),
                'missing', key, settings,
            )
    settings.validate()
    return settings


def _format_value(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, integer_types):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, string_types):
        return value
    return ','.join(_format_value(item) for item in value)


def format_config(settings):
    """Every resolved key, defaults included, in declaration order

    Floats are written with :code:`repr`, so parsing the echo reproduces
    the settings exactly.
    """
    lines = []
    for name in settings._props:
        value = getattr(settings, name)
        if value is None:
            continue
        lines.append('{}={}'.format(settings.key_name(name),
                                    _format_value(value)))
    return '\n'.join(lines) + '\n'


def resolve_threads(threads=None, environ=None):
    """Worker count from the argument, then AVSDF_THREADS; 0 means all"""
    environ = os.environ if environ is None else environ
    if threads is None:
        raw = environ.get(THREADS_ENV, '').strip()
        try:
            threads = int(raw) if raw else 1
        except ValueError:
            raise properties.ValidationError(
                '{} must be an integer, not {!r}'.format(THREADS_ENV, raw),
                'invalid', THREADS_ENV,
            )
    if threads < 0:
        raise properties.ValidationError(
            'Thread count must be non-negative', 'invalid', 'threads',
        )
    if threads == 0:
        threads = os.cpu_count() or 1
    return threads
