"""cli.py: batch command-line front end

.. code::

    avsdf doa-sweep --config sweep.cfg --out results/
    avsdf track --config track.cfg --out results/ --threads 8
    avsdf crb alpha_deg=45 snapshots=500 sigma2=0.1
    avsdf selftest

Exit codes: 0 success, 1 usage or configuration error, 2 domain error
(or a failed self-test), 3 refusal to overwrite existing output.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import argparse
import csv
import io
import logging
import math
import os
import sys

import properties
from six import integer_types, string_types

from . import __version__
from .config import (
    SETTINGS,
    format_config,
    parse_config,
    parse_override,
    resolve_threads,
)
from .crb import crb_closed
from .montecarlo import (
    SweepRow,
    TraceRow,
    TrackStatsRow,
    run_doa_sweep,
    run_tracking_experiment,
)
from .selftest import run_selftest
from .utils import SEED_MAX, AvsdfError, ParseError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_EXISTS = 3

SWEEP_CSV = 'doa_sweep.csv'
TRACE_CSV = 'track_trace.csv'
STATS_CSV = 'track_stats.csv'
META_FILE = 'run.meta'


class OutputExists(AvsdfError):
    """Output files exist and --force was not given"""


class RunConfig(properties.HasProperties):
    """Resolved command-line invocation"""

    command = properties.StringChoice(
        'Subcommand',
        choices=list(SETTINGS),
    )
    config_path = properties.String(
        'Settings file; omitted means defaults and overrides only',
        required=False,
    )
    out_dir = properties.String('Output directory', default='.')
    overrides = properties.List(
        'key=value pairs replacing settings file values',
        prop=properties.String(''),
        default=list,
    )
    force = properties.Boolean('Overwrite existing outputs', default=False)
    threads = properties.Integer(
        'Worker threads; 0 means one per CPU',
        min=0,
        required=False,
    )
    seed = properties.Integer(
        'Seed override',
        min=0,
        max=SEED_MAX,
        required=False,
    )

    def read_settings(self):
        """Parse the settings file with overrides applied"""
        text = ''
        if self.config_path:
            with io.open(self.config_path, encoding='utf-8') as handle:
                text = handle.read()
        pairs = [parse_override(item) for item in self.overrides]
        if self.seed is not None:
            pairs.append(('seed', str(self.seed)))
        return parse_config(text, self.command, pairs)

    def output_path(self, name):
        """Path of an output file"""
        return os.path.join(self.out_dir, name)

    def claim_outputs(self, names):
        """Create the output directory and check nothing is overwritten"""
        paths = [self.output_path(name) for name in names]
        existing = [path for path in paths if os.path.exists(path)]
        if existing and not self.force:
            raise OutputExists(
                'Refusing to overwrite {}; use --force'.format(
                    ', '.join(existing)
                )
            )
        if not os.path.isdir(self.out_dir):
            os.makedirs(self.out_dir)
        return paths


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit code 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '{}: error: {}\n'.format(self.prog, message))


def _seed(text):
    value = int(text)
    if not 0 <= value <= SEED_MAX:
        raise argparse.ArgumentTypeError('seed must be an unsigned 64-bit '
                                         'integer')
    return value


def _threads(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError('threads must be >= 0')
    return value


def build_parser():
    """Argument parser with one subparser per command"""
    parser = _Parser(
        prog='avsdf',
        description='Direction finding of polynomial-phase sources with a '
                    'single acoustic vector sensor',
    )
    parser.add_argument('--version', action='version',
                        version='%(prog)s {}'.format(__version__))
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    helps = {
        'doa-sweep': 'Monte Carlo SNR sweep of the direction estimator',
        'track': 'forgetting-factor tracking of a moving source',
        'crb': 'print closed-form Cramer-Rao bounds',
        'selftest': 'run the built-in consistency suites',
    }
    for command in SETTINGS:
        sub = subparsers.add_parser(command, help=helps[command])
        sub.add_argument('--config', metavar='PATH',
                         help='key=value settings file')
        sub.add_argument('--out', metavar='DIR', default='.',
                         help='output directory (default: current)')
        sub.add_argument('--force', action='store_true',
                         help='overwrite existing output files')
        sub.add_argument('--seed', metavar='U64', type=_seed,
                         help='override the settings seed')
        sub.add_argument('--threads', metavar='N', type=_threads,
                         help='worker threads, 0 = one per CPU (default: '
                              '$AVSDF_THREADS or 1); never changes results')
        verbosity = sub.add_mutually_exclusive_group()
        verbosity.add_argument('-v', '--verbose', action='store_true',
                               help='log debug messages')
        verbosity.add_argument('-q', '--quiet', action='store_true',
                               help='log warnings and errors only')
        sub.add_argument('overrides', nargs='*', metavar='KEY=VALUE',
                         help='settings overriding the config file')
    return parser


def format_number(value):
    """CSV cell text; floats in scientific notation, 9 significant digits"""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'with' if value else 'without'
    if isinstance(value, integer_types):
        return str(value)
    if isinstance(value, string_types):
        return value
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        return repr(value)
    return '{:.8e}'.format(value)


def write_csv(path, fields, rows):
    """Write namedtuple rows under a header of their field names"""
    with io.open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(fields)
        for row in rows:
            writer.writerow([format_number(value) for value in row])


def write_meta(path, command, settings):
    """Resolved settings echo, readable again with --config"""
    with io.open(path, 'w', encoding='utf-8', newline='') as handle:
        handle.write('# tool_version={}\n'.format(__version__))
        handle.write('# command={}\n'.format(command))
        handle.write(format_config(settings))


def cmd_doa_sweep(run, settings, threads):
    """Write doa_sweep.csv and run.meta"""
    csv_path, meta_path = run.claim_outputs([SWEEP_CSV, META_FILE])
    rows = run_doa_sweep(settings.to_config(), threads)
    write_csv(csv_path, SweepRow._fields, rows)
    write_meta(meta_path, run.command, settings)
    failed = sum(row.failed_trials for row in rows)
    print('doa-sweep: {} SNR points, {} failed trials -> {}'.format(
        len(rows), failed, csv_path
    ))
    return EXIT_OK


def cmd_track(run, settings, threads):
    """Write track_trace.csv, track_stats.csv and run.meta"""
    trace_path, stats_path, meta_path = run.claim_outputs(
        [TRACE_CSV, STATS_CSV, META_FILE]
    )
    stats, trace = run_tracking_experiment(
        settings.trajectory(),
        settings.coeffs(),
        settings.samples,
        settings.ts,
        settings.sigma2,
        settings.specs(),
        settings.seed,
        burn_in=settings.burn_in,
        literal=settings.manifold_form == 'literal',
        dephase=settings.dephase(),
        threads=threads,
    )
    write_csv(trace_path, TraceRow._fields, trace)
    write_csv(stats_path, TrackStatsRow._fields, stats)
    write_meta(meta_path, run.command, settings)
    print('track: {} trackers, {} trace rows -> {}'.format(
        len(stats), len(trace), stats_path
    ))
    return EXIT_OK


def cmd_crb(settings):
    """Print the closed-form direction bounds"""
    bound = crb_closed(
        math.radians(settings.alpha_deg), settings.snapshots,
        settings.sigma2,
    )
    print('crb_alpha_rad2 {}'.format(format_number(bound.crb_alpha)))
    print('crb_beta_rad2 {}'.format(format_number(bound.crb_beta)))
    print('std_alpha_deg {}'.format(format_number(bound.std_alpha_deg)))
    print('std_beta_deg {}'.format(format_number(bound.std_beta_deg)))
    return EXIT_OK


def cmd_selftest(settings):
    """Print one PASS/FAIL line per suite"""
    results = run_selftest(settings.seed, settings.cases)
    for result in results:
        print('{} {}: {}'.format(
            'PASS' if result.passed else 'FAIL', result.name, result.detail
        ))
    return EXIT_OK if all(res.passed for res in results) else EXIT_DOMAIN


def _configure_logging(args):
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )


def _dispatch(run, settings):
    if run.command == 'crb':
        return cmd_crb(settings)
    if run.command == 'selftest':
        return cmd_selftest(settings)
    threads = resolve_threads(run.threads)
    if run.command == 'doa-sweep':
        return cmd_doa_sweep(run, settings, threads)
    return cmd_track(run, settings, threads)


def main(argv=None):
    """Entry point; returns the process exit code"""
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        run = RunConfig(
            command=args.command,
            out_dir=args.out,
            overrides=args.overrides,
            force=args.force,
        )
        if args.config is not None:
            run.config_path = args.config
        if args.threads is not None:
            run.threads = args.threads
        if args.seed is not None:
            run.seed = args.seed
        settings = run.read_settings()
        return _dispatch(run, settings)
    except OutputExists as err:
        logger.error('%s', err)
        return EXIT_EXISTS
    except (ParseError, properties.ValidationError) as err:
        logger.error('configuration error: %s', err)
        return EXIT_USAGE
    except (IOError, OSError) as err:
        logger.error('%s', err)
        return EXIT_USAGE
    except AvsdfError as err:
        logger.error('%s: %s', err.__class__.__name__, err)
        return EXIT_DOMAIN
