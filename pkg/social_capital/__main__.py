#!/usr/bin/env python3

"""
Measure social capital of contributors in a task-based collaboration network.
"""

import sys
import argparse
import logging
import traceback

from social_capital import __version__, __prog_name__, __description__
from social_capital.exceptions import ConfigError, NoDataError, ParseError, SocialCapitalError
from social_capital.logger import logger_setup, CustomHelpFormatter
from social_capital.main import ProgramRunner
import social_capital.defaults as Defaults


def print_help():
    print(f'''

              ...::: Social Capital v{__version__} :::...

    ingest  -> Validate and summarize a contribution log.
    compute -> Measure social capital per interval and agent.
    explain -> Dump intermediate links, relations, and benevolence.

  Use: social_capital <command> -h for command specific help
    ''')


def add_standard_opt(parser):
    """Add in standard set of additional arguments."""

    parser.add_argument('-o', '--output',
                        help="output file (default: stdout)")
    parser.add_argument('--log_dir',
                        help="directory for log file")
    parser.add_argument('--silent',
                        action='store_true',
                        help="only report errors")
    parser.add_argument('-h', '--help', action='help',
                        help='show this help message and exit')


def add_input_opt(parser):
    """Add arguments selecting and scoping the input."""

    parser.add_argument('--input',
                        help="contribution log (.jsonl, .csv, or .tsv, optionally .gz)")
    parser.add_argument('--config',
                        help="TOML file with run configuration; flags override its values")
    parser.add_argument('--intervals',
                        help="half-open intervals as 's1:e1,s2:e2,...' in epoch seconds or YYYY-MM-DD")
    parser.add_argument('--goal',
                        help=f"goal identifier (default: {Defaults.GOAL_ID})")
    parser.add_argument('--task',
                        help="package to measure; required if the input holds several packages")
    parser.add_argument('--subgroup',
                        help="comma separated contributors to restrict the analysis to")
    parser.add_argument('--lenient',
                        action='store_true',
                        help="skip malformed lines instead of aborting")


def add_ingest_subcommand(subparsers):
    """Add ingest subcommand CLI."""

    parser = subparsers.add_parser('ingest',
                                   formatter_class=CustomHelpFormatter,
                                   description='Validate and summarize a contribution log.',
                                   add_help=False)

    opt = parser.add_argument_group("optional arguments")
    add_input_opt(opt)
    add_standard_opt(opt)


def add_compute_opt(parser):
    """Add arguments of the measurement."""

    parser.add_argument('--tau',
                        type=float,
                        help=f"threshold for promoting implicit links (default: {Defaults.TAU})")
    parser.add_argument('--lambda',
                        dest='lambda_',
                        type=float,
                        help=f"decay rate of exponential belief (default: {Defaults.LAMBDA})")
    parser.add_argument('--belief',
                        choices=Defaults.BELIEF_MODES,
                        help=f"belief function (default: {Defaults.BELIEF_MODE})")
    parser.add_argument('--format',
                        choices=Defaults.OUTPUT_FORMATS,
                        help=f"report format (default: {Defaults.OUTPUT_FORMAT})")
    parser.add_argument('--precision',
                        type=int,
                        help=f"decimal places of reported values (default: {Defaults.PRECISION})")
    parser.add_argument('--carry_links',
                        action='store_true',
                        help="carry explicit link values from one interval to the next")


def add_compute_subcommand(subparsers):
    """Add compute subcommand CLI."""

    parser = subparsers.add_parser('compute',
                                   formatter_class=CustomHelpFormatter,
                                   description='Measure social capital per interval and agent.',
                                   add_help=False)

    opt = parser.add_argument_group("optional arguments")
    add_input_opt(opt)
    add_compute_opt(opt)
    opt.add_argument('--explain',
                     action='store_true',
                     help="also write intermediate values (to <output>.explain, or stdout)")
    add_standard_opt(opt)


def add_explain_subcommand(subparsers):
    """Add explain subcommand CLI."""

    parser = subparsers.add_parser('explain',
                                   formatter_class=CustomHelpFormatter,
                                   description='Dump intermediate links, relations, and benevolence per interval.',
                                   add_help=False)

    opt = parser.add_argument_group("optional arguments")
    add_input_opt(opt)
    add_compute_opt(opt)
    add_standard_opt(opt)


def get_cli_parser():
    """Setup and return CLI."""

    parser = argparse.ArgumentParser('social_capital', add_help=False)
    subparsers = parser.add_subparsers(help="--", dest='subparser_name')

    add_ingest_subcommand(subparsers)
    add_compute_subcommand(subparsers)
    add_explain_subcommand(subparsers)

    return parser


def exit_code(error: SocialCapitalError) -> int:
    """Process exit code for a domain error."""

    if isinstance(error, ParseError):
        return Defaults.EXIT_PARSE_FAILURE

    if isinstance(error, ConfigError):
        return Defaults.EXIT_CONFIG_FAILURE

    if isinstance(error, NoDataError):
        return Defaults.EXIT_NO_DATA

    return Defaults.EXIT_ERROR


def main(argv=None):
    """Measure social capital of contributors in a task-based collaboration network."""

    if argv is None:
        argv = sys.argv[1:]

    # check if user is requesting help or version information
    if len(argv) == 0 or argv[0] in {'-h', '--h', '-help', '--help'}:
        print_help()
        sys.exit(Defaults.EXIT_SUCCESS)
    elif argv[0] in {'-v', '--v', '-version', '--version'}:
        print(f"{__prog_name__}: version {__version__}")
        sys.exit(Defaults.EXIT_SUCCESS)
    else:
        args = get_cli_parser().parse_args(argv)

    # setup logger
    logger_setup(args.log_dir if hasattr(args, 'log_dir') else None,
                 __prog_name__ + '.log',
                 __prog_name__,
                 __version__,
                 args.silent if hasattr(args, 'silent') else False)

    logger = logging.getLogger('timestamp')
    logger.info(__prog_name__ + ' v' + __version__ + ': ' + __description__)

    # perform action specified via CLI
    try:
        p = ProgramRunner()
        p.run(args)
    except SocialCapitalError as e:
        logger.error(f'[{e.stage}] {e}')
        sys.exit(exit_code(e))
    except SystemExit:
        logger.error(
            'Controlled exit resulting from early termination.')
        sys.exit(1)
    except KeyboardInterrupt:
        logger.error(
            'Controlled exit resulting from interrupt signal.')
        sys.exit(1)
    except Exception as e:
        msg = 'Uncontrolled exit resulting from an unexpected error.\n\n'
        msg += '=' * 80 + '\n'
        msg += '  MESSAGE: {}\n'.format(e)
        msg += '_' * 80 + '\n\n'
        msg += traceback.format_exc()
        msg += '=' * 80
        logger.error(msg)
        sys.exit(1)

    logger.info('Done.')


if __name__ == '__main__':
    main()
