"""
Handle execution of social capital subcommands.
"""

import sys
import logging

from social_capital.exceptions import NoDataError
from social_capital.report import emit_explain, emit_report
from social_capital.run_config import RunConfig
from social_capital.sc_pipeline import SCPipeline


class ProgramRunner():
    """Handle execution of social capital subcommands."""

    def __init__(self):
        """Initialization."""

        self.logger = logging.getLogger('timestamp')

    def config(self, args) -> RunConfig:
        """Run configuration from defaults, config file, and flags, in that order."""

        config = RunConfig()
        if getattr(args, 'config', None):
            config.from_toml_file(args.config)
        config.update_from_args(args)

        return config.validate()

    def write(self, data: bytes, output_file: str = None) -> None:
        if output_file:
            with open(output_file, 'wb') as fout:
                fout.write(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()

    def ingest(self, args) -> None:
        """Validate and summarize a contribution log."""

        config = self.config(args)

        self.logger.info('Summarizing contribution log.')
        summary = SCPipeline().ingest(config)

        lines = ['[Ingest Statistics]',
                 f'No. records = {summary.num_records}',
                 f'No. contributors = {len(summary.contributors)}',
                 f'No. packages = {len(summary.packages)}',
                 f'No. classes = {summary.num_classes}',
                 f'No. commits = {summary.num_commits}',
                 f'No. malformed lines = {summary.malformed}',
                 f'No. events outside intervals = {summary.out_of_range}',
                 '',
                 '[Interval Statistics]']
        for label, count in summary.interval_counts.items():
            lines.append(f'{label} = {count}')

        self.write(('\n'.join(lines) + '\n').encode('utf-8'), args.output)

    def compute(self, args, explain: bool = False) -> None:
        """Measure social capital and write the report."""

        config = self.config(args)

        self.logger.info('Measuring social capital.')
        report = SCPipeline().run(config)
        if report.is_empty():
            raise NoDataError('no data')

        if explain:
            data = emit_explain(report, config.format, config.precision)
        else:
            data = emit_report(report, config.format, config.precision)

        self.write(data, args.output)

        if getattr(args, 'explain', False) and not explain:
            self.write(emit_explain(report, config.format, config.precision),
                       f'{args.output}.explain' if args.output else None)

    def run(self, args) -> None:
        """Parse CLI args and run specified subcommand."""

        if args.subparser_name == 'ingest':
            self.ingest(args)
        elif args.subparser_name == 'compute':
            self.compute(args)
        elif args.subparser_name == 'explain':
            self.compute(args, explain=True)
        else:
            self.logger.error(
                f'Unknown command: {args.subparser_name}\n')
            sys.exit(1)
