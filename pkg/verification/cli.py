# verification/cli.py
"""Shared plumbing for the management commands: run configuration, pair parsing, output."""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import EXIT_VERIFICATION_FAILED, command_error_for
from qec.exceptions import InvalidPair
from verification import reports
from verification.serializers import PairSerializer
from verification.suites import SuiteOptions

logger = logging.getLogger('verification')

FORMATS = ("markdown", "json")


@dataclass(frozen=True)
class RunConfig:
    command: str
    code_id: Optional[str] = None
    pair: Optional[Tuple[int, int]] = None
    output_format: str = "markdown"
    full: bool = False
    fidelity_tol: Optional[float] = None
    kl_tol: Optional[float] = None

    def suite_options(self, **extra) -> SuiteOptions:
        return SuiteOptions(fidelity_tol=self.fidelity_tol, kl_tol=self.kl_tol, full=self.full, **extra)


def parse_pair(text: str) -> Tuple[int, int]:
    serializer = PairSerializer(data={"pair": text})
    if not serializer.is_valid():
        raise InvalidPair(f"Invalid pair '{text}': {serializer.errors['pair'][0]}", pair=text)
    return serializer.validated_data["pair"]


class QECCommand(BaseCommand):
    """
    Base for the toolkit commands. Subclasses implement run(config, options);
    every exception leaving run() becomes a CommandError with the exit code
    contract of core.exceptions.
    """

    def add_arguments(self, parser):
        parser.add_argument('--format', dest='output_format', choices=FORMATS, default='markdown')
        parser.add_argument('--full', action='store_true', help='Include per-pattern detail in reports.')
        parser.add_argument('--fidelity-tol', type=float, default=None)
        parser.add_argument('--kl-tol', type=float, default=None)

    def handle(self, *args, **options):
        try:
            config = RunConfig(
                command=self.__module__.rsplit('.', 1)[-1],
                code_id=options.get('code'),
                pair=parse_pair(options['pair']) if options.get('pair') else None,
                output_format=options['output_format'],
                full=options['full'],
                fidelity_tol=options['fidelity_tol'],
                kl_tol=options['kl_tol'],
            )
            logger.debug(f"Running {config}")
            self.run(config, options)
        except CommandError:
            raise
        except Exception as e:
            raise command_error_for(e)

    def run(self, config: RunConfig, options):
        raise NotImplementedError

    def emit(self, config: RunConfig, schema: str, data, markdown: str):
        if config.output_format == "json":
            self.stdout.write(reports.render_json(schema, data))
        else:
            self.stdout.write(markdown)

    def fail(self, message: str):
        logger.error(message)
        raise CommandError(message, returncode=EXIT_VERIFICATION_FAILED)
