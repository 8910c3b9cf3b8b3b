# verification/management/commands/stabgen.py

from qec import stabgen
from qec.code import build_proposed_code
from qec.exceptions import WordError
from verification import reports
from verification.cli import QECCommand
from verification.serializers import (
    GenTraceSerializer,
    ValidationReportSerializer,
    ZStabSetSerializer,
)


class Command(QECCommand):
    help = (
        'Generates bit stabilizers S3..S6 for a qutrit pair, or validates a given set. '
        'Pairs inside g2 exit with code 3.'
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--pair', required=True, help='Qutrit pair as i,j')
        parser.add_argument('--fallback', action='store_true',
                            help='Run the exhaustive search when greedy generation fails.')
        parser.add_argument('--set', dest='words', default=None,
                            help='Validate this set instead of generating one: "S3;S4;S5;S6".')

    def run(self, config, options):
        code = build_proposed_code()
        pair = stabgen.require_supported(code, config.pair)
        trace, method = None, "given"

        if options['words']:
            serializer = ZStabSetSerializer(
                data={"words": [w.strip() for w in options['words'].split(";")]}, context={"n": code.n},
            )
            if not serializer.is_valid():
                raise WordError(f"Invalid stabilizer set: {serializer.errors}")
            zset = serializer.to_zset()
        elif options['fallback']:
            zset, trace, method = stabgen.generate_or_fallback(pair, code)
        else:
            zset, trace = stabgen.generate(pair, code=code)
            method = "greedy"

        report = stabgen.validate(zset, pair, code)
        validation = ValidationReportSerializer(report).data
        data = {
            "pair": list(pair),
            "method": method,
            "set": ZStabSetSerializer(zset).data,
            "trace": GenTraceSerializer(trace).data if trace else None,
            "validation": validation,
        }
        parts = [f"## Bit stabilizers for pair {pair} ({method})", "", reports.render_zset(zset.labels()), ""]
        if trace:
            parts.extend([reports.render_trace(data["trace"]), ""])
        parts.append(reports.render_validation(validation))
        self.emit(config, "stabilizer-set", data, "\n".join(parts) + "\n")

        if not report.passed:
            self.fail(f"Set for pair {pair} fails: {', '.join(p.name for p in report.failed())}")
