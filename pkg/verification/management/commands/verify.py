# verification/management/commands/verify.py
from dataclasses import asdict

from verification import reports, suites
from verification.cli import QECCommand
from verification.serializers import SuiteResultSerializer
from verification.tasks import run_verification_suite


class Command(QECCommand):
    help = (
        'Runs a verification suite. Exits 0 when every asserted check passes; '
        'report-only suites always exit 0.'
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--suite', required=True, help=f"One of: {', '.join(sorted(suites.SUITES))}")
        parser.add_argument('--code', default=None, help='proposed or steane; defaults to every applicable code')
        parser.add_argument('--wmax', type=int, default=2, help='Weight bound for the logicals suite (1-3).')
        parser.add_argument('--enqueue', action='store_true', help='Submit the suite to the Celery broker.')

    def run(self, config, options):
        suite_options = config.suite_options(wmax=options['wmax'])
        if options['enqueue']:
            self._enqueue(config, options['suite'], suite_options)
            return

        results = suites.run_suite(options['suite'], config.code_id, suite_options)
        data = [SuiteResultSerializer(result).data for result in results]
        self.emit(config, "verification-report", data, "\n".join(reports.render_suite(r) for r in results))

        for result in results:
            failure = result.first_failure
            if failure:
                self.fail(f"Suite '{result.suite}' on {result.code} failed at '{failure.name}': {failure.detail}")

    def _enqueue(self, config, suite_name, suite_options):
        async_result = run_verification_suite.delay(suite_name, config.code_id, asdict(suite_options))
        self.stderr.write(f"Submitted suite '{suite_name}' as task {async_result.id}.")
        if not async_result.ready():
            return
        # Eager mode: the result is already here.
        data = async_result.get()
        summary = "\n".join(
            f"- {item['suite']} ({item['code']}): "
            f"{'REPORT' if item['report_only'] else ('PASS' if item['passed'] else 'FAIL')}"
            for item in data
        )
        self.emit(config, "verification-report", data, summary)
        failed = [item for item in data if not item['passed']]
        if failed:
            self.fail(f"Suite '{suite_name}' failed on {', '.join(item['code'] for item in failed)}.")
