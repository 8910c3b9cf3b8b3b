# verification/management/commands/tables.py

from qec.code import get_code
from verification import reports
from verification.cli import QECCommand
from verification.serializers import CodeSerializer


class Command(QECCommand):
    help = 'Prints the derived phase-error or bit-error syndrome table of a code.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--code', default='proposed', help='proposed or steane')
        parser.add_argument('--which', choices=('phase', 'bit'), default='phase')

    def run(self, config, options):
        code = get_code(config.code_id)
        if options['which'] == 'phase':
            rows = reports.phase_table_rows(code)
            markdown = reports.render_phase_table(code, rows)
        else:
            rows = reports.bit_table_rows(code)
            markdown = reports.render_bit_table(code, rows)
        data = {
            "code": CodeSerializer(code, context={"full": config.full}).data,
            "which": options['which'],
            "rows": rows,
        }
        self.emit(config, f"{options['which']}-table", data, markdown)
