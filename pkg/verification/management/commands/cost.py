# verification/management/commands/cost.py

from qec import circuit as qcircuit
from verification import reports
from verification.cli import QECCommand
from verification.serializers import CircuitSerializer, CostReportSerializer, Table3Serializer


class Command(QECCommand):
    help = 'Gate count and depth of the syndrome extraction circuits.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--code', default='all', help='steane, steane-signed, proposed or all')
        parser.add_argument('--diagram', action='store_true', help='Print the wire diagram as well.')

    def run(self, config, options):
        if config.code_id == 'all':
            data = Table3Serializer({"rows": qcircuit.table3_report()}).data
            self.emit(config, "cost-table", data, reports.render_table3(data["rows"]))
            return

        circ = qcircuit.build_syndrome_circuit(config.code_id)
        total = CostReportSerializer(qcircuit.cost(circ)).data
        parts = {part: CostReportSerializer(qcircuit.cost(circ, part)).data for part in qcircuit.PARTS}
        data = {"code": config.code_id, "cost": total, "parts": parts}
        sections = [reports.render_cost(f"{config.code_id}: full circuit", total)]
        sections.extend(reports.render_cost(f"{config.code_id}: {part} part", parts[part]) for part in qcircuit.PARTS)
        if options['diagram']:
            data["circuit"] = CircuitSerializer(circ).data
            sections.append("```\n" + qcircuit.render_wire_diagram(circ) + "\n```")
        self.emit(config, "cost-report", data, "\n\n".join(sections) + "\n")
