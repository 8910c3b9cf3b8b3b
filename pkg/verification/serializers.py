# verification/serializers.py
import logging

from rest_framework import serializers

from qec.code import Syndrome
from qec.exceptions import WordError
from qec.stabgen import ZStabSet
from qutrit import gpauli
from qutrit.gpauli import PauliWord

logger = logging.getLogger('verification')


# ============================================================================
# FIELDS
# ============================================================================

class PauliWordField(serializers.Field):
    """An operator word as its string label, e.g. "w^1 Z1 I X2"."""

    def to_representation(self, value):
        return value.label()

    def to_internal_value(self, data):
        if not isinstance(data, str):
            raise serializers.ValidationError("Operator words are written as strings.")
        try:
            return PauliWord.parse(data)
        except WordError as exc:
            raise serializers.ValidationError(str(exc))


class SyndromeField(serializers.Field):
    """A syndrome as its integer exponent vector."""

    def to_representation(self, value):
        return list(value.exps)

    def to_internal_value(self, data):
        try:
            exps = tuple(int(k) for k in data)
        except (TypeError, ValueError):
            raise serializers.ValidationError("A syndrome is a list of integers.")
        if any(k not in (0, 1, 2) for k in exps):
            raise serializers.ValidationError("Syndrome entries are exponents in {0, 1, 2}.")
        return Syndrome(exps)


class ComplexField(serializers.Field):
    """A complex number as [re, im]."""

    def to_representation(self, value):
        value = complex(value)
        return [value.real, value.imag]


class StateField(serializers.Field):
    """A state as (basis-string, re, im) triples over its nonzero amplitudes."""

    def to_representation(self, value):
        return [[ket, a.real, a.imag] for ket, a in value.to_triples()]


def _table(table):
    """Decode table as syndrome -> correction-string map."""
    return {
        ",".join(str(k) for k in syndrome): gpauli.inverse(error).label()
        for syndrome, error in table.items()
    }


# ============================================================================
# CODES AND PAIRS
# ============================================================================

class CodeSerializer(serializers.Serializer):
    """
    A built code: stabilizers as operator strings, the qutrit groups and
    both decode tables. The logical basis is included when the serializer
    context asks for `full` detail.
    """
    name = serializers.CharField()
    n = serializers.IntegerField()
    stabilizers = serializers.ListField(child=PauliWordField())
    g1 = serializers.ListField(child=serializers.IntegerField())
    g2 = serializers.ListField(child=serializers.IntegerField())
    bit_pair = serializers.ListField(child=serializers.IntegerField(), allow_null=True)
    phase_table = serializers.SerializerMethodField()
    bit_table = serializers.SerializerMethodField()
    logical = serializers.SerializerMethodField()

    def get_phase_table(self, code):
        return _table(code.phase_table)

    def get_bit_table(self, code):
        return _table(code.bit_table)

    def get_logical(self, code):
        if not self.context.get("full"):
            return None
        return [StateField().to_representation(state) for state in code.logical]


class PairSerializer(serializers.Serializer):
    """A qutrit pair written "i,j" on the command line."""
    pair = serializers.CharField()

    def validate_pair(self, value):
        parts = [p.strip() for p in value.split(",")]
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise serializers.ValidationError(f"'{value}' is not of the form i,j.")
        return tuple(int(p) for p in parts)


class ZStabSetSerializer(serializers.Serializer):
    """Four Z-type bit stabilizers S3..S6 as operator strings."""
    words = serializers.ListField(child=PauliWordField(), min_length=4, max_length=4)

    def validate_words(self, value):
        sizes = {w.n for w in value}
        if len(sizes) != 1:
            raise serializers.ValidationError("All four words must act on the same number of qutrits.")
        expected = self.context.get("n")
        if expected is not None and sizes != {expected}:
            raise serializers.ValidationError(f"Words act on {sizes.pop()} qutrits; the code has {expected}.")
        offenders = [w.label() for w in value if not w.is_z_type]
        if offenders:
            raise serializers.ValidationError(f"Bit stabilizers may only contain I, Z1 and Z2: {offenders}")
        return value

    def to_representation(self, instance):
        if isinstance(instance, ZStabSet):
            return {"words": instance.labels()}
        return super().to_representation(instance)

    def to_zset(self):
        return ZStabSet(tuple(self.validated_data["words"]))


# ============================================================================
# GENERATION
# ============================================================================

class TraceStepSerializer(serializers.Serializer):
    label = serializers.CharField()
    d = serializers.ListField(child=serializers.IntegerField())
    placed = serializers.SerializerMethodField()
    note = serializers.CharField(allow_blank=True)

    def get_placed(self, step):
        return [{"qutrit": q, "op": op} for q, op in step.placed]


class GenTraceSerializer(serializers.Serializer):
    pair = serializers.ListField(child=serializers.IntegerField())
    steps = TraceStepSerializer(many=True)
    final_d = serializers.ListField(child=serializers.IntegerField())


class PredicateSerializer(serializers.Serializer):
    name = serializers.CharField()
    passed = serializers.BooleanField()
    detail = serializers.CharField(allow_blank=True)


class ValidationReportSerializer(serializers.Serializer):
    pair = serializers.ListField(child=serializers.IntegerField())
    passed = serializers.BooleanField()
    predicates = PredicateSerializer(many=True)


# ============================================================================
# ORACLE REPORTS
# ============================================================================

class PatternOutcomeSerializer(serializers.Serializer):
    error = PauliWordField()
    weight = serializers.IntegerField()
    syndrome = SyndromeField()
    outcome = serializers.SerializerMethodField()
    correction = PauliWordField(allow_null=True)

    def get_outcome(self, item):
        return item.outcome.value


class SweepReportSerializer(serializers.Serializer):
    """
    Sweep summary: counts per outcome and per error weight. The first
    `limit` failing patterns are listed; every pattern only with `full` in
    the context.
    """
    limit = 50

    name = serializers.CharField()
    code = serializers.CharField()
    total = serializers.IntegerField()
    counts = serializers.DictField(child=serializers.IntegerField())
    by_weight = serializers.SerializerMethodField()
    failures = serializers.SerializerMethodField()
    outcomes = serializers.SerializerMethodField()

    def get_by_weight(self, report):
        return {str(w): counts for w, counts in report.by_weight.items()}

    def get_failures(self, report):
        failures = report.failures()
        if not self.context.get("full"):
            failures = failures[:self.limit]
        return PatternOutcomeSerializer(failures, many=True).data

    def get_outcomes(self, report):
        if not self.context.get("full"):
            return None
        return PatternOutcomeSerializer(report.outcomes, many=True).data


class LogicalActionSerializer(serializers.Serializer):
    targets = serializers.ListField(child=serializers.IntegerField())
    phases = serializers.ListField(child=serializers.IntegerField(allow_null=True))
    label = serializers.CharField()


class LogicalFindingSerializer(serializers.Serializer):
    word = PauliWordField()
    weight = serializers.IntegerField()
    action = LogicalActionSerializer()


class WitnessSerializer(serializers.Serializer):
    pair = serializers.ListField(child=serializers.IntegerField())
    first = PauliWordField()
    second = PauliWordField()
    same_action = serializers.BooleanField()
    valid_stabilizers = serializers.IntegerField()
    syndrome = SyndromeField()


class KLEntrySerializer(serializers.Serializer):
    first = serializers.SerializerMethodField()
    second = serializers.SerializerMethodField()
    offdiag_zero = serializers.BooleanField()
    diag_constant = serializers.BooleanField()
    matrix = serializers.SerializerMethodField()

    def get_first(self, entry):
        return self.context["errors"][entry.m].label()

    def get_second(self, entry):
        return self.context["errors"][entry.n].label()

    def get_matrix(self, entry):
        field = ComplexField()
        return [[field.to_representation(v) for v in row] for row in entry.matrix]


class KLReportSerializer(serializers.Serializer):
    """
    Knill-Laflamme verdict. Only the first `limit` failing pairs are listed
    unless the context asks for `full` detail.
    """
    limit = 20

    tol = serializers.FloatField()
    passed = serializers.BooleanField()
    error_count = serializers.SerializerMethodField()
    pair_count = serializers.SerializerMethodField()
    failure_count = serializers.SerializerMethodField()
    failures = serializers.SerializerMethodField()

    def get_error_count(self, report):
        return len(report.errors)

    def get_pair_count(self, report):
        return len(report.entries)

    def get_failure_count(self, report):
        return len(report.failures)

    def get_failures(self, report):
        failures = report.failures if self.context.get("full") else report.failures[:self.limit]
        return KLEntrySerializer(failures, many=True, context={"errors": report.errors}).data


# ============================================================================
# CIRCUITS
# ============================================================================

class GateSerializer(serializers.Serializer):
    kind = serializers.CharField()
    wires = serializers.ListField(child=serializers.IntegerField())
    part = serializers.CharField()


class CircuitSerializer(serializers.Serializer):
    data_wires = serializers.IntegerField()
    wire_count = serializers.IntegerField()
    stabilizers = serializers.ListField(child=PauliWordField())
    gates = GateSerializer(many=True)


class CostReportSerializer(serializers.Serializer):
    cplus_count = serializers.IntegerField()
    chrestenson_count = serializers.IntegerField()
    total_gates = serializers.IntegerField()
    wire_depth = serializers.IntegerField()
    wire_loads = serializers.ListField(child=serializers.IntegerField())
    ancilla_loads = serializers.ListField(child=serializers.IntegerField())
    deepest_wires = serializers.ListField(child=serializers.IntegerField())
    scheduled_depth = serializers.IntegerField()


class Table3RowSerializer(serializers.Serializer):
    label = serializers.CharField()
    qutrits = serializers.IntegerField()
    bit_cost = serializers.IntegerField()
    phase_cost = serializers.IntegerField()
    total = serializers.IntegerField()
    depth = serializers.IntegerField()
    computed = serializers.BooleanField()


class Table3Serializer(serializers.Serializer):
    """The gate-cost comparison; rows quoted from elsewhere carry computed=false."""
    rows = Table3RowSerializer(many=True)


# ============================================================================
# SUITES
# ============================================================================

class CheckSerializer(serializers.Serializer):
    name = serializers.CharField()
    passed = serializers.BooleanField()
    detail = serializers.CharField(allow_blank=True)
    asserted = serializers.BooleanField()


class SuiteResultSerializer(serializers.Serializer):
    suite = serializers.CharField()
    code = serializers.CharField()
    passed = serializers.BooleanField()
    report_only = serializers.BooleanField()
    checks = CheckSerializer(many=True)
    findings = serializers.DictField()
