# verification/suites.py
"""
Named verification suites. Each suite runs one family of checks against a
code and returns a SuiteResult: asserted checks decide the exit status,
unasserted ones are findings that are printed but never fail a run.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from django.conf import settings

from qec import circuit as qcircuit
from qec import oracle, stabgen
from qec.code import (
    Code,
    build_proposed_code,
    degeneracy_classes,
    get_code,
    invariant_failures,
    kl_check,
    logical_action,
    single_qutrit_errors,
    syndrome_statevector,
    syndrome_symplectic,
)
from qec.exceptions import PairUnsupported, SearchExhausted, UnknownCode
from qutrit import gpauli, statevec
from qutrit.gpauli import OMEGA_POWERS, PauliWord, QutritOp
from verification import reference_values, reports
from verification.serializers import (
    CostReportSerializer,
    GenTraceSerializer,
    KLReportSerializer,
    LogicalFindingSerializer,
    SweepReportSerializer,
    Table3RowSerializer,
    ValidationReportSerializer,
    WitnessSerializer,
    ZStabSetSerializer,
)

logger = logging.getLogger('verification')

CODE_INDEPENDENT = "-"


@dataclass(frozen=True)
class SuiteOptions:
    fidelity_tol: Optional[float] = None
    kl_tol: Optional[float] = None
    wmax: int = 2
    full: bool = False


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    asserted: bool = True


@dataclass
class SuiteResult:
    suite: str
    code: str
    report_only: bool = False
    checks: List[Check] = field(default_factory=list)
    findings: Dict[str, Any] = field(default_factory=dict)
    sections: List[str] = field(default_factory=list)

    def check(self, name: str, passed: bool, detail: str = "", asserted: bool = True) -> bool:
        self.checks.append(Check(name, bool(passed), detail, asserted))
        if not passed:
            log = logger.error if asserted and not self.report_only else logger.warning
            log(f"[{self.suite}/{self.code}] {name}: {'FAILED' if asserted else 'does not hold'} {detail}".rstrip())
        return bool(passed)

    @property
    def passed(self) -> bool:
        return self.report_only or all(c.passed for c in self.checks if c.asserted)

    @property
    def first_failure(self) -> Optional[Check]:
        if self.report_only:
            return None
        return next((c for c in self.checks if c.asserted and not c.passed), None)


@dataclass(frozen=True)
class Suite:
    name: str
    func: Callable[[SuiteResult, Optional[Code], SuiteOptions], None]
    codes: Tuple[str, ...]
    description: str


SUITES: Dict[str, Suite] = {}


def suite(name: str, codes: Tuple[str, ...] = ("proposed", "steane")):
    def register(func):
        doc = (func.__doc__ or "").strip().splitlines()
        SUITES[name] = Suite(name, func, codes, doc[0] if doc else "")
        return func
    return register


def run_suite(name: str, code_id: Optional[str] = None, options: Optional[SuiteOptions] = None) -> List[SuiteResult]:
    """Runs one suite for `code_id`, or for every code it applies to."""
    options = options or SuiteOptions()
    try:
        entry = SUITES[name]
    except KeyError:
        raise UnknownCode(f"Unknown suite '{name}'; expected one of {sorted(SUITES)}.") from None

    if not entry.codes:
        targets = [None]
    elif code_id is None:
        targets = list(entry.codes)
    elif code_id in entry.codes:
        targets = [code_id]
    else:
        get_code(code_id)
        raise UnknownCode(f"Suite '{name}' does not apply to code '{code_id}'; it runs on {list(entry.codes)}.")

    results = []
    for target in targets:
        code = get_code(target) if target else None
        result = SuiteResult(name, target or CODE_INDEPENDENT)
        logger.info(f"Running suite '{name}' on {result.code}...")
        entry.func(result, code, options)
        verdict = "report-only" if result.report_only else ("passed" if result.passed else "FAILED")
        logger.info(f"Suite '{name}' on {result.code}: {verdict} ({len(result.checks)} checks).")
        results.append(result)
    return results


def _word_labels(words) -> str:
    return ", ".join(w.label() for w in words)


# ============================================================================
# ALGEBRA AND CODE INVARIANTS
# ============================================================================

@suite("lemma1", codes=())
def lemma1(result: SuiteResult, code: Optional[Code], options: SuiteOptions) -> None:
    """X_i X_j and Z_k Z_l commute iff exactly one of i = j, k = l holds."""
    tol = settings.QEC_CONFIG["ALGEBRA_TOL"]
    rows, wrong = [], []
    for i, j, k, l in product((1, 2), repeat=4):
        s = PauliWord((QutritOp(i, 0), QutritOp(j, 0)))
        e = PauliWord((QutritOp(0, k), QutritOp(0, l)))
        c = gpauli.commutation_phase(s, e)
        expected = (i == j) != (k == l)
        ms, me = gpauli.to_matrix(s), gpauli.to_matrix(e)
        matrices_agree = np.allclose(ms @ me, OMEGA_POWERS[c] * (me @ ms), atol=tol)
        if (c == 0) != expected or not matrices_agree:
            wrong.append(f"X{i}X{j} / Z{k}Z{l}")
        rows.append([s.label(), e.label(), reports.omega(c), "yes" if c == 0 else "no"])
    result.check("16 combinations follow the rule", not wrong, f"mismatches: {', '.join(wrong)}" if wrong else "16/16")
    result.findings["combinations"] = [
        {"stabilizer": r[0], "error": r[1], "phase": r[2], "commute": r[3] == "yes"} for r in rows
    ]
    result.sections.append(reports.markdown_table(["S", "E", "SE = c ES", "Commute"], rows))


@suite("stabilize")
def stabilize(result: SuiteResult, code: Code, options: SuiteOptions) -> None:
    """Codewords are orthonormal, fixed by every stabilizer, and the stabilizers commute."""
    failures = invariant_failures(code)
    result.check("code invariants", not failures, "; ".join(failures[:5]) or f"{len(code.stabilizers)} stabilizers")
    shift = logical_action(code, gpauli.x_word([1] * code.n))
    result.check(
        "X1 on every qutrit maps |j_L> to |j+1_L>",
        shift is not None and shift.targets == (1, 2, 0) and shift.phases == (0, 0, 0),
        shift.label() if shift else "leaves the code space",
    )
    if code.name == "proposed":
        sizes = [len(state.to_triples()) for state in code.logical]
        result.check("each codeword is a sum of 9 kets", sizes == [9, 9, 9], f"ket counts {sizes}")
    result.findings["stabilizers"] = [s.label() for s in code.stabilizers]


@suite("kl")
def kl(result: SuiteResult, code: Code, options: SuiteOptions) -> None:
    """Knill-Laflamme conditions over the identity and all single-qutrit errors."""
    result.report_only = code.name == "proposed"
    errors = (gpauli.identity(code.n),) + single_qutrit_errors(code.n)
    report = kl_check(code, errors, options.kl_tol)
    result.check(
        "KL conditions hold for every error pair",
        report.passed,
        f"{len(report.failures)} of {len(report.entries)} ordered pairs fail",
    )
    data = KLReportSerializer(report, context={"full": options.full}).data
    result.findings["kl"] = data
    if report.failures:
        body = [
            [f["first"], f["second"], "yes" if f["offdiag_zero"] else "no", "yes" if f["diag_constant"] else "no"]
            for f in data["failures"][:10]
        ]
        result.sections.append(
            f"First failing pairs ({len(report.failures)} in total):\n\n"
            + reports.markdown_table(["E_m", "E_n", "Off-diagonal zero", "Diagonal constant"], body)
        )


# ============================================================================
# SWEEPS AND SEARCHES
# ============================================================================

@suite("single")
def single(result: SuiteResult, code: Code, options: SuiteOptions) -> None:
    """Every single-qutrit error is corrected on the logical basis and random logical states."""
    report = oracle.sweep_single_errors(code, tol=options.fidelity_tol)
    failures = report.failures()
    if code.name == "steane":
        result.check(
            "all single errors corrected",
            report.all_corrected,
            f"{report.total - len(failures)}/{report.total} corrected",
        )
        y11 = next(o for o in report.outcomes if o.error.label() == gpauli.single(code.n, 2, "Y11").label())
        result.check("Y11 on q2 is corrected", y11.outcome in (oracle.Outcome.CORRECTED, oracle.Outcome.DEGENERATE),
                     f"{y11.outcome.value}, correction {y11.correction}")
    else:
        bit = [o for o in report.outcomes if o.error.is_x_type]
        bad_bit = [o for o in bit if o.outcome not in (oracle.Outcome.CORRECTED, oracle.Outcome.DEGENERATE)]
        result.check("all X1/X2 errors corrected", not bad_bit, f"{len(bit) - len(bad_bit)}/{len(bit)} corrected")
        syndromes = {o.syndrome.exps for o in bit}
        result.check(
            "X1/X2 errors have distinct nonzero syndromes",
            len(syndromes) == len(bit) and not any(o.syndrome.is_trivial for o in bit),
            f"{len(syndromes)} distinct",
        )
        result.check(
            "all single errors corrected",
            report.all_corrected,
            f"{report.total - len(failures)}/{report.total}; failing: {_word_labels(o.error for o in failures[:8])}",
            asserted=False,
        )
    data = SweepReportSerializer(report, context={"full": options.full}).data
    result.findings["sweep"] = data
    result.sections.append(reports.render_histogram(data))


@suite("phase-sweep")
def phase_sweep(result: SuiteResult, code: Code, options: SuiteOptions) -> None:
    """Classifies every pattern in {I, Z1, Z2}^n."""
    from verification.tasks import dispatch_phase_sweep

    result.report_only = code.name == "proposed"
    report = dispatch_phase_sweep(code.name, options.fidelity_tol)
    result.check("all 3^n patterns classified", report.total == 3 ** code.n, f"{report.total} patterns")

    weights = report.by_weight
    low = [o for o in report.outcomes if o.weight <= 1]
    result.check(
        "patterns of weight <= 1 corrected",
        all(o.outcome in (oracle.Outcome.CORRECTED, oracle.Outcome.DEGENERATE) for o in low),
        f"{len(low)} patterns",
        asserted=code.name == "steane",
    )
    if code.g1 and code.g2:
        cross = [
            o for o in report.outcomes
            if o.weight == 2 and len({q in code.g1 for q in o.error.support}) == 2
        ]
        fixed = sum(1 for o in cross if o.outcome in (oracle.Outcome.CORRECTED, oracle.Outcome.DEGENERATE))
        result.check("one phase error in each group corrected", fixed == len(cross),
                     f"{fixed}/{len(cross)}", asserted=False)
        full = weights.get(code.n, {})
        result.check(
            f"phase errors on all {code.n} qutrits corrected",
            not any(k for k in full if k not in ("corrected", "degenerate-corrected")),
            ", ".join(f"{k}: {v}" for k, v in full.items()),
            asserted=False,
        )
    data = SweepReportSerializer(report, context={"full": options.full}).data
    result.findings["sweep"] = data
    result.sections.append(reports.render_histogram(data))


@suite("logicals")
def logicals(result: SuiteResult, code: Code, options: SuiteOptions) -> None:
    """Zero-syndrome words of small weight acting nontrivially on the code."""
    findings = oracle.find_low_weight_logicals(code, options.wmax)
    if code.name == "steane":
        result.check(f"no logical operator of weight <= {options.wmax}", not findings,
                     _word_labels(f.word for f in findings[:5]) or "none")
    else:
        result.check("no weight-1 logical operator", all(f.weight > 1 for f in findings),
                     _word_labels(f.word for f in findings if f.weight == 1))
        if options.wmax >= 2:
            target = PauliWord.parse(reference_values.WEIGHT_TWO_LOGICAL)
            hit = next((f for f in findings if f.word == target), None)
            result.check(f"{target} is a logical operator", hit is not None,
                         hit.action.label() if hit else "not found")
        if findings:
            logger.warning(f"[{code.name}] {len(findings)} logical operators of weight <= {options.wmax}.")
    result.findings["logicals"] = LogicalFindingSerializer(findings, many=True).data
    if findings:
        body = [[f.word.label(), f.weight, f.action.label()] for f in findings[:20]]
        result.sections.append(
            f"{len(findings)} logical operators of weight <= {options.wmax}:\n\n"
            + reports.markdown_table(["Word", "Weight", "Action"], body)
        )


@suite("lemma4", codes=("proposed",))
def lemma4(result: SuiteResult, code: Code, options: SuiteOptions) -> None:
    """Pairs inside g2 admit colliding bit errors under every valid Z-type stabilizer."""
    witnesses = []
    for pair in combinations(code.g2, 2):
        witness = oracle.lemma4_search(code, pair)
        witnesses.append(witness)
        result.check(
            f"witness for {pair}",
            witness.first != witness.second,
            f"{witness.first} vs {witness.second}, syndrome {witness.syndrome}",
        )
        result.check(f"{pair} witness acts differently on the code", not witness.same_action,
                     "colliding errors differ by a stabilizer" if witness.same_action else "", asserted=False)
        try:
            stabgen.generate(pair, code=code)
        except PairUnsupported:
            refused = True
        else:
            refused = False
        result.check(f"generator refuses {pair}", refused)
    counts = {w.valid_stabilizers for w in witnesses}
    result.check("81 valid Z-type stabilizers", counts == {81}, f"{sorted(counts)}")
    result.findings["witnesses"] = WitnessSerializer(witnesses, many=True).data
    body = [[str(w.pair), w.first.label(), w.second.label(), str(w.syndrome), w.same_action] for w in witnesses]
    result.sections.append(reports.markdown_table(["Pair", "First", "Second", "Syndrome", "Same action"], body))


@suite("pairs", codes=("proposed",))
def pairs(result: SuiteResult, code: Code, options: SuiteOptions) -> None:
    """Pair bit errors decode uniquely for the default and the worked-example sets."""
    default = code.bit_stabilizers
    worked = tuple(PauliWord.parse(w) for w in reference_values.WORKED_EXAMPLE_SET)
    cases = (
        ("default set", default, code.bit_pair, True),
        ("worked-example set", worked, reference_values.WORKED_EXAMPLE_PAIR, True),
        ("default set", default, (1, 3), False),
    )
    for label, words, pair, expected in cases:
        problems = oracle.pair_error_problems(words, pair)
        verdict = oracle.pair_error_check(code, words, pair)
        result.check(
            f"{label} {'separates' if expected else 'cannot separate'} pair {pair}",
            verdict == expected,
            "; ".join(problems[:3]),
        )

    for label, words, pair in (("default set", default, code.bit_pair),
                               ("worked-example set", worked, reference_values.WORKED_EXAMPLE_PAIR)):
        custom = build_proposed_code(tuple(words), tuple(pair))
        report = oracle.sweep_single_errors(custom, oracle.pair_bit_errors(code.n, tuple(pair)), options.fidelity_tol)
        result.check(
            f"{label}: pair errors on {pair} corrected on encoded states",
            report.all_corrected,
            ", ".join(f"{o.error}: {o.outcome.value}" for o in report.outcomes),
        )
        result.findings[f"{label} {pair}"] = SweepReportSerializer(report).data


# ============================================================================
# REPRODUCTIONS
# ============================================================================

@suite("tables", codes=("proposed",))
def tables(result: SuiteResult, code: Code, options: SuiteOptions) -> None:
    """Phase-error partition and bit-error trigger supports against the published tables."""
    phase_rows = reports.phase_table_rows(code)
    derived = [(r["operator"], tuple(r["syndrome"]), tuple(r["qutrits"])) for r in phase_rows]
    result.check("phase table rows", derived == list(reference_values.PHASE_TABLE), f"{len(derived)} rows")

    representatives = {(2, 0): (0, "Z1"), (1, 0): (0, "Z2"), (0, 2): (1, "Z1"), (0, 1): (1, "Z2")}
    wrong = [
        f"{syn} -> {code.phase_table[syn]}" for syn, (q, name) in representatives.items()
        if code.phase_table.get(syn) != gpauli.single(code.n, q, name)
    ]
    result.check("decoder picks the lowest-index qutrit", not wrong, "; ".join(wrong))

    bit_rows = reports.bit_table_rows(code)
    support = [
        r["error"] for r in bit_rows
        if [bool(k) for k in r["syndrome"]] != [bool(k) for k in r["printed"]]
    ]
    result.check("bit table trigger supports", not support,
                 f"rows differ on {support}" if support else f"{len(bit_rows)} rows")
    x1_rows = {r["qutrit"]: r["syndrome"] for r in bit_rows if r["operator"] == "X1"}
    unconjugated = [
        r["error"] for r in bit_rows
        if r["operator"] == "X2" and r["syndrome"] != [(-k) % 3 for k in x1_rows[r["qutrit"]]]
    ]
    result.check("X2 rows conjugate the X1 rows", not unconjugated, ", ".join(unconjugated))
    differing = sum(1 for r in bit_rows if r["discrepancies"])
    result.check("bit table phases as printed", not differing, f"{differing} rows differ", asserted=False)

    result.findings["phase_table"] = phase_rows
    result.findings["bit_table"] = bit_rows
    result.sections.append(reports.render_phase_table(code, phase_rows))
    result.sections.append(reports.render_bit_table(code, bit_rows))


@suite("syndromes")
def syndromes(result: SuiteResult, code: Code, options: SuiteOptions) -> None:
    """Symplectic, statevector and extraction-circuit syndromes agree on every single error."""
    circ = qcircuit.build_syndrome_circuit(code.stabilizers)
    errors = single_qutrit_errors(code.n)
    disagreements = []
    for label, logical in enumerate(code.logical):
        for e in errors:
            errored = statevec.apply_word(logical, e)
            paths = (
                syndrome_symplectic(code, e),
                syndrome_statevector(code, errored),
                qcircuit.simulate_extraction(circ, errored),
            )
            if len({p.exps for p in paths}) != 1:
                disagreements.append(f"{e} on |{label}_L>: {' / '.join(str(p) for p in paths)}")
    count = len(errors) * len(code.logical)
    result.check("three syndrome paths agree", not disagreements,
                 disagreements[0] if disagreements else f"{count}/{count} error and codeword runs")
    result.findings["disagreements"] = disagreements


@suite("degeneracy", codes=("proposed",))
def degeneracy(result: SuiteResult, code: Code, options: SuiteOptions) -> None:
    """Phase errors that act identically on the code, and where that fails."""
    tol = settings.QEC_CONFIG["ALGEBRA_TOL"]
    z10 = gpauli.single(code.n, 0, "Z1")
    z22 = gpauli.single(code.n, 2, "Z2")
    zero = code.logical[0]
    same_on_zero, phase = statevec.equal_up_to_global_phase(
        statevec.apply_word(zero, z10), statevec.apply_word(zero, z22), tol)
    result.check(f"{z10} and {z22} agree on |0_L>", same_on_zero and abs(phase - 1.0) <= tol,
                 f"phase {phase:.6f}" if same_on_zero else "")
    result.check(f"{z10} and {z22} agree on every codeword", oracle.same_action(code, z10, z22, options.kl_tol),
                 "they differ by a phase on |1_L> and |2_L>", asserted=False)

    ratio = gpauli.multiply(gpauli.inverse(z22), z10)
    action = logical_action(code, ratio)
    result.check(
        f"{ratio} has zero syndrome and acts as a logical operator",
        syndrome_symplectic(code, ratio).is_trivial and action is not None and not action.is_identity,
        action.label() if action else "leaves the code space",
    )

    z_errors = [e for e in single_qutrit_errors(code.n) if e.is_z_type]
    classes = degeneracy_classes(code, z_errors, options.kl_tol)
    result.findings["classes"] = [[e.label() for e in members] for members in classes]
    merged = [members for members in classes if len(members) > 1]
    result.sections.append(
        f"{len(classes)} classes over {len(z_errors)} single phase errors; merged classes:\n\n"
        + reports.markdown_table(["Class"], [[_word_labels(m)] for m in merged])
    )


@suite("stabgen", codes=("proposed",))
def stabgen_suite(result: SuiteResult, code: Code, options: SuiteOptions) -> None:
    """The greedy generator on the worked example, every eligible pair and the g2 refusals."""
    worked = stabgen.ZStabSet.parse(reference_values.WORKED_EXAMPLE_SET)
    report = stabgen.validate(worked, reference_values.WORKED_EXAMPLE_PAIR, code)
    result.check("worked-example set validates", report.passed,
                 "; ".join(f"{p.name}: {p.detail}" for p in report.failed()))

    zset, trace = stabgen.generate(reference_values.WORKED_EXAMPLE_PAIR, code=code)
    result.check("generator reproduces the worked example", zset.labels() == worked.labels(),
                 "; ".join(zset.labels()))
    seed = next(s for s in trace.steps if s.label == "seed")
    result.check("d after the seed", seed.d == reference_values.WORKED_EXAMPLE_D_AFTER_SEED, str(seed.d))
    third = trace.fills()[2]
    result.check("d after the third fill", third.d == reference_values.WORKED_EXAMPLE_D_AFTER_THIRD_FILL,
                 f"{third.label}: {third.d}")
    result.findings["worked_example"] = {
        "set": ZStabSetSerializer(zset).data,
        "trace": GenTraceSerializer(trace).data,
        "validation": ValidationReportSerializer(report).data,
    }

    refused = []
    for pair in combinations(code.g2, 2):
        try:
            stabgen.generate(pair, code=code)
        except PairUnsupported:
            refused.append(pair)
    result.check("g2 pairs refused", len(refused) == 3, f"{refused}")

    coverage, invalid = {}, []
    for pair in stabgen.eligible_pairs(code):
        try:
            found, _, method = stabgen.generate_or_fallback(pair, code)
        except SearchExhausted:
            coverage[f"{pair[0]},{pair[1]}"] = {"method": None, "set": None}
            continue
        if not stabgen.validate(found, pair, code).passed:
            invalid.append(pair)
        coverage[f"{pair[0]},{pair[1]}"] = {"method": method, "set": found.labels()}
    result.check("every produced set validates", not invalid, f"{invalid}")
    supported = [p for p, entry in coverage.items() if entry["method"]]
    unsupported = [p for p, entry in coverage.items() if not entry["method"]]
    result.check(
        f"all {reference_values.CLAIMED_ELIGIBLE_PAIRS} pairs outside g2 supported",
        len(supported) == reference_values.CLAIMED_ELIGIBLE_PAIRS,
        f"{len(supported)} supported; no valid set for {', '.join(unsupported) or '-'}",
        asserted=False,
    )
    result.findings["coverage"] = coverage
    body = [[p, entry["method"] or "none", "; ".join(entry["set"] or [])] for p, entry in coverage.items()]
    result.sections.append(reports.markdown_table(["Pair", "Method", "S3; S4; S5; S6"], body))


@suite("cost", codes=())
def cost_suite(result: SuiteResult, code: Optional[Code], options: SuiteOptions) -> None:
    """Gate counts and depths of the extraction circuits."""
    rows = qcircuit.table3_report()
    by_label = {r.label: r for r in rows}
    for label in ("Ternary Steane", "Proposed QECC"):
        row = by_label[label]
        computed = (row.qutrits, row.bit_cost, row.phase_cost, row.total, row.depth)
        expected = reference_values.COST_TABLE[label]
        result.check(f"{label} costs", computed == expected, f"computed {computed}, published {expected}")

    for source, deepest in (("steane", reference_values.STEANE_DEEPEST_WIRES),
                            ("proposed", reference_values.PROPOSED_DEEPEST_WIRES)):
        report = qcircuit.cost(qcircuit.build_syndrome_circuit(source))
        result.check(f"{source} deepest wires", report.deepest_wires == deepest, f"{report.deepest_wires}")

    proposed = qcircuit.build_syndrome_circuit("proposed")
    for part, (depth, wires) in (("phase", reference_values.PROPOSED_PHASE_PART),
                                 ("bit", reference_values.PROPOSED_BIT_PART)):
        report = qcircuit.cost(proposed, part)
        result.check(f"proposed {part} part depth {depth} on {wires}",
                     (report.wire_depth, report.deepest_wires) == (depth, wires),
                     f"depth {report.wire_depth} on {report.deepest_wires}")

    data = Table3RowSerializer(rows, many=True).data
    result.findings["rows"] = data
    result.findings["proposed"] = CostReportSerializer(qcircuit.cost(proposed)).data
    result.sections.append(reports.render_table3(data))
