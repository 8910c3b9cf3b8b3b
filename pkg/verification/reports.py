# verification/reports.py
"""
Markdown and JSON rendering for tables, suite results and generator output.
"""
import logging
from typing import Dict, List, Sequence

from django.conf import settings
from rest_framework.renderers import JSONRenderer

from qec.code import Code
from qutrit import gpauli
from qutrit.gpauli import QutritOp
from verification import reference_values

logger = logging.getLogger('verification')

OMEGA_LABELS = ("1", "ω", "ω²")


def omega(k) -> str:
    return "?" if k is None else OMEGA_LABELS[k % 3]


def envelope(schema: str, data) -> Dict:
    return {"schema": schema, "version": settings.QEC_CONFIG["REPORT_SCHEMA_VERSION"], "data": data}


def render_json(schema: str, data) -> str:
    return JSONRenderer().render(envelope(schema, data), renderer_context={"indent": 2}).decode("utf-8")


def markdown_table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = [
        "| " + " | ".join(str(h) for h in headers) + " |",
        "|" + "|".join("---" for _ in headers) + "|",
    ]
    lines.extend("| " + " | ".join(str(c) for c in row) + " |" for row in rows)
    return "\n".join(lines)


# ----------------------------------------------------------------------------
# Decode tables
# ----------------------------------------------------------------------------

def phase_table_rows(c: Code) -> List[Dict]:
    """
    Single phase errors grouped by (operator, syndrome on the X-type
    stabilizers). Rows follow the first triggered stabilizer, then the
    lowest qutrit.
    """
    groups: Dict = {}
    for name in ("Z1", "Z2"):
        for q in range(c.n):
            error = gpauli.single(c.n, q, name)
            exps = tuple(gpauli.commutation_phase(c.stabilizers[i], error) for i in c.phase_indices)
            groups.setdefault((name, exps), []).append(q)

    def order(item):
        (name, exps), qutrits = item
        first = next((i for i, k in enumerate(exps) if k), len(exps))
        return name, first, qutrits[0]

    rows = []
    for (name, exps), qutrits in sorted(groups.items(), key=order):
        rows.append({"operator": name, "syndrome": list(exps), "qutrits": qutrits})
    return rows


def bit_table_rows(c: Code) -> List[Dict]:
    """
    X1 then X2 on every qutrit against the bit stabilizers. For the proposed
    code the printed row is shown alongside (conjugated for X2), with the
    stabilizers whose phase differs.
    """
    printed_rows = reference_values.BIT_TABLE_PRINTED if c.name == "proposed" else None
    rows = []
    for power in (1, 2):
        for q in range(c.n):
            error = gpauli.single(c.n, q, QutritOp(power, 0))
            derived = [gpauli.commutation_phase(s, error) for s in c.bit_stabilizers]
            row = {
                "operator": f"X{power}", "qutrit": q, "error": error.label(),
                "syndrome": derived, "printed": None, "discrepancies": [],
            }
            if printed_rows is not None:
                # Printed X2 rows are the conjugates of the X1 rows.
                printed = [(power * k) % 3 for k in printed_rows[q]]
                row["printed"] = printed
                row["discrepancies"] = [
                    f"S{c.bit_indices[k] + 1}" for k, (a, b) in enumerate(zip(derived, printed)) if a != b
                ]
            rows.append(row)
    return rows


def render_phase_table(c: Code, rows: List[Dict]) -> str:
    headers = ["Error", "Qutrits"] + [f"S{i + 1}" for i in c.phase_indices]
    body = [
        [row["operator"], ", ".join(f"q{q}" for q in row["qutrits"])] + [omega(k) for k in row["syndrome"]]
        for row in rows
    ]
    return f"### Phase-error syndromes ({c.name})\n\n" + markdown_table(headers, body)


def render_bit_table(c: Code, rows: List[Dict]) -> str:
    names = [f"S{i + 1}" for i in c.bit_indices]
    headers = ["Error"] + names + ["Printed", "Differs"]
    body = []
    for row in rows:
        printed = "-" if row["printed"] is None else " ".join(omega(k) for k in row["printed"])
        body.append(
            [row["error"]] + [omega(k) for k in row["syndrome"]]
            + [printed, ", ".join(row["discrepancies"]) or "-"]
        )
    return f"### Bit-error syndromes ({c.name})\n\n" + markdown_table(headers, body)


# ----------------------------------------------------------------------------
# Suites and sweeps
# ----------------------------------------------------------------------------

def render_histogram(report_data: Dict) -> str:
    outcomes = list(report_data["counts"])
    body = [
        [w] + [counts.get(o, 0) for o in outcomes]
        for w, counts in report_data["by_weight"].items()
    ]
    body.append(["all"] + [report_data["counts"][o] for o in outcomes])
    return markdown_table(["Weight"] + outcomes, body)


def render_suite(result) -> str:
    verdict = "REPORT" if result.report_only else ("PASS" if result.passed else "FAIL")
    lines = [f"## {result.suite} ({result.code}): {verdict}", ""]
    if result.checks:
        lines.append(markdown_table(
            ["Check", "Result", "Detail"],
            [[c.name, "ok" if c.passed else "FAILED", c.detail or "-"] for c in result.checks],
        ))
        lines.append("")
    for section in result.sections:
        lines.extend([section, ""])
    return "\n".join(lines).rstrip() + "\n"


# ----------------------------------------------------------------------------
# Generation and cost
# ----------------------------------------------------------------------------

def render_trace(trace_data: Dict) -> str:
    body = [
        [step["label"], " ".join(str(v) for v in step["d"]),
         ", ".join(f"{p['op']}@q{p['qutrit']}" for p in step["placed"]) or "-", step["note"] or "-"]
        for step in trace_data["steps"]
    ]
    return "### Generation trace\n\n" + markdown_table(["Step", "d", "Placed", "Note"], body)


def render_validation(report_data: Dict) -> str:
    verdict = "PASS" if report_data["passed"] else "FAIL"
    body = [[p["name"], "ok" if p["passed"] else "FAILED", p["detail"] or "-"] for p in report_data["predicates"]]
    return f"### Validation for pair {tuple(report_data['pair'])}: {verdict}\n\n" + markdown_table(
        ["Predicate", "Result", "Detail"], body
    )


def render_zset(words: Sequence[str]) -> str:
    return "\n".join(f"    S{k + 3} = {w}" for k, w in enumerate(words))


def render_cost(label: str, cost_data: Dict) -> str:
    rows = [
        ["C+T gates", cost_data["cplus_count"]],
        ["Chrestenson gates", cost_data["chrestenson_count"]],
        ["Total gates", cost_data["total_gates"]],
        ["Depth (data wires)", cost_data["wire_depth"]],
        ["Deepest wires", ", ".join(f"q{w}" for w in cost_data["deepest_wires"])],
        ["Data wire loads", " ".join(str(v) for v in cost_data["wire_loads"])],
        ["Ancilla loads", " ".join(str(v) for v in cost_data["ancilla_loads"])],
        ["Scheduled depth", cost_data["scheduled_depth"]],
    ]
    return f"### {label}\n\n" + markdown_table(["Quantity", "Value"], rows)


def render_table3(rows: Sequence[Dict]) -> str:
    body = [
        [r["label"] + ("" if r["computed"] else " (quoted)"), r["qutrits"], r["bit_cost"],
         r["phase_cost"], r["total"], r["depth"]]
        for r in rows
    ]
    return "### Gate cost comparison\n\n" + markdown_table(
        ["Code", "Qutrits", "Bit-error cost", "Phase-error cost", "Total", "Depth"], body
    )
