# qec/circuit.py
"""
Syndrome-extraction circuits over C+T and Chrestenson gates, their gate
cost and wire depth, and a simulator that reads syndromes from ancillas.

Wires 0..n-1 are data qutrits; wire n+i is the ancilla of stabilizer i.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from django.conf import settings

from qec import code as qcode
from qec.code import Syndrome
from qec.exceptions import AncillaNotDefinite, CircuitError, UnknownCode
from qutrit import statevec
from qutrit.gpauli import PauliWord
from qutrit.statevec import StateVec

logger = logging.getLogger('qec')

CPLUS = "C+T"
CH1 = "Ch1"
CH2 = "Ch2"
PARTS = ("phase", "bit")


# =============================================================================
# SECTION 1: GATES, CIRCUITS AND COST RECORDS
# =============================================================================
@dataclass(frozen=True)
class Gate:
    kind: str
    wires: Tuple[int, ...]   # (control, target) for C+T, (qutrit,) otherwise
    part: str

    def __post_init__(self):
        if self.kind == CPLUS:
            if len(self.wires) != 2 or self.wires[0] == self.wires[1]:
                raise CircuitError(f"C+T needs distinct control and target, got {self.wires}.")
        elif self.kind in (CH1, CH2):
            if len(self.wires) != 1:
                raise CircuitError(f"{self.kind} acts on one wire, got {self.wires}.")
        else:
            raise CircuitError(f"Unknown gate kind '{self.kind}'.")

    def __str__(self) -> str:
        return f"{self.kind}({','.join(str(w) for w in self.wires)})"


@dataclass(frozen=True)
class Circuit:
    data_wires: int
    stabilizers: Tuple[PauliWord, ...]
    gates: Tuple[Gate, ...]

    @property
    def wire_count(self) -> int:
        return self.data_wires + len(self.stabilizers)

    def ancilla(self, index: int) -> int:
        return self.data_wires + index


@dataclass(frozen=True)
class CostReport:
    cplus_count: int
    chrestenson_count: int
    total_gates: int
    wire_depth: int
    wire_loads: Tuple[int, ...]
    ancilla_loads: Tuple[int, ...]
    deepest_wires: Tuple[int, ...]
    scheduled_depth: int


@dataclass(frozen=True)
class Table3Row:
    label: str
    qutrits: int
    bit_cost: int
    phase_cost: int
    total: int
    depth: int
    computed: bool


# Gate counts quoted for codes this toolkit does not build.
EXTERNAL_ROWS = (
    Table3Row("9-qutrit QECC", 9, 52, 210, 262, 26, computed=False),
    Table3Row("6-qutrit AQECC", 6, 18, 20, 38, 8, computed=False),
)


# =============================================================================
# SECTION 2: CIRCUIT CONSTRUCTION
# =============================================================================
def resolve_stabilizers(source: Union[str, Sequence[PauliWord]]) -> Tuple[PauliWord, ...]:
    if not isinstance(source, str):
        return tuple(source)
    if source == "proposed":
        return qcode.build_proposed_code().stabilizers
    if source == "steane":
        return tuple(PauliWord.parse(w) for w in qcode.STEANE_PRINTED_STABILIZERS)
    if source == "steane-signed":
        return qcode.build_steane_ternary().stabilizers
    raise UnknownCode(f"No extraction circuit for '{source}'.")


def build_syndrome_circuit(source: Union[str, Sequence[PauliWord]]) -> Circuit:
    """
    X-type stabilizers share one Ch1 and one Ch2 per touched data qutrit; an
    X^a or Z^a entry becomes `a` C+T gates from the data qutrit to the ancilla.
    """
    stabilizers = resolve_stabilizers(source)
    if not stabilizers:
        return Circuit(0, (), ())
    n = stabilizers[0].n
    for index, s in enumerate(stabilizers):
        if s.n != n:
            raise CircuitError(f"S{index + 1} acts on {s.n} qutrits, expected {n}.")
        if not (s.is_x_type or s.is_z_type):
            raise CircuitError(f"S{index + 1} = {s} mixes X and Z factors; only CSS stabilizers are supported.")

    # --- Step 1: Phase part, bracketed by the shared Chrestenson layers ---
    x_type = [i for i, s in enumerate(stabilizers) if s.is_x_type and not s.is_identity]
    z_type = [i for i, s in enumerate(stabilizers) if s.is_z_type and not s.is_identity]
    touched = sorted({q for i in x_type for q in stabilizers[i].support})

    gates: List[Gate] = [Gate(CH1, (q,), "phase") for q in touched]
    for i in x_type:
        for q, op in enumerate(stabilizers[i].ops):
            gates.extend(Gate(CPLUS, (q, n + i), "phase") for _ in range(op.x))
    gates.extend(Gate(CH2, (q,), "phase") for q in touched)

    # --- Step 2: Bit part ---
    for i in z_type:
        for q, op in enumerate(stabilizers[i].ops):
            gates.extend(Gate(CPLUS, (q, n + i), "bit") for _ in range(op.z))

    circuit = Circuit(n, tuple(stabilizers), tuple(gates))
    logger.debug(f"Built extraction circuit: {len(gates)} gates on {circuit.wire_count} wires.")
    return circuit


# =============================================================================
# SECTION 3: COST, DEPTH AND SIMULATION
# =============================================================================
def cost(c: Circuit, part: Optional[str] = None) -> CostReport:
    """
    Gate counts and wire depth, optionally restricted to the 'phase' or 'bit'
    part. Depth is the largest gate load on a data wire; ancilla loads are
    reported separately.
    """
    if part is not None and part not in PARTS:
        raise CircuitError(f"Unknown circuit part '{part}'.")
    gates = [g for g in c.gates if part is None or g.part == part]
    loads = [0] * c.wire_count
    levels = [0] * c.wire_count
    scheduled = 0
    for g in gates:
        for w in g.wires:
            loads[w] += 1
        # ASAP layering.
        level = max(levels[w] for w in g.wires) + 1
        for w in g.wires:
            levels[w] = level
        scheduled = max(scheduled, level)
    cplus = sum(1 for g in gates if g.kind == CPLUS)
    data_loads = loads[:c.data_wires]
    depth = max(data_loads, default=0)
    return CostReport(
        cplus_count=cplus,
        chrestenson_count=len(gates) - cplus,
        total_gates=len(gates),
        wire_depth=depth,
        wire_loads=tuple(data_loads),
        ancilla_loads=tuple(loads[c.data_wires:]),
        deepest_wires=tuple(w for w, load in enumerate(data_loads) if depth and load == depth),
        scheduled_depth=scheduled,
    )


def simulate_extraction(c: Circuit, data: StateVec, tol: Optional[float] = None) -> Syndrome:
    """
    Runs the circuit and reads every ancilla. Each ancilla is simulated with
    the data register alone, since C+T gates never write to data wires.
    The ancilla trit equals the syndrome exponent k of S|psi> = w^k|psi>.
    """
    tol = settings.QEC_CONFIG["ANCILLA_TOL"] if tol is None else tol
    if data.n != c.data_wires:
        raise CircuitError(f"Circuit has {c.data_wires} data wires but the state has {data.n} qutrits.")
    n = c.data_wires
    trits = []
    for index in range(len(c.stabilizers)):
        ancilla = c.ancilla(index)
        state = StateVec(n + 1, np.kron(data.amps, np.array([1.0, 0.0, 0.0], dtype=complex)))
        for g in c.gates:
            if g.kind == CH1:
                state = statevec.apply_chrestenson(state, g.wires[0])
            elif g.kind == CH2:
                state = statevec.apply_chrestenson(state, g.wires[0], inverse=True)
            elif g.wires[1] == ancilla:
                state = statevec.apply_cplus(state, g.wires[0], n)
        # Marginal of the last (ancilla) qutrit.
        probabilities = np.sum(np.abs(state.amps.reshape(-1, 3)) ** 2, axis=0)
        trit = int(np.argmax(probabilities))
        if probabilities[trit] < 1.0 - tol:
            raise AncillaNotDefinite(index, tuple(float(p) for p in probabilities))
        trits.append(trit)
    return Syndrome(tuple(trits))


# =============================================================================
# SECTION 4: COST TABLE AND WIRE DIAGRAM
# =============================================================================
def _row(label: str, stabilizers) -> Table3Row:
    circuit = build_syndrome_circuit(stabilizers)
    full = cost(circuit)
    return Table3Row(
        label=label,
        qutrits=circuit.data_wires,
        bit_cost=cost(circuit, "bit").total_gates,
        phase_cost=cost(circuit, "phase").total_gates,
        total=full.total_gates,
        depth=full.wire_depth,
        computed=True,
    )


def table3_report(include_variant: bool = True) -> List[Table3Row]:
    rows = list(EXTERNAL_ROWS) + [
        _row("Ternary Steane", "steane"),
        _row("Proposed QECC", "proposed"),
    ]
    if include_variant:
        rows.append(_row("Ternary Steane (commuting signs)", "steane-signed"))
    return rows


def render_wire_diagram(c: Circuit) -> str:
    """One text line per wire, one column per gate in circuit order."""
    symbols: Dict[int, List[str]] = {w: [] for w in range(c.wire_count)}
    for g in c.gates:
        if g.kind == CPLUS:
            marks = {g.wires[0]: "*", g.wires[1]: "+"}
        else:
            marks = {g.wires[0]: "1" if g.kind == CH1 else "2"}
        for w in symbols:
            symbols[w].append(marks.get(w, "-"))
    lines = []
    for w in range(c.wire_count):
        name = f"q{w}" if w < c.data_wires else f"a{w - c.data_wires}"
        lines.append(f"{name:>3} " + "-".join(symbols[w]))
    return "\n".join(lines)
