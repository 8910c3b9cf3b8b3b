# qec/oracle.py
"""
Brute-force verification over error spaces: single-error and phase-pattern
sweeps, low-weight logical search, the g2 pair impossibility search and the
pair-error check for a bit stabilizer set.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations, islice, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings

from qec.code import (
    Code,
    LogicalAction,
    Syndrome,
    correct,
    decode,
    logical_action,
    random_logical_states,
    single_qutrit_errors,
    syndrome_statevector,
    syndrome_symplectic,
)
from qec.exceptions import InvalidPair, NoWitness, UnrecognizedSyndrome, WordError
from qutrit import gpauli, statevec
from qutrit.gpauli import ERROR_NAMES, PauliWord, QutritOp

logger = logging.getLogger('qec')


# ==============================================================================
# SECTION 1: OUTCOMES AND REPORTS
# ==============================================================================

class Outcome(str, Enum):
    CORRECTED = "corrected"
    DEGENERATE = "degenerate-corrected"
    LOGICAL_FAULT = "logical-fault"
    UNDETECTED = "undetected"
    UNRECOGNIZED = "unrecognized"


@dataclass(frozen=True)
class PatternOutcome:
    error: PauliWord
    syndrome: Syndrome
    outcome: Outcome
    correction: Optional[PauliWord] = None

    @property
    def weight(self) -> int:
        return self.error.weight


@dataclass
class SweepReport:
    name: str
    code: str
    outcomes: List[PatternOutcome] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.outcomes)

    @property
    def counts(self) -> Dict[str, int]:
        tally = Counter(o.outcome.value for o in self.outcomes)
        return {outcome.value: tally.get(outcome.value, 0) for outcome in Outcome}

    @property
    def by_weight(self) -> Dict[int, Dict[str, int]]:
        histogram: Dict[int, Counter] = {}
        for o in self.outcomes:
            histogram.setdefault(o.weight, Counter())[o.outcome.value] += 1
        return {w: dict(histogram[w]) for w in sorted(histogram)}

    @property
    def all_corrected(self) -> bool:
        return all(o.outcome in (Outcome.CORRECTED, Outcome.DEGENERATE) for o in self.outcomes)

    def failures(self) -> List[PatternOutcome]:
        return [o for o in self.outcomes if o.outcome not in (Outcome.CORRECTED, Outcome.DEGENERATE)]

    def merge(self, other: "SweepReport") -> "SweepReport":
        if (self.name, self.code) != (other.name, other.code):
            raise ValueError(f"Cannot merge sweep '{other.name}/{other.code}' into '{self.name}/{self.code}'.")
        return SweepReport(self.name, self.code, self.outcomes + other.outcomes)


@dataclass(frozen=True)
class LogicalOpFinding:
    word: PauliWord
    action: LogicalAction

    @property
    def weight(self) -> int:
        return self.word.weight


@dataclass(frozen=True)
class Witness:
    """Two bit errors no valid Z-type stabilizer can tell apart."""
    pair: Tuple[int, int]
    first: PauliWord
    second: PauliWord
    same_action: bool
    valid_stabilizers: int
    syndrome: Syndrome


# ==============================================================================
# SECTION 2: ERROR SWEEPS
# ==============================================================================

def _outcome(syn: Syndrome, restored: bool, error: PauliWord, residual: Optional[PauliWord]) -> Outcome:
    # Degenerate: restored, but through a different representative than the error itself.
    if syn.is_trivial:
        if not restored:
            return Outcome.UNDETECTED
        return Outcome.CORRECTED if error.is_identity else Outcome.DEGENERATE
    if not restored:
        return Outcome.LOGICAL_FAULT
    return Outcome.CORRECTED if residual.is_identity else Outcome.DEGENERATE


def sweep_single_errors(c: Code, errors: Optional[Sequence[PauliWord]] = None,
                        tol: Optional[float] = None) -> SweepReport:
    """
    Applies each error to the logical basis and the fixed-seed random logical
    states, runs correct() and compares with the original state.
    """
    tol = settings.QEC_CONFIG["FIDELITY_TOL"] if tol is None else tol
    errors = single_qutrit_errors(c.n) if errors is None else errors
    test_states = list(c.logical) + random_logical_states(c)
    report = SweepReport("single", c.name)

    for error in errors:
        syn = syndrome_symplectic(c, error)
        try:
            correction = decode(c, syn)
        except UnrecognizedSyndrome:
            report.outcomes.append(PatternOutcome(error, syn, Outcome.UNRECOGNIZED))
            continue
        # Each state may come back with its own global phase.
        restored = True
        for state in test_states:
            output = correct(c, statevec.apply_word(state, error))
            same, _ = statevec.equal_up_to_global_phase(state, output, tol)
            if not same:
                restored = False
                break
        residual = gpauli.multiply(correction, error)
        report.outcomes.append(PatternOutcome(error, syn, _outcome(syn, restored, error, residual), correction))

    logger.info(f"[{c.name}] single-error sweep over {report.total} errors: {report.counts}")
    return report


def phase_patterns(n: int, start: int = 0, stop: Optional[int] = None):
    """Z-type words in canonical (base-3, qutrit 0 most significant) order."""
    for zs in islice(product(range(3), repeat=n), start, stop):
        yield gpauli.z_word(zs)


def sweep_phase_patterns(c: Code, start: int = 0, stop: Optional[int] = None,
                         tol: Optional[float] = None) -> SweepReport:
    """
    Classifies every pattern in {I, Z1, Z2}^n (or the slice [start, stop) of
    the canonical order); restoration must hold on all three logical basis
    states with one common phase.
    """
    tol = settings.QEC_CONFIG["FIDELITY_TOL"] if tol is None else tol
    report = SweepReport("phase-sweep", c.name)
    for error in phase_patterns(c.n, start, stop):
        syn = syndrome_symplectic(c, error)
        try:
            correction = decode(c, syn)
        except UnrecognizedSyndrome:
            report.outcomes.append(PatternOutcome(error, syn, Outcome.UNRECOGNIZED))
            continue
        # One common phase across all three codewords, i.e. a trivial logical action.
        residual = gpauli.multiply(correction, error)
        action = logical_action(c, residual, tol)
        restored = action is not None and action.is_identity
        report.outcomes.append(PatternOutcome(error, syn, _outcome(syn, restored, error, residual), correction))

    logger.info(f"[{c.name}] phase-pattern sweep [{start}:{stop}] over {report.total} patterns: {report.counts}")
    return report


# ==============================================================================
# SECTION 3: LOGICAL OPERATORS AND THE g2 PAIR SEARCH
# ==============================================================================

def find_low_weight_logicals(c: Code, wmax: int = 2) -> List[LogicalOpFinding]:
    """Zero-syndrome words of weight <= wmax whose codespace action is not the identity."""
    if not 1 <= wmax <= 3:
        raise WordError(f"Weight bound must be between 1 and 3, got {wmax}.")
    ops = [gpauli.op_from_name(name) for name in ERROR_NAMES]
    findings = []
    scanned = 0
    for weight in range(1, wmax + 1):
        for support in combinations(range(c.n), weight):
            for choice in product(ops, repeat=weight):
                scanned += 1
                factors = [gpauli.IDENTITY_OP] * c.n
                for q, op in zip(support, choice):
                    factors[q] = op
                word = PauliWord(tuple(factors))
                if not syndrome_symplectic(c, word).is_trivial:
                    continue
                action = logical_action(c, word)
                if action is None or action.is_identity:
                    continue
                # Second opinion from the simulator.
                if not syndrome_statevector(c, statevec.apply_word(c.logical[0], word)).is_trivial:
                    continue
                findings.append(LogicalOpFinding(word, action))
    logger.info(f"[{c.name}] scanned {scanned} words of weight <= {wmax}: {len(findings)} logical operators found.")
    return findings


@lru_cache(maxsize=None)
def valid_z_stabilizers(c: Code) -> Tuple[PauliWord, ...]:
    """Every word in {I, Z1, Z2}^n commuting with the X-type stabilizers and fixing the codewords."""
    x_stabilizers = [c.stabilizers[i] for i in c.phase_indices]
    valid = []
    for word in phase_patterns(c.n):
        if not all(gpauli.commutes(s, word) for s in x_stabilizers):
            continue
        if all(statevec.stabilizer_eigenvalue(state, word)[0] == 0 for state in c.logical):
            valid.append(word)
    logger.debug(f"[{c.name}] {len(valid)} valid Z-type stabilizer words.")
    return tuple(valid)


def pair_bit_errors(n: int, pair: Tuple[int, int]) -> List[PauliWord]:
    i, j = pair
    return [
        gpauli.multiply(gpauli.single(n, i, QutritOp(a, 0)), gpauli.single(n, j, QutritOp(b, 0)))
        for a in (1, 2) for b in (1, 2)
    ]


def check_pair(n: int, pair: Sequence[int]) -> Tuple[int, int]:
    try:
        i, j = sorted(int(q) for q in pair)
    except (TypeError, ValueError):
        raise InvalidPair(f"'{pair}' is not a pair of qutrit indices.", pair=pair) from None
    if i == j or i < 0 or j >= n:
        raise InvalidPair(f"Pair ({i},{j}) needs two distinct qutrits in 0..{n - 1}.", pair=(i, j))
    return i, j


def same_action(c: Code, a: PauliWord, b: PauliWord, tol: Optional[float] = None) -> bool:
    tol = settings.QEC_CONFIG["KL_TOL"] if tol is None else tol
    first = np.concatenate([statevec.apply_word(s, a).amps for s in c.logical])
    second = np.concatenate([statevec.apply_word(s, b).amps for s in c.logical])
    return abs(np.vdot(first, second)) / 3.0 >= 1.0 - tol


def lemma4_search(c: Code, pair: Sequence[int]) -> Witness:
    """
    For a pair inside g2, looks for a pair bit error and another bit error
    (single, on the third g2 qutrit) with equal syndromes under every valid
    Z-type stabilizer.
    """
    i, j = check_pair(c.n, pair)
    if i not in c.g2 or j not in c.g2:
        raise InvalidPair(f"Pair ({i},{j}) is not inside g2 = {set(c.g2)}.", pair=(i, j))
    # --- Step 1: Pair errors on (i, j) against single bit errors on the third g2 qutrit ---
    third = next(q for q in c.g2 if q not in (i, j))
    valid = valid_z_stabilizers(c)
    candidates = pair_bit_errors(c.n, (i, j)) + [
        gpauli.single(c.n, third, QutritOp(a, 0)) for a in (1, 2)
    ]
    # --- Step 2: Syndromes under every valid Z-type stabilizer ---
    signature = {e: tuple(gpauli.commutation_phase(v, e) for v in valid) for e in candidates}
    collisions = [(e, f) for e, f in combinations(candidates, 2) if signature[e] == signature[f]]
    if not collisions:
        raise NoWitness(f"Every candidate error on ({i},{j},{third}) is separated by the valid stabilizers.", pair=(i, j))

    # --- Step 3: Prefer a collision whose errors act differently on the code ---
    judged = [(e, f, same_action(c, e, f)) for e, f in collisions]
    first, second, identical = next((item for item in judged if not item[2]), judged[0])
    bit = c.bit_stabilizers
    syndrome = Syndrome(tuple(gpauli.commutation_phase(s, first) for s in bit))
    if identical:
        logger.warning(
            f"[{c.name}] pair ({i},{j}): colliding errors {first} and {second} act identically on the code."
        )
    return Witness((i, j), first, second, identical, len(valid), syndrome)


# ==============================================================================
# SECTION 4: PAIR BIT ERRORS
# ==============================================================================

def pair_error_problems(zset: Sequence[PauliWord], pair: Sequence[int]) -> List[str]:
    """Reasons the four pair errors on `pair` are not uniquely decodable under zset."""
    n = zset[0].n
    pair = check_pair(n, pair)

    def signature(e):
        return tuple(gpauli.commutation_phase(s, e) for s in zset)

    singles = {signature(e): e for e in reversed(single_qutrit_errors(n)) if e.is_x_type}
    problems = []
    seen = {}
    for e in pair_bit_errors(n, pair):
        syn = signature(e)
        if not any(syn):
            problems.append(f"{e} has a trivial syndrome")
        if syn in seen:
            problems.append(f"{e} and {seen[syn]} share syndrome {syn}")
        if syn in singles:
            problems.append(f"{e} shares syndrome {syn} with single error {singles[syn]}")
        seen.setdefault(syn, e)
    return problems


def pair_error_check(c: Code, zset: Sequence[PauliWord], pair: Sequence[int]) -> bool:
    for word in zset:
        if word.n != c.n:
            raise WordError(f"Stabilizer {word} does not act on {c.n} qutrits.")
    return not pair_error_problems(zset, pair)
