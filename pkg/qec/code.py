# qec/code.py
"""
The proposed 7-qutrit degenerate CSS code and the ternary Steane code:
construction, syndrome extraction (symplectic and statevector), table
decoding, correction, Knill-Laflamme checks and degeneracy classes.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings

from qec.exceptions import NotAnEigenstate, UnknownCode, UnrecognizedSyndrome, WordError
from qutrit import gpauli, statevec
from qutrit.gpauli import ERROR_NAMES, PauliWord
from qutrit.statevec import StateVec

logger = logging.getLogger('qec')


# ==============================================================================
# SECTION 1: CODE DATA
# ==============================================================================

PROPOSED_G1 = (0, 2, 4, 6)
PROPOSED_G2 = (1, 3, 5)

# Codeword kets of |0_L>, |1_L>, |2_L>, qutrit 0 leftmost.
PROPOSED_CODEWORDS = (
    ("0000000", "1020102", "2010201", "0102010", "1122112", "2112211", "0201020", "1221122", "2211221"),
    ("1111111", "2101210", "0121012", "1210121", "2200220", "0220022", "1012101", "2002200", "0022002"),
    ("2222222", "0212021", "1202120", "2021202", "0011001", "1001100", "2120212", "0110011", "1100110"),
)

DEFAULT_BIT_STABILIZERS = (
    "Z1 Z2 Z1 Z2 I I I",
    "I I I Z1 Z2 Z1 Z2",
    "I Z1 Z2 Z1 Z2 I I",
    "I I Z1 Z2 Z1 Z2 I",
)
DEFAULT_BIT_PAIR = (0, 6)

# The six Steane words with X -> X1 and Z -> Z1.
STEANE_PRINTED_STABILIZERS = (
    "I I I X1 X1 X1 X1",
    "I X1 X1 I I X1 X1",
    "X1 I X1 I X1 I X1",
    "I I I Z1 Z1 Z1 Z1",
    "I Z1 Z1 I I Z1 Z1",
    "Z1 I Z1 I Z1 I Z1",
)
# Same supports; the Z words carry signs so that every pair commutes over Z_3.
STEANE_STABILIZERS = STEANE_PRINTED_STABILIZERS[:3] + (
    "I I I Z1 Z2 Z2 Z1",
    "I Z1 Z2 I I Z2 Z1",
    "Z1 I Z2 I Z2 I Z1",
)


# ==============================================================================
# SECTION 2: TYPES
# ==============================================================================

@dataclass(frozen=True)
class Syndrome:
    exps: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'exps', tuple(int(k) % 3 for k in self.exps))

    @property
    def is_trivial(self) -> bool:
        return not any(self.exps)

    def restrict(self, indices: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.exps[i] for i in indices)

    def __str__(self) -> str:
        return "(" + ",".join(str(k) for k in self.exps) + ")"


@dataclass(frozen=True, eq=False)
class Code:
    name: str
    n: int
    logical: Tuple[StateVec, StateVec, StateVec]
    stabilizers: Tuple[PauliWord, ...]
    g1: Tuple[int, ...] = ()
    g2: Tuple[int, ...] = ()
    bit_pair: Optional[Tuple[int, int]] = None
    # Syndrome sub-vector -> error registered for it; decode applies the inverse.
    phase_table: Dict[Tuple[int, ...], PauliWord] = field(default_factory=dict, repr=False)
    bit_table: Dict[Tuple[int, ...], PauliWord] = field(default_factory=dict, repr=False)

    @property
    def phase_indices(self) -> Tuple[int, ...]:
        """Indices of the X-type stabilizers, which detect phase errors."""
        return tuple(i for i, s in enumerate(self.stabilizers) if s.is_x_type and not s.is_identity)

    @property
    def bit_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.stabilizers) if s.is_z_type and not s.is_identity)

    @property
    def bit_stabilizers(self) -> Tuple[PauliWord, ...]:
        return tuple(self.stabilizers[i] for i in self.bit_indices)


@dataclass(frozen=True)
class LogicalAction:
    """Image of |j_L> is w^phases[j] |targets[j]_L>."""
    targets: Tuple[int, ...]
    phases: Tuple[Optional[int], ...]

    @property
    def is_identity(self) -> bool:
        return self.targets == (0, 1, 2) and None not in self.phases and len(set(self.phases)) == 1

    def label(self) -> str:
        parts = []
        for j, (t, k) in enumerate(zip(self.targets, self.phases)):
            phase = "w^?" if k is None else f"w^{k}"
            parts.append(f"|{j}L>->{phase}|{t}L>")
        return ", ".join(parts)


@dataclass(frozen=True, eq=False)
class KLEntry:
    m: int
    n: int
    matrix: np.ndarray
    offdiag_zero: bool
    diag_constant: bool

    @property
    def passed(self) -> bool:
        return self.offdiag_zero and self.diag_constant


@dataclass(eq=False)
class KLReport:
    errors: Tuple[PauliWord, ...]
    entries: List[KLEntry]
    tol: float

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)

    @property
    def failures(self) -> List[KLEntry]:
        return [entry for entry in self.entries if not entry.passed]


# ==============================================================================
# SECTION 3: SYNDROMES AND DECODE TABLES
# ==============================================================================

@lru_cache(maxsize=None)
def single_qutrit_errors(n: int) -> Tuple[PauliWord, ...]:
    """All 8n non-identity weight-1 words, qutrit-major then X1 X2 Z1 Z2 Y11 Y12 Y21 Y22."""
    return tuple(gpauli.single(n, q, name) for q in range(n) for name in ERROR_NAMES)


def partition_stabilizers(n: int) -> Tuple[PauliWord, PauliWord]:
    """
    The two X-type phase stabilizers of the n-qutrit family: alternating X1/X2
    on even positions, and likewise on odd positions.
    """
    if n < 3:
        raise WordError(f"The partition construction needs at least 3 qutrits, got {n}.")

    def alternating(positions):
        xs = [0] * n
        for m, q in enumerate(positions):
            xs[q] = 1 if m % 2 == 0 else 2
        return gpauli.x_word(xs)

    return alternating(range(0, n, 2)), alternating(range(1, n, 2))


def syndrome_symplectic(c: Code, e: PauliWord) -> Syndrome:
    if e.n != c.n:
        raise WordError(f"A {e.n}-qutrit error cannot act on the {c.n}-qutrit code.")
    return Syndrome(tuple(gpauli.commutation_phase(s, e) for s in c.stabilizers))


def syndrome_statevector(c: Code, s: StateVec, tol: Optional[float] = None) -> Syndrome:
    exps = []
    for index, stabilizer in enumerate(c.stabilizers):
        k, residual = statevec.stabilizer_eigenvalue(s, stabilizer, tol)
        if k is None:
            raise NotAnEigenstate(index, residual)
        exps.append(k)
    return Syndrome(tuple(exps))


def _register_errors(stabilizers, indices, errors, table):
    for error in errors:
        key = tuple(gpauli.commutation_phase(stabilizers[i], error) for i in indices)
        table.setdefault(key, error)


def _build_tables(stabilizers, n, g1, g2, bit_pair):
    phase_indices = [i for i, s in enumerate(stabilizers) if s.is_x_type and not s.is_identity]
    bit_indices = [i for i, s in enumerate(stabilizers) if s.is_z_type and not s.is_identity]
    phase_errors = [e for e in single_qutrit_errors(n) if e.is_z_type]
    bit_errors = [e for e in single_qutrit_errors(n) if e.is_x_type]

    # First registration wins, so each syndrome maps to its lowest-index qutrit.
    phase_table = {(0,) * len(phase_indices): gpauli.identity(n)}
    _register_errors(stabilizers, phase_indices, phase_errors, phase_table)
    if g1 and g2:
        # One phase error in each group decomposes into two independent single syndromes.
        cross = [
            gpauli.multiply(e, f)
            for e in phase_errors if e.support[0] in g1
            for f in phase_errors if f.support[0] in g2
        ]
        _register_errors(stabilizers, phase_indices, cross, phase_table)

    bit_table = {(0,) * len(bit_indices): gpauli.identity(n)}
    _register_errors(stabilizers, bit_indices, bit_errors, bit_table)
    if bit_pair is not None:
        i, j = bit_pair
        pairs = [
            gpauli.multiply(gpauli.single(n, i, gpauli.QutritOp(a, 0)), gpauli.single(n, j, gpauli.QutritOp(b, 0)))
            for a in (1, 2) for b in (1, 2)
        ]
        _register_errors(stabilizers, bit_indices, pairs, bit_table)
    return phase_table, bit_table


def _assemble(name, logical, stabilizers, g1=(), g2=(), bit_pair=None) -> Code:
    n = logical[0].n
    phase_table, bit_table = _build_tables(stabilizers, n, g1, g2, bit_pair)
    code = Code(
        name=name,
        n=n,
        logical=tuple(logical),
        stabilizers=tuple(stabilizers),
        g1=tuple(g1),
        g2=tuple(g2),
        bit_pair=bit_pair,
        phase_table=phase_table,
        bit_table=bit_table,
    )
    logger.info(
        f"Built code '{name}': {n} qutrits, {len(stabilizers)} stabilizers, "
        f"{len(phase_table)} phase / {len(bit_table)} bit syndromes registered."
    )
    return code


# ==============================================================================
# SECTION 4: CONSTRUCTION
# ==============================================================================

@lru_cache(maxsize=None)
def build_proposed_code(bit_stabilizers: Optional[Tuple[PauliWord, ...]] = None,
                        bit_pair: Optional[Tuple[int, int]] = None) -> Code:
    """
    The proposed code. Without arguments the bit stabilizers are the default
    S3..S6 and the registered pair is (q0, q6); a generated set and its pair
    can be passed instead.
    """
    name = "proposed"
    if bit_stabilizers is None:
        bit_stabilizers = tuple(PauliWord.parse(w) for w in DEFAULT_BIT_STABILIZERS)
        bit_pair = DEFAULT_BIT_PAIR if bit_pair is None else bit_pair
    else:
        name = "proposed-custom"
    logical = tuple(statevec.from_kets(kets) for kets in PROPOSED_CODEWORDS)
    s1, s2 = partition_stabilizers(7)
    return _assemble(name, logical, (s1, s2) + tuple(bit_stabilizers), PROPOSED_G1, PROPOSED_G2, bit_pair)


def symmetrize(start: StateVec, generators: Sequence[PauliWord]) -> StateVec:
    """Applies prod_i (I + S_i + S_i^2) to start and normalizes."""
    state = start
    for generator in generators:
        once = statevec.apply_word(state, generator)
        twice = statevec.apply_word(once, generator)
        state = statevec.add(statevec.add(state, once), twice)
    return statevec.normalize(state)


@lru_cache(maxsize=None)
def build_steane_ternary() -> Code:
    stabilizers = tuple(PauliWord.parse(w) for w in STEANE_STABILIZERS)
    zero = symmetrize(statevec.basis_state("0" * 7), [s for s in stabilizers if s.is_x_type])
    # |1_L> and |2_L> follow from the transversal shift X1 on every qutrit.
    shift = gpauli.x_word([1] * 7)
    one = statevec.apply_word(zero, shift)
    two = statevec.apply_word(one, shift)
    return _assemble("steane", (zero, one, two), stabilizers)


CODE_BUILDERS = {
    "proposed": build_proposed_code,
    "steane": build_steane_ternary,
}


def get_code(code_id: str) -> Code:
    try:
        builder = CODE_BUILDERS[code_id]
    except KeyError:
        raise UnknownCode(f"Unknown code '{code_id}'; expected one of {sorted(CODE_BUILDERS)}.") from None
    return builder()


def invariant_failures(c: Code, tol: Optional[float] = None) -> List[str]:
    """Every Code invariant that does not hold, as readable messages."""
    tol = settings.QEC_CONFIG["STATE_TOL"] if tol is None else tol
    failures = []
    # Codewords are orthonormal.
    for i, a in enumerate(c.logical):
        if abs(a.norm - 1.0) > tol:
            failures.append(f"|{i}_L> has norm {a.norm:.12f}")
        for j in range(i + 1, 3):
            overlap = abs(statevec.inner(a, c.logical[j]))
            if overlap > tol:
                failures.append(f"|{i}_L> and |{j}_L> overlap by {overlap:.3e}")
    # Every stabilizer fixes every codeword with eigenvalue 1.
    for index, s in enumerate(c.stabilizers):
        for j, state in enumerate(c.logical):
            k, residual = statevec.stabilizer_eigenvalue(state, s, tol)
            if k != 0:
                failures.append(f"S{index + 1} does not fix |{j}_L> (exponent {k}, residual {residual:.3e})")
    # Stabilizers commute pairwise.
    for (a, s), (b, t) in combinations(enumerate(c.stabilizers), 2):
        if not gpauli.commutes(s, t):
            failures.append(f"S{a + 1} and S{b + 1} do not commute")
    return failures


# ==============================================================================
# SECTION 5: DECODING AND CORRECTION
# ==============================================================================

def decode(c: Code, syn: Syndrome) -> PauliWord:
    # Phase and bit halves of the syndrome are looked up separately.
    try:
        phase_error = c.phase_table[syn.restrict(c.phase_indices)]
        bit_error = c.bit_table[syn.restrict(c.bit_indices)]
    except KeyError:
        raise UnrecognizedSyndrome(syn) from None
    # The correction undoes both; X and Z parts commute up to a global phase.
    return gpauli.multiply(gpauli.inverse(phase_error), gpauli.inverse(bit_error))


def correct(c: Code, s: StateVec) -> StateVec:
    syn = syndrome_statevector(c, s)
    correction = decode(c, syn)
    logger.debug(f"[{c.name}] syndrome {syn} -> correction {correction}")
    return statevec.apply_word(s, correction)


def encode(c: Code, coefficients: Sequence[complex]) -> StateVec:
    """a|0_L> + b|1_L> + g|2_L>, normalized."""
    amps = sum(complex(a) * state.amps for a, state in zip(coefficients, c.logical))
    return statevec.normalize(StateVec(c.n, np.asarray(amps, dtype=complex)))


def random_logical_states(c: Code, count: Optional[int] = None, seed: Optional[int] = None) -> List[StateVec]:
    config = settings.QEC_CONFIG
    count = config["RANDOM_LOGICAL_STATES"] if count is None else count
    rng = np.random.default_rng(config["RANDOM_SEED"] if seed is None else seed)
    states = []
    for _ in range(count):
        coefficients = rng.normal(size=3) + 1j * rng.normal(size=3)
        states.append(encode(c, coefficients))
    return states


# ==============================================================================
# SECTION 6: CODESPACE ANALYSIS
# ==============================================================================

def logical_action(c: Code, word: PauliWord, tol: Optional[float] = None) -> Optional[LogicalAction]:
    """
    How `word` acts on the logical basis, or None when some |j_L> is not sent
    onto a single logical basis state.
    """
    tol = settings.QEC_CONFIG["STATE_TOL"] if tol is None else tol
    targets, phases = [], []
    for state in c.logical:
        image = statevec.apply_word(state, word)
        overlaps = [statevec.inner(target, image) for target in c.logical]
        best = int(np.argmax(np.abs(overlaps)))
        if abs(overlaps[best]) < 1.0 - tol:
            return None
        targets.append(best)
        phases.append(statevec.phase_exponent(overlaps[best], tol))
    return LogicalAction(tuple(targets), tuple(phases))


def _stacked_action(c: Code, word: PauliWord) -> np.ndarray:
    return np.concatenate([statevec.apply_word(state, word).amps for state in c.logical])


def kl_check(c: Code, errors: Sequence[PauliWord], tol: Optional[float] = None) -> KLReport:
    """A[i][j] = <i_L| e_m^dagger e_n |j_L> for every ordered pair of errors."""
    tol = settings.QEC_CONFIG["KL_TOL"] if tol is None else tol
    errors = tuple(errors)
    for e in errors:
        if e.n != c.n:
            raise WordError(f"A {e.n}-qutrit error cannot act on the {c.n}-qutrit code.")
    # Row 3m + i holds e_m|i_L>.
    vectors = np.array([statevec.apply_word(state, e).amps for e in errors for state in c.logical])
    gram = vectors.conj() @ vectors.T
    entries = []
    offdiag = ~np.eye(3, dtype=bool)
    for m in range(len(errors)):
        for n in range(len(errors)):
            block = gram[3 * m:3 * m + 3, 3 * n:3 * n + 3]
            diagonal = np.diag(block)
            entries.append(KLEntry(
                m=m,
                n=n,
                matrix=block,
                offdiag_zero=bool(np.all(np.abs(block[offdiag]) <= tol)),
                diag_constant=bool(np.all(np.abs(diagonal - diagonal[0]) <= tol)),
            ))
    report = KLReport(errors=errors, entries=entries, tol=tol)
    logger.info(f"[{c.name}] KL check over {len(errors)} errors: {len(report.failures)} failing pairs.")
    return report


def degeneracy_classes(c: Code, errors: Sequence[PauliWord], tol: Optional[float] = None) -> List[List[PauliWord]]:
    """Groups errors acting identically on all three logical states up to one common phase."""
    tol = settings.QEC_CONFIG["KL_TOL"] if tol is None else tol
    classes: List[List[PauliWord]] = []
    representatives: List[np.ndarray] = []
    for e in errors:
        action = _stacked_action(c, e)
        for members, reference in zip(classes, representatives):
            # Both stacks have norm sqrt(3).
            if abs(np.vdot(reference, action)) / 3.0 >= 1.0 - tol:
                members.append(e)
                break
        else:
            classes.append([e])
            representatives.append(action)
    return classes
