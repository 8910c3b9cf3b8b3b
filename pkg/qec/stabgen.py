# qec/stabgen.py
"""
Greedy construction of the bit stabilizers S3..S6 for a chosen qutrit pair,
the validity checker for such sets and an exhaustive fallback search.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from qec.code import Code, build_proposed_code, single_qutrit_errors
from qec.exceptions import GenerationFailed, PairUnsupported, SearchExhausted, WordError
from qec.oracle import check_pair, pair_error_problems, valid_z_stabilizers
from qutrit import gpauli, statevec
from qutrit.gpauli import PauliWord

# Get a logger instance for this module, as configured in settings.py.
logger = logging.getLogger('qec')


# ==============================================================================
# SECTION 1: SETS, TRACES AND REPORTS
# ==============================================================================

@dataclass(frozen=True)
class ZStabSet:
    words: Tuple[PauliWord, ...]

    def __post_init__(self):
        object.__setattr__(self, 'words', tuple(self.words))
        if len(self.words) != 4:
            raise WordError(f"A bit stabilizer set has four words, got {len(self.words)}.")
        if any(not w.is_z_type for w in self.words):
            raise WordError("Bit stabilizers may only contain I, Z1 and Z2.")

    @classmethod
    def parse(cls, texts: Sequence[str]) -> "ZStabSet":
        return cls(tuple(PauliWord.parse(t) for t in texts))

    def labels(self) -> List[str]:
        return [w.label() for w in self.words]


@dataclass(frozen=True)
class TraceStep:
    label: str
    d: Tuple[int, ...]
    placed: Tuple[Tuple[int, str], ...] = ()
    note: str = ""


@dataclass
class GenTrace:
    pair: Tuple[int, int]
    steps: List[TraceStep] = field(default_factory=list)

    def record(self, label, d, placed=(), note=""):
        step = TraceStep(label, tuple(d), tuple(placed), note)
        self.steps.append(step)
        logger.debug(f"[stabgen {self.pair}] {label}: d={step.d} {note}".rstrip())
        return step

    def fills(self) -> List[TraceStep]:
        return [s for s in self.steps if s.placed and s.label != "seed"]

    @property
    def final_d(self) -> Tuple[int, ...]:
        return self.steps[-1].d if self.steps else ()


@dataclass(frozen=True)
class Predicate:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    pair: Tuple[int, int]
    predicates: List[Predicate]

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.predicates)

    def get(self, name: str) -> Predicate:
        return next(p for p in self.predicates if p.name == name)

    def failed(self) -> List[Predicate]:
        return [p for p in self.predicates if not p.passed]


# ==============================================================================
# SECTION 2: VALIDATION
# ==============================================================================

def _shape_problems(code: Code, word: PauliWord) -> List[str]:
    # Two operators on each group, two Z1 and two Z2 overall.
    problems = []
    z = word.z_exponents
    for name, group in (("g1", code.g1), ("g2", code.g2)):
        count = sum(1 for q in group if z[q])
        if count != 2:
            problems.append(f"{word} has {count} non-identity entries on {name}")
    if z.count(1) != 2 or z.count(2) != 2:
        problems.append(f"{word} has {z.count(1)} Z1 and {z.count(2)} Z2 entries")
    return problems


def validate(zset: ZStabSet, pair: Sequence[int], code: Optional[Code] = None) -> ValidationReport:
    """Runs every predicate and reports all of them. Only a word of the wrong length raises."""
    code = build_proposed_code() if code is None else code
    i, j = check_pair(code.n, pair)
    words = zset.words
    for n, w in enumerate(words):
        if w.n != code.n:
            raise WordError(f"S{n + 3} = {w} acts on {w.n} qutrits; the code has {code.n}.", token=w.label())
    phase_stabilizers = [code.stabilizers[k] for k in code.phase_indices]
    predicates = []

    # --- Step 1: Operator budget per word ---
    shape = [problem for w in words for problem in _shape_problems(code, w)]
    predicates.append(Predicate("shape", not shape, "; ".join(shape)))

    # --- Step 2: Commutes with the X-type phase stabilizers ---
    clashes = [
        f"S{n + 3} vs {s}" for n, w in enumerate(words) for s in phase_stabilizers
        if not gpauli.commutes(s, w)
    ]
    predicates.append(Predicate("commutes", not clashes, "; ".join(clashes)))

    # --- Step 3: Fixes all three codewords with eigenvalue 1 ---
    unfixed = []
    for n, w in enumerate(words):
        for label, state in enumerate(code.logical):
            k, residual = statevec.stabilizer_eigenvalue(state, w)
            if k != 0:
                unfixed.append(f"S{n + 3} on |{label}_L> (exponent {k})")
    predicates.append(Predicate("stabilizes", not unfixed, "; ".join(unfixed)))

    # --- Step 4: S3 alone acts on q_i, S4 alone on q_j ---
    shared = []
    for owner, q in ((0, i), (1, j)):
        if words[owner].ops[q].is_identity:
            shared.append(f"S{owner + 3} is identity on q{q}")
        shared.extend(
            f"S{n + 3} also acts on q{q}" for n, w in enumerate(words)
            if n != owner and not w.ops[q].is_identity
        )
    predicates.append(Predicate("exclusive", not shared, "; ".join(shared)))

    # --- Step 5: Single bit errors keep distinct, nonzero syndromes ---
    seen: Dict[Tuple[int, ...], PauliWord] = {}
    ambiguous = []
    for e in (e for e in single_qutrit_errors(code.n) if e.is_x_type):
        syn = tuple(gpauli.commutation_phase(w, e) for w in words)
        if not any(syn):
            ambiguous.append(f"{e} is undetected")
        elif syn in seen:
            ambiguous.append(f"{e} and {seen[syn]} share syndrome {syn}")
        seen.setdefault(syn, e)
    predicates.append(Predicate("single-errors", not ambiguous, "; ".join(ambiguous)))

    # --- Step 6: The four pair errors on (q_i, q_j) decode uniquely ---
    pair_problems = pair_error_problems(words, (i, j))
    predicates.append(Predicate("pair-errors", not pair_problems, "; ".join(pair_problems)))

    return ValidationReport((i, j), predicates)


# ==============================================================================
# SECTION 3: GREEDY GENERATION
# ==============================================================================

def require_supported(code: Code, pair: Sequence[int]) -> Tuple[int, int]:
    i, j = check_pair(code.n, pair)
    if i in code.g2 and j in code.g2:
        raise PairUnsupported(
            f"Pair ({i},{j}) lies inside g2; simultaneous bit errors on two g2 qutrits cannot be corrected.",
            pair=(i, j),
        )
    return i, j


class _Builder:
    """Mutable state of one greedy run: operator grid, d-tuple and trace."""

    def __init__(self, code: Code, pair: Tuple[int, int], forced):
        self.code = code
        self.pair = pair
        self.forced = forced or {}
        # grid[s][q]: None unassigned, 0 identity, 1 or 2 the Z power.
        self.grid: List[List[Optional[int]]] = [[None] * code.n for _ in range(4)]
        self.d = [0] * code.n
        self.trace = GenTrace(pair)
        s1, s2 = (code.stabilizers[k] for k in code.phase_indices)
        # X power of the phase stabilizer acting on each qutrit.
        self.phase_op = [s1.ops[q].x or s2.ops[q].x for q in range(code.n)]

    def budget_ok(self, s: int, placements) -> bool:
        row = list(self.grid[s])
        for q, v in placements:
            row[q] = v
        return row.count(1) <= 2 and row.count(2) <= 2

    def partner_power(self, k: int, vk: int, l: int) -> int:
        # vk*a_k + vl*a_l = 0 (mod 3), with a^-1 = a for a in {1, 2}.
        return (-vk * self.phase_op[k] * self.phase_op[l]) % 3

    def same_history(self, s: int, k: int, l: int) -> bool:
        return all(bool(self.grid[t][k]) == bool(self.grid[t][l]) for t in range(s))

    def candidates(self, s: int, placed: List[int], free: List[int]):
        def differ(a, b):
            return 0 if self.phase_op[a] != self.phase_op[b] else 1

        if placed:
            k = placed[0]
            ranked = sorted(free, key=lambda l: (self.d[l], differ(k, l), l))
            pairs = [(k, l) for l in ranked]
        else:
            pairs = []
            for a, b in combinations(free, 2):
                k, l = sorted((a, b), key=lambda q: (self.d[q], q))
                pairs.append(((self.d[k], self.d[l], differ(k, l), k, l), k, l))
            pairs = [(k, l) for _, k, l in sorted(pairs)]
        if s == 3:
            # Last stabilizer: avoid leaving two qutrits with equal d and identical patterns.
            distinct = [
                (k, l) for k, l in pairs
                if self.d[k] != self.d[l] or not self.same_history(s, k, l)
            ]
            pairs = distinct or pairs
        return pairs

    def fill(self, s: int, name: str, group: Tuple[int, ...]) -> None:
        row = self.grid[s]
        placed = [q for q in group if row[q]]
        free = [q for q in group if row[q] is None]
        if len(placed) >= 2:
            return
        if len(free) < 2 - len(placed):
            raise GenerationFailed(f"S{s + 3} has no room left on {name}.", pair=self.pair)
        # Forced positions replace the ranked candidates.
        forced = self.forced.get((s + 3, name))
        if forced:
            pairs = [(placed[0], forced[-1])] if placed else [tuple(forced)]
        else:
            pairs = self.candidates(s, placed, free)

        # First candidate whose powers fit the two-Z1-two-Z2 budget wins.
        for k, l in pairs:
            k_free = row[k] is None
            for vk in ((1, 2) if k_free else (row[k],)):
                vl = self.partner_power(k, vk, l)
                placements = [(k, vk), (l, vl)] if k_free else [(l, vl)]
                if not self.budget_ok(s, placements):
                    continue
                for q, v in placements:
                    row[q] = v
                    self.d[q] += 1
                self.trace.record(
                    f"S{s + 3} {name}", self.d,
                    placed=[(q, f"Z{v}") for q, v in placements],
                )
                return
        raise GenerationFailed(f"No placement on {name} of S{s + 3} respects the operator budget.", pair=self.pair)

    def finish_word(self, s: int) -> PauliWord:
        row = [v or 0 for v in self.grid[s]]
        self.grid[s] = row
        word = gpauli.z_word(row)
        fixed = all(statevec.stabilizer_eigenvalue(state, word)[0] == 0 for state in self.code.logical)
        self.trace.record(f"S{s + 3} complete", self.d, note=f"{word} {'stabilizes' if fixed else 'does NOT stabilize'}")
        if not fixed:
            raise GenerationFailed(f"S{s + 3} = {word} does not stabilize the codewords.", pair=self.pair)
        return word


def generate(pair: Sequence[int], forced: Optional[Dict[Tuple[int, str], Tuple[int, ...]]] = None,
             code: Optional[Code] = None) -> Tuple[ZStabSet, GenTrace]:
    """
    Greedy construction for the pair (i, j): S3 alone acts on q_i and S4
    alone on q_j, and every word gets two operators on each qutrit group,
    placed on the qutrits with the fewest operators so far.

    `forced` pins the positions chosen for a (stabilizer number, group) fill,
    e.g. {(6, "g1"): (6, 0)}.
    """
    code = build_proposed_code() if code is None else code
    i, j = require_supported(code, pair)
    builder = _Builder(code, (i, j), forced)
    builder.trace.record("start", builder.d)

    # --- Step 1: Seed S3 on q_i and S4 on q_j ---
    builder.grid[0][i] = 1
    builder.grid[1][j] = 1
    builder.d[i] += 1
    builder.d[j] += 1
    builder.trace.record("seed", builder.d, placed=[(i, "Z1"), (j, "Z1")], note="S3 on q_i, S4 on q_j")
    # --- Step 2: Reserve identity on q_i and q_j in the other words ---
    for s in (1, 2, 3):
        builder.grid[s][i] = 0
    for s in (0, 2, 3):
        builder.grid[s][j] = 0
    builder.trace.record("reserve", builder.d, note="identity on q_i and q_j in the other words")

    # --- Step 3: Fill each word on g1 then g2, least-used qutrits first ---
    words = []
    for s in range(4):
        for name, group in (("g1", code.g1), ("g2", code.g2)):
            builder.fill(s, name, group)
        words.append(builder.finish_word(s))

    # --- Step 4: The finished set must pass the validator ---
    zset = ZStabSet(tuple(words))
    report = validate(zset, (i, j), code)
    if not report.passed:
        details = "; ".join(f"{p.name}: {p.detail}" for p in report.failed())
        raise GenerationFailed(f"Generated set for ({i},{j}) fails validation ({details}).", pair=(i, j), report=report)
    logger.info(f"Generated bit stabilizers for pair ({i},{j}): {zset.labels()}")
    return zset, builder.trace


# ==============================================================================
# SECTION 4: EXHAUSTIVE FALLBACK
# ==============================================================================

@lru_cache(maxsize=None)
def candidate_words(code: Optional[Code] = None) -> Tuple[PauliWord, ...]:
    """Valid Z-type stabilizers with two operators per group and two Z1, two Z2; canonical order."""
    code = build_proposed_code() if code is None else code
    return tuple(w for w in valid_z_stabilizers(code) if not _shape_problems(code, w))


def _signature(words, e):
    return tuple(gpauli.commutation_phase(w, e) for w in words)


def _singles_separated(words, singles) -> bool:
    syndromes = [_signature(words, e) for e in singles]
    return all(any(s) for s in syndromes) and len(set(syndromes)) == len(syndromes)


def exhaustive_fallback(pair: Sequence[int], code: Optional[Code] = None) -> ZStabSet:
    """
    First passing set in canonical order: S3, then S4, then the (S5, S6)
    combination, each ranging over candidate_words() in order.
    """
    code = build_proposed_code() if code is None else code
    i, j = require_supported(code, pair)
    pool = candidate_words(code)
    singles = [e for e in single_qutrit_errors(code.n) if e.is_x_type]

    def acts(w, q):
        return not w.ops[q].is_identity

    firsts = [w for w in pool if acts(w, i) and not acts(w, j)]
    seconds = [w for w in pool if acts(w, j) and not acts(w, i)]
    rest = [w for w in pool if not acts(w, i) and not acts(w, j)]
    # Cheap syndrome filters first; the full validator only on survivors.
    tried = 0
    for s3 in firsts:
        for s4 in seconds:
            for s5, s6 in combinations(rest, 2):
                tried += 1
                words = (s3, s4, s5, s6)
                if not _singles_separated(words, singles) or pair_error_problems(words, (i, j)):
                    continue
                zset = ZStabSet(words)
                if validate(zset, (i, j), code).passed:
                    logger.info(f"Fallback found a set for ({i},{j}) after {tried} candidates: {zset.labels()}")
                    return zset
    raise SearchExhausted(
        f"No valid bit stabilizer set separates pair ({i},{j}) after {tried} candidates.", pair=(i, j)
    )


def generate_or_fallback(pair: Sequence[int], code: Optional[Code] = None):
    """Returns (zset, trace or None, method) with method 'greedy' or 'fallback'."""
    try:
        zset, trace = generate(pair, code=code)
        return zset, trace, "greedy"
    except GenerationFailed as exc:
        logger.warning(f"Greedy generation failed for {tuple(pair)}: {exc}; trying exhaustive search.")
    return exhaustive_fallback(pair, code), None, "fallback"


def all_pairs(code: Optional[Code] = None) -> List[Tuple[int, int]]:
    code = build_proposed_code() if code is None else code
    return list(combinations(range(code.n), 2))


def eligible_pairs(code: Optional[Code] = None) -> List[Tuple[int, int]]:
    code = build_proposed_code() if code is None else code
    return [(i, j) for i, j in all_pairs(code) if not (i in code.g2 and j in code.g2)]
