# qutrit/gpauli.py
"""
Exact symbolic algebra for the generalized Pauli (Weyl-Heisenberg) group on
qutrits.

Every single-qutrit operator is kept in the normal form X^x Z^z with x, z in
Z_3, and a word carries one global phase exponent k standing for w^k with
w = exp(2*pi*i/3). All phase bookkeeping follows from the single reordering
rule Z^b X^u = w^(b*u) X^u Z^b.
"""
import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Tuple

import numpy as np
from django.conf import settings

from qec.exceptions import WordError

logger = logging.getLogger('qutrit')

# A phase exponent k represents w^k; it is always reduced mod 3.
PhaseExp = int

_SQRT3_2 = math.sqrt(3.0) / 2.0
OMEGA_POWERS = np.array([1.0 + 0.0j, complex(-0.5, _SQRT3_2), complex(-0.5, -_SQRT3_2)])
OMEGA = OMEGA_POWERS[1]

OPERATOR_NAMES = {
    "I": (0, 0),
    "X1": (1, 0),
    "X2": (2, 0),
    "Z1": (0, 1),
    "Z2": (0, 2),
    "Y11": (1, 1),
    "Y12": (1, 2),
    "Y21": (2, 1),
    "Y22": (2, 2),
}

# Canonical order of the eight non-identity single-qutrit errors.
ERROR_NAMES = ("X1", "X2", "Z1", "Z2", "Y11", "Y12", "Y21", "Y22")


# =============================================================================
# SECTION 1: OPERATORS AND WORDS
# =============================================================================
@dataclass(frozen=True)
class QutritOp:
    """A single-qutrit operator X^x Z^z."""
    x: int = 0
    z: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'x', self.x % 3)
        object.__setattr__(self, 'z', self.z % 3)

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def name(self) -> str:
        if self.x and self.z:
            return f"Y{self.x}{self.z}"
        if self.x:
            return f"X{self.x}"
        if self.z:
            return f"Z{self.z}"
        return "I"

    def __str__(self) -> str:
        return self.name


IDENTITY_OP = QutritOp()


def op_from_name(name: str) -> QutritOp:
    """Parses an operator label such as 'X1' or 'Y12' into its normal form."""
    token = name.strip()
    try:
        x, z = OPERATOR_NAMES[token]
    except KeyError:
        raise WordError(f"Unknown qutrit operator label '{token}'.", token=token) from None
    return QutritOp(x, z)


@dataclass(frozen=True)
class PauliWord:
    """
    An n-qutrit generalized Pauli operator w^phase * (X^x0 Z^z0 (x) ... ).

    Qutrit 0 is the leftmost factor, matching the big-endian ket strings used
    everywhere else in the toolkit.
    """
    ops: Tuple[QutritOp, ...]
    phase: PhaseExp = 0

    def __post_init__(self):
        object.__setattr__(self, 'ops', tuple(self.ops))
        object.__setattr__(self, 'phase', self.phase % 3)

    @property
    def n(self) -> int:
        return len(self.ops)

    @property
    def weight(self) -> int:
        return sum(1 for op in self.ops if not op.is_identity)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(q for q, op in enumerate(self.ops) if not op.is_identity)

    @property
    def x_exponents(self) -> Tuple[int, ...]:
        return tuple(op.x for op in self.ops)

    @property
    def z_exponents(self) -> Tuple[int, ...]:
        return tuple(op.z for op in self.ops)

    @property
    def is_identity(self) -> bool:
        """True when every factor is I; the global phase is ignored."""
        return all(op.is_identity for op in self.ops)

    @property
    def is_x_type(self) -> bool:
        return not any(self.z_exponents)

    @property
    def is_z_type(self) -> bool:
        return not any(self.x_exponents)

    def x_part(self) -> "PauliWord":
        return PauliWord(tuple(QutritOp(op.x, 0) for op in self.ops))

    def z_part(self) -> "PauliWord":
        return PauliWord(tuple(QutritOp(0, op.z) for op in self.ops))

    def label(self) -> str:
        body = " ".join(op.name for op in self.ops)
        return f"w^{self.phase} {body}" if self.phase else body

    def __str__(self) -> str:
        return self.label()

    @classmethod
    def parse(cls, text: str) -> "PauliWord":
        """Parses 'Z2 Z1 Z2 Z1 I I I', optionally prefixed by a phase token 'w^k'."""
        tokens = text.split()
        phase = 0
        if tokens and tokens[0].startswith("w^"):
            try:
                phase = int(tokens[0][2:])
            except ValueError:
                raise WordError(f"Malformed phase token '{tokens[0]}'.", token=tokens[0]) from None
            tokens = tokens[1:]
        if not tokens:
            raise WordError("An operator word needs at least one qutrit.", token=text)
        return cls(tuple(op_from_name(t) for t in tokens), phase)


def identity(n: int) -> PauliWord:
    return PauliWord((IDENTITY_OP,) * n)


def single(n: int, qutrit: int, op) -> PauliWord:
    """The weight-1 word with `op` (a QutritOp or a label) on `qutrit`."""
    if not 0 <= qutrit < n:
        raise WordError(f"Qutrit index {qutrit} is out of range for {n} qutrits.", token=str(qutrit))
    if isinstance(op, str):
        op = op_from_name(op)
    ops = [IDENTITY_OP] * n
    ops[qutrit] = op
    return PauliWord(tuple(ops))


def from_exponents(xs: Sequence[int], zs: Sequence[int], phase: int = 0) -> PauliWord:
    if len(xs) != len(zs):
        raise WordError("X and Z exponent vectors differ in length.")
    return PauliWord(tuple(QutritOp(x, z) for x, z in zip(xs, zs)), phase)


def x_word(xs: Sequence[int]) -> PauliWord:
    return from_exponents(xs, [0] * len(xs))


def z_word(zs: Sequence[int]) -> PauliWord:
    return from_exponents([0] * len(zs), zs)


# =============================================================================
# SECTION 2: WORD ALGEBRA
# =============================================================================
def _check_sizes(a: PauliWord, b: PauliWord) -> None:
    if a.n != b.n:
        raise WordError(f"Operator words act on different qutrit counts ({a.n} vs {b.n}).")


def multiply(a: PauliWord, b: PauliWord) -> PauliWord:
    """Matrix product a*b, brought back to normal form."""
    _check_sizes(a, b)
    # Moving a's Z^b_k past b's X^u_k picks up w^(b_k*u_k).
    reorder = sum(pa.z * pb.x for pa, pb in zip(a.ops, b.ops))
    ops = tuple(QutritOp(pa.x + pb.x, pa.z + pb.z) for pa, pb in zip(a.ops, b.ops))
    return PauliWord(ops, a.phase + b.phase + reorder)


def power(p: PauliWord, k: int) -> PauliWord:
    # Every word cubes to the identity, phase included.
    result = identity(p.n)
    for _ in range(k % 3):
        result = multiply(result, p)
    return result


def inverse(p: PauliWord) -> PauliWord:
    # (X^x Z^z)^-1 = Z^-z X^-x = w^(x*z) X^-x Z^-z
    reorder = sum(op.x * op.z for op in p.ops)
    ops = tuple(QutritOp(-op.x, -op.z) for op in p.ops)
    return PauliWord(ops, -p.phase + reorder)


def commutation_phase(s: PauliWord, e: PauliWord) -> PhaseExp:
    """
    Returns c such that s*e = w^c * e*s.

    With s = (x)X^a_k Z^b_k and e = (x)X^u_k Z^v_k this is
    sum_k (b_k*u_k - v_k*a_k) mod 3; c == 0 exactly when the words commute.
    """
    _check_sizes(s, e)
    return sum(ps.z * pe.x - pe.z * ps.x for ps, pe in zip(s.ops, e.ops)) % 3


def commutes(s: PauliWord, e: PauliWord) -> bool:
    return commutation_phase(s, e) == 0


# =============================================================================
# SECTION 3: DENSE MATRICES
# =============================================================================
def single_op_matrix(op: QutritOp) -> np.ndarray:
    shift = np.roll(np.eye(3, dtype=complex), 1, axis=0)   # |j> -> |j+1>
    clock = np.diag(OMEGA_POWERS[[(op.z * j) % 3 for j in range(3)]])
    return np.linalg.matrix_power(shift, op.x) @ clock


def to_matrix(p: PauliWord) -> np.ndarray:
    """Dense 3^n x 3^n matrix of a word; meant as a cross-check for tiny n."""
    limit = settings.QEC_CONFIG["MAX_MATRIX_QUTRITS"]
    if p.n > limit:
        raise WordError(f"Refusing to build a dense matrix for {p.n} qutrits (limit {limit}).")
    matrix = reduce(np.kron, (single_op_matrix(op) for op in p.ops), np.eye(1, dtype=complex))
    return OMEGA_POWERS[p.phase] * matrix
