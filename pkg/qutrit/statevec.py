# qutrit/statevec.py
"""
Dense statevector simulation on n <= MAX_QUTRITS qutrits.

Amplitudes live in a flat complex numpy array of length 3^n indexed
big-endian: ket |t0 t1 ... t(n-1)> sits at index sum_k t_k * 3^(n-1-k).
Every gate returns a new StateVec; inputs are never mutated.
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings

from qec.exceptions import WordError
from qutrit.gpauli import OMEGA_POWERS, PauliWord

logger = logging.getLogger('qutrit')

# Ch1_{jk} = w^(jk)/sqrt(3); Ch2 is its conjugate (and inverse).
CH1 = np.array([[OMEGA_POWERS[(j * k) % 3] for k in range(3)] for j in range(3)]) / math.sqrt(3.0)
CH2 = CH1.conj()


# =============================================================================
# SECTION 1: STATE VECTORS
# =============================================================================
@dataclass(frozen=True, eq=False)
class StateVec:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        limit = settings.QEC_CONFIG["MAX_QUTRITS"]
        if not 1 <= self.n <= limit:
            raise WordError(f"Register of {self.n} qutrits is outside 1..{limit}.")
        if self.amps.shape != (3 ** self.n,):
            raise WordError(f"Amplitude vector of shape {self.amps.shape} does not fit {self.n} qutrits.")
        self.amps.setflags(write=False)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tensor(self) -> np.ndarray:
        return self.amps.reshape((3,) * self.n)

    def amplitude(self, ket: str) -> complex:
        return complex(self.amps[ket_index(ket)])

    def to_triples(self, tol: Optional[float] = None):
        """Nonzero amplitudes as (ket string, amplitude) pairs, in index order."""
        tol = settings.QEC_CONFIG["STATE_TOL"] if tol is None else tol
        return [
            (index_ket(i, self.n), complex(a))
            for i, a in enumerate(self.amps) if abs(a) > tol
        ]


def _from_tensor(tensor: np.ndarray) -> StateVec:
    return StateVec(tensor.ndim, np.ascontiguousarray(tensor, dtype=complex).reshape(-1))


def ket_index(ket: str) -> int:
    if not ket or any(ch not in "012" for ch in ket):
        raise WordError(f"'{ket}' is not a ternary ket string.", token=ket)
    return int(ket, 3)


def index_ket(index: int, n: int) -> str:
    return np.base_repr(index, base=3).zfill(n)


def basis_state(ket: str) -> StateVec:
    amps = np.zeros(3 ** len(ket), dtype=complex)
    amps[ket_index(ket)] = 1.0
    return StateVec(len(ket), amps)


def from_kets(kets: Iterable[str], amplitudes: Optional[Sequence[complex]] = None) -> StateVec:
    """Superposition of the given kets; equal amplitudes unless given. Normalized."""
    kets = list(kets)
    if not kets:
        raise WordError("A superposition needs at least one ket.")
    n = len(kets[0])
    if any(len(k) != n for k in kets):
        raise WordError("Kets in a superposition must all have the same length.")
    amplitudes = [1.0] * len(kets) if amplitudes is None else list(amplitudes)
    amps = np.zeros(3 ** n, dtype=complex)
    for ket, a in zip(kets, amplitudes):
        amps[ket_index(ket)] += a
    return normalize(StateVec(n, amps))


# =============================================================================
# SECTION 2: LINEAR ALGEBRA
# =============================================================================
def normalize(s: StateVec) -> StateVec:
    norm = s.norm
    if norm < settings.QEC_CONFIG["STATE_TOL"]:
        raise WordError("Cannot normalize the zero vector.")
    return StateVec(s.n, s.amps / norm)


def add(a: StateVec, b: StateVec) -> StateVec:
    return StateVec(a.n, a.amps + b.amps)


def scale(s: StateVec, c: complex) -> StateVec:
    return StateVec(s.n, s.amps * c)


def inner(a: StateVec, b: StateVec) -> complex:
    """<a|b>"""
    return complex(np.vdot(a.amps, b.amps))


def fidelity(a: StateVec, b: StateVec) -> float:
    return abs(inner(a, b)) ** 2


# =============================================================================
# SECTION 3: GATES
# =============================================================================
def _check_qutrit(s: StateVec, q: int) -> None:
    if not 0 <= q < s.n:
        raise WordError(f"Qutrit {q} does not exist in a {s.n}-qutrit register.", token=str(q))


def _axis_phases(n: int, q: int, z: int) -> np.ndarray:
    shape = [1] * n
    shape[q] = 3
    return OMEGA_POWERS[[(z * j) % 3 for j in range(3)]].reshape(shape)


def apply_word(s: StateVec, p: PauliWord) -> StateVec:
    if p.n != s.n:
        raise WordError(f"A {p.n}-qutrit word cannot act on a {s.n}-qutrit state.")
    tensor = s.tensor()
    for q, op in enumerate(p.ops):
        # Z before X: each factor is X^x Z^z.
        if op.z:
            tensor = tensor * _axis_phases(s.n, q, op.z)
        if op.x:
            tensor = np.roll(tensor, op.x, axis=q)
    return _from_tensor(OMEGA_POWERS[p.phase] * tensor)


def apply_gate(s: StateVec, matrix: np.ndarray, q: int) -> StateVec:
    """Applies a 3x3 single-qutrit matrix to qutrit q."""
    _check_qutrit(s, q)
    tensor = np.tensordot(matrix, s.tensor(), axes=([1], [q]))
    return _from_tensor(np.moveaxis(tensor, 0, q))


def apply_chrestenson(s: StateVec, q: int, inverse: bool = False) -> StateVec:
    return apply_gate(s, CH2 if inverse else CH1, q)


def apply_cplus(s: StateVec, control: int, target: int, times: int = 1) -> StateVec:
    """Ternary controlled-sum |x, y> -> |x, y + times*x>."""
    _check_qutrit(s, control)
    _check_qutrit(s, target)
    if control == target:
        raise WordError(f"C+ control and target are both qutrit {control}.")
    source = s.tensor()
    result = source.copy()
    # Slicing out the control axis shifts later axes down by one.
    axis = target - 1 if target > control else target
    for x in (1, 2):
        index = [slice(None)] * s.n
        index[control] = x
        result[tuple(index)] = np.roll(source[tuple(index)], (times * x) % 3, axis=axis)
    return _from_tensor(result)


# =============================================================================
# SECTION 4: PHASES AND EIGENVALUES
# =============================================================================
def phase_exponent(phase: complex, tol: Optional[float] = None) -> Optional[int]:
    """Returns k when phase is within tol of w^k, otherwise None."""
    tol = settings.QEC_CONFIG["STATE_TOL"] if tol is None else tol
    distances = np.abs(OMEGA_POWERS - phase)
    k = int(np.argmin(distances))
    return k if distances[k] <= tol else None


def equal_up_to_global_phase(a: StateVec, b: StateVec, tol: Optional[float] = None) -> Tuple[bool, Optional[complex]]:
    """
    Decides whether b == e^(i*theta) * a for unit vectors a, b, i.e. whether
    |<a|b>| >= 1 - tol.

    Returns (True, e^(i*theta)) on success and (False, None) otherwise.
    """
    tol = settings.QEC_CONFIG["STATE_TOL"] if tol is None else tol
    if a.n != b.n:
        raise WordError(f"Cannot compare a {a.n}-qutrit state with a {b.n}-qutrit state.")
    overlap = inner(a, b)
    magnitude = abs(overlap)
    if magnitude < 1.0 - tol:
        return False, None
    return True, overlap / magnitude


def stabilizer_eigenvalue(s: StateVec, p: PauliWord, tol: Optional[float] = None) -> Tuple[Optional[int], float]:
    """
    Reads p|s> = w^k |s>. Returns (k, residual); k is None when s is not an
    eigenvector of p with an w-power eigenvalue.
    """
    tol = settings.QEC_CONFIG["STATE_TOL"] if tol is None else tol
    image = apply_word(s, p)
    eigenvalue = inner(s, image)
    residual = float(np.linalg.norm(image.amps - eigenvalue * s.amps))
    if residual > tol:
        return None, residual
    return phase_exponent(eigenvalue, tol), residual
