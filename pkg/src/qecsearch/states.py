"""Pure-state simulation on up to 20 qubits.

Amplitude layout: qubit 0 is the most significant bit of the index, so
|q0 q1 ... q_{n-1}> sits at index sum_q q_i * 2^(n-1-i).  All kernels
operate on stacks shaped (..., 2^n) and return new arrays; inputs are
never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 20


def _check_n(n: int):
    if not (1 <= n <= MAX_QUBITS):
        raise ValueError(f"qubit count {n} outside supported range 1..{MAX_QUBITS}")


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state on n qubits, qubit 0 = MSB."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_n(self.n)
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.n,):
            raise ValueError(
                f"amplitude array shape {amps.shape} does not match n={self.n}"
            )
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> StateVector:
        nrm = self.norm()
        if nrm < 1e-12:
            raise ValueError("cannot normalize a null vector")
        return StateVector(self.n, self.amplitudes / nrm)


def basis_state(n: int, index: int) -> StateVector:
    _check_n(n)
    if not (0 <= index < 2**n):
        raise ValueError(f"basis index {index} out of range for n={n}")
    amps = np.zeros(2**n, dtype=complex)
    amps[index] = 1.0
    return StateVector(n, amps)


def overlap(bra: StateVector, ket: StateVector) -> complex:
    """<bra|ket> with conjugation on the first argument."""
    if bra.n != ket.n:
        raise ValueError("qubit count mismatch in overlap")
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))


# ---------------------------------------------------------------------------
# raw kernels on stacks shaped (..., 2^n)


def _as_stack(amps: np.ndarray) -> np.ndarray:
    a = np.asarray(amps, dtype=complex)
    return a.reshape(-1, a.shape[-1])


def apply_rx(amps: np.ndarray, n: int, q: int, theta: float) -> np.ndarray:
    """exp(-i theta X_q / 2) on a stack of amplitude vectors."""
    shape = np.shape(amps)
    a = _as_stack(amps).reshape(-1, 2**q, 2, 2 ** (n - 1 - q))
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    out = c * a - 1j * s * a[:, :, ::-1, :]
    return out.reshape(shape)

def apply_rz(amps: np.ndarray, n: int, q: int, theta: float) -> np.ndarray:
    """exp(-i theta Z_q / 2) on a stack of amplitude vectors."""
    shape = np.shape(amps)
    a = _as_stack(amps).reshape(-1, 2**q, 2, 2 ** (n - 1 - q))
    ph = np.array([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
    return (a * ph[None, None, :, None]).reshape(shape)


def apply_rzz(amps: np.ndarray, n: int, q1: int, q2: int, theta: float) -> np.ndarray:
    """exp(-i theta Z_q1 Z_q2 / 2) on a stack of amplitude vectors."""
    if q1 > q2:
        q1, q2 = q2, q1
    shape = np.shape(amps)
    a = _as_stack(amps).reshape(
        -1, 2**q1, 2, 2 ** (q2 - q1 - 1), 2, 2 ** (n - 1 - q2)
    )
    m, p = np.exp(-0.5j * theta), np.exp(0.5j * theta)
    ph = np.array([[m, p], [p, m]])  # indexed by (bit_q1, bit_q2)
    return (a * ph[None, None, :, None, :, None]).reshape(shape)


def apply_x(amps: np.ndarray, n: int, q: int) -> np.ndarray:
    """Pauli X on one qubit (bit flip) for a stack of vectors."""
    shape = np.shape(amps)
    a = _as_stack(amps).reshape(-1, 2**q, 2, 2 ** (n - 1 - q))
    return a[:, :, ::-1, :].reshape(shape).copy()


def apply_z(amps: np.ndarray, n: int, q: int) -> np.ndarray:
    """Pauli Z on one qubit (sign on the 1 branch) for a stack of vectors."""
    shape = np.shape(amps)
    a = _as_stack(amps).reshape(-1, 2**q, 2, 2 ** (n - 1 - q))
    sign = np.array([1.0, -1.0])
    return (a * sign[None, None, :, None]).reshape(shape)


def apply_zz(amps: np.ndarray, n: int, q1: int, q2: int) -> np.ndarray:
    """Z on two qubits (sign when the bits differ) for a stack of vectors."""
    if q1 > q2:
        q1, q2 = q2, q1
    shape = np.shape(amps)
    a = _as_stack(amps).reshape(
        -1, 2**q1, 2, 2 ** (q2 - q1 - 1), 2, 2 ** (n - 1 - q2)
    )
    sign = np.array([[1.0, -1.0], [-1.0, 1.0]])
    return (a * sign[None, None, :, None, :, None]).reshape(shape)


def apply_matrix(amps: np.ndarray, n: int, qubits, mat: np.ndarray) -> np.ndarray:
    """Apply a dense 2^k x 2^k matrix on the listed qubits (in that order)."""
    qubits = tuple(qubits)
    k = len(qubits)
    if mat.shape != (2**k, 2**k):
        raise ValueError(f"matrix shape {mat.shape} does not fit {k} qubits")
    shape = np.shape(amps)
    a = _as_stack(amps)
    batch = a.shape[0]
    t = a.reshape((batch,) + (2,) * n)
    src = [1 + q for q in qubits]
    dst = list(range(n + 1 - k, n + 1))
    t = np.moveaxis(t, src, dst)
    t = t.reshape(-1, 2**k) @ mat.T
    t = t.reshape((batch,) + (2,) * n)
    t = np.moveaxis(t, dst, src)
    return t.reshape(shape)


def apply_pauli_amps(amps: np.ndarray, n: int, pauli) -> np.ndarray:
    """Apply a PauliString (with its coefficient) to a stack of vectors."""
    fm, sm = pauli.masks()
    idx = np.arange(2**n)
    ny = sum(c == "Y" for c in pauli.letters)
    coeff = pauli.coefficient * (1j**ny)
    # bitwise_count yields uint8; widen before the sign arithmetic
    sign = 1 - 2 * (np.bitwise_count(idx & sm).astype(np.int64) & 1)
    shape = np.shape(amps)
    a = _as_stack(amps)
    # out[j] = phase(j ^ fm) * in[j ^ fm]
    src = idx ^ fm
    out = (coeff * sign[src]) * a[:, src]
    return out.reshape(shape)


def apply_pauli(state: StateVector, pauli) -> StateVector:
    if pauli.n != state.n:
        raise ValueError("Pauli length does not match state size")
    return StateVector(state.n, apply_pauli_amps(state.amplitudes, state.n, pauli))


def permute_qubits(amps: np.ndarray, n: int, perm) -> np.ndarray:
    """Relabel qubit q as perm[q] for a stack of amplitude vectors."""
    perm = tuple(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of 0..{n-1}")
    shape = np.shape(amps)
    a = _as_stack(amps)
    t = a.reshape((-1,) + (2,) * n)
    # axis 1+q of t holds qubit q; after the move it must hold data for
    # the qubit that perm sends there.
    inv = [0] * n
    for q, p in enumerate(perm):
        inv[p] = q
    t = t.transpose([0] + [1 + inv[j] for j in range(n)])
    return t.reshape(shape).copy()
