"""Knill-Laflamme cost functions and their gradients.

For an encoding ansatz U(theta) with logical basis states |psi_i> and an
error set {E_t}, the overlap matrices M_t[i,j] = <psi_i|E_t|psi_j> must
satisfy M_t = lambda_t * Identity for exact detection.  Two merit
functions measure the deviation: an absolute-value form

    C1 = sum_t [ sum_{i<j} |M_t[i,j]| + (1/2) sum_j |M_t[j,j] - mean_t| ]

and a squared form

    C2 = sum_t [ sum_{i<j} |M_t[i,j]|^2 + (1/4) sum_j |M_t[j,j] - mean_t|^2 ]

where mean_t is the average diagonal entry of M_t.  Both vanish exactly
on detection-capable encodings.  Gradients are available by exact
two-point parameter shifts, by central differences, and by a reverse
(adjoint) sweep that costs O(N) gate applications for all N partials.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ansatz import Ansatz, Gate
from .errors import ErrorSet
from .states import apply_rx, apply_rz, apply_rzz, apply_x, apply_z, apply_zz


@dataclass(frozen=True)
class CostBreakdown:
    """Cost value split into its off-diagonal and diagonal contributions."""

    total: float
    offdiag: float
    diag: float


def _encoded(ansatz: Ansatz, theta: np.ndarray) -> np.ndarray:
    return ansatz.encode(theta)


def matrix_elements(
    ansatz: Ansatz, theta: np.ndarray, errors: ErrorSet, indices=None
) -> np.ndarray:
    """Overlap matrices M_t[i,j] = <psi_i|E_t|psi_j>, shape (m, K, K)."""
    if errors.n != ansatz.n:
        raise ValueError("error set and ansatz disagree on qubit count")
    psi = _encoded(ansatz, theta)
    e_psi = errors.apply_all(psi, indices)
    return np.einsum("id,tjd->tij", psi.conj(), e_psi)


def matrix_element(
    ansatz: Ansatz, theta: np.ndarray, errors: ErrorSet, t: int, i: int, j: int
) -> complex:
    """Single overlap <psi_i|E_t|psi_j>."""
    m = matrix_elements(ansatz, theta, errors, indices=[t])
    return complex(m[0, i, j])


def _split_l1(m: np.ndarray) -> tuple[float, float]:
    kk = m.shape[-1]
    iu = np.triu_indices(kk, k=1)
    off = float(np.abs(m[:, iu[0], iu[1]]).sum())
    diags = np.einsum("tii->ti", m)
    dev = diags - diags.mean(axis=1, keepdims=True)
    return off, float(np.abs(dev).sum() / 2.0)


def _split_l2(m: np.ndarray) -> tuple[float, float]:
    kk = m.shape[-1]
    iu = np.triu_indices(kk, k=1)
    off = float((np.abs(m[:, iu[0], iu[1]]) ** 2).sum())
    diags = np.einsum("tii->ti", m)
    dev = diags - diags.mean(axis=1, keepdims=True)
    return off, float((np.abs(dev) ** 2).sum() / 4.0)


def cost_l1_from_elements(m: np.ndarray) -> CostBreakdown:
    off, diag = _split_l1(m)
    return CostBreakdown(off + diag, off, diag)


def cost_l2_from_elements(m: np.ndarray) -> CostBreakdown:
    off, diag = _split_l2(m)
    return CostBreakdown(off + diag, off, diag)


def cost_l1(ansatz: Ansatz, theta: np.ndarray, errors: ErrorSet) -> CostBreakdown:
    """Absolute-value detection cost over the full error set."""
    return cost_l1_from_elements(matrix_elements(ansatz, theta, errors))


def cost_l2(ansatz: Ansatz, theta: np.ndarray, errors: ErrorSet) -> CostBreakdown:
    """Squared detection cost over the full error set."""
    return cost_l2_from_elements(matrix_elements(ansatz, theta, errors))


def cost_l2_batch(
    ansatz: Ansatz, theta: np.ndarray, errors: ErrorSet, indices
) -> CostBreakdown:
    """Squared detection cost restricted to a subset of error terms."""
    return cost_l2_from_elements(matrix_elements(ansatz, theta, errors, indices))


# ---------------------------------------------------------------------------
# gradients


def _l2_weights(m: np.ndarray) -> np.ndarray:
    """w with dC2 = sum Re(conj(w) dM): upper off-diagonal and diagonal."""
    kk = m.shape[-1]
    w = np.zeros_like(m)
    iu = np.triu_indices(kk, k=1)
    w[:, iu[0], iu[1]] = 2.0 * m[:, iu[0], iu[1]]
    diags = np.einsum("tii->ti", m)
    dev = diags - diags.mean(axis=1, keepdims=True)
    w[:, range(kk), range(kk)] = dev / 2.0
    return w


def _l1_weights(m: np.ndarray, zero_tol: float = 1e-12) -> np.ndarray:
    """Minimum-norm subgradient weights for the absolute-value cost."""
    kk = m.shape[-1]
    w = np.zeros_like(m)
    iu = np.triu_indices(kk, k=1)
    off = m[:, iu[0], iu[1]]
    mag = np.abs(off)
    w[:, iu[0], iu[1]] = np.where(mag > zero_tol, off / np.maximum(mag, zero_tol), 0.0)
    diags = np.einsum("tii->ti", m)
    dev = diags - diags.mean(axis=1, keepdims=True)
    mag = np.abs(dev)
    s = np.where(mag > zero_tol, dev / np.maximum(mag, zero_tol), 0.0)
    # the diagonal mean couples elements: each column picks up -mean(s)/2
    w[:, range(kk), range(kk)] = (s - s.mean(axis=1, keepdims=True)) / 2.0
    return w


_GEN_APPLY = {
    "rx": lambda a, n, qs: apply_x(a, n, qs[0]),
    "rz": lambda a, n, qs: apply_z(a, n, qs[0]),
    "rzz": lambda a, n, qs: apply_zz(a, n, qs[0], qs[1]),
}

_GATE_APPLY = {
    "rx": lambda a, n, qs, t: apply_rx(a, n, qs[0], t),
    "rz": lambda a, n, qs, t: apply_rz(a, n, qs[0], t),
    "rzz": lambda a, n, qs, t: apply_rzz(a, n, qs[0], qs[1], t),
}


def _adjoint_gradient(
    ansatz: Ansatz,
    theta: np.ndarray,
    errors: ErrorSet,
    indices,
    kind: str,
    with_cost: bool = False,
):
    theta = np.asarray(theta, dtype=float)
    prefixes = ansatz.run_with_prefixes(ansatz.input_stack(), theta)
    psi = prefixes[-1]
    e_psi = errors.apply_all(psi, indices)
    m = np.einsum("id,tjd->tij", psi.conj(), e_psi)
    w = _l2_weights(m) if kind == "l2" else _l1_weights(m)
    # a[i] = sum_{t,j} conj(w[t,i,j]) E_t psi_j ; b[j] = sum_{t,i} w[t,i,j] adj(E_t) psi_i
    a = np.einsum("tij,tjd->id", w.conj(), e_psi)
    ea_psi = errors.apply_all(psi, indices, adjoint=True)
    b = np.einsum("tij,tid->jd", w, ea_psi)
    kk = a.shape[0]
    # one fused stack so each backward gate acts once; generators are
    # Hermitian, so <phi|G|a> = <G phi|a> needs only G applied to phi
    ab = np.concatenate([a, b], axis=0)
    grad = np.zeros(ansatz.num_parameters)
    n = ansatz.n
    for l in range(ansatz.num_parameters, 0, -1):
        g: Gate = ansatz.gates[l - 1]
        phi = prefixes[l]
        gphi = _GEN_APPLY[g.kind](phi, n, g.qubits)
        term1 = np.vdot(gphi, ab[:kk])
        term2 = np.vdot(ab[kk:], gphi)
        grad[g.param] = np.real(0.5j * (term1 - term2))
        ab = _GATE_APPLY[g.kind](ab, n, g.qubits, -theta[g.param])
    if with_cost:
        breakdown = cost_l2_from_elements(m) if kind == "l2" else cost_l1_from_elements(m)
        return breakdown, grad
    return grad


def gradient_l2_adjoint(
    ansatz: Ansatz, theta: np.ndarray, errors: ErrorSet, indices=None
) -> np.ndarray:
    """All partials of the squared cost from one reverse sweep."""
    return _adjoint_gradient(ansatz, theta, errors, indices, "l2")


def value_and_gradient_l2(
    ansatz: Ansatz, theta: np.ndarray, errors: ErrorSet, indices=None
) -> tuple[CostBreakdown, np.ndarray]:
    """Squared cost and its gradient sharing one forward pass."""
    return _adjoint_gradient(ansatz, theta, errors, indices, "l2", with_cost=True)


def gradient(
    ansatz: Ansatz,
    theta: np.ndarray,
    errors: ErrorSet,
    kind: str = "l2",
    indices=None,
    method: str = "adjoint",
    step: float = 1e-4,
) -> np.ndarray:
    """Gradient of the detection cost with respect to every parameter.

    ``method`` is one of 'adjoint' (reverse sweep), 'parameter-shift'
    (exact two-point rule per parameter) or 'central-diff' (finite
    difference with the given step).
    """
    if kind not in ("l1", "l2"):
        raise ValueError(f"unknown cost kind {kind!r}")
    theta = np.asarray(theta, dtype=float)
    if method == "adjoint":
        return _adjoint_gradient(ansatz, theta, errors, indices, kind)
    split = _split_l1 if kind == "l1" else _split_l2
    if method == "central-diff":
        grad = np.zeros(ansatz.num_parameters)
        for l in range(ansatz.num_parameters):
            shifted = theta.copy()
            shifted[l] = theta[l] + step
            up = sum(split(matrix_elements(ansatz, shifted, errors, indices)))
            shifted[l] = theta[l] - step
            dn = sum(split(matrix_elements(ansatz, shifted, errors, indices)))
            grad[l] = (up - dn) / (2.0 * step)
        return grad
    if method == "parameter-shift":
        m0 = matrix_elements(ansatz, theta, errors, indices)
        w = _l2_weights(m0) if kind == "l2" else _l1_weights(m0)
        grad = np.zeros(ansatz.num_parameters)
        for l in range(ansatz.num_parameters):
            shifted = theta.copy()
            shifted[l] = theta[l] + np.pi / 2.0
            mp = matrix_elements(ansatz, shifted, errors, indices)
            shifted[l] = theta[l] - np.pi / 2.0
            mm = matrix_elements(ansatz, shifted, errors, indices)
            dm = (mp - mm) / 2.0
            grad[l] = float(np.sum(np.real(w.conj() * dm)))
        return grad
    raise ValueError(f"unknown gradient method {method!r}")
