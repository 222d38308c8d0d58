"""Quantum Fisher information of the encoded code space.

For the normalized projector state rho = P(theta)/K the Fisher matrix
reduces to

    F_lm = (4/K) sum_a Re <d_l psi_a| (I - P) |d_m psi_a>

where |psi_a> are the encoded basis states and P their projector.  All
N tangent stacks |d_l psi_a> come from one forward pass that grows a
stack of states: after applying gate l to the whole stack, the block
(-i G_l / 2) Phi^(l) is appended and inherits every later gate.  The
numeric rank of F over random parameter draws estimates how many
independent directions the ansatz can move the code in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ansatz import Ansatz
from .cost import _GATE_APPLY, _GEN_APPLY


@dataclass(frozen=True)
class QfimResult:
    """Fisher matrix with the rank read at a stated threshold."""

    matrix: np.ndarray
    rank: int
    sv_threshold: float
    singular_values: np.ndarray


def _tangent_stack(ansatz: Ansatz, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Returns (psi (K, D), tangents (N, K, D)) in parameter order."""
    theta = np.asarray(theta, dtype=float)
    n, kk = ansatz.n, ansatz.code_dim
    n_par = ansatz.num_parameters
    dim = 2**n
    stack = np.zeros(((n_par + 1) * kk, dim), dtype=complex)
    stack[:kk] = ansatz.input_stack()
    rows = kk
    order = np.empty(n_par, dtype=int)
    for pos, g in enumerate(ansatz.gates):
        stack[:rows] = _GATE_APPLY[g.kind](stack[:rows], n, g.qubits, theta[g.param])
        seed = -0.5j * _GEN_APPLY[g.kind](stack[:kk], n, g.qubits)
        stack[rows : rows + kk] = seed
        order[pos] = g.param
        rows += kk
    psi = stack[:kk]
    tangents = stack[kk:].reshape(n_par, kk, dim)
    # place tangent blocks at their parameter indices
    out = np.empty_like(tangents)
    out[order] = tangents
    return psi, out


def qfim(ansatz: Ansatz, theta: np.ndarray, sv_rel_tol: float = 1e-8) -> QfimResult:
    """Fisher matrix of the code-space family at one parameter point."""
    psi, tang = _tangent_stack(ansatz, theta)
    kk = ansatz.code_dim
    n_par = ansatz.num_parameters
    flat = tang.reshape(n_par, -1)
    g1 = (flat.conj() @ flat.T).real
    # cross terms <d_l psi_a|psi_b><psi_b|d_m psi_a>
    c = np.einsum("lad,bd->lab", tang, psi.conj())
    cflat = c.reshape(n_par, -1)
    g2 = (cflat.conj() @ cflat.T).real
    f = (4.0 / kk) * (g1 - g2)
    f = 0.5 * (f + f.T)
    sv = np.linalg.svd(f, compute_uv=False)
    if sv.size and sv[0] > 0:
        rank = int(np.sum(sv > sv_rel_tol * sv[0]))
    else:
        rank = 0
    return QfimResult(matrix=f, rank=rank, sv_threshold=sv_rel_tol, singular_values=sv)


def parameter_dimension(
    ansatz: Ansatz,
    samples: int = 5,
    sv_rel_tol: float = 1e-8,
    rng: np.random.Generator | None = None,
) -> int:
    """Largest Fisher rank over random parameter draws."""
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = rng or np.random.default_rng(0)
    best = 0
    for _ in range(samples):
        theta = rng.uniform(0.0, 2.0 * np.pi, ansatz.num_parameters)
        best = max(best, qfim(ansatz, theta, sv_rel_tol).rank)
    return best


def dc_max(n: int, code_dim: int) -> int:
    """Dimension of the manifold of K-dimensional subspaces."""
    if not (1 <= code_dim <= 2**n):
        raise ValueError("need 1 <= K <= 2^n")
    return 2 * code_dim * (2**n - code_dim)


def l_crit(n: int, code_dim: int, edge_count: int) -> int:
    """Layers needed before the parameter count can reach dc_max."""
    need = dc_max(n, code_dim) - 2 * n
    per_layer = 2 * n + edge_count
    return max(0, math.ceil(need / per_layer))
