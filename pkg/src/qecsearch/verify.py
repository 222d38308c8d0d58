"""Exact certification of candidate codes.

Everything here works on explicit state vectors at small n: detection
residuals, code distance (plain and biased-weight), degeneracy and
purity, weight enumerators, correctability bounds, stabilizer-table
construction, the controlled-unitary extension, and a local-equivalence
search.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .ansatz import Ansatz
from .errors import ErrorSet
from .paulis import PauliString, enumerate_weight
from .states import (
    StateVector,
    apply_matrix,
    apply_pauli_amps,
    apply_rx,
    apply_rz,
    permute_qubits,
)

_ENUM_GUARD_N = 10
_PAULI_CHUNK = 512


@dataclass(frozen=True, eq=False)
class CodeCandidate:
    """An explicit orthonormal basis of a K-dimensional code space."""

    n: int
    code_dim: int
    basis: tuple[StateVector, ...]
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.basis) != self.code_dim:
            raise ValueError("basis size does not match code dimension")
        mat = self.basis_matrix()
        gram = mat.conj() @ mat.T
        if np.abs(np.diag(gram) - 1.0).max() > 1e-10:
            raise ValueError("basis vectors are not normalized")
        off = gram - np.diag(np.diag(gram))
        if self.code_dim > 1 and np.abs(off).max() > 1e-10:
            raise ValueError("basis vectors are not orthogonal")

    @classmethod
    def from_encoding(
        cls, ansatz: Ansatz, theta: np.ndarray, error_set_id: str = ""
    ) -> CodeCandidate:
        psi = ansatz.encode(np.asarray(theta, dtype=float))
        basis = tuple(StateVector(ansatz.n, v) for v in psi)
        return cls(
            n=ansatz.n,
            code_dim=ansatz.code_dim,
            basis=basis,
            provenance={
                "ansatz_family": ansatz.family,
                "layers": ansatz.layers,
                "logical_qubits": ansatz.logical_qubits,
                "theta": np.asarray(theta, dtype=float).copy(),
                "error_set": error_set_id,
            },
        )

    @classmethod
    def from_vectors(cls, n: int, vectors, provenance: dict | None = None) -> CodeCandidate:
        basis = tuple(StateVector(n, np.asarray(v, dtype=complex)) for v in vectors)
        return cls(n=n, code_dim=len(basis), basis=basis, provenance=provenance or {})

    def basis_matrix(self) -> np.ndarray:
        """(K, 2^n) array whose rows are the basis vectors."""
        return np.array([b.amplitudes for b in self.basis])

    def projector(self) -> np.ndarray:
        """Dense code-space projector, for small n."""
        mat = self.basis_matrix()
        return mat.T @ mat.conj()


@dataclass
class VerificationReport:
    """Results of the detection checks, filled in as analyses run."""

    n: int
    code_dim: int
    error_count: int
    pairwise: bool
    lambda_matrix: np.ndarray
    max_offdiag_violation: float
    max_diag_violation: float
    offdiag_sums: np.ndarray
    diag_sums: np.ndarray
    tol: float
    distance: int | None = None
    effective_distance: dict = field(default_factory=dict)
    degenerate: bool | None = None
    pure: bool | None = None
    enumerator_a: np.ndarray | None = None
    enumerator_b: np.ndarray | None = None
    epsilon_bounds: dict = field(default_factory=dict)

    @property
    def max_violation(self) -> float:
        return max(self.max_offdiag_violation, self.max_diag_violation)

    def cost_l1_equivalent(self) -> float:
        """The absolute detection cost implied by the stored residuals."""
        return float(self.offdiag_sums.sum() + self.diag_sums.sum())

    def passed(self) -> bool:
        return self.max_violation <= self.tol


def _element_stack(code: CodeCandidate, errors: ErrorSet) -> np.ndarray:
    psi = code.basis_matrix()
    return errors.apply_all(psi)


def kl_report(
    code: CodeCandidate, errors: ErrorSet, tol: float = 1e-7, pairwise: bool = False
) -> VerificationReport:
    """Detection residuals of the code against an error set.

    With ``pairwise`` the products adj(E_a) E_b are checked (the full
    correction conditions) and ``lambda_matrix`` is the (m, m) matrix of
    diagonal means; otherwise each listed error is checked directly and
    ``lambda_matrix`` is the length-m vector of diagonal means.
    """
    if errors.n != code.n:
        raise ValueError("error set register size differs from the code")
    psi = code.basis_matrix()
    e_psi = errors.apply_all(psi)
    if pairwise:
        m = np.einsum("aid,bjd->abij", e_psi.conj(), e_psi)
        m = m.reshape(-1, code.code_dim, code.code_dim)
    else:
        m = np.einsum("id,tjd->tij", psi.conj(), e_psi)
    kk = code.code_dim
    iu = np.triu_indices(kk, k=1)
    il = np.tril_indices(kk, k=-1)
    offmax_u = np.abs(m[:, iu[0], iu[1]])
    offmax_l = np.abs(m[:, il[0], il[1]])
    off_sums = offmax_u.sum(axis=1)
    diags = np.einsum("tii->ti", m)
    lam = diags.mean(axis=1)
    dev = np.abs(diags - lam[:, None])
    diag_sums = dev.sum(axis=1) / 2.0
    max_off = float(max(offmax_u.max(initial=0.0), offmax_l.max(initial=0.0)))
    max_diag = float(dev.max(initial=0.0))
    count = len(errors)
    lam_out = lam.reshape(count, count) if pairwise else lam
    return VerificationReport(
        n=code.n,
        code_dim=kk,
        error_count=count,
        pairwise=pairwise,
        lambda_matrix=lam_out,
        max_offdiag_violation=max_off,
        max_diag_violation=max_diag,
        offdiag_sums=off_sums,
        diag_sums=diag_sums,
        tol=tol,
    )


def degeneracy(report: VerificationReport, rank_tol: float = 1e-8) -> bool:
    """True when the pairwise lambda matrix is rank-deficient."""
    lam = np.asarray(report.lambda_matrix)
    if lam.ndim != 2 or lam.shape[0] != lam.shape[1]:
        raise ValueError("degeneracy needs a pairwise (m x m) lambda matrix")
    if lam.size == 0:
        raise ValueError("empty lambda matrix")
    sv = np.linalg.svd(lam, compute_uv=False)
    rank = int(np.sum(sv > rank_tol * sv[0])) if sv[0] > 0 else 0
    return rank < lam.shape[0]


def purity(code: CodeCandidate, errors: ErrorSet, tol: float = 1e-7) -> bool:
    """True when independent errors map the code to orthogonal subspaces.

    Checks the Gram pattern <psi_i|adj(E_a) E_b|psi_j> = c_a d_ab d_ij.
    """
    e_psi = _element_stack(code, errors)
    gram = np.einsum("aid,bjd->abij", e_psi.conj(), e_psi)
    count, kk = gram.shape[0], gram.shape[2]
    for a in range(count):
        block = gram[a, a]
        c_a = np.trace(block).real / kk
        if np.abs(block - c_a * np.eye(kk)).max() > tol:
            return False
    mask = ~np.eye(count, dtype=bool)
    return bool(np.abs(gram[mask]).max() <= tol)


# ---------------------------------------------------------------------------
# batched Pauli sweeps


def _mask_arrays(paulis: list[PauliString]):
    fm = np.empty(len(paulis), dtype=np.int64)
    sm = np.empty(len(paulis), dtype=np.int64)
    ph = np.empty(len(paulis), dtype=complex)
    for i, p in enumerate(paulis):
        fm[i], sm[i] = p.masks()
        ph[i] = p.coefficient * 1j ** p.letters.count("Y")
    return fm, sm, ph


def _elements_for_paulis(psi: np.ndarray, n: int, paulis: list[PauliString]) -> np.ndarray:
    """M[c][i,j] = <psi_i|P_c|psi_j> for a chunk of Pauli strings."""
    fm, sm, ph = _mask_arrays(paulis)
    idx = np.arange(2**n, dtype=np.int64)
    src = idx[None, :] ^ fm[:, None]
    sign = 1 - 2 * (np.bitwise_count(src & sm[:, None]).astype(np.int64) & 1)
    phases = ph[:, None] * sign
    e_psi = np.transpose(psi[:, src], (1, 0, 2)) * phases[:, None, :]
    return np.einsum("id,cjd->cij", psi.conj(), e_psi)


def _detection_violations(m: np.ndarray) -> np.ndarray:
    """Worst off-diagonal or diagonal-spread residual per error."""
    kk = m.shape[-1]
    if kk == 1:
        return np.zeros(m.shape[0])
    iu = np.triu_indices(kk, k=1)
    il = np.tril_indices(kk, k=-1)
    off = np.maximum(
        np.abs(m[:, iu[0], iu[1]]).max(axis=1), np.abs(m[:, il[0], il[1]]).max(axis=1)
    )
    diags = np.einsum("cii->ci", m)
    dev = np.abs(diags - diags.mean(axis=1, keepdims=True)).max(axis=1)
    return np.maximum(off, dev)


def _chunks(seq, size):
    for i in range(0, len(seq), size):
        yield seq[i : i + size]


def code_distance(
    code: CodeCandidate, violation_tol: float = 1e-7, max_weight: int | None = None
) -> int:
    """Smallest Pauli weight that escapes detection.

    Weights are scanned in ascending order and the scan short-circuits
    at the first weight class containing a violation.  A code with no
    violating Pauli up to the cutoff reports cutoff+1.
    """
    if code.n > 14:
        raise ValueError("distance enumeration limited to n <= 14")
    psi = code.basis_matrix()
    cap = code.n if max_weight is None else min(max_weight, code.n)
    for w in range(1, cap + 1):
        for chunk in _chunks(list(enumerate_weight(code.n, w)), _PAULI_CHUNK):
            m = _elements_for_paulis(psi, code.n, chunk)
            if _detection_violations(m).max(initial=0.0) > violation_tol:
                return w
    return cap + 1


def effective_distance(
    code: CodeCandidate, c_z: float, violation_tol: float = 1e-7
) -> float:
    """Minimum biased weight (Z letters scaled by c_z) of an undetected Pauli."""
    if c_z <= 0:
        raise ValueError("need c_z > 0")
    if code.n > _ENUM_GUARD_N:
        raise ValueError(f"effective distance enumeration limited to n <= {_ENUM_GUARD_N}")
    psi = code.basis_matrix()
    entries = []
    for w in range(1, code.n + 1):
        for p in enumerate_weight(code.n, w):
            entries.append((p.effective_weight(c_z), p))
    entries.sort(key=lambda t: t[0])
    paulis = [p for _, p in entries]
    weights = [we for we, _ in entries]
    pos = 0
    for chunk in _chunks(paulis, _PAULI_CHUNK):
        m = _elements_for_paulis(psi, code.n, chunk)
        bad = _detection_violations(m) > violation_tol
        if bad.any():
            return float(weights[pos + int(np.argmax(bad))])
        pos += len(chunk)
    return math.inf


def weight_enumerators(
    code: CodeCandidate, allow_large: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """Pauli-weight distributions of the code projector.

    A_j aggregates Tr(O P)^2 / K^2 and B_j aggregates the squared
    overlap-matrix norms / K over all Paulis O of weight j.
    """
    if code.n > _ENUM_GUARD_N and not allow_large:
        raise ValueError(
            f"enumerators over 4^n Paulis guarded at n <= {_ENUM_GUARD_N}; "
            "pass allow_large=True to override"
        )
    psi = code.basis_matrix()
    kk = code.code_dim
    a = np.zeros(code.n + 1)
    b = np.zeros(code.n + 1)
    for w in range(code.n + 1):
        for chunk in _chunks(list(enumerate_weight(code.n, w)), _PAULI_CHUNK):
            m = _elements_for_paulis(psi, code.n, chunk)
            tr = np.einsum("cii->c", m)
            a[w] += float((np.abs(tr) ** 2).sum())
            b[w] += float((np.abs(m) ** 2).sum())
    return a / kk**2, b / kk


# ---------------------------------------------------------------------------
# bounds


def inaccuracy_bound(
    c_l1: float, code_dim: int, n: int, d: int, m: int, variant: str = "general"
) -> float:
    """Worst-case correctability gap implied by a residual cost."""
    if c_l1 < 0 or code_dim < 1 or m < 0:
        raise ValueError("negative inputs")
    if variant == "general":
        return code_dim * math.sqrt(2.0 * c_l1)
    if variant == "pauli-weight":
        return 2.0 ** (n / 4.0 + d / 2.0) * code_dim * math.sqrt(m * c_l1)
    if variant == "effective":
        return code_dim * math.sqrt(2.0 * m * c_l1)
    raise ValueError(f"unknown bound variant {variant!r}")


def concat_bound(deltas, c_z: float) -> float:
    """Effective-distance guarantee for a concatenated code."""
    deltas = list(deltas)
    if not deltas:
        raise ValueError("empty distance list")
    if c_z <= 0:
        raise ValueError("need c_z > 0")
    prod = 1
    for delta in deltas:
        prod *= math.ceil(delta / max(1.0, c_z))
    return min(1.0, c_z) * prod


def hamming_check(n: int, code_dim: int, single_error_count: int) -> bool:
    """Counting bound: K error images must fit in the full space."""
    if n < 1 or code_dim < 1 or single_error_count < 1:
        raise ValueError("positive inputs required")
    return 2**n >= code_dim * single_error_count


# ---------------------------------------------------------------------------
# constructions


def _symplectic_rows(generators: list[PauliString]) -> np.ndarray:
    rows = []
    for g in generators:
        xbits = [1 if c in "XY" else 0 for c in g.letters]
        zbits = [1 if c in "YZ" else 0 for c in g.letters]
        rows.append(xbits + zbits)
    return np.array(rows, dtype=np.uint8)


def _gf2_rank(mat: np.ndarray) -> int:
    m = mat.copy() % 2
    rank = 0
    rows, cols = m.shape
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r, c]:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        for r in range(rows):
            if r != rank and m[r, c]:
                m[r] ^= m[rank]
        rank += 1
    return rank


def stabilizer_basis(generators: list[PauliString]) -> CodeCandidate:
    """Orthonormal basis of the joint +1 eigenspace of the generators.

    Projectors (I+g)/2 are applied to computational basis seeds in index
    order and the surviving images are orthonormalized, which makes the
    output basis deterministic.
    """
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].n
    for a, b in itertools.combinations(generators, 2):
        if not a.commutes_with(b):
            raise ValueError(f"generators {a.letters} and {b.letters} anticommute")
    if _gf2_rank(_symplectic_rows(generators)) < len(generators):
        raise ValueError("generators are not independent")
    for g in generators:
        if abs(abs(g.coefficient) - 1.0) > 1e-12:
            raise ValueError("generator coefficients must have unit modulus")
    dim = 2**n
    target = dim // 2 ** len(generators)
    kept: list[np.ndarray] = []
    for seed in range(dim):
        v = np.zeros(dim, dtype=complex)
        v[seed] = 1.0
        for g in generators:
            v = (v + apply_pauli_amps(v[None, :], n, g)[0]) / 2.0
        for u in kept:
            v = v - np.vdot(u, v) * u
        nrm = np.linalg.norm(v)
        if nrm > 1e-9:
            kept.append(v / nrm)
        if len(kept) == target:
            break
    if len(kept) != target:
        raise RuntimeError("projector produced a smaller space than expected")
    return CodeCandidate.from_vectors(
        n, kept, provenance={"generators": [g.letters for g in generators]}
    )


def extend_non_cws(code: CodeCandidate, control: int, u_mat: np.ndarray) -> CodeCandidate:
    """Append a fresh |0> qubit and apply a controlled single-qubit unitary.

    The new qubit takes index n (least significant position); the gate
    applies ``u_mat`` on it when ``control`` is 1.
    """
    u_mat = np.asarray(u_mat, dtype=complex)
    if u_mat.shape != (2, 2):
        raise ValueError("expected a single-qubit matrix")
    if np.abs(u_mat @ u_mat.conj().T - np.eye(2)).max() > 1e-10:
        raise ValueError("matrix is not unitary")
    if not (0 <= control < code.n):
        raise ValueError("control qubit outside register")
    n_new = code.n + 1
    old = code.basis_matrix()
    grown = np.zeros((code.code_dim, 2**n_new), dtype=complex)
    grown[:, ::2] = old  # new qubit starts in |0>
    block = np.eye(4, dtype=complex)
    block[2:, 2:] = u_mat
    grown = apply_matrix(grown, n_new, (control, code.n), block)
    return CodeCandidate.from_vectors(
        n_new,
        grown,
        provenance={"parent": code.provenance, "control": control},
    )


# ---------------------------------------------------------------------------
# local equivalence search


def _euler_layer(psi: np.ndarray, n: int, phis: np.ndarray) -> np.ndarray:
    """Per-qubit Rz-Rx-Rz rotations; phis has 3n entries."""
    out = psi
    for q in range(n):
        a, b, c = phis[3 * q : 3 * q + 3]
        out = apply_rz(out, n, q, a)
        out = apply_rx(out, n, q, b)
        out = apply_rz(out, n, q, c)
    return out


def _le_overlap(psi_a: np.ndarray, psi_b: np.ndarray, n: int, phis: np.ndarray) -> float:
    rotated = _euler_layer(psi_a, n, phis)
    t = np.abs(psi_b.conj() @ rotated.T) ** 2
    return float(t.sum())


def _le_cost(psi_a, psi_b, n, kk, phis) -> float:
    return (_le_overlap(psi_a, psi_b, n, phis) - kk) ** 2


def _le_gradient(psi_a, psi_b, n, kk, phis) -> np.ndarray:
    base = _le_overlap(psi_a, psi_b, n, phis)
    grad = np.empty_like(phis)
    for l in range(phis.size):
        shifted = phis.copy()
        shifted[l] += np.pi / 2.0
        up = _le_overlap(psi_a, psi_b, n, shifted)
        shifted[l] = phis[l] - np.pi / 2.0
        dn = _le_overlap(psi_a, psi_b, n, shifted)
        grad[l] = 2.0 * (base - kk) * (up - dn) / 2.0
    return grad


def local_equivalence(
    code_a: CodeCandidate,
    code_b: CodeCandidate,
    restarts: int = 50,
    permutation_budget: int = 100,
    rng: np.random.Generator | None = None,
    threshold: float = 1e-10,
    gd_steps: int = 200,
    gd_rate: float = 0.05,
):
    """Search for a qubit permutation plus single-qubit rotations mapping
    one code space onto the other.

    Returns (equivalent, witness); the witness holds the permutation,
    the 3n rotation angles, and the final cost.  Codes whose weight
    enumerators differ are rejected without optimization.
    """
    if (code_a.n, code_a.code_dim) != (code_b.n, code_b.code_dim):
        raise ValueError("codes must share (n, K)")
    rng = rng or np.random.default_rng(0)
    enum_a = weight_enumerators(code_a)[0]
    enum_b = weight_enumerators(code_b)[0]
    if np.abs(enum_a - enum_b).max() > 1e-6:
        return False, None
    n, kk = code_a.n, code_a.code_dim
    psi_a0 = code_a.basis_matrix()
    psi_b = code_b.basis_matrix()
    if n <= 7:
        perms = itertools.permutations(range(n))
    else:
        ident = tuple(range(n))
        sampled = [ident] + [
            tuple(rng.permutation(n)) for _ in range(permutation_budget - 1)
        ]
        perms = iter(sampled)
    for perm in perms:
        psi_a = permute_qubits(psi_a0, n, perm)
        for start in range(restarts):
            phis = (
                np.zeros(3 * n) if start == 0 else rng.uniform(0, 2 * np.pi, 3 * n)
            )
            for _ in range(gd_steps):
                grad = _le_gradient(psi_a, psi_b, n, kk, phis)
                phis -= gd_rate * grad
                if _le_cost(psi_a, psi_b, n, kk, phis) < threshold:
                    break
            res = scipy.optimize.minimize(
                lambda x: _le_cost(psi_a, psi_b, n, kk, x),
                phis,
                method="Powell",
                options=dict(xtol=1e-12, ftol=1e-14, maxfev=3000 * n),
            )
            val = float(res.fun)
            if val < threshold:
                witness = {
                    "permutation": tuple(perm),
                    "angles": np.asarray(res.x, dtype=float),
                    "cost": val,
                }
                return True, witness
    return False, None
