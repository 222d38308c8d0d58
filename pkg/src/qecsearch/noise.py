"""Noisy circuit evaluation and cost behaviour under gate noise.

Density matrices are evolved in a doubled-register picture: rho on n
qubits becomes a vector on 2n qubits (row bits first), a unitary V acts
as the same kernel on the row register and as V(-theta) on the column
register, and the depolarizing / correlated-ZZ channels reduce to X and
Z kernel calls.  That keeps every noisy path on the fast state-vector
primitives instead of dense 4^n x 4^n superoperators.

Two noise models are supported on top of the noiseless baseline:

* ``global-depolarizing`` mixes the ideal output with the maximally
  mixed state, at rate epsilon1 for state preparation and epsilon2 for
  the measurement protocol behind the off-diagonal populations.
* ``local-dp+zz`` wraps every two-qubit rotation in single-qubit
  depolarizing channels (rate p_gate/2) inside a correlated ZZ flip
  (rate p_gate/8); single-qubit rotations stay clean.

The noisy detection cost keeps the shape of the absolute-value cost:
off-diagonal terms are square roots of measured populations, diagonal
terms come from expectation values of the noisy outputs.  With global
noise and a perfect encoding every population floors at epsilon2/2^n,
which gives the analytic cost floor checked by ``resilience_check``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ansatz import Ansatz, hardware_efficient_ansatz
from .cost import CostBreakdown, _l2_weights, cost_l1, matrix_elements
from .errors import ErrorSet, pauli_below_weight
from .graphs import complete_graph, line_graph, ring_graph, star_graph
from .paulis import PauliString
from .states import (
    StateVector,
    apply_pauli_amps,
    apply_rx,
    apply_rz,
    apply_rzz,
    apply_x,
    apply_zz,
)

MAX_DENSITY_QUBITS = 10

NOISE_KINDS = ("none", "global-depolarizing", "local-dp+zz")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density matrix on ``n`` qubits.

    Construction checks hermiticity and unit trace to 1e-10 and rejects
    eigenvalues below -1e-8, so every instance is a physical state up
    to numerical noise.
    """

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        if not (1 <= self.n <= MAX_DENSITY_QUBITS):
            raise ValueError(f"need 1 <= n <= {MAX_DENSITY_QUBITS}, got {self.n}")
        mat = np.array(self.matrix, dtype=complex)
        dim = 2**self.n
        if mat.shape != (dim, dim):
            raise ValueError(f"expected shape {(dim, dim)}, got {mat.shape}")
        if np.abs(mat - mat.conj().T).max() > 1e-10:
            raise ValueError("matrix is not Hermitian")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > 1e-10:
            raise ValueError(f"trace must be 1, got {trace}")
        if np.linalg.eigvalsh(mat)[0] < -1e-8:
            raise ValueError("matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", mat)

    def purity(self) -> float:
        return float(np.real(np.vdot(self.matrix, self.matrix)))

    def fidelity(self, state: StateVector | np.ndarray) -> float:
        """Overlap <psi|rho|psi> with a pure reference state."""
        amps = state.amplitudes if isinstance(state, StateVector) else np.asarray(state)
        return float(np.real(np.vdot(amps, self.matrix @ amps)))


@dataclass(frozen=True)
class GateNoiseModel:
    """Which imperfection, if any, to apply while running a circuit."""

    kind: str = "none"
    epsilon1: float = 0.0
    epsilon2: float | None = None
    p_gate: float = 0.0

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if self.kind == "global-depolarizing":
            if self.epsilon2 is None:
                object.__setattr__(self, "epsilon2", self.epsilon1)
            for name in ("epsilon1", "epsilon2"):
                value = getattr(self, name)
                if not 0.0 <= value <= 1.0:
                    raise ValueError(f"{name} must lie in [0, 1], got {value}")
        elif self.kind == "local-dp+zz":
            if not 0.0 <= self.p_gate <= 1.0:
                raise ValueError(f"p_gate must lie in [0, 1], got {self.p_gate}")

    @classmethod
    def none(cls) -> "GateNoiseModel":
        return cls()

    @classmethod
    def global_depolarizing(
        cls, epsilon1: float, epsilon2: float | None = None
    ) -> "GateNoiseModel":
        return cls(kind="global-depolarizing", epsilon1=epsilon1, epsilon2=epsilon2)

    @classmethod
    def local_dp_zz(cls, p_gate: float) -> "GateNoiseModel":
        return cls(kind="local-dp+zz", p_gate=p_gate)


# ---------------------------------------------------------------------------
# doubled-register evolution


def _input_density_stack(ansatz: Ansatz) -> np.ndarray:
    """Flattened |psi_j><psi_j| for every logical input, shape (K, 4^n)."""
    psi = ansatz.input_stack()
    dim = psi.shape[1]
    outer = np.einsum("kr,kc->krc", psi, psi.conj())
    return outer.reshape(psi.shape[0], dim * dim)


def _dp_channel(stack: np.ndarray, two_n: int, q: int, qc: int, p: float) -> np.ndarray:
    """Single-qubit depolarizing on row bit q / column bit qc."""
    t = apply_zz(stack, two_n, q, qc)
    xux = apply_x(apply_x(stack + t, two_n, q), two_n, qc)
    return (1.0 - 0.75 * p) * stack + 0.25 * p * (t + xux)


def _zz_channel(
    stack: np.ndarray, two_n: int, a: int, b: int, ac: int, bc: int, p: float
) -> np.ndarray:
    """Correlated Z(a)Z(b) flip with probability p."""
    flipped = apply_zz(apply_zz(stack, two_n, a, b), two_n, ac, bc)
    return (1.0 - p) * stack + p * flipped


def _apply_gate_noisy(
    stack: np.ndarray, n: int, kind: str, qubits, angle: float, p_gate: float
) -> np.ndarray:
    two_n = 2 * n
    if kind == "rx":
        q = qubits[0]
        return apply_rx(apply_rx(stack, two_n, q, angle), two_n, n + q, -angle)
    if kind == "rz":
        q = qubits[0]
        return apply_rz(apply_rz(stack, two_n, q, angle), two_n, n + q, -angle)
    a, b = qubits
    if p_gate > 0.0:
        stack = _zz_channel(stack, two_n, a, b, n + a, n + b, p_gate / 8.0)
        stack = _dp_channel(stack, two_n, a, n + a, p_gate / 2.0)
        stack = _dp_channel(stack, two_n, b, n + b, p_gate / 2.0)
    stack = apply_rzz(stack, two_n, a, b, angle)
    stack = apply_rzz(stack, two_n, n + a, n + b, -angle)
    if p_gate > 0.0:
        stack = _dp_channel(stack, two_n, a, n + a, p_gate / 2.0)
        stack = _dp_channel(stack, two_n, b, n + b, p_gate / 2.0)
        stack = _zz_channel(stack, two_n, a, b, n + a, n + b, p_gate / 8.0)
    return stack


def _evolve_local(
    ansatz: Ansatz,
    theta: np.ndarray,
    p_gate: float,
    stack: np.ndarray | None = None,
    first_gate: int = 0,
) -> np.ndarray:
    """Runs gates [first_gate:] with per-gate noise on a density stack."""
    theta = np.asarray(theta, dtype=float)
    if stack is None:
        stack = _input_density_stack(ansatz)
    n = ansatz.n
    for g in ansatz.gates[first_gate:]:
        stack = _apply_gate_noisy(stack, n, g.kind, g.qubits, theta[g.param], p_gate)
    return stack


def _check_density_size(n: int) -> None:
    if n > MAX_DENSITY_QUBITS:
        raise ValueError(
            f"density evolution is limited to {MAX_DENSITY_QUBITS} qubits, got {n}"
        )


def noisy_evaluate(
    ansatz: Ansatz,
    theta: np.ndarray,
    model: GateNoiseModel,
    input_index: int = 0,
) -> DensityMatrix:
    """Output state of the encoder for one logical input under noise."""
    _check_density_size(ansatz.n)
    dim = 2**ansatz.n
    if model.kind == "local-dp+zz":
        stack = _evolve_local(ansatz, theta, model.p_gate)
        return DensityMatrix(ansatz.n, stack[input_index].reshape(dim, dim))
    psi = ansatz.encode(np.asarray(theta, dtype=float))[input_index]
    pure = np.outer(psi, psi.conj())
    if model.kind == "none":
        return DensityMatrix(ansatz.n, pure)
    eps = model.epsilon1
    mixed = (1.0 - eps) * pure + eps * np.eye(dim) / dim
    return DensityMatrix(ansatz.n, mixed)


# ---------------------------------------------------------------------------
# noisy detection cost


def _row_pauli(p: PauliString, n: int) -> PauliString:
    return PauliString(p.letters + "I" * n, p.coefficient)


def _col_pauli(p: PauliString, n: int) -> PauliString:
    # vec(E rho Edag) = (E (x) conj(E)) vec(rho); conj flips Y signs
    sign = (-1.0) ** p.letters.count("Y")
    return PauliString("I" * n + p.letters, np.conj(p.coefficient) * sign)


@dataclass(frozen=True)
class _LocalParts:
    """Partial sums of the noisy cost in both powers."""

    off_abs: float
    diag_abs: float
    off_sq: float
    diag_sq: float


def _require_pauli_terms(errors: ErrorSet) -> None:
    for term in errors.terms:
        if not isinstance(term.op, PauliString):
            raise ValueError("noisy evolution supports Pauli error terms only")


def _local_parts(
    ansatz: Ansatz, theta: np.ndarray, p_gate: float, errors: ErrorSet
) -> _LocalParts:
    """Population sums from a noisy run, per error term and input pair."""
    _check_density_size(ansatz.n)
    _require_pauli_terms(errors)
    n = ansatz.n
    dim = 2**n
    kk = ansatz.code_dim
    stack = _evolve_local(ansatz, theta, p_gate)
    iu = np.triu_indices(kk, k=1)
    off_abs = off_sq = diag_abs = diag_sq = 0.0
    for term in errors.terms:
        rowed = apply_pauli_amps(stack, 2 * n, _row_pauli(term.op, n))
        sand = apply_pauli_amps(rowed, 2 * n, _col_pauli(term.op, n))
        # q[i, j] = Tr(sigma_i E sigma_j Edag), real and nonnegative
        q = np.real(stack.conj() @ sand.T)
        pops = np.maximum(q[iu], 0.0)
        off_abs += float(np.sqrt(pops).sum())
        off_sq += float(pops.sum())
        # d[j] = Tr(E sigma_j)
        d = np.real(np.einsum("kaa->k", rowed.reshape(kk, dim, dim)))
        dev = d - d.mean()
        diag_abs += 0.5 * float(np.abs(dev).sum())
        diag_sq += 0.25 * float((dev**2).sum())
    return _LocalParts(off_abs, diag_abs, off_sq, diag_sq)


def noisy_cost_l2(
    ansatz: Ansatz,
    theta: np.ndarray,
    model: GateNoiseModel,
    errors: ErrorSet,
) -> CostBreakdown:
    """Detection cost as estimated from noisy populations.

    Off-diagonal terms are square roots of the measured pair
    populations, diagonal terms are absolute deviations of the noisy
    expectation values, so with ``model.kind == "none"`` this equals
    the absolute-value cost exactly.
    """
    if errors.n != ansatz.n:
        raise ValueError("error set and ansatz disagree on qubit count")
    if model.kind == "none":
        return cost_l1(ansatz, theta, errors)
    if model.kind == "global-depolarizing":
        m = matrix_elements(ansatz, theta, errors)
        dim = 2**ansatz.n
        kk = m.shape[1]
        iu = np.triu_indices(kk, k=1)
        pops = (1.0 - model.epsilon2) * np.abs(m[:, iu[0], iu[1]]) ** 2
        off = float(np.sqrt(pops + model.epsilon2 / dim).sum())
        diags = np.einsum("tjj->tj", m)
        dev = diags - diags.mean(axis=1, keepdims=True)
        diag = 0.5 * (1.0 - model.epsilon1) * float(np.abs(dev).sum())
        return CostBreakdown(off + diag, off, diag)
    parts = _local_parts(ansatz, theta, model.p_gate, errors)
    return CostBreakdown(
        parts.off_abs + parts.diag_abs, parts.off_abs, parts.diag_abs
    )


def analytic_floor(error_count: int, code_dim: int, epsilon2: float, n: int) -> float:
    """Noisy cost of a perfect encoding under global depolarizing noise."""
    pairs = code_dim * (code_dim - 1) // 2
    return error_count * pairs * math.sqrt(epsilon2 / 2**n)


def _shift_matrix_derivatives(
    ansatz: Ansatz, theta: np.ndarray, errors: ErrorSet, param: int
) -> np.ndarray:
    """Exact dM/dtheta_param from two shifted evaluations."""
    tp = np.array(theta, dtype=float)
    tm = np.array(theta, dtype=float)
    tp[param] += 0.5 * np.pi
    tm[param] -= 0.5 * np.pi
    return 0.5 * (
        matrix_elements(ansatz, tp, errors) - matrix_elements(ansatz, tm, errors)
    )


def _global_weights(m: np.ndarray, model: GateNoiseModel, dim: int) -> np.ndarray:
    """w with d(noisy cost) = sum Re(conj(w) dM) for the global model."""
    kk = m.shape[-1]
    w = np.zeros_like(m)
    iu = np.triu_indices(kk, k=1)
    off = m[:, iu[0], iu[1]]
    e1, e2 = model.epsilon1, model.epsilon2
    denom = np.sqrt((1.0 - e2) * np.abs(off) ** 2 + e2 / dim)
    safe = np.maximum(denom, 1e-300)
    w[:, iu[0], iu[1]] = np.where(denom > 0.0, (1.0 - e2) * off / safe, 0.0)
    diags = np.einsum("tjj->tj", m)
    dev = diags - diags.mean(axis=1, keepdims=True)
    mag = np.abs(dev)
    s = np.where(mag > 1e-12, dev / np.maximum(mag, 1e-12), 0.0)
    w[:, range(kk), range(kk)] = (
        0.5 * (1.0 - e1) * (s - s.mean(axis=1, keepdims=True))
    )
    return w


def noisy_cost_gradient(
    ansatz: Ansatz,
    theta: np.ndarray,
    model: GateNoiseModel,
    errors: ErrorSet,
    step: float = 1e-3,
) -> np.ndarray:
    """Gradient of the noisy cost; minimum-norm subgradient at kinks.

    The none and global-depolarizing models use exact parameter shifts;
    the local model falls back to central differences of full noisy
    runs, which costs two density evolutions per parameter.
    """
    theta = np.asarray(theta, dtype=float)
    n_par = ansatz.num_parameters
    grad = np.empty(n_par)
    if model.kind == "local-dp+zz":
        for l in range(n_par):
            tp = theta.copy()
            tm = theta.copy()
            tp[l] += step
            tm[l] -= step
            high = noisy_cost_l2(ansatz, tp, model, errors).total
            low = noisy_cost_l2(ansatz, tm, model, errors).total
            grad[l] = (high - low) / (2.0 * step)
        return grad
    m = matrix_elements(ansatz, theta, errors)
    if model.kind == "none":
        from .cost import _l1_weights

        w = _l1_weights(m)
    else:
        w = _global_weights(m, model, 2**ansatz.n)
    for l in range(n_par):
        dm = _shift_matrix_derivatives(ansatz, theta, errors, l)
        grad[l] = float(np.real(np.sum(np.conj(w) * dm)))
    return grad


# ---------------------------------------------------------------------------
# resilience against global depolarizing noise


@dataclass(frozen=True)
class ResilienceReport:
    """Noisy cost at a candidate optimum versus the analytic floor."""

    epsilon1: float
    epsilon2: float
    noisy_value: float
    floor: float
    gap: float
    gradient_inf_norm: float
    probes: int
    probes_above_floor: int
    passed: bool


def resilience_check(
    ansatz: Ansatz,
    theta_opt: np.ndarray,
    errors: ErrorSet,
    epsilon: float,
    epsilon2: float | None = None,
    floor_tol: float = 1e-8,
    grad_tol: float = 1e-6,
    probes: int = 0,
    rng: np.random.Generator | None = None,
) -> ResilienceReport:
    """Confirms a found code sits at the noise-induced cost floor.

    At an exact zero of the noiseless cost the global-depolarizing
    cost equals ``analytic_floor`` and its gradient vanishes, so the
    minimum does not move under this noise model.  Optional random
    probes record how many other parameter points sit above the floor.
    """
    model = GateNoiseModel.global_depolarizing(epsilon, epsilon2)
    value = noisy_cost_l2(ansatz, theta_opt, model, errors).total
    floor = analytic_floor(
        len(errors.terms), ansatz.code_dim, model.epsilon2, ansatz.n
    )
    grad = noisy_cost_gradient(ansatz, theta_opt, model, errors)
    grad_norm = float(np.abs(grad).max()) if grad.size else 0.0
    above = 0
    if probes:
        rng = rng or np.random.default_rng(0)
        for _ in range(probes):
            probe = rng.uniform(0.0, 2.0 * np.pi, ansatz.num_parameters)
            if noisy_cost_l2(ansatz, probe, model, errors).total > floor:
                above += 1
    gap = abs(value - floor)
    passed = gap <= floor_tol and grad_norm < grad_tol
    return ResilienceReport(
        epsilon1=model.epsilon1,
        epsilon2=model.epsilon2,
        noisy_value=value,
        floor=floor,
        gap=gap,
        gradient_inf_norm=grad_norm,
        probes=probes,
        probes_above_floor=above,
        passed=passed,
    )


def lambda_split(
    rho: DensityMatrix, ideal: StateVector | np.ndarray
) -> tuple[float, float, float]:
    """Splits a noisy output into ideal, white-noise and remainder weights.

    Models rho as lambda0 |psi><psi| + lambda1 I/2^n + lambda2 sigma
    with the white-noise share read off the smallest eigenvalue.
    """
    amps = ideal.amplitudes if isinstance(ideal, StateVector) else np.asarray(ideal)
    if abs(np.linalg.norm(amps) - 1.0) > 1e-8:
        raise ValueError("ideal state must be normalized")
    dim = 2**rho.n
    if amps.shape != (dim,):
        raise ValueError("ideal state size does not match the density matrix")
    lam_min = float(np.linalg.eigvalsh(rho.matrix)[0])
    lambda1 = dim * lam_min
    lambda0 = rho.fidelity(amps) - lam_min
    lambda2 = 1.0 - lambda0 - lambda1
    return lambda0, lambda1, lambda2


# ---------------------------------------------------------------------------
# gradient magnitude scans


_GRAPH_FAMILIES = {
    "star": star_graph,
    "ring": ring_graph,
    "complete": complete_graph,
    "line": line_graph,
}

L_RULES = ("const", "ceil-log", "linear")


@dataclass(frozen=True)
class BpPoint:
    """Sampled gradient statistics for one circuit size."""

    n: int
    layers: int
    samples: int
    mean_abs_offdiag: float
    var_offdiag: float
    mean_abs_diag: float
    var_diag: float
    mean_abs_total: float
    var_total: float


def _layers_for(rule: str, n: int, l_const: int) -> int:
    if rule == "const":
        return l_const
    if rule == "ceil-log":
        return max(1, math.ceil(math.log2(n)))
    if rule == "linear":
        return n
    raise ValueError(f"unknown layer rule {rule!r}")


def _pure_l2_partials(
    ansatz: Ansatz, theta: np.ndarray, errors: ErrorSet, param: int
) -> tuple[float, float]:
    """(d off / d theta, d diag / d theta) of the squared cost, exactly."""
    w = _l2_weights(matrix_elements(ansatz, theta, errors))
    dm = _shift_matrix_derivatives(ansatz, theta, errors, param)
    prod = np.real(np.conj(w) * dm)
    diag = float(np.einsum("tjj->", prod))
    total = float(prod.sum())
    return total - diag, diag


def _noisy_l2_partials(
    ansatz: Ansatz,
    theta: np.ndarray,
    errors: ErrorSet,
    param: int,
    p_gate: float,
    step: float,
) -> tuple[float, float]:
    """Central differences of the smooth noisy population cost."""
    pos = next(i for i, g in enumerate(ansatz.gates) if g.param == param)
    base = _input_density_stack(ansatz)
    for g in ansatz.gates[:pos]:
        base = _apply_gate_noisy(
            base, ansatz.n, g.kind, g.qubits, float(theta[g.param]), p_gate
        )
    results = []
    for sign in (1.0, -1.0):
        shifted = np.array(theta, dtype=float)
        shifted[param] += sign * step
        stack = _evolve_local(
            ansatz, shifted, p_gate, stack=base.copy(), first_gate=pos
        )
        results.append(_parts_from_stack(ansatz, stack, errors))
    (off_p, diag_p), (off_m, diag_m) = results
    return (off_p - off_m) / (2.0 * step), (diag_p - diag_m) / (2.0 * step)


def _parts_from_stack(
    ansatz: Ansatz, stack: np.ndarray, errors: ErrorSet
) -> tuple[float, float]:
    """Squared-cost analog (off, diag) read from an evolved density stack."""
    n = ansatz.n
    dim = 2**n
    kk = ansatz.code_dim
    iu = np.triu_indices(kk, k=1)
    off = diag = 0.0
    for term in errors.terms:
        rowed = apply_pauli_amps(stack, 2 * n, _row_pauli(term.op, n))
        sand = apply_pauli_amps(rowed, 2 * n, _col_pauli(term.op, n))
        q = np.real(stack.conj() @ sand.T)
        off += float(q[iu].sum())
        d = np.real(np.einsum("kaa->k", rowed.reshape(kk, dim, dim)))
        dev = d - d.mean()
        diag += 0.25 * float((dev**2).sum())
    return off, diag


def bp_scan(
    graph_family: str = "star",
    n_list=(4, 5, 6, 7, 8),
    l_rule: str = "linear",
    l_const: int = 3,
    p_gate: float = 0.0,
    samples: int = 200,
    code_dim: int = 2,
    error_weight: int = 3,
    rng: np.random.Generator | int | None = None,
    step: float = 1e-3,
) -> list[BpPoint]:
    """Samples cost-gradient magnitudes across circuit sizes.

    For each n a hardware-efficient circuit on the requested graph
    family is drawn at ``samples`` random parameter points; at each
    point the derivative of the squared detection cost with respect to
    one uniformly chosen parameter is recorded, split into its
    off-diagonal and diagonal parts.  Noiseless circuits use exact
    parameter shifts, noisy ones central differences of the smooth
    population cost.
    """
    if graph_family not in _GRAPH_FAMILIES:
        raise ValueError(f"unknown graph family {graph_family!r}")
    if l_rule not in L_RULES:
        raise ValueError(f"unknown layer rule {l_rule!r}")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    points = []
    for n in n_list:
        if p_gate > 0.0:
            _check_density_size(n)
        graph = _GRAPH_FAMILIES[graph_family](n)
        layers = _layers_for(l_rule, n, l_const)
        ansatz = hardware_efficient_ansatz(graph, layers, code_dim=code_dim)
        errors = pauli_below_weight(n, error_weight)
        n_par = ansatz.num_parameters
        offs = np.empty(samples)
        diags = np.empty(samples)
        for s in range(samples):
            theta = rng.uniform(0.0, 2.0 * np.pi, n_par)
            param = int(rng.integers(n_par))
            if p_gate == 0.0:
                d_off, d_diag = _pure_l2_partials(ansatz, theta, errors, param)
            else:
                d_off, d_diag = _noisy_l2_partials(
                    ansatz, theta, errors, param, p_gate, step
                )
            offs[s] = d_off
            diags[s] = d_diag
        totals = offs + diags
        points.append(
            BpPoint(
                n=n,
                layers=layers,
                samples=samples,
                mean_abs_offdiag=float(np.abs(offs).mean()),
                var_offdiag=float(offs.var()),
                mean_abs_diag=float(np.abs(diags).mean()),
                var_diag=float(diags.var()),
                mean_abs_total=float(np.abs(totals).mean()),
                var_total=float(totals.var()),
            )
        )
    return points


def bp_table(points: list[BpPoint]) -> str:
    """CSV rendering of a gradient scan."""
    header = (
        "n,layers,samples,mean_abs_offdiag,var_offdiag,"
        "mean_abs_diag,var_diag,mean_abs_total,var_total"
    )
    rows = [header]
    for p in points:
        rows.append(
            f"{p.n},{p.layers},{p.samples},{p.mean_abs_offdiag:.12e},"
            f"{p.var_offdiag:.12e},{p.mean_abs_diag:.12e},{p.var_diag:.12e},"
            f"{p.mean_abs_total:.12e},{p.var_total:.12e}"
        )
    return "\n".join(rows) + "\n"
