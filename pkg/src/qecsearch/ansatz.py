"""Parameterized encoding circuits built on a connectivity graph.

Two families are provided.  The hardware-efficient family applies, per
layer, an Rx and an Rz rotation on every qubit followed by an Rzz on
every graph edge, and closes with a final Rx-Rz block on every qubit.
The staged-pair family walks all qubit pairs in stages (0,1), then
(0,2), (1,2), then (0,3), ... applying a five-parameter block per pair,
and closes with a final Rz-Rx block.  Every gate owns exactly one fresh
parameter index, so a circuit with N parameters has N gates.

Rotation conventions: Rx(t) = exp(-i t X/2), Rz(t) = exp(-i t Z/2),
Rzz(t) = exp(-i t ZZ/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import ConnectivityGraph, select_logical_qubits
from .states import apply_rx, apply_rz, apply_rzz

GATE_KINDS = ("rx", "rz", "rzz")


@dataclass(frozen=True)
class Gate:
    """One parameterized rotation in a gate program."""

    kind: str
    qubits: tuple[int, ...]
    param: int

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        want = 2 if self.kind == "rzz" else 1
        if len(self.qubits) != want:
            raise ValueError(f"{self.kind} acts on {want} qubit(s), got {self.qubits}")


_APPLY = {
    "rx": lambda a, n, qs, t: apply_rx(a, n, qs[0], t),
    "rz": lambda a, n, qs, t: apply_rz(a, n, qs[0], t),
    "rzz": lambda a, n, qs, t: apply_rzz(a, n, qs[0], qs[1], t),
}


@dataclass(frozen=True)
class Ansatz:
    """A gate program plus the logical-qubit placement it encodes into.

    ``code_dim`` is the number of logical basis states K.  It defaults
    to the full 2^k span of the logical qubits but may be any value in
    1..2^k, which covers qudit-like dimensions such as K=3.
    """

    n: int
    gates: tuple[Gate, ...]
    logical_qubits: tuple[int, ...]
    layers: int
    family: str
    graph: ConnectivityGraph | None = None
    code_dim: int = 0

    def __post_init__(self):
        used = sorted(g.param for g in self.gates)
        if used != list(range(len(self.gates))):
            raise ValueError("parameter indices must be 0..N-1, each used once")
        for g in self.gates:
            if any(not (0 <= q < self.n) for q in g.qubits):
                raise ValueError(f"gate {g} touches a qubit outside 0..{self.n - 1}")
        if len(set(self.logical_qubits)) != len(self.logical_qubits):
            raise ValueError("logical qubits must be distinct")
        if any(not (0 <= q < self.n) for q in self.logical_qubits):
            raise ValueError("logical qubit outside register")
        if self.code_dim == 0:
            object.__setattr__(self, "code_dim", 2 ** len(self.logical_qubits))
        if not (1 <= self.code_dim <= 2 ** len(self.logical_qubits)):
            raise ValueError(
                f"code dimension {self.code_dim} does not fit on "
                f"{len(self.logical_qubits)} logical qubits"
            )

    @property
    def num_parameters(self) -> int:
        return len(self.gates)

    @property
    def k(self) -> int:
        return len(self.logical_qubits)

    def input_index(self, j: int) -> int:
        """Amplitude index of the j-th logical input basis state.

        The binary digits of j (most significant first) are written onto
        the logical qubits in placement order; all other qubits are 0.
        """
        k = self.k
        if not (0 <= j < self.code_dim):
            raise ValueError(f"logical input {j} out of range for K={self.code_dim}")
        idx = 0
        for t, q in enumerate(self.logical_qubits):
            bit = (j >> (k - 1 - t)) & 1
            idx |= bit << (self.n - 1 - q)
        return idx

    def input_stack(self, num_inputs: int | None = None) -> np.ndarray:
        """(K, 2^n) array of logical input basis states."""
        if num_inputs is None:
            num_inputs = self.code_dim
        out = np.zeros((num_inputs, 2**self.n), dtype=complex)
        for j in range(num_inputs):
            out[j, self.input_index(j)] = 1.0
        return out

    def run(self, amps: np.ndarray, theta: np.ndarray) -> np.ndarray:
        """Apply the full gate program to a stack of amplitude vectors."""
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (self.num_parameters,):
            raise ValueError(
                f"expected {self.num_parameters} parameters, got shape {theta.shape}"
            )
        for g in self.gates:
            amps = _APPLY[g.kind](amps, self.n, g.qubits, theta[g.param])
        return amps

    def encode(self, theta: np.ndarray, num_inputs: int | None = None) -> np.ndarray:
        """Encoded logical basis states as a (K, 2^n) stack."""
        return self.run(self.input_stack(num_inputs), theta)

    def run_with_prefixes(self, amps: np.ndarray, theta: np.ndarray) -> np.ndarray:
        """All intermediate states; entry l is the state after l gates."""
        theta = np.asarray(theta, dtype=float)
        out = np.empty((self.num_parameters + 1,) + np.shape(amps), dtype=complex)
        out[0] = amps
        for i, g in enumerate(self.gates):
            out[i + 1] = _APPLY[g.kind](out[i], self.n, g.qubits, theta[g.param])
        return out


def _placement_size(code_dim: int) -> int:
    k = 0
    while 2**k < code_dim:
        k += 1
    return max(k, 1)


def hardware_efficient_ansatz(
    graph: ConnectivityGraph,
    layers: int,
    logical_qubits: tuple[int, ...] | None = None,
    k: int | None = None,
    code_dim: int | None = None,
) -> Ansatz:
    """Layered Rx/Rz + edge-Rzz circuit on a connectivity graph.

    Parameter count is layers*(2n + |edges|) + 2n.  When no explicit
    placement is given, logical qubits are chosen by max-dispersion on
    the graph; pass either k (logical qubit count) or code_dim (K).
    """
    if layers < 0:
        raise ValueError("layer count must be nonnegative")
    if k is None and code_dim is not None:
        k = _placement_size(code_dim)
    if logical_qubits is None:
        if k is None:
            raise ValueError("pass logical_qubits, k, or code_dim")
        logical_qubits = select_logical_qubits(graph, k)
    n = graph.n
    gates: list[Gate] = []

    def rot_block(kinds):
        for kind in kinds:
            for q in range(n):
                gates.append(Gate(kind, (q,), len(gates)))

    for _ in range(layers):
        rot_block(("rx", "rz"))
        for e in graph.edges:
            gates.append(Gate("rzz", e, len(gates)))
    rot_block(("rx", "rz"))
    return Ansatz(
        n=n,
        gates=tuple(gates),
        logical_qubits=tuple(logical_qubits),
        layers=layers,
        family="hardware-efficient",
        graph=graph,
        code_dim=0 if code_dim is None else code_dim,
    )


def staged_pair_ansatz(
    n: int,
    logical_qubits: tuple[int, ...] | None = None,
    k: int | None = None,
    code_dim: int | None = None,
) -> Ansatz:
    """All-to-all staged pair circuit.

    Pairs are visited as (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
    Each pair block is Rx-Rz on both qubits followed by an Rzz, five
    parameters in total, and the circuit closes with Rz then Rx on every
    qubit.  Parameter count is 5*n*(n-1)/2 + 2n.
    """
    if k is None and code_dim is not None:
        k = _placement_size(code_dim)
    if logical_qubits is None:
        if k is None:
            raise ValueError("pass logical_qubits, k, or code_dim")
        logical_qubits = tuple(range(k))
    gates: list[Gate] = []
    for b in range(1, n):
        for a in range(b):
            for q in (a, b):
                gates.append(Gate("rx", (q,), len(gates)))
                gates.append(Gate("rz", (q,), len(gates)))
            gates.append(Gate("rzz", (a, b), len(gates)))
    for kind in ("rz", "rx"):
        for q in range(n):
            gates.append(Gate(kind, (q,), len(gates)))
    return Ansatz(
        n=n,
        gates=tuple(gates),
        logical_qubits=tuple(logical_qubits),
        layers=n - 1,
        family="staged-pair",
        graph=None,
        code_dim=0 if code_dim is None else code_dim,
    )


def generator_letters(gate: Gate) -> str:
    """Pauli letter(s) of the gate's generator, one per target qubit."""
    return {"rx": "X", "rz": "Z", "rzz": "ZZ"}[gate.kind]
