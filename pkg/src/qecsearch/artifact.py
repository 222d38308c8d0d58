"""Persistence of discovered codes as versioned JSON artifacts.

An artifact stores the problem definition, the full gate program with
its final angles, the encoded basis states and an embedded verification
summary.  Floats are written with 17 significant digits, which
round-trips IEEE doubles exactly, so replaying the stored circuit
reproduces the stored amplitudes to machine precision.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .ansatz import Ansatz, Gate
from .graphs import ConnectivityGraph
from .verify import CodeCandidate, VerificationReport

FORMAT_VERSION = 1

REPLAY_TOL = 1e-9


# ---------------------------------------------------------------------------
# exact-decimal JSON writing


def _write(value, out: list[str], depth: int) -> None:
    if value is None or value is True or value is False:
        out.append(json.dumps(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(format(float(value), ".17g"))
    elif isinstance(value, dict):
        _write_dict(value, out, depth)
    elif isinstance(value, (list, tuple)):
        _write_list(value, out, depth)
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def _write_dict(value: dict, out: list[str], depth: int) -> None:
    if not value:
        out.append("{}")
        return
    pretty = depth < 2
    sep = "\n" + "  " * (depth + 1) if pretty else ""
    out.append("{" + sep)
    for pos, (key, item) in enumerate(value.items()):
        if pos:
            out.append("," + (sep or " "))
        out.append(json.dumps(str(key)) + ": ")
        _write(item, out, depth + 1)
    out.append(("\n" + "  " * depth if pretty else "") + "}")


def _write_list(value, out: list[str], depth: int) -> None:
    if not len(value):
        out.append("[]")
        return
    pretty = depth < 2
    sep = "\n" + "  " * (depth + 1) if pretty else ""
    out.append("[" + sep)
    for pos, item in enumerate(value):
        if pos:
            out.append("," + (sep or " "))
        _write(item, out, depth + 1)
    out.append(("\n" + "  " * depth if pretty else "") + "]")


def dumps_document(doc: dict) -> str:
    """Renders a JSON document with 17-significant-digit floats."""
    out: list[str] = []
    _write(doc, out, 0)
    return "".join(out) + "\n"


# ---------------------------------------------------------------------------
# artifact assembly


def _complex_pairs(values: np.ndarray) -> list:
    return [[float(v.real), float(v.imag)] for v in values]


def _from_pairs(pairs) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs])


def report_document(report: VerificationReport) -> dict:
    """Verification summary in JSON-ready form."""
    doc = {
        "error_count": report.error_count,
        "pairwise": report.pairwise,
        "tol": report.tol,
        "max_offdiag_violation": report.max_offdiag_violation,
        "max_diag_violation": report.max_diag_violation,
        "cost_l1_equivalent": report.cost_l1_equivalent(),
        "distance": report.distance,
        "degenerate": report.degenerate,
        "pure": report.pure,
    }
    if report.lambda_matrix is not None and report.lambda_matrix.ndim == 1:
        doc["lambda"] = _complex_pairs(report.lambda_matrix)
    if report.enumerator_a is not None:
        doc["enumerator_a"] = [float(x) for x in report.enumerator_a]
        doc["enumerator_b"] = [float(x) for x in report.enumerator_b]
    if report.effective_distance:
        doc["effective_distance"] = {
            str(cz): float(d) for cz, d in report.effective_distance.items()
        }
    if report.epsilon_bounds:
        doc["epsilon_bounds"] = {
            k: float(v) for k, v in report.epsilon_bounds.items()
        }
    return doc


@dataclass(frozen=True, eq=False)
class CodeArtifact:
    """A discovered code in storable form."""

    format_version: int
    metadata: dict
    problem: dict
    circuit: dict
    basis: np.ndarray
    verification: dict | None

    def ansatz_and_theta(self) -> tuple[Ansatz, np.ndarray]:
        """Rebuilds the encoder from the stored gate program."""
        gates = []
        theta = []
        for pos, g in enumerate(self.circuit["gates"]):
            gates.append(Gate(g["kind"], tuple(g["qubits"]), pos))
            theta.append(float(g["angle"]))
        graph = None
        if self.problem.get("graph_edges") is not None:
            graph = ConnectivityGraph(
                self.problem["n"],
                tuple(tuple(e) for e in self.problem["graph_edges"]),
            )
        ansatz = Ansatz(
            n=self.problem["n"],
            gates=tuple(gates),
            logical_qubits=tuple(self.circuit["logical_qubits"]),
            layers=self.circuit["layers"],
            family=self.circuit["family"],
            graph=graph,
            code_dim=self.problem["code_dim"],
        )
        return ansatz, np.array(theta)

    def replay(self) -> CodeCandidate:
        """Re-encodes the stored circuit and checks it matches the basis."""
        ansatz, theta = self.ansatz_and_theta()
        encoded = ansatz.encode(theta)
        deviation = float(np.abs(encoded - self.basis).max())
        if deviation > REPLAY_TOL:
            raise ValueError(
                f"replayed amplitudes deviate by {deviation:.3e} (> {REPLAY_TOL})"
            )
        return CodeCandidate.from_vectors(
            ansatz.n, [row for row in encoded], provenance=dict(self.metadata)
        )

    def to_document(self) -> dict:
        doc = {
            "format_version": self.format_version,
            "metadata": self.metadata,
            "problem": self.problem,
            "circuit": self.circuit,
            "basis_states": [_complex_pairs(row) for row in self.basis],
        }
        if self.verification is not None:
            doc["verification"] = self.verification
        return doc

    @classmethod
    def from_document(cls, doc: dict) -> "CodeArtifact":
        version = doc.get("format_version")
        if version != FORMAT_VERSION:
            raise ValueError(f"unsupported artifact format_version {version!r}")
        basis = np.array([_from_pairs(row) for row in doc["basis_states"]])
        return cls(
            format_version=version,
            metadata=doc.get("metadata", {}),
            problem=doc["problem"],
            circuit=doc["circuit"],
            basis=basis,
            verification=doc.get("verification"),
        )


def artifact_from_result(result, report: VerificationReport | None = None) -> CodeArtifact:
    """Packs a successful search result into an artifact."""
    if result.code is None:
        raise ValueError("search result carries no code")
    config = result.config
    built = config.build_ansatz(result.l_used)
    theta = np.asarray(result.theta_opt, dtype=float)
    gates = [
        {
            "kind": g.kind,
            "qubits": list(g.qubits),
            "angle": float(theta[g.param]),
        }
        for g in built.gates
    ]
    errors = config.error_set()
    metadata = {
        "created": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
        "tool_version": __version__,
        "seed": config.rng_seed,
        "restart_index": result.restart_index,
        "status": result.status,
        "final_c1": result.final_c1,
        "final_c2": result.final_c2,
    }
    problem = {
        "n": config.n,
        "code_dim": config.code_dim,
        "mode": errors.mode,
        "error_set": errors.name,
        "error_count": len(errors.terms),
        "graph_edges": [list(e) for e in config.graph.edges]
        if config.graph is not None
        else None,
    }
    circuit = {
        "family": built.family,
        "layers": built.layers,
        "logical_qubits": list(built.logical_qubits),
        "gates": gates,
    }
    verification = report_document(report) if report is not None else None
    return CodeArtifact(
        format_version=FORMAT_VERSION,
        metadata=metadata,
        problem=problem,
        circuit=circuit,
        basis=built.encode(theta),
        verification=verification,
    )


def save_artifact(artifact: CodeArtifact, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_document(artifact.to_document()))


def load_artifact(path) -> CodeArtifact:
    with open(path, "r", encoding="utf-8") as fh:
        return CodeArtifact.from_document(json.load(fh))
