"""Named problem setups shipped with the package.

Search presets bundle a full :class:`~qecsearch.optimize.SearchConfig`
under a short name so published code families can be reproduced with a
single command.  Generator tables hold reference stabilizer codes used
as verification oracles, and the two explicit non-CWS constructions are
exposed as ready-made code candidates.

Preset names follow the code parameters they target: ``5-2-3`` searches
for a five-qubit, two-dimensional, distance-3 code.  Negative presets
(``4-2-3``, ``7-3-3``) target parameters believed unachievable and are
expected to exhaust their restart budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    collective_ad_error_set,
    depolarizing_zz_detection_set,
    pauli_below_effective,
)
from .graphs import (
    ConnectivityGraph,
    complete_bipartite_graph,
    complete_graph,
    line_graph,
    ring_graph,
    star_graph,
)
from .optimize import SearchConfig
from .paulis import PauliString
from .verify import CodeCandidate, extend_non_cws, stabilizer_basis

_GRAPH_BUILDERS: dict[str, Callable[[int], ConnectivityGraph]] = {
    "ring": ring_graph,
    "star": star_graph,
    "complete": complete_graph,
    "line": line_graph,
}


def named_graph(name: str, n: int | None = None) -> ConnectivityGraph:
    """Resolve a graph name from a config file or the command line.

    Accepts the four family names (``ring``, ``star``, ``complete``,
    ``line``, each needing ``n``), bipartite specs like ``k2-3``, and
    ``fig12`` as an alias for the seven-vertex bipartite benchmark
    topology ``k2-5``.
    """
    key = name.strip().lower()
    if key == "fig12":
        return complete_bipartite_graph(2, 5)
    if key.startswith("k") and "-" in key:
        left, _, right = key[1:].partition("-")
        if left.isdigit() and right.isdigit():
            return complete_bipartite_graph(int(left), int(right))
    if key in _GRAPH_BUILDERS:
        if n is None:
            raise ValueError(f"graph family {name!r} needs a vertex count")
        return _GRAPH_BUILDERS[key](n)
    raise ValueError(
        f"unknown graph {name!r}; use ring/star/complete/line, kA-B, or fig12"
    )


@dataclass(frozen=True)
class SearchPreset:
    """A named search problem plus the outcome its parameters admit."""

    summary: str
    expected: str  # "found" or "exhausted"
    build: Callable[[], SearchConfig]

    def config(self) -> SearchConfig:
        return self.build()


def _symmetric(
    n: int,
    code_dim: int,
    distance: int,
    graph: ConnectivityGraph,
    l_max: int,
    rng_seed: int,
    restarts: int = 20,
    **kwargs,
) -> SearchConfig:
    return SearchConfig(
        n=n,
        code_dim=code_dim,
        graph=graph,
        distance=distance,
        l_max=l_max,
        restarts=restarts,
        rng_seed=rng_seed,
        name=f"{n}-{code_dim}-{distance}",
        **kwargs,
    )


def _asymmetric(
    n: int, code_dim: int, c_z: float, d_e: float, l_max: int, rng_seed: int
) -> SearchConfig:
    return SearchConfig(
        n=n,
        code_dim=code_dim,
        graph=complete_graph(n),
        errors=pauli_below_effective(n, c_z, d_e),
        l_max=l_max,
        restarts=20,
        rng_seed=rng_seed,
        name=f"asym-{n}-{code_dim}-cz{c_z:g}-de{d_e:g}",
    )


def _collective_ad(
    n: int, code_dim: int, l_max: int, rng_seed: int
) -> SearchConfig:
    return SearchConfig(
        n=n,
        code_dim=code_dim,
        graph=ring_graph(n),
        errors=collective_ad_error_set(n),
        l_max=l_max,
        restarts=20,
        rng_seed=rng_seed,
        name=f"collective-ad-{n}-{code_dim}",
    )


def _dep_zz(
    panel: str, graph: ConnectivityGraph, code_dim: int, layers: int, rng_seed: int
) -> SearchConfig:
    return SearchConfig(
        n=graph.n,
        code_dim=code_dim,
        graph=graph,
        errors=depolarizing_zz_detection_set(graph),
        l_min=layers,
        l_max=layers,
        restarts=20,
        rng_seed=rng_seed,
        name=f"dep-zz-{panel}",
    )


SEARCH_PRESETS: dict[str, SearchPreset] = {
    # symmetric distance searches
    "4-4-2": SearchPreset(
        "four qubits, one protected pair of logical qubits, distance 2",
        "found",
        lambda: _symmetric(4, 4, 2, ring_graph(4), l_max=3, rng_seed=11),
    ),
    "5-2-3": SearchPreset(
        "the five-qubit perfect code parameters",
        "found",
        lambda: _symmetric(
            5, 2, 3, complete_bipartite_graph(2, 3), l_max=5, rng_seed=0
        ),
    ),
    "5-6-2": SearchPreset(
        "five qubits, six-dimensional distance-2 code",
        "found",
        lambda: _symmetric(5, 6, 2, complete_graph(5), l_max=3, rng_seed=2),
    ),
    "6-2-3": SearchPreset(
        "six-qubit single-error-correcting code",
        "found",
        lambda: _symmetric(6, 2, 3, complete_graph(6), l_max=4, rng_seed=1),
    ),
    "7-2-3": SearchPreset(
        "seven-qubit single-error-correcting code",
        "found",
        lambda: _symmetric(7, 2, 3, complete_graph(7), l_max=3, rng_seed=1),
    ),
    "7-8-2": SearchPreset(
        "seven qubits, eight-dimensional distance-2 code",
        "found",
        lambda: _symmetric(7, 8, 2, complete_graph(7), l_max=3, rng_seed=3),
    ),
    "8-2-3": SearchPreset(
        "eight-qubit single-error-correcting code",
        "found",
        lambda: _symmetric(8, 2, 3, ring_graph(8), l_max=4, rng_seed=4),
    ),
    "8-8-3": SearchPreset(
        "eight qubits protecting three logical qubits at distance 3",
        "found",
        lambda: _symmetric(8, 8, 3, complete_graph(8), l_max=4, rng_seed=5),
    ),
    "9-8-3": SearchPreset(
        "nine qubits, eight-dimensional distance-3 code",
        "found",
        lambda: _symmetric(9, 8, 3, ring_graph(9), l_max=5, rng_seed=6),
    ),
    "10-16-3": SearchPreset(
        "ten qubits, sixteen-dimensional distance-3 code",
        "found",
        lambda: _symmetric(10, 16, 3, ring_graph(10), l_max=5, rng_seed=7),
    ),
    "10-4-4": SearchPreset(
        "ten qubits, four-dimensional distance-4 code",
        "found",
        lambda: _symmetric(10, 4, 4, ring_graph(10), l_max=5, rng_seed=8),
    ),
    # parameters believed unachievable; expected to exhaust the budget
    "4-2-3": SearchPreset(
        "four-qubit distance-3 target (no such code exists)",
        "exhausted",
        lambda: _symmetric(4, 2, 3, complete_graph(4), l_max=5, rng_seed=1),
    ),
    "7-3-3": SearchPreset(
        "seven-qubit qutrit distance-3 target (open non-existence question)",
        "exhausted",
        lambda: _symmetric(
            7,
            3,
            3,
            complete_bipartite_graph(2, 5),
            l_max=31,
            l_min=31,
            rng_seed=7,
            restarts=100,
            convergence_window=100,
            descent_max_iters=300,
        ),
    ),
    # asymmetric targets under the biased-weight rule
    "asym-6-2-cz0.5-de2": SearchPreset(
        "six qubits, extra phase-flip detection at effective distance 2",
        "found",
        lambda: _asymmetric(6, 2, 0.5, 2, l_max=3, rng_seed=9),
    ),
    "asym-7-3-cz0.5-de2": SearchPreset(
        "seven-qubit qutrit with extra phase-flip detection",
        "found",
        lambda: _asymmetric(7, 3, 0.5, 2, l_max=3, rng_seed=9),
    ),
    "asym-5-2-cz2-de3": SearchPreset(
        "five qubits, bit-flip-heavy noise, effective distance 3",
        "found",
        lambda: _asymmetric(5, 2, 2.0, 3, l_max=4, rng_seed=9),
    ),
    "asym-6-4-cz2-de3": SearchPreset(
        "six qubits, four dimensions, bit-flip-heavy noise",
        "found",
        lambda: _asymmetric(6, 4, 2.0, 3, l_max=4, rng_seed=9),
    ),
    "asym-7-8-cz2-de3": SearchPreset(
        "seven qubits, eight dimensions, bit-flip-heavy noise",
        "found",
        lambda: _asymmetric(7, 8, 2.0, 3, l_max=4, rng_seed=9),
    ),
    "asym-6-2-cz2-de4": SearchPreset(
        "six qubits, effective distance 4 under bit-flip-heavy noise",
        "found",
        lambda: _asymmetric(6, 2, 2.0, 4, l_max=4, rng_seed=9),
    ),
    "asym-8-3-cz2-de4": SearchPreset(
        "eight-qubit qutrit, effective distance 4",
        "found",
        lambda: _asymmetric(8, 3, 2.0, 4, l_max=5, rng_seed=9),
    ),
    # channel-adaptive targets
    "collective-ad-4-3": SearchPreset(
        "ring of four, qutrit protected against collective damping",
        "found",
        lambda: _collective_ad(4, 3, l_max=3, rng_seed=3),
    ),
    "collective-ad-5-2": SearchPreset(
        "ring of five, one qubit protected against collective damping",
        "found",
        lambda: _collective_ad(5, 2, l_max=3, rng_seed=3),
    ),
    "collective-ad-6-5": SearchPreset(
        "ring of six, five dimensions under collective damping",
        "found",
        lambda: _collective_ad(6, 5, l_max=4, rng_seed=3),
    ),
    "collective-ad-7-8": SearchPreset(
        "ring of seven, eight dimensions under collective damping",
        "found",
        lambda: _collective_ad(7, 8, l_max=4, rng_seed=3),
    ),
    "collective-ad-8-9": SearchPreset(
        "ring of eight, nine dimensions under collective damping",
        "found",
        lambda: _collective_ad(8, 9, l_max=5, rng_seed=3),
    ),
    "collective-ad-9-16": SearchPreset(
        "ring of nine, sixteen dimensions under collective damping",
        "found",
        lambda: _collective_ad(9, 16, l_max=5, rng_seed=3),
    ),
    # depolarizing + nearest-neighbor collective phase-flip panels
    "dep-zz-a": SearchPreset(
        "six-qubit ring, depolarizing + edge phase-flips, five layers",
        "found",
        lambda: _dep_zz("a", ring_graph(6), 2, layers=5, rng_seed=12),
    ),
    "dep-zz-b": SearchPreset(
        "six-qubit ring, depolarizing + edge phase-flips, six layers",
        "found",
        lambda: _dep_zz("b", ring_graph(6), 2, layers=6, rng_seed=12),
    ),
    "dep-zz-c": SearchPreset(
        "seven-qubit ring, depolarizing + edge phase-flips, two layers",
        "found",
        lambda: _dep_zz("c", ring_graph(7), 2, layers=2, rng_seed=12),
    ),
    "dep-zz-d": SearchPreset(
        "seven qubits fully connected, depolarizing + phase-flips",
        "found",
        lambda: _dep_zz("d", complete_graph(7), 2, layers=2, rng_seed=12),
    ),
    "dep-zz-e": SearchPreset(
        "eight-qubit ring, two logical qubits, four layers",
        "found",
        lambda: _dep_zz("e", ring_graph(8), 4, layers=4, rng_seed=12),
    ),
    "dep-zz-f": SearchPreset(
        "eight qubits fully connected, two logical qubits",
        "found",
        lambda: _dep_zz("f", complete_graph(8), 4, layers=4, rng_seed=12),
    ),
    "dep-zz-g": SearchPreset(
        "nine-qubit ring, two logical qubits, three layers",
        "found",
        lambda: _dep_zz("g", ring_graph(9), 4, layers=3, rng_seed=12),
    ),
    "dep-zz-h": SearchPreset(
        "nine qubits fully connected, two logical qubits, two layers",
        "found",
        lambda: _dep_zz("h", complete_graph(9), 4, layers=2, rng_seed=12),
    ),
}


def search_preset(name: str) -> SearchConfig:
    """Build the configuration registered under a preset name."""
    try:
        return SEARCH_PRESETS[name].config()
    except KeyError:
        known = ", ".join(sorted(SEARCH_PRESETS))
        raise ValueError(f"unknown preset {name!r}; available: {known}") from None


# ---------------------------------------------------------------------------
# reference stabilizer tables

STABILIZER_TABLES: dict[str, tuple[str, ...]] = {
    # the textbook five-qubit perfect code
    "5-2-3-perfect": ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"),
    # additive representative rediscovered at eight qubits
    "8-8-3": ("XXXXXXXX", "ZZZZZZZZ", "IXYZZYXI", "ZYZYXIXI", "XYYXIZZI"),
    # additive six-qubit code that doubles as an effective-distance-4 code
    "6-2-3-additive": ("XIXYZX", "ZIIIIZ", "IXXXXI", "IZIYXZ", "IIZXYZ"),
    # additive code correcting single-qubit errors plus all ZZ pairs
    "7-2-3-zz": ("XIZXXIX", "ZIIXXXZ", "IXZXZZZ", "IZZIZYZ", "IIYXZIX", "IIIZYYX"),
    # six-qubit reference all discovered ((6,2,3)) codes relate to
    "6-2-3-reference": ("YIZXXY", "ZXIXIZ", "IZXXXX", "IIIIZZ", "ZZZZII"),
}


def stabilizer_table_code(name: str) -> CodeCandidate:
    """Joint +1 eigenspace of a registered generator table."""
    try:
        rows = STABILIZER_TABLES[name]
    except KeyError:
        known = ", ".join(sorted(STABILIZER_TABLES))
        raise ValueError(f"unknown table {name!r}; available: {known}") from None
    return stabilizer_basis([PauliString(row) for row in rows])


# ---------------------------------------------------------------------------
# explicit non-CWS constructions

NON_CWS_EXTENSION = np.array([[3.0, 4.0], [-4.0, 3.0]]) / 5.0


def non_cws_6_2_3() -> CodeCandidate:
    """Degenerate non-CWS six-qubit code.

    Built by appending a qubit to the perfect code and entangling it
    with a controlled rotation whose matrix has rational entries, which
    lands the weight enumerators on exact multiples of 1/25.
    """
    inner = stabilizer_table_code("5-2-3-perfect")
    return extend_non_cws(inner, control=4, u_mat=NON_CWS_EXTENSION)


# Basis amplitudes of a non-degenerate but impure seven-qubit code.
# Each entry is (bitstring, integer scale, eighth-root-of-unity power):
# the amplitude is scale * exp(i*pi*power/4) / 20.
#
# The published table misprints four amplitudes (the states as printed
# are not even orthogonal).  Grouping by the first four bits shows each
# state is a phase times one of two fixed blocks on the last three
# qubits, which pins down the intended entries; the repaired basis is
# exactly orthonormal, satisfies the detection conditions to 5e-17, and
# lands on the published enumerators to 6e-14.
_IMPURE_7_2_3_PSI1: tuple[tuple[str, int, int], ...] = (
    ("0000011", -4, 3),
    ("0000100", 3, 2),
    ("0001110", -3, 1),
    ("0001111", -4, 1),
    ("0010110", 3, 3),
    ("0010111", 4, 3),
    ("0011011", -4, 1),
    ("0011100", 3, 0),
    ("0100110", 3, 3),
    ("0100111", 4, 3),
    ("0101011", -4, 1),
    ("0101100", 3, 0),  # misprinted as 3*w
    ("0110011", -4, 3),
    ("0110100", 3, 2),
    ("0111110", -3, 1),
    ("0111111", -4, 1),
    ("1000011", -4, 3),
    ("1000100", 3, 2),
    ("1001110", 3, 1),
    ("1001111", 4, 1),
    ("1010110", 3, 3),
    ("1010111", 4, 3),  # misprinted as -4*w^3
    ("1011011", 4, 1),  # misprinted as -4*w
    ("1011100", -3, 0),
    ("1100110", -3, 3),
    ("1100111", -4, 3),
    ("1101011", -4, 1),
    ("1101100", 3, 0),
    ("1110011", 4, 3),
    ("1110100", -3, 2),
    ("1111110", -3, 1),
    ("1111111", -4, 1),
)

_IMPURE_7_2_3_PSI2: tuple[tuple[str, int, int], ...] = (
    ("0000011", 4, 1),
    ("0000100", -3, 0),
    ("0001110", 3, 3),
    ("0001111", 4, 3),
    ("0010110", 3, 1),
    ("0010111", 4, 1),
    ("0011011", -4, 3),
    ("0011100", 3, 2),
    ("0100110", -3, 1),
    ("0100111", -4, 1),
    ("0101011", 4, 3),
    ("0101100", -3, 2),
    ("0110011", -4, 1),
    ("0110100", 3, 0),
    ("0111110", -3, 3),
    ("0111111", -4, 3),
    ("1000011", -4, 1),
    ("1000100", 3, 0),
    ("1001110", 3, 3),
    ("1001111", 4, 3),
    ("1010110", -3, 1),
    ("1010111", -4, 1),
    ("1011011", -4, 3),
    ("1011100", 3, 2),
    ("1100110", -3, 1),
    ("1100111", -4, 1),
    ("1101011", -4, 3),
    ("1101100", 3, 2),
    ("1110011", -4, 1),
    ("1110100", 3, 0),
    ("1111110", 3, 3),
    ("1111111", 4, 3),  # misprinted as -4*w^3
)


def _impure_vector(entries: tuple[tuple[str, int, int], ...]) -> np.ndarray:
    vec = np.zeros(2**7, dtype=complex)
    for bits, scale, power in entries:
        vec[int(bits, 2)] = scale * np.exp(1j * np.pi * power / 4.0) / 20.0
    return vec


def non_cws_7_2_3() -> CodeCandidate:
    """Non-degenerate but impure seven-qubit code with explicit amplitudes."""
    return CodeCandidate.from_vectors(
        7,
        [_impure_vector(_IMPURE_7_2_3_PSI1), _impure_vector(_IMPURE_7_2_3_PSI2)],
        provenance={"construction": "impure-7-2-3"},
    )
