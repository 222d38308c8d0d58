"""Error sets: Pauli balls, channel Kraus operators, and order-truncated products.

An ErrorSet is an ordered, immutable list of error terms on n qubits.
Three flavors exist: ``symmetric`` (all Paulis below a weight), ``effective``
(all Paulis below a c_Z-effective weight) and ``kraus-product`` (operators
derived from a channel's Kraus expansion, possibly as order-truncated
products).  Terms are either PauliStrings or small dense operators on an
explicit support.  Application to state stacks is vectorized and cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graphs import ConnectivityGraph
from .paulis import (
    _MATS,
    PauliString,
    enumerate_below_weight,
    enumerate_weight,
    identity_pauli,
    single_site,
)
from .states import apply_matrix, apply_pauli_amps


@dataclass(frozen=True, eq=False)
class SparseOperator:
    """Dense matrix on an explicit ordered qubit subset."""

    support: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        k = len(self.support)
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (2**k, 2**k):
            raise ValueError(f"matrix shape {mat.shape} does not fit support {self.support}")
        if len(set(self.support)) != k:
            raise ValueError("support qubits must be distinct")
        object.__setattr__(self, "matrix", mat)

    @property
    def n_support(self) -> int:
        return len(self.support)

    def adjoint(self) -> SparseOperator:
        return SparseOperator(self.support, self.matrix.conj().T)

    def apply(self, amps: np.ndarray, n: int) -> np.ndarray:
        return apply_matrix(amps, n, self.support, self.matrix)

    def to_dense(self, n: int) -> np.ndarray:
        return apply_matrix(np.eye(2**n, dtype=complex), n, self.support, self.matrix).T

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.matrix))


Operator = PauliString | SparseOperator


def _op_adjoint(op: Operator) -> Operator:
    return op.adjoint()


def _op_apply(op: Operator, amps: np.ndarray, n: int) -> np.ndarray:
    if isinstance(op, PauliString):
        return apply_pauli_amps(amps, n, op)
    return op.apply(amps, n)


def _op_dense(op: Operator, n: int) -> np.ndarray:
    if isinstance(op, PauliString):
        return op.matrix()
    return op.to_dense(n)


def _op_support(op: Operator) -> tuple[int, ...]:
    return op.support


@dataclass(frozen=True, eq=False)
class ErrorTerm:
    """One error operator, optionally tagged with its expansion order."""

    op: Operator
    order: Fraction | None = None
    label: str = ""

    def adjoint_term(self) -> ErrorTerm:
        return ErrorTerm(_op_adjoint(self.op), self.order, self.label + "^")


@dataclass(frozen=True, eq=False)
class ErrorSet:
    """Ordered immutable collection of error terms on a fixed register."""

    n: int
    mode: str
    terms: tuple[ErrorTerm, ...]
    name: str = ""
    _cache: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if self.mode not in ("symmetric", "effective", "kraus-product"):
            raise ValueError(f"unknown error-set mode {self.mode!r}")
        if not self.terms:
            raise ValueError("error set must not be empty")
        for t in self.terms:
            if isinstance(t.op, PauliString):
                if t.op.n != self.n:
                    raise ValueError("Pauli length mismatch in error set")
            else:
                if any(not (0 <= q < self.n) for q in t.op.support):
                    raise ValueError("operator support outside register")

    def __len__(self) -> int:
        return len(self.terms)

    def labels(self) -> list[str]:
        return [t.label for t in self.terms]

    def describe(self) -> str:
        """Ordered plain-text listing for audit output."""
        lines = [f"# error set ({self.mode}), n={self.n}, {len(self.terms)} terms"]
        for i, t in enumerate(self.terms):
            tag = "" if t.order is None else f" order={t.order}"
            lines.append(f"{i}\t{t.label}{tag}")
        return "\n".join(lines)

    # -- vectorized application ---------------------------------------------

    def _ensure_cache(self):
        if self._cache:
            return
        dim = 2**self.n
        idx = np.arange(dim)
        pauli_rows, gen_rows = [], []
        perms, phases, aperms, aphases = [], [], [], []
        for pos, t in enumerate(self.terms):
            if isinstance(t.op, PauliString):
                for (target_perm, target_ph), p in (
                    ((perms, phases), t.op),
                    ((aperms, aphases), t.op.adjoint()),
                ):
                    fm, sm = p.masks()
                    ny = p.letters.count("Y")
                    src = idx ^ fm
                    sign = 1 - 2 * (np.bitwise_count(src & sm).astype(np.int64) & 1)
                    target_perm.append(src)
                    target_ph.append((p.coefficient * 1j**ny) * sign)
                pauli_rows.append(pos)
            else:
                gen_rows.append(pos)
        self._cache["pauli_rows"] = np.array(pauli_rows, dtype=np.intp)
        self._cache["gen_rows"] = gen_rows
        if pauli_rows:
            self._cache["perm"] = np.array(perms)
            self._cache["phase"] = np.array(phases)
            self._cache["aperm"] = np.array(aperms)
            self._cache["aphase"] = np.array(aphases)
        self._cache["row_of"] = {pos: r for r, pos in enumerate(pauli_rows)}

    def apply_all(
        self, states: np.ndarray, indices=None, adjoint: bool = False
    ) -> np.ndarray:
        """Apply every term (or the indexed subset) to a (K, 2^n) stack.

        Returns an (m, K, 2^n) array in term order.
        """
        self._ensure_cache()
        states = np.asarray(states, dtype=complex)
        if indices is None:
            indices = range(len(self.terms))
        indices = list(indices)
        out = np.empty((len(indices), states.shape[0], states.shape[1]), dtype=complex)
        row_of = self._cache["row_of"]
        pauli_sel = [(k, row_of[pos]) for k, pos in enumerate(indices) if pos in row_of]
        if pauli_sel:
            outpos, rows = zip(*pauli_sel)
            perm = (self._cache["aperm"] if adjoint else self._cache["perm"])[list(rows)]
            ph = (self._cache["aphase"] if adjoint else self._cache["phase"])[list(rows)]
            gathered = states[:, perm]  # (K, msel, D)
            out[list(outpos)] = np.transpose(gathered, (1, 0, 2)) * ph[:, None, :]
        for k, pos in enumerate(indices):
            if pos not in row_of:
                op = self.terms[pos].op
                if adjoint:
                    op = _op_adjoint(op)
                out[k] = _op_apply(op, states, self.n)
        return out

    def dense_matrices(self) -> list[np.ndarray]:
        """Full 2^n x 2^n matrices of all terms, for small n only."""
        if self.n > 12:
            raise ValueError("dense matrices limited to n <= 12")
        return [_op_dense(t.op, self.n) for t in self.terms]

    def subset(self, indices) -> ErrorSet:
        return ErrorSet(
            self.n,
            self.mode,
            tuple(self.terms[i] for i in indices),
            name=f"{self.name}[subset]",
        )


# ---------------------------------------------------------------------------
# Pauli ball constructors


def pauli_below_weight(n: int, d: int) -> ErrorSet:
    """All Pauli strings of weight < d, canonical order, identity included."""
    if d < 1:
        raise ValueError("need d >= 1")
    terms = tuple(
        ErrorTerm(p, label=p.letters) for p in enumerate_below_weight(n, d)
    )
    return ErrorSet(n, "symmetric", terms, name=f"paulis-wt<{d}")


def pauli_below_effective(n: int, c_z: float, d_e: float) -> ErrorSet:
    """All Pauli strings with c_Z-effective weight < d_e."""
    if c_z <= 0:
        raise ValueError("need c_z > 0")
    if d_e <= 0:
        raise ValueError("need d_e > 0")
    w_cap = min(n, int(np.ceil(d_e / min(1.0, c_z))))
    terms = []
    for w in range(w_cap + 1):
        for p in enumerate_weight(n, w):
            if p.effective_weight(c_z) < d_e:
                terms.append(ErrorTerm(p, label=p.letters))
    return ErrorSet(n, "effective", tuple(terms), name=f"paulis-wte<{d_e}@cz={c_z}")


# ---------------------------------------------------------------------------
# channel builders

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_LOWER = (_X + 1j * _Y) / 2.0  # |0><1|


def _check_rate(name, value):
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"{name}={value} outside [0, 1]")


def amplitude_damping_kraus(gamma: float) -> list[np.ndarray]:
    """Single-qubit damping: A_0 = diag(1, sqrt(1-g)), A_1 = sqrt(g)|0><1|.

    Zero operators (gamma = 0) are dropped.
    """
    _check_rate("gamma", gamma)
    ops = [np.diag([1.0, np.sqrt(1.0 - gamma)]).astype(complex), np.sqrt(gamma) * _LOWER]
    return [a for a in ops if np.abs(a).max() > 0]


def generalized_amplitude_damping_kraus(gamma: float, p: float) -> list[np.ndarray]:
    """Finite-temperature damping, four operators, complete for any (gamma, p)."""
    _check_rate("gamma", gamma)
    _check_rate("p", p)
    ops = [
        np.sqrt(p) * np.diag([1.0, np.sqrt(1.0 - gamma)]).astype(complex),
        (np.sqrt(p * gamma) / 2.0) * (_X + 1j * _Y),
        np.sqrt(1.0 - p) * np.diag([np.sqrt(1.0 - gamma), 1.0]).astype(complex),
        (np.sqrt(gamma - p * gamma) / 2.0) * (_X - 1j * _Y),
    ]
    return [a for a in ops if np.abs(a).max() > 0]


def _pair_ket(i: int) -> np.ndarray:
    v = np.zeros(4, dtype=complex)
    v[i] = 1.0
    return v


def collective_ad_kraus(g01: float, g02: float, g12: float) -> list[np.ndarray]:
    """Two-qubit collective damping K_0, K_1, K_2 (complete for valid rates)."""
    for name, v in (("g01", g01), ("g02", g02), ("g12", g12)):
        _check_rate(name, v)
    if g02 + g12 > 1.0:
        raise ValueError("need g02 + g12 <= 1")
    e0, e1, e2, e3 = (_pair_ket(i) for i in range(4))
    sym = e1 + e2
    asym = e1 - e2
    k0 = np.sqrt(g01 / 2.0) * np.outer(e0, sym.conj()) + np.sqrt(g12 / 2.0) * np.outer(
        sym, e3.conj()
    )
    k1 = np.sqrt(g02) * np.outer(e0, e3.conj())
    k2 = (
        np.sqrt((1.0 - g01) / 4.0) * np.outer(sym, sym.conj())
        + np.sqrt(1.0 - g02 - g12) * np.outer(e3, e3.conj())
        + 0.5 * np.outer(asym, asym.conj())
        + np.outer(e0, e0.conj())
    )
    return [a for a in (k0, k1, k2) if np.abs(a).max() > 0]


def collective_ad_truncated() -> list[tuple[np.ndarray, Fraction]]:
    """Leading expansion pieces of collective damping with their orders.

    K'_0 carries order 1/2, K'_1 and K'_2 carry order 1.
    """
    e0, e1, e2, e3 = (_pair_ket(i) for i in range(4))
    sym = e1 + e2
    k0 = (np.outer(e0, sym.conj()) + np.outer(sym, e3.conj())) / np.sqrt(2.0)
    k1 = np.outer(e0, e3.conj())
    k2 = 0.5 * np.outer(sym, sym.conj()) + np.outer(e3, e3.conj())
    return [(k0, Fraction(1, 2)), (k1, Fraction(1)), (k2, Fraction(1))]


def single_ad_pieces() -> list[tuple[np.ndarray, Fraction]]:
    """Damping expansion pieces per qubit: X+iY at order 1/2, I-Z at order 1."""
    return [(_X + 1j * _Y, Fraction(1, 2)), (_I2 - _Z, Fraction(1))]


def depolarizing_zz_kraus(
    graph: ConnectivityGraph, p: float | None = None, p_zz: float | None = None
) -> ErrorSet:
    """Kraus list of the combined local-depolarizing + edge-ZZ channel.

    Defaults follow p_zz = 0.99/(3n + |E|) and p = 4*p_zz, which makes the
    operators complete with identity weight exactly 0.01.
    """
    n, edges = graph.n, graph.edges
    if p_zz is None:
        p_zz = 0.99 / (3 * n + len(edges))
    if p is None:
        p = 4.0 * p_zz
    _check_rate("p", p)
    _check_rate("p_zz", p_zz)
    w_id = 1.0 - n * 3.0 * p / 4.0 - len(edges) * p_zz
    if w_id < 0:
        raise ValueError("rates too large: identity weight negative")
    terms = [ErrorTerm(PauliString("I" * n, np.sqrt(w_id)), label="I")]
    for q in range(n):
        for letter in "XYZ":
            ps = single_site(n, q, letter, np.sqrt(p / 4.0))
            terms.append(ErrorTerm(ps, label=f"{letter}{q}"))
    for a, b in edges:
        ps = single_site(n, a, "Z") * single_site(n, b, "Z")
        ps = PauliString(ps.letters, np.sqrt(p_zz))
        terms.append(ErrorTerm(ps, label=f"Z{a}Z{b}"))
    return ErrorSet(n, "kraus-product", tuple(terms), name=f"dp+zz@{graph.name}")


def depolarizing_zz_detection_set(
    graph: ConnectivityGraph, p: float | None = None, p_zz: float | None = None
) -> ErrorSet:
    """Detection targets for the combined depolarizing + edge-ZZ channel.

    Correcting the channel means detecting every pairwise adjoint product
    of its Kraus operators, so the output collects adj(E_a)*E_b over the
    non-identity Kraus terms plus the lone terms themselves.
    """
    kraus = depolarizing_zz_kraus(graph, p=p, p_zz=p_zz)
    tagged = [
        ErrorTerm(t.op, Fraction(1, 2), t.label)
        for t in kraus.terms
        if t.label != "I"
    ]
    es = error_products(tagged, graph.n, Fraction(3, 2))
    return ErrorSet(es.n, es.mode, es.terms, name=f"dp+zz-products@{graph.name}")


def site_terms(
    pieces: list[tuple[np.ndarray, Fraction]], sites: list[tuple[int, ...]], kind: str
) -> list[ErrorTerm]:
    """Order-tagged expansion pieces placed on every site."""
    out = []
    for s in sites:
        for j, (mat, order) in enumerate(pieces):
            op = SparseOperator(tuple(s), mat)
            out.append(ErrorTerm(op, order, label=f"{kind}{j}@{s}"))
    return out


# ---------------------------------------------------------------------------
# order-truncated products


def _union_dense(op: Operator, support: tuple[int, ...], n: int) -> np.ndarray:
    """Dense matrix of op embedded on the given support (which must cover it)."""
    k = len(support)
    pos = {q: i for i, q in enumerate(support)}
    if isinstance(op, PauliString):
        m = np.array([[op.coefficient]])
        for q in support:
            m = np.kron(m, _MATS[op.letters[q]])
        return m
    small = SparseOperator(
        tuple(pos[q] for q in op.support), op.matrix
    )
    return small.to_dense(k)


def _compose(a: Operator, b: Operator, n: int) -> Operator:
    """Operator product a·b, kept sparse on the union support."""
    if isinstance(a, PauliString) and isinstance(b, PauliString):
        return a * b
    sup = tuple(sorted(set(_op_support(a)) | set(_op_support(b))))
    if not sup:
        sup = (0,)
    da = _union_dense(a, sup, n)
    db = _union_dense(b, sup, n)
    return SparseOperator(sup, da @ db)


def _proportional(a: Operator, b: Operator, n: int, tol: float = 1e-12) -> bool:
    sa, sb = set(_op_support(a)), set(_op_support(b))
    if sa != sb:
        return False
    sup = tuple(sorted(sa)) or (0,)
    da = _union_dense(a, sup, n).ravel()
    db = _union_dense(b, sup, n).ravel()
    ia = np.argmax(np.abs(da))
    if np.abs(da[ia]) < tol:
        return np.abs(db).max() < tol
    lam = db[ia] / da[ia]
    return bool(np.abs(db - lam * da).max() <= tol * max(1.0, np.abs(lam)))


def _unit_normalize(op: Operator) -> Operator:
    if isinstance(op, PauliString):
        c = np.abs(op.coefficient)
        if c < 1e-15:
            return op
        return PauliString(op.letters, op.coefficient / c)
    f = op.frobenius()
    if f < 1e-15:
        return op
    return SparseOperator(op.support, op.matrix / f)


def error_products(
    terms: list[ErrorTerm], n: int, max_order_exclusive: Fraction
) -> ErrorSet:
    """All products adj(E_a)·E_b over single-site Kraus picks below the cutoff.

    The identity (order 0) is always an available pick.  Proportional
    duplicates collapse to one unit-normalized representative.  Output is
    sorted by (order, support, first appearance).
    """
    if not terms:
        raise ValueError("empty kraus list")
    for t in terms:
        if t.order is None:
            raise ValueError(f"term {t.label!r} is missing an order tag")
    ident = ErrorTerm(identity_pauli(n), Fraction(0), label="I")
    picks = [ident] + list(terms)
    kept: list[ErrorTerm] = []
    for a in picks:
        for b in picks:
            order = a.order + b.order
            if order >= max_order_exclusive:
                continue
            op = _compose(_op_adjoint(a.op), b.op, n)
            label = "I" if (a is ident and b is ident) else f"{a.label}+.{b.label}"
            dup = False
            for seen in kept:
                if seen.order == order and _proportional(seen.op, op, n):
                    dup = True
                    break
            if not dup:
                kept.append(ErrorTerm(_unit_normalize(op), order, label))
    kept.sort(key=lambda t: (t.order, _op_support(t.op)))
    return ErrorSet(n, "kraus-product", tuple(kept), name="products")


def ring_pair_sites(n: int) -> list[tuple[int, int]]:
    """Adjacent pairs (j, j+1) around a ring, closing with (0, n-1)."""
    if n < 3:
        raise ValueError("ring sites need n >= 3")
    return [(j, j + 1) for j in range(n - 1)] + [(0, n - 1)]


def collective_ad_error_set(n: int) -> ErrorSet:
    """Truncated collective-damping detection set on ring pair sites."""
    pieces = collective_ad_truncated()
    terms = site_terms(pieces, ring_pair_sites(n), "K")
    es = error_products(terms, n, Fraction(3, 2))
    return ErrorSet(es.n, es.mode, es.terms, name=f"collective-ad-ring-{n}")


def single_ad_error_set(n: int) -> ErrorSet:
    """First-order damping detection set on every qubit."""
    terms = site_terms(single_ad_pieces(), [(q,) for q in range(n)], "A")
    es = error_products(terms, n, Fraction(3, 2))
    return ErrorSet(es.n, es.mode, es.terms, name=f"single-ad-{n}")
