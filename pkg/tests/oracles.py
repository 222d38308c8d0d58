"""Independent dense reference implementations used by the tests.

Everything here builds full 2^n x 2^n matrices with plain numpy kron
products and matrix multiplication, deliberately avoiding the package's
fast bit-twiddling kernels, so agreement between the two is meaningful.
Only usable for small n.
"""

import itertools

import numpy as np

_I2 = np.eye(2, dtype=complex)
_PAULI = {
    "I": _I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_pauli(letters, coefficient=1.0):
    """Full matrix of a Pauli string, qubit 0 as the leftmost factor."""
    mat = np.array([[complex(coefficient)]])
    for c in letters:
        mat = np.kron(mat, _PAULI[c])
    return mat


def _embed_single(n, qubit, u2):
    mat = np.array([[1.0 + 0.0j]])
    for q in range(n):
        mat = np.kron(mat, u2 if q == qubit else _I2)
    return mat


def _rx(angle):
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def _rz(angle):
    return np.diag([np.exp(-1j * angle / 2), np.exp(1j * angle / 2)])


def _rzz_diag(n, qa, qb, angle):
    idx = np.arange(2**n)
    ba = (idx >> (n - 1 - qa)) & 1
    bb = (idx >> (n - 1 - qb)) & 1
    sign = 1.0 - 2.0 * (ba ^ bb)  # ZZ eigenvalue on each basis state
    return np.exp(-1j * angle / 2 * sign)


def dense_unitary(ansatz, theta):
    """Circuit unitary assembled gate by gate from dense matrices."""
    n = ansatz.n
    u = np.eye(2**n, dtype=complex)
    for g in ansatz.gates:
        angle = float(theta[g.param])
        if g.kind == "rx":
            u = _embed_single(n, g.qubits[0], _rx(angle)) @ u
        elif g.kind == "rz":
            u = _embed_single(n, g.qubits[0], _rz(angle)) @ u
        elif g.kind == "rzz":
            u = _rzz_diag(n, g.qubits[0], g.qubits[1], angle)[:, None] * u
        else:
            raise ValueError(f"unknown gate kind {g.kind!r}")
    return u


def dense_encode(ansatz, theta):
    """(K, 2^n) encoded basis, via the dense unitary."""
    u = dense_unitary(ansatz, theta)
    out = np.empty((ansatz.code_dim, 2**ansatz.n), dtype=complex)
    for j in range(ansatz.code_dim):
        out[j] = u[:, ansatz.input_index(j)]
    return out


def all_pauli_letters(n, weight=None):
    """Every letter string on n qubits, optionally of exact weight."""
    if weight is None:
        yield from ("".join(p) for p in itertools.product("IXYZ", repeat=n))
        return
    for support in itertools.combinations(range(n), weight):
        for letters in itertools.product("XYZ", repeat=weight):
            s = ["I"] * n
            for q, c in zip(support, letters):
                s[q] = c
            yield "".join(s)


def brute_enumerators(basis, n):
    """Shor-Laflamme A_j and B_j by summation over all 4^n strings."""
    basis = np.asarray(basis, dtype=complex)
    kk = basis.shape[0]
    a = np.zeros(n + 1)
    b = np.zeros(n + 1)
    for letters in all_pauli_letters(n):
        op = dense_pauli(letters)
        m = basis.conj() @ op @ basis.T
        w = sum(c != "I" for c in letters)
        tr = np.trace(m)
        a[w] += (tr * np.conj(tr)).real / kk**2
        b[w] += np.trace(m @ m.conj().T).real / kk
    return a, b


def detection_violation(basis, letters):
    """Worst deviation of <i|E|j> from lambda * delta_ij for one string."""
    m = np.asarray(basis).conj() @ dense_pauli(letters) @ np.asarray(basis).T
    kk = m.shape[0]
    off = np.abs(m - np.diag(np.diag(m))).max() if kk > 1 else 0.0
    diag = np.diag(m)
    return max(off, np.abs(diag - diag.mean()).max())


def brute_distance(basis, n, tol=1e-7):
    """Smallest weight whose detection fails, by exhaustive search."""
    for w in range(1, n + 1):
        for letters in all_pauli_letters(n, weight=w):
            if detection_violation(basis, letters) > tol:
                return w
    return n + 1


def fd_isometry_derivs(ansatz, theta, step=1e-6):
    """Central-difference derivatives of the encoding isometry."""
    theta = np.asarray(theta, dtype=float)
    derivs = []
    for i in range(len(theta)):
        tp, tm = theta.copy(), theta.copy()
        tp[i] += step
        tm[i] -= step
        derivs.append((dense_encode(ansatz, tp) - dense_encode(ansatz, tm)) / (2 * step))
    return derivs


def fd_qfim(ansatz, theta, step=1e-6):
    """Projector metric (4/K)(G1 - G2) from finite differences."""
    psi = dense_encode(ansatz, theta)
    derivs = fd_isometry_derivs(ansatz, theta, step)
    p = len(derivs)
    kk = ansatz.code_dim
    f = np.empty((p, p))
    for i in range(p):
        for j in range(i, p):
            g1 = np.trace(derivs[i].conj() @ derivs[j].T)
            g2 = np.trace((derivs[i].conj() @ psi.T) @ (psi.conj() @ derivs[j].T))
            f[i, j] = f[j, i] = (4.0 / kk) * (g1 - g2).real
    return f


def overlap_hessian_rank(ansatz, theta, step=1e-3, rel_tol=1e-6):
    """Rank of the Hessian of the subspace infidelity, fully independent.

    Dist(delta) = 1 - (sum of singular values of Psi(theta)^dag
    Psi(theta+delta) / K)^2 vanishes to first order at delta = 0, so its
    Hessian is a metric whose rank equals the locally explorable
    dimension count.
    """
    psi0 = dense_encode(ansatz, theta)

    def dist(delta):
        psi = dense_encode(ansatz, theta + delta)
        s = np.linalg.svd(psi0.conj() @ psi.T, compute_uv=False)
        return 1.0 - (s.sum() / ansatz.code_dim) ** 2

    p = ansatz.num_parameters
    h = np.empty((p, p))
    eye = np.eye(p)
    for i in range(p):
        for j in range(i, p):
            di, dj = step * eye[i], step * eye[j]
            val = (
                dist(di + dj) - dist(di - dj) - dist(dj - di) + dist(-di - dj)
            ) / (4 * step**2)
            h[i, j] = h[j, i] = val
    sv = np.linalg.svd(h, compute_uv=False)
    return int((sv > rel_tol * sv[0]).sum()) if sv[0] > 0 else 0


def dense_channel(rho, kraus_mats):
    """Apply a channel given as explicit Kraus matrices."""
    out = np.zeros_like(rho)
    for k in kraus_mats:
        out += k @ rho @ k.conj().T
    return out
