import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qecsearch.paulis import PauliString
from qecsearch.states import (
    StateVector,
    apply_matrix,
    apply_pauli_amps,
    apply_rx,
    apply_rz,
    apply_rzz,
    apply_x,
    apply_z,
    apply_zz,
    basis_state,
    overlap,
    permute_qubits,
)

from oracles import _embed_single, _rx, _rz, _rzz_diag, dense_pauli


def random_amps(n, seed=0):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return v / np.linalg.norm(v)


def test_statevector_validates_shape_and_normalizes():
    with pytest.raises(ValueError):
        StateVector(2, np.array([1.0, 0.0]))
    v = StateVector(1, np.array([2.0, 0.0])).normalized()
    assert v.norm() == pytest.approx(1.0)
    with pytest.raises(ValueError):
        StateVector(1, np.zeros(2)).normalized()


def test_basis_state_and_overlap():
    v = basis_state(3, 5)
    assert v.amplitudes[5] == 1.0
    w = basis_state(3, 2)
    assert overlap(v, w) == pytest.approx(0.0)
    assert overlap(v, v) == pytest.approx(1.0)


@given(st.integers(0, 2), st.floats(-6.0, 6.0))
@settings(max_examples=25, deadline=None)
def test_rx_matches_dense(q, angle):
    n = 3
    v = random_amps(n, seed=q + 7)
    got = apply_rx(v.copy(), n, q, angle)
    want = _embed_single(n, q, _rx(angle)) @ v
    assert np.allclose(got, want, atol=1e-12)


@given(st.integers(0, 2), st.floats(-6.0, 6.0))
@settings(max_examples=25, deadline=None)
def test_rz_matches_dense(q, angle):
    n = 3
    v = random_amps(n, seed=q + 3)
    got = apply_rz(v.copy(), n, q, angle)
    want = _embed_single(n, q, _rz(angle)) @ v
    assert np.allclose(got, want, atol=1e-12)


@given(st.floats(-6.0, 6.0))
@settings(max_examples=25, deadline=None)
def test_rzz_matches_dense(angle):
    n = 4
    v = random_amps(n, seed=11)
    got = apply_rzz(v.copy(), n, 1, 3, angle)
    want = _rzz_diag(n, 1, 3, angle) * v
    assert np.allclose(got, want, atol=1e-12)


def test_rotations_preserve_norm(rng):
    v = random_amps(4, seed=5)
    for fn in (lambda a: apply_rx(a, 4, 2, 0.7), lambda a: apply_rz(a, 4, 0, -1.1)):
        assert np.linalg.norm(fn(v.copy())) == pytest.approx(1.0)


def test_pauli_kernels_match_dense():
    n = 3
    v = random_amps(n, seed=2)
    assert np.allclose(apply_x(v.copy(), n, 1), dense_pauli("IXI") @ v)
    assert np.allclose(apply_z(v.copy(), n, 2), dense_pauli("IIZ") @ v)
    assert np.allclose(apply_zz(v.copy(), n, 0, 2), dense_pauli("ZIZ") @ v)


@given(st.text(alphabet="IXYZ", min_size=3, max_size=3))
@settings(max_examples=40, deadline=None)
def test_apply_pauli_amps_matches_dense(letters):
    v = random_amps(3, seed=9)
    p = PauliString(letters, coefficient=0.5 - 0.25j)
    got = apply_pauli_amps(v.copy(), 3, p)
    assert np.allclose(got, dense_pauli(letters, 0.5 - 0.25j) @ v, atol=1e-12)


def test_apply_matrix_two_qubit_block():
    n = 3
    v = random_amps(n, seed=4)
    swap = np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    )
    got = apply_matrix(v.copy(), n, (0, 2), swap)
    want = permute_qubits(v.copy(), n, (2, 1, 0))
    assert np.allclose(got, want, atol=1e-12)


def test_permute_qubits_roundtrip():
    v = random_amps(4, seed=6)
    perm = (2, 0, 3, 1)
    inv = tuple(np.argsort(perm))
    assert np.allclose(permute_qubits(permute_qubits(v.copy(), 4, perm), 4, inv), v)


def test_stack_evaluation_matches_single():
    n = 3
    stack = np.stack([random_amps(n, seed=0), random_amps(n, seed=1)])
    got = apply_rx(stack.copy(), n, 1, 0.4)
    for row in range(2):
        assert np.allclose(got[row], apply_rx(stack[row].copy(), n, 1, 0.4))
