import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qecsearch.paulis import (
    PauliString,
    count_below_weight,
    enumerate_below_weight,
    enumerate_weight,
    identity_pauli,
    pauli_from_support,
    single_site,
)

from oracles import dense_pauli

letters_st = st.text(alphabet="IXYZ", min_size=1, max_size=5)


def test_rejects_bad_letters():
    with pytest.raises(ValueError):
        PauliString("IXQ")


def test_weight_and_support():
    p = PauliString("IXYZI")
    assert p.weight == 3
    assert p.support == (1, 2, 3)
    assert p.letter_counts() == (1, 1, 1)


def test_effective_weight_counts_z_separately():
    p = PauliString("XZZ")
    assert p.effective_weight(0.5) == pytest.approx(2.0)
    assert p.effective_weight(1.0) == pytest.approx(p.weight)
    assert p.effective_weight(2.0) == pytest.approx(5.0)


def test_single_site_and_support_builders():
    assert single_site(4, 2, "Y").letters == "IIYI"
    built = pauli_from_support(5, (0, 3), "XZ")
    assert built.letters == "XIIZI"


def test_product_phase_table():
    x, y, z = PauliString("X"), PauliString("Y"), PauliString("Z")
    assert (x * y).letters == "Z"
    assert (x * y).coefficient == pytest.approx(1j)
    assert (y * x).coefficient == pytest.approx(-1j)
    assert (z * z).letters == "I"
    assert (z * z).coefficient == pytest.approx(1.0)


@given(letters_st, letters_st.filter(lambda s: len(s) <= 5))
@settings(max_examples=60, deadline=None)
def test_product_matches_dense(a, b):
    n = max(len(a), len(b))
    pa = PauliString(a.ljust(n, "I"))
    pb = PauliString(b.ljust(n, "I"))
    got = (pa * pb).matrix()
    want = dense_pauli(pa.letters) @ dense_pauli(pb.letters)
    assert np.allclose(got, want, atol=1e-12)


@given(letters_st)
@settings(max_examples=40, deadline=None)
def test_matrix_matches_oracle(s):
    assert np.allclose(PauliString(s).matrix(), dense_pauli(s), atol=1e-12)


@given(letters_st, letters_st)
@settings(max_examples=60, deadline=None)
def test_commutation_is_symmetric_and_dense_checked(a, b):
    n = max(len(a), len(b))
    pa = PauliString(a.ljust(n, "I"))
    pb = PauliString(b.ljust(n, "I"))
    assert pa.commutes_with(pb) == pb.commutes_with(pa)
    ma, mb = dense_pauli(pa.letters), dense_pauli(pb.letters)
    comm = np.abs(ma @ mb - mb @ ma).max()
    assert pa.commutes_with(pb) == (comm < 1e-12)


@given(letters_st, letters_st)
@settings(max_examples=60, deadline=None)
def test_product_weight_triangle(a, b):
    n = max(len(a), len(b))
    pa = PauliString(a.ljust(n, "I"))
    pb = PauliString(b.ljust(n, "I"))
    assert (pa * pb).weight <= pa.weight + pb.weight


def test_adjoint_conjugates_coefficient():
    p = PauliString("XY", coefficient=1j)
    assert p.adjoint().coefficient == pytest.approx(-1j)
    assert np.allclose(p.adjoint().matrix(), p.matrix().conj().T)


def test_masks_reproduce_action():
    p = PauliString("YZX")
    fm, sm = p.masks()
    dim = 8
    got = np.zeros((dim, dim), dtype=complex)
    ny = p.letters.count("Y")
    for i in range(dim):
        sign = (-1) ** bin(i & sm).count("1")
        got[i ^ fm, i] = (1j**ny) * sign
    assert np.allclose(got, p.matrix())


def test_enumerate_weight_counts():
    assert sum(1 for _ in enumerate_weight(5, 2)) == 10 * 9
    assert sum(1 for _ in enumerate_weight(4, 0)) == 1


def test_enumeration_matches_closed_form_count():
    for n, w in [(4, 2), (5, 3), (6, 1)]:
        listed = list(enumerate_below_weight(n, w))
        assert len(listed) == count_below_weight(n, w)
        assert len(set(p.letters for p in listed)) == len(listed)
        assert all(p.weight < w for p in listed)


def test_identity_pauli():
    p = identity_pauli(3)
    assert p.letters == "III"
    assert p.weight == 0
