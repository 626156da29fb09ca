"""Local-operator decompositions and measurement-setting planning."""

import math

import numpy as np
import pytest

import oracles
from gmebound.indices import IndexPair, MultiIndex
from gmebound.observables import (
    decompose_diagonal,
    decompose_offdiagonal,
    gell_mann_basis,
    op_matrix,
    plan_settings,
    reconstruct,
)
from gmebound.states import DensityMatrix, make_w_state
from gmebound.witness import NRVariant, auto_select_R, compile_witness, isotropic_pairset

# diagonal |0><0| x |1><1| over the product-diagonal basis, exact values
QUTRIT_01_ROW = {
    (None, None): 1.0 / 9.0,
    (None, "d1"): -1.0 / 6.0,
    (None, "d2"): 1.0 / (6.0 * math.sqrt(3.0)),
    ("d1", None): 1.0 / 6.0,
    ("d1", "d1"): -1.0 / 4.0,
    ("d1", "d2"): 1.0 / (4.0 * math.sqrt(3.0)),
    ("d2", None): 1.0 / (6.0 * math.sqrt(3.0)),
    ("d2", "d1"): -1.0 / (4.0 * math.sqrt(3.0)),
    ("d2", "d2"): 1.0 / 12.0,
}


def test_basis_size_and_orthogonality():
    for d in (2, 3, 4):
        basis = gell_mann_basis(d)
        assert len(basis) == d * d
        mats = [op.matrix() for op in basis]
        for i, a in enumerate(mats):
            assert np.allclose(a, a.conj().T, atol=1e-14)
            for j, b in enumerate(mats):
                tr = np.trace(a @ b)
                if i == j:
                    assert tr.real > 0
                else:
                    assert abs(tr) < 1e-13


def test_qubit_ops_are_paulis():
    assert np.allclose(op_matrix("s0:1", 2), [[0, 1], [1, 0]], atol=1e-15)
    assert np.allclose(op_matrix("a0:1", 2), [[0, -1j], [1j, 0]], atol=1e-15)
    assert np.allclose(op_matrix("d1", 2), [[1, 0], [0, -1]], atol=1e-15)


def test_qutrit_diagonal_row_01():
    eta = MultiIndex.from_string("01", 3)
    got = {labs: c for c, labs in decompose_diagonal(eta)}
    assert set(got) == set(QUTRIT_01_ROW)
    for labs, want in QUTRIT_01_ROW.items():
        assert got[labs] == pytest.approx(want, abs=1e-14), labs


def test_diagonal_row_reassembles_projector():
    """Sum of <labels> with these weights equals rho_{eta,eta} on any state."""
    rng = np.random.default_rng(31)
    eta = MultiIndex.from_string("01", 3)
    terms = decompose_diagonal(eta)
    for _ in range(10):
        rho = oracles.random_density(2, 3, rng)
        want = rho[eta.rank, eta.rank].real
        got = sum(c * oracles.expectation(labs, rho, 3) for c, labs in terms)
        assert got == pytest.approx(want, abs=1e-12)


@pytest.mark.parametrize("d,strings", [(2, ("01", "10")), (3, ("02", "20")), (3, ("01", "12"))])
def test_offdiagonal_parts_reconstruct_element(d, strings):
    rng = np.random.default_rng(37)
    a, b = strings
    pair = IndexPair.of(MultiIndex.from_string(a, d), MultiIndex.from_string(b, d))
    re_terms = decompose_offdiagonal(pair, "re")
    im_terms = decompose_offdiagonal(pair, "im")
    for _ in range(10):
        mat = oracles.random_density(2, d, rng)
        rho = DensityMatrix(2, d, mat)
        element = mat[pair.first.rank, pair.second.rank]
        assert reconstruct(re_terms, rho) == pytest.approx(element.real, abs=1e-12)
        assert reconstruct(im_terms, rho) == pytest.approx(element.imag, abs=1e-12)


def test_reconstruct_agrees_with_dense_expectations():
    rng = np.random.default_rng(41)
    pair = IndexPair.of(MultiIndex.from_string("001", 2), MultiIndex.from_string("010", 2))
    terms = decompose_offdiagonal(pair, "re")
    mat = oracles.random_density(3, 2, rng)
    rho = DensityMatrix(3, 2, mat)
    want = sum(c * oracles.expectation(labs, mat, 2) for c, labs in terms)
    assert reconstruct(terms, rho) == pytest.approx(want, abs=1e-12)


def test_qutrit_isotropic_plan_counts():
    w = compile_witness(isotropic_pairset(3), NRVariant.MINIMAL)
    plan = plan_settings(w)
    assert plan.element_count == 9
    assert plan.setting_count == 10


def test_w_witness_plan_counts():
    w = compile_witness(auto_select_R(make_w_state(3)), NRVariant.MINIMAL)
    plan = plan_settings(w)
    assert plan.element_count == 10
    assert plan.setting_count == 7


def test_every_element_folds_into_a_setting():
    w = compile_witness(auto_select_R(make_w_state(3)), NRVariant.MINIMAL)
    plan = plan_settings(w)

    def fits(labels, setting):
        return all(a is None or a == b for a, b in zip(labels, setting))

    for el in plan.elements:
        for _, labels in el.terms:
            assert any(fits(labels, s) for s in plan.settings), (el.kind, labels)


def test_include_imag_doubles_offdiagonal_elements():
    w = compile_witness(isotropic_pairset(3), NRVariant.MINIMAL)
    base = plan_settings(w)
    full = plan_settings(w, include_imag=True)
    offdiag = sum(1 for el in base.elements if el.kind == "offdiag_re")
    assert full.element_count == base.element_count + offdiag
