"""Entropy routes: the sparse coefficient formula against dense linear algebra."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from gmebound.entropy import (
    gme_measure_pure,
    linear_entropy_coeff,
    linear_entropy_trace,
    renyi2_from_linear,
)
from gmebound.indices import Bipartition, MultiIndex
from gmebound.states import PureState, make_ghz_state, make_singlet4, make_w_state

W_CUT_ENTROPY = 8.0 / 9.0  # every cut of |W_3| reduces to eigenvalues (1/3, 2/3)


def test_w_state_profile_and_measure():
    report = gme_measure_pure(make_w_state(3))
    assert all(v == pytest.approx(W_CUT_ENTROPY, abs=1e-12) for v in report.entropies.values())
    assert report.e_m == pytest.approx(2.0 * math.sqrt(2.0) / 3.0, abs=1e-12)


def test_ghz_measure_is_one():
    report = gme_measure_pure(make_ghz_state(3, 2))
    assert report.e_m == pytest.approx(1.0, abs=1e-12)


def test_product_state_measure_is_zero():
    psi = PureState(3, 2, {MultiIndex.from_string("010", 2): 1.0})
    assert gme_measure_pure(psi).e_m == 0.0


def test_singlet4_minimum_sits_on_the_13_14_cuts():
    report = gme_measure_pure(make_singlet4())
    by_label = {g.sorted_parties(): v for g, v in report.entropies.items()}
    assert by_label[(1, 3)] == pytest.approx(5.0 / 6.0, abs=1e-12)
    assert by_label[(1, 4)] == pytest.approx(5.0 / 6.0, abs=1e-12)
    assert report.e_m == pytest.approx(math.sqrt(5.0 / 6.0), abs=1e-12)
    assert report.minimizer.sorted_parties() in {(1, 3), (1, 4)}


def _random_sparse(n, d, size, rng):
    ranks = rng.choice(d**n, size=min(size, d**n), replace=False)
    amps = rng.normal(size=len(ranks)) + 1j * rng.normal(size=len(ranks))
    amps /= np.linalg.norm(amps)
    return PureState(
        n, d, {MultiIndex.from_rank(int(r), n, d): complex(a) for r, a in zip(ranks, amps)}
    )


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(2, 3), st.integers(2, 8), st.integers(0, 2**31))
def test_coeff_route_matches_trace_route(n, d, size, seed):
    psi = _random_sparse(n, d, size, np.random.default_rng(seed))
    for g in gme_measure_pure(psi).entropies:
        a = linear_entropy_coeff(psi, g)
        b = linear_entropy_trace(psi, g)
        assert a == pytest.approx(b, abs=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(2, 3), st.integers(0, 2**31))
def test_measure_matches_eigenvalue_oracle(n, d, seed):
    psi = _random_sparse(n, d, 6, np.random.default_rng(seed))
    got = gme_measure_pure(psi).e_m
    want = oracles.gme_measure_eigen(psi.to_vector(), n, d)
    assert got == pytest.approx(want, abs=1e-10)


def test_trace_route_single_cut_against_dense():
    rng = np.random.default_rng(11)
    psi = _random_sparse(3, 3, 9, rng)
    g = Bipartition.of({1, 3}, 3)
    want = oracles.linear_entropy_dense(psi.to_vector(), 3, 3, frozenset({1, 3}))
    assert linear_entropy_trace(psi, g) == pytest.approx(want, abs=1e-12)


def test_renyi2_values():
    # maximally mixed qubit reduction: S_L = 1 -> one bit
    assert renyi2_from_linear(1.0) == pytest.approx(1.0, abs=1e-12)
    assert renyi2_from_linear(0.0) == 0.0
    assert renyi2_from_linear(W_CUT_ENTROPY) == pytest.approx(
        -math.log2((2.0 - W_CUT_ENTROPY) / 2.0), abs=1e-15
    )
