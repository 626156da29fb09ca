"""Witness compilation and evaluation against frozen reference selections."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from gmebound.entropy import gme_measure_pure
from gmebound.errors import (
    AnalysisError,
    DegenerateSelectionError,
    InvalidInputError,
    NotDetectingError,
)
from gmebound.indices import IndexPair, MultiIndex
from gmebound.states import (
    DensityMatrix,
    PureState,
    make_ghz_state,
    make_isotropic,
    make_singlet4,
    make_w_state,
    white_noise_mix,
)
from gmebound.witness import (
    NRVariant,
    PairSet,
    auto_select_R,
    bipartite_bound_isotropic,
    compile_witness,
    evaluate,
    evaluate_pure,
    isotropic_pairset,
    noise_threshold,
)

SINGLET_R = [["0011", "0101"], ["0011", "0110"], ["0011", "1001"], ["0011", "1010"]]

# frozen reference numbers
W_PURE_VALUE = math.sqrt(2.0) / 2.0
W_MAXMIXED_VALUE = -3.0 * math.sqrt(2.0) / 8.0 - 3.0 * math.sqrt(2.0) / 16.0
W_THRESHOLD = 9.0 / 17.0
GHZ_THRESHOLD = 3.0 / 7.0
SINGLET_THRESHOLD = 21.0 / 29.0


def test_w_auto_selection_and_compile():
    w = make_w_state(3)
    r = auto_select_R(w)
    assert sorted(r.as_strings()) == [["001", "010"], ["001", "100"], ["010", "100"]]
    compiled = compile_witness(r, NRVariant.MINIMAL)
    assert compiled.n_r == 1
    assert all(v == 1 for v in compiled.uncounted_profile.values())
    assert compiled.prefactor == pytest.approx(math.sqrt(2.0), abs=1e-15)
    assert all(v == 1 for v in compiled.n_eta.values())
    images = sorted(
        (str(img.first), str(img.second))
        for imgs in compiled.noise_images.values()
        for img in imgs
    )
    assert images == [("000", "011"), ("000", "101"), ("000", "110")]


def test_w_values_and_threshold():
    w = make_w_state(3)
    compiled = compile_witness(auto_select_R(w), NRVariant.MINIMAL)
    assert evaluate_pure(compiled, w) == pytest.approx(W_PURE_VALUE, abs=1e-12)
    assert evaluate(compiled, white_noise_mix(w, 0.0)) == pytest.approx(
        W_MAXMIXED_VALUE, abs=1e-12
    )
    assert noise_threshold(compiled, w) == pytest.approx(W_THRESHOLD, abs=1e-10)


def test_ghz_single_pair_witness():
    g = make_ghz_state(3, 2)
    r = auto_select_R(g)
    assert r.as_strings() == [["000", "111"]]
    compiled = compile_witness(r, NRVariant.MINIMAL)
    assert compiled.n_r == 0
    assert compiled.prefactor == pytest.approx(2.0, abs=1e-15)
    assert evaluate_pure(compiled, g) == pytest.approx(1.0, abs=1e-12)
    assert noise_threshold(compiled, g) == pytest.approx(GHZ_THRESHOLD, abs=1e-10)


def test_singlet_profile_and_both_variants():
    s4 = make_singlet4()
    r = PairSet.from_strings(SINGLET_R, 4, 2)
    lo = compile_witness(r, NRVariant.MINIMAL)
    hi = compile_witness(r, NRVariant.MAXIMAL)
    profile = [
        lo.uncounted_profile[g]
        for g in sorted(lo.uncounted_profile, key=lambda b: (len(b.parties), b.sorted_parties()))
    ]
    assert profile == [2, 0, 2, 2, 2, 2, 2]
    assert lo.n_r == 0 and hi.n_r == 2
    expected_n_eta = {"0011": 2, "0101": 1, "0110": 1, "1001": 1, "1010": 1}
    assert {str(k): v for k, v in lo.n_eta.items()} == expected_n_eta
    assert {str(k): v for k, v in hi.n_eta.items()} == expected_n_eta
    assert noise_threshold(lo, s4) == pytest.approx(SINGLET_THRESHOLD, abs=1e-10)
    assert noise_threshold(hi, s4) == pytest.approx(SINGLET_THRESHOLD, abs=1e-10)


def test_singlet_verdicts_straddle_threshold():
    s4 = make_singlet4()
    compiled = compile_witness(PairSet.from_strings(SINGLET_R, 4, 2), NRVariant.MINIMAL)
    assert evaluate(compiled, white_noise_mix(s4, 0.8)) > 0
    assert evaluate(compiled, white_noise_mix(s4, 0.7)) < 0


def test_isotropic_formula_and_tightness():
    for p in (0.0, 0.25, 0.5, 1.0):
        assert bipartite_bound_isotropic(3, p) == pytest.approx(
            2.0 * (4.0 * p - 1.0) / math.sqrt(27.0), abs=1e-12
        )
    for d in (2, 3, 4):
        compiled = compile_witness(isotropic_pairset(d), NRVariant.MINIMAL)
        assert evaluate(compiled, make_isotropic(d, 1.0)) == pytest.approx(
            math.sqrt(2.0 - 2.0 / d), abs=1e-10
        )


def test_degenerate_single_fixed_pair_rejected():
    r = PairSet.from_strings([["000", "100"]], 3, 2)
    with pytest.raises(DegenerateSelectionError):
        compile_witness(r, NRVariant.MINIMAL)


def test_cross_pair_cycle_is_degenerate():
    # gamma = {1} exchanges (01,10) with (00,11): neither coherence survives
    # that cut, so the selection carries no usable off-diagonal mass
    r = PairSet.from_strings([["01", "10"], ["00", "11"]], 2, 2)
    with pytest.raises(DegenerateSelectionError):
        compile_witness(r, NRVariant.MINIMAL)


def test_auto_select_skips_cycle_partners():
    # regression: the appended pair (00,11) used to form a cycle with (01,10)
    # and pushed the bound above the measure
    amps = {"10": 0.16666520612146444, "01": 0.7250706001036722,
            "00": 0.6482226312372988, "11": 0.16514243740029727}
    norm = math.sqrt(sum(a * a for a in amps.values()))
    psi = PureState(
        2, 2, {MultiIndex.from_string(k, 2): v / norm for k, v in amps.items()}
    )
    r = auto_select_R(psi)
    assert r.as_strings() == [["01", "10"]]
    compiled = compile_witness(r, NRVariant.MINIMAL)
    assert evaluate_pure(compiled, psi) <= gme_measure_pure(psi).e_m + 1e-9


def test_pairset_dedupes_and_validates():
    # builders drop repeats (after canonicalization), the raw constructor rejects
    r = PairSet.from_strings([["01", "10"], ["10", "01"]], 2, 2)
    assert len(r) == 1
    dup = r.pairs[0]
    with pytest.raises(InvalidInputError):
        PairSet((dup, dup), 2, 2)
    with pytest.raises(InvalidInputError):
        PairSet.from_strings([["01", "100"]], 2, 2)


def test_evaluate_rejects_shape_mismatch():
    compiled = compile_witness(PairSet.from_strings(SINGLET_R, 4, 2), NRVariant.MINIMAL)
    with pytest.raises(InvalidInputError):
        evaluate(compiled, make_isotropic(2, 0.5))


def test_noise_threshold_requires_detection():
    # witness built for the W state cannot detect the GHZ state
    compiled = compile_witness(auto_select_R(make_w_state(3)), NRVariant.MINIMAL)
    with pytest.raises(NotDetectingError):
        noise_threshold(compiled, make_ghz_state(3, 2))


def test_max_pairs_keeps_cover_prefix():
    s4 = make_singlet4()
    full = auto_select_R(s4)
    capped = auto_select_R(s4, max_pairs=1)
    assert len(capped) >= 1
    assert capped.pairs[0] == full.pairs[0]


@settings(max_examples=35, deadline=None)
@given(
    st.sampled_from([(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)]),
    st.integers(4, 8),
    st.integers(0, 2**31),
    st.sampled_from(list(NRVariant)),
)
def test_witness_never_exceeds_measure(shape, size, seed, variant):
    """The certified bound stays below the convex-roof measure on pure states."""
    n, d = shape
    rng = np.random.default_rng(seed)
    ranks = rng.choice(d**n, size=min(size, d**n), replace=False)
    amps = rng.normal(size=len(ranks)) + 1j * rng.normal(size=len(ranks))
    amps /= np.linalg.norm(amps)
    psi = PureState(
        n, d, {MultiIndex.from_rank(int(r), n, d): complex(a) for r, a in zip(ranks, amps)}
    )
    try:
        compiled = compile_witness(auto_select_R(psi), variant)
    except AnalysisError:
        # degenerate selection or a cut the support cannot cover: no witness
        return
    assert evaluate_pure(compiled, psi) <= gme_measure_pure(psi).e_m + 1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from(list(NRVariant)))
def test_evaluate_matches_direct_recomputation(seed, variant):
    rng = np.random.default_rng(seed)
    rho_mat = oracles.random_density(3, 2, rng)
    rho = DensityMatrix(3, 2, rho_mat)
    r = PairSet.from_strings([["001", "010"], ["001", "100"], ["010", "100"]], 3, 2)
    compiled = compile_witness(r, variant)
    want = oracles.witness_value_direct(
        [tuple(p) for p in r.as_strings()],
        rho_mat,
        3,
        2,
        variant="min" if variant is NRVariant.MINIMAL else "max",
    )
    assert evaluate(compiled, rho) == pytest.approx(want, abs=1e-12)


def test_singlet_evaluate_matches_direct_recomputation_both_variants():
    rng = np.random.default_rng(3)
    rho_mat = oracles.random_density(4, 2, rng)
    rho = DensityMatrix(4, 2, rho_mat)
    r = PairSet.from_strings(SINGLET_R, 4, 2)
    for variant, name in ((NRVariant.MINIMAL, "min"), (NRVariant.MAXIMAL, "max")):
        got = evaluate(compile_witness(r, variant), rho)
        want = oracles.witness_value_direct(
            [tuple(p) for p in SINGLET_R], rho_mat, 4, 2, variant=name
        )
        assert got == pytest.approx(want, abs=1e-12)
