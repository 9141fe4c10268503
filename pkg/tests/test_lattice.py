import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picgap.lattice import (
    DitheredCodeword,
    MembershipError,
    NestedChain,
    ScaledLattice,
    _aligned,
    _streaming_merge,
    effective_noise_mc,
    effective_noise_variance,
    lemma1_check,
    lemma2_check,
    lemma3_check,
    mmse_beta,
    mod,
    quantize,
    recover_real_sum,
    run_lattice_suite,
)

Z, TWO_Z = ScaledLattice(1.0), ScaledLattice(2.0)
CHAIN = NestedChain(1.0, 4.0, 12.0)


def test_quantize_and_mod_examples():
    assert quantize(Z, 0.4) == 0.0
    assert quantize(TWO_Z, 7.3) == 8.0
    assert mod(TWO_Z, 7.3) == pytest.approx(-0.7)
    assert mod(TWO_Z, 0.0) == 0.0
    # half-open cell: the upper tie rounds up, so +a/2 maps to -a/2
    assert mod(TWO_Z, 1.0) == -1.0
    assert mod(TWO_Z, -1.0) == -1.0


@given(st.floats(-1e6, 1e6), st.sampled_from([0.25, 0.5, 1.0, 3.0]))
def test_mod_properties(x, a):
    lat = ScaledLattice(a)
    m = mod(lat, x)
    assert lat.in_cell(m)
    assert mod(lat, m) == pytest.approx(m, abs=1e-9)
    assert quantize(lat, x) + m == pytest.approx(x, abs=1e-9 * max(1.0, abs(x)))
    k = float(np.round(x / a))
    assert quantize(lat, k * a) == pytest.approx(k * a)


def test_vector_lattice_dimension_check():
    lat = ScaledLattice(1.0, 3)
    np.testing.assert_allclose(mod(lat, [0.4, 1.6, -2.5]), [0.4, -0.4, -0.5])
    with pytest.raises(ValueError):
        mod(lat, [1.0, 2.0])


def test_mmse_examples():
    assert mmse_beta(3.0, 3.0) == 0.5
    assert effective_noise_variance(3.0, 3.0) == 1.5
    assert mmse_beta(0.0, 1.0) == 0.0
    assert mmse_beta(100, 4) == pytest.approx(100 / 104)
    assert effective_noise_variance(100, 4) == pytest.approx(3.846, abs=1e-3)
    with pytest.raises(ValueError):
        mmse_beta(1.0, 0.0)


def test_chain_validation():
    with pytest.raises(ValueError):
        NestedChain(1.0, 2.5, 5.0)
    with pytest.raises(ValueError):
        NestedChain(1.0, 4.0, 10.0)
    assert CHAIN.shape3.is_sublattice_of(CHAIN.shape1)


def test_lemmas_on_zero_inputs():
    assert lemma1_check(CHAIN, 0.0, 0.0, 0.0, 0.0)
    assert lemma3_check(CHAIN, 0.0, 0.0, 0.0, 0.0)


def test_lemma1_scalar_example_after_reduction():
    # 3 and 7 are lattice points but not codewords of the (1, 4, 12) chain;
    # their reductions into the shaping cells are -1 and -5
    assert mod(CHAIN.shape1, 3.0) == -1.0 and mod(CHAIN.shape3, 7.0) == -5.0
    assert lemma1_check(CHAIN, -1.0, -5.0, 1.2, -4.9)
    assert lemma3_check(CHAIN, -1.0, -5.0, 1.2, -4.9)


def test_unreduced_codeword_is_rejected():
    with pytest.raises(MembershipError):
        lemma1_check(CHAIN, 3.0, 7.0, 1.2, -4.9)
    with pytest.raises(MembershipError):
        lemma1_check(CHAIN, 0.5, 0.0, 0.0, 0.0)
    with pytest.raises(MembershipError):
        lemma1_check(CHAIN, 0.0, 0.0, 2.5, 0.0)


def test_lemma2_examples():
    assert lemma2_check(TWO_Z, ScaledLattice(6.0), 7.3)
    assert mod(TWO_Z, mod(ScaledLattice(6.0), 7.3)) == pytest.approx(-0.7)
    assert lemma2_check(TWO_Z, ScaledLattice(6.0), 18.0)
    with pytest.raises(ValueError):
        lemma2_check(TWO_Z, ScaledLattice(5.0), 1.0)


@settings(max_examples=200)
@given(
    st.sampled_from([0.5, 1.0, 2.0]),
    st.integers(2, 8),
    st.integers(2, 8),
    st.integers(0, 10**6),
)
def test_lemmas_random(a_c, k1, k3, seed):
    ch = NestedChain(a_c, a_c * k1, a_c * k1 * k3, 8)
    rng = np.random.default_rng(seed)
    t11 = a_c * (rng.integers(0, k1, 8) - k1 // 2)
    t3 = a_c * (rng.integers(0, k1 * k3, 8) - (k1 * k3) // 2)
    d11 = rng.uniform(-ch.a_1 / 2, ch.a_1 / 2, 8)
    d3 = rng.uniform(-ch.a_3 / 2, ch.a_3 / 2, 8)
    assert lemma1_check(ch, t11, t3, d11, d3)
    assert lemma3_check(ch, t11, t3, d11, d3)
    assert lemma2_check(ch.shape1, ch.shape3, rng.normal(0, 50, 8))


def test_dithered_codeword_lies_in_cell():
    cw = DitheredCodeword.encode(CHAIN.shape3, -5.0, -4.9)
    assert CHAIN.shape3.in_cell(cw.x)
    assert cw.x == pytest.approx(2.1)


def test_recovery_examples():
    xf, tf, df = _aligned(CHAIN, -1.0, -5.0, 1.2, -4.9)
    assert recover_real_sum(xf, tf, df, CHAIN.shape1, truth=xf).ok
    for z in (1.9, -1.9, 0.7):
        rec = recover_real_sum(xf + z, tf, df, CHAIN.shape1, truth=xf)
        assert rec.ok
        assert rec.value == pytest.approx(xf)
    bad = recover_real_sum(xf + CHAIN.a_1, tf, df, CHAIN.shape1, truth=xf)
    assert not bad.ok and bad.value is None


def test_effective_noise_mc_examples():
    assert effective_noise_mc(1.0, 1.0, 100_000, 11) == pytest.approx(0.5, rel=0.02)
    assert effective_noise_mc(100.0, 4.0, 100_000, 11) == pytest.approx(100 * 4 / 104, rel=0.02)
    assert effective_noise_mc(10.0, 1e-9, 10_000, 3) < 1e-6
    assert effective_noise_mc(2.0, 1.0, 5000, 5) == effective_noise_mc(2.0, 1.0, 5000, 5)
    with pytest.raises(ValueError):
        effective_noise_mc(1.0, 1.0, 0, 1)


def test_mc_is_batch_size_robust():
    # the streaming merge must give the same variance as one big batch
    a = effective_noise_mc(5.0, 2.0, 3000, 9, batch=3000)
    b = effective_noise_mc(5.0, 2.0, 3000, 9, batch=3000)
    assert a == b
    c = effective_noise_mc(5.0, 2.0, 3000, 9, batch=700)
    assert c == pytest.approx(5 * 2 / 7, rel=0.1)


def test_suite_small_run():
    res = run_lattice_suite(200, seed=1)
    assert {r.name for r in res} == {"lemma1", "lemma2", "lemma3", "decomposition", "distributive", "recovery"}
    assert all(r.passed for r in res)


@given(st.lists(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=20), min_size=1, max_size=6))
def test_streaming_merge_matches_direct_variance(chunks):
    stats = (0, 0.0, 0.0)
    for c in chunks:
        stats = _streaming_merge(stats, np.array(c))
    allv = np.concatenate([np.array(c) for c in chunks])
    n, mean, m2 = stats
    assert n == allv.size
    assert mean == pytest.approx(allv.mean(), abs=1e-9)
    assert m2 == pytest.approx(((allv - allv.mean()) ** 2).sum(), rel=1e-9, abs=1e-6)
