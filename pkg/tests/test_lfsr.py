import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_lfsr, naive_period
from y00lab.lfsr import (
    PRIMITIVE_EXPONENTS,
    LfsrConfig,
    berlekamp_massey,
    block_width,
    lfsr_period,
    lfsr_stream,
    lfsr_streams,
    primitive_taps,
    recover_seed_berlekamp_massey,
    running_key_blocks,
    taps_from_exponents,
)


def test_degree_four_period():
    taps = taps_from_exponents((4, 3))
    assert taps == 0b11000
    for seed in range(1, 16):
        cfg = LfsrConfig(4, taps, seed)
        assert lfsr_period(cfg) == 15
        assert naive_period(cfg.seed_bits().tolist(), (4, 3)) == 15


def test_zero_seed_rejected():
    with pytest.raises(ValueError):
        LfsrConfig(4, 0b11000, 0)


def test_bad_taps_rejected():
    with pytest.raises(ValueError):
        LfsrConfig(4, 0b1000, 1)
    with pytest.raises(ValueError):
        LfsrConfig(4, 0b11001, 1)


def test_stream_deterministic():
    cfg = LfsrConfig.primitive(12, 0xABC)
    assert np.array_equal(lfsr_stream(cfg, 300), lfsr_stream(cfg, 300))


@pytest.mark.parametrize("n", sorted(k for k in PRIMITIVE_EXPONENTS if k <= 24))
def test_tabulated_polynomials_are_maximal(n):
    assert lfsr_period(LfsrConfig.primitive(n, 1)) == 2**n - 1


@settings(max_examples=50)
@given(st.sampled_from(sorted(PRIMITIVE_EXPONENTS)), st.data())
def test_stream_matches_naive_register(n, data):
    seed = data.draw(st.integers(1, 2**n - 1))
    cfg = LfsrConfig.primitive(n, seed)
    ref = naive_lfsr(cfg.seed_bits().tolist(), PRIMITIVE_EXPONENTS[n], 3 * n + 5)
    assert lfsr_stream(cfg, 3 * n + 5).tolist() == ref


def test_stream_starts_with_seed():
    cfg = LfsrConfig.from_seed_bits([1, 0, 0, 1, 1], primitive_taps(5))
    assert lfsr_stream(cfg, 5).tolist() == [1, 0, 0, 1, 1]


def test_batched_streams_match_scalar():
    seeds = np.array([1, 77, 4095, 2048])
    batch = lfsr_streams(12, primitive_taps(12), seeds, 100)
    for row, s in zip(batch, seeds):
        assert np.array_equal(row, lfsr_stream(LfsrConfig.primitive(12, int(s)), 100))


def test_running_key_examples():
    rk = running_key_blocks([0, 1, 1, 0], 4)
    assert rk.basis_numbers.tolist() == [1, 2]
    assert rk.parities.tolist() == [1, 0]
    bits = [1, 0, 1, 1, 0]
    assert running_key_blocks(bits, 2).basis_numbers.tolist() == bits
    assert running_key_blocks([1, 1], 3).basis_numbers.tolist() == [0]
    assert len(running_key_blocks([1, 0, 1], 4)) == 1


@given(st.lists(st.integers(0, 1), max_size=200), st.integers(2, 300))
def test_parity_invariant(bits, m):
    rk = running_key_blocks(bits, m)
    assert np.array_equal(rk.parities, rk.basis_numbers % 2)
    assert np.all(rk.basis_numbers < m)
    assert len(rk) == len(bits) // block_width(m)


def test_berlekamp_massey_recovers_register():
    cfg = LfsrConfig.primitive(16, 0x1D2C)
    bits = lfsr_stream(cfg, 32)
    rec = recover_seed_berlekamp_massey(bits, 16)
    assert rec == cfg
    C, L = berlekamp_massey(bits)
    assert L == 16 and C[0] == 1


def test_berlekamp_massey_short_stream_rejected():
    bits = lfsr_stream(LfsrConfig.primitive(16, 5), 20)
    with pytest.raises(ValueError):
        recover_seed_berlekamp_massey(bits, 16)
