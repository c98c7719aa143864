import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import fock_helstrom, normal_cdf, pure_pair_helstrom, windowed_psk_helstrom
from y00lab.coherent import MixtureState
from y00lab.detection import (
    BinaryDiscriminationProblem,
    MeasurementOutcome,
    design_basis_count,
    half_plane_error,
    half_plane_problem,
    helstrom_error,
    heterodyne,
    heterodyne_sample,
    neighbor_error,
    neighbor_t0,
    photon_count_sample,
    photon_counts,
    psk_heterodyne_symbol_error,
    psk_ring,
    srm_symmetric_error,
    upper_half_plane,
)
from y00lab.protocol import Constellation


def pure_pair(alpha, p0=0.5):
    return BinaryDiscriminationProblem(MixtureState.pure(alpha), MixtureState.pure(-alpha), p0, 1 - p0)


def test_helstrom_examples():
    m = MixtureState.uniform([1, 1j, -1])
    assert helstrom_error(BinaryDiscriminationProblem(m, m)) == 0.5
    assert helstrom_error(pure_pair(1)) == pytest.approx(pure_pair_helstrom(math.exp(-4)), abs=1e-12)
    assert helstrom_error(pure_pair(1)) == pytest.approx(0.004600, abs=5e-7)
    assert helstrom_error(pure_pair(30)) == pytest.approx(0, abs=1e-9)


def test_priors_validated():
    m = MixtureState.pure(0)
    with pytest.raises(ValueError):
        BinaryDiscriminationProblem(m, m, 0.6, 0.6)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.complex_numbers(max_magnitude=2), min_size=1, max_size=3),
    st.lists(st.complex_numbers(max_magnitude=2), min_size=1, max_size=3),
    st.floats(0.05, 0.95),
)
def test_helstrom_symmetric_and_bounded(a, b, p0):
    r0, r1 = MixtureState.uniform(a), MixtureState.uniform(b)
    e1 = helstrom_error(BinaryDiscriminationProblem(r0, r1, p0, 1 - p0))
    e2 = helstrom_error(BinaryDiscriminationProblem(r1, r0, 1 - p0, p0))
    assert 0 <= e1 <= 0.5
    assert e1 == pytest.approx(e2, abs=1e-12)
    ref = fock_helstrom((a, r0.weights), (b, r1.weights), p0)
    assert e1 == pytest.approx(min(0.5, max(0.0, ref)), abs=1e-7)


def test_helstrom_unequal_priors_closed_form():
    e = helstrom_error(pure_pair(0.7, p0=0.3))
    assert e == pytest.approx(pure_pair_helstrom(math.exp(-4 * 0.49), p0=0.3), abs=1e-12)


def test_srm_examples():
    assert srm_symmetric_error(1, 3.0) == 0
    assert srm_symmetric_error(4, 0.0) == pytest.approx(0.75, abs=1e-12)
    assert srm_symmetric_error(2, 1.0) == pytest.approx(helstrom_error(pure_pair(1)), abs=1e-9)


@pytest.mark.parametrize("r", [0.1, 0.5, 1, 2])
def test_srm_equals_helstrom_for_two_states(r):
    assert srm_symmetric_error(2, r) == pytest.approx(helstrom_error(pure_pair(r)), abs=1e-9)


def test_srm_matches_gram_sqrt_on_ring():
    from y00lab.coherent import gram_matrix, gram_sqrt

    ring = psk_ring(6, 1.2)
    S = gram_sqrt(gram_matrix(ring))
    pc = np.mean(np.abs(np.diag(S)) ** 2)
    assert srm_symmetric_error(6, 1.2) == pytest.approx(1 - pc, abs=1e-12)


def test_neighbor_error_examples():
    assert neighbor_error(0, 10) == 0.5
    assert neighbor_error(1e4, 1e3) == pytest.approx(0.5 - (normal_cdf(math.pi * 100 / 2000) - 0.5), abs=1e-12)
    assert neighbor_error(1e4, 1000) == pytest.approx(0.4376, abs=5e-4)
    assert neighbor_error(1e5, 10000) == pytest.approx(0.4802, abs=5e-4)


@given(st.floats(0.1, 1e6), st.integers(1, 10**5))
def test_neighbor_error_monotone(n, m):
    assume(neighbor_t0(2 * n, m) < 8)
    assert neighbor_error(n, m + 1) > neighbor_error(n, m)
    assert neighbor_error(n * 2, m) < neighbor_error(n, m)


def test_neighbor_error_limit():
    # t0 = pi sqrt(n) / (2M) <= 0.0025
    assert neighbor_error(1e4, 62832) >= 0.499


def test_design_examples():
    m = design_basis_count(1e5, 0.48)
    assert neighbor_error(1e5, m) >= 0.48 > neighbor_error(1e5, m - 1)
    assert m in (9904, 9905)
    assert design_basis_count(1e4, neighbor_error(1e4, 1000)) == 1000
    assert design_basis_count(0.01, 1e-3) == 1
    assert design_basis_count(1e4, 1e-320) <= design_basis_count(1e4, 1e-300)


def test_design_rounded_target_needs_one_more_basis():
    # 0.4376 is the M = 1000 value rounded up, so M = 1000 falls just short
    assert neighbor_error(1e4, 1000) < 0.4376 <= neighbor_error(1e4, 1001)
    assert design_basis_count(1e4, 0.4376) == 1001


@settings(max_examples=50)
@given(st.floats(1, 1e6), st.floats(0.01, 0.49), st.floats(0.01, 0.49))
def test_design_monotone(n, t1, t2):
    lo, hi = sorted((t1, t2))
    assert design_basis_count(n, lo) <= design_basis_count(n, hi)
    assert design_basis_count(n, lo) <= design_basis_count(4 * n, lo)


def test_heterodyne_statistics():
    rng = np.random.default_rng(1)
    x = heterodyne(np.full(10**5, 3.0), rng)
    assert x.mean().real == pytest.approx(3, abs=0.01)
    assert x.mean().imag == pytest.approx(0, abs=0.01)
    assert x.real.var() == pytest.approx(0.5, abs=0.01)
    assert x.imag.var() == pytest.approx(0.5, abs=0.01)


def test_heterodyne_determinism():
    a = heterodyne(np.arange(5), np.random.default_rng(9))
    b = heterodyne(np.arange(5), np.random.default_rng(9))
    assert np.array_equal(a, b)
    o = heterodyne_sample(1j, np.random.default_rng(9))
    assert o.kind == "heterodyne-point"


def test_heterodyne_sign_decision_matches_theory():
    alpha, n = 0.6, 10**5
    rng = np.random.default_rng(2)
    sent = rng.integers(0, 2, n)
    y = heterodyne(np.where(sent == 1, alpha, -alpha), rng)
    err = np.mean((y.real > 0) != (sent == 1))
    p = normal_cdf(-math.sqrt(2) * alpha)
    assert abs(err - p) < 3 * math.sqrt(p * (1 - p) / n)


def test_psk_symbol_error_integral_matches_monte_carlo():
    r, count, n = 1.3, 8, 2 * 10**5
    rng = np.random.default_rng(5)
    y = heterodyne(np.full(n, r), rng)
    err = np.mean(np.abs(np.angle(y)) > math.pi / count)
    p = psk_heterodyne_symbol_error(r, count)
    assert abs(err - p) < 4 * math.sqrt(p * (1 - p) / n)


def test_photon_counting():
    rng = np.random.default_rng(3)
    assert np.all(photon_counts(np.zeros(100), 1, rng) == 0)
    assert np.all(photon_counts(np.full(100, 5.0), 0, rng) == 0)
    assert photon_counts(np.full(10**5, 3.0), 1, rng).mean() == pytest.approx(9, abs=0.05)
    assert photon_count_sample(2.0, 0.5, rng).kind == "photon-count"
    with pytest.raises(ValueError):
        photon_counts([1.0], 1.5, rng)
    with pytest.raises(ValueError):
        MeasurementOutcome("photon-count", -1)


def test_upper_half_plane_boundaries():
    ang = np.array([0, math.pi / 2, math.pi - 1e-12, math.pi, 3 * math.pi / 2, 2 * math.pi - 1e-12])
    assert upper_half_plane(ang).tolist() == [True, True, False, False, False, True]


def test_half_plane_examples():
    assert half_plane_error(Constellation.psk(2, 0.0)) == pytest.approx(0.5, abs=1e-12)
    cfg = Constellation("psk", 4, 2.0)
    prob = half_plane_problem(cfg)
    ref = fock_helstrom((prob.rho0.states, prob.rho0.weights), (prob.rho1.states, prob.rho1.weights))
    assert half_plane_error(cfg) == pytest.approx(ref, abs=1e-9)
    assert half_plane_error(cfg, math.pi) == pytest.approx(half_plane_error(cfg), abs=1e-12)


@pytest.mark.parametrize("n,M", [(100.0, 10), (400.0, 25)])
def test_half_plane_matches_windowed_fock(n, M):
    cfg = Constellation.psk(M, n)
    ph = cfg.phases()
    up = upper_half_plane(ph)
    ref = windowed_psk_helstrom(math.sqrt(n), ph[up], ph[~up])
    assert half_plane_error(cfg) == pytest.approx(ref, abs=1e-8)
