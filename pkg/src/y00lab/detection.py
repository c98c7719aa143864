"""Error bounds of optimal quantum receivers and simple receiver simulators.

Measurements are never materialised as operators: every optimal receiver is
represented by its error probability, computed spectrally in the span of the
signal states.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import integrate, special, stats

from .coherent import (
    EIG_CLIP,
    MixtureState,
    SpectralError,
    merge_components,
    signed_combination_spectrum,
)


@dataclass(frozen=True)
class BinaryDiscriminationProblem:
    rho0: MixtureState
    rho1: MixtureState
    p0: float = 0.5
    p1: float = 0.5

    def __post_init__(self):
        if self.p0 < 0 or self.p1 < 0 or abs(self.p0 + self.p1 - 1.0) > 1e-12:
            raise ValueError(f"priors must be a probability pair, got ({self.p0}, {self.p1})")

    def pooled(self):
        """Pooled states with the signed coefficients of p1*rho1 - p0*rho0."""
        states = np.concatenate([self.rho1.states, self.rho0.states])
        coef = np.concatenate([self.p1 * self.rho1.weights, -self.p0 * self.rho0.weights])
        return merge_components(states, coef)


@dataclass(frozen=True)
class MeasurementOutcome:
    kind: Literal["heterodyne-point", "photon-count"]
    value: complex | int

    def __post_init__(self):
        if self.kind == "photon-count" and (int(self.value) != self.value or self.value < 0):
            raise ValueError("photon counts are non-negative integers")


def trace_norm_difference(problem: BinaryDiscriminationProblem) -> float:
    states, coef = problem.pooled()
    if not np.any(coef):
        return 0.0
    lam = signed_combination_spectrum(states, coef).eigenvalues
    return float(np.sum(np.abs(lam)))


def helstrom_error(problem: BinaryDiscriminationProblem) -> float:
    """Minimum error probability for telling rho0 from rho1."""
    pe = 0.5 * (1.0 - trace_norm_difference(problem))
    return float(min(0.5, max(0.0, pe)))


def psk_ring(count: int, radius: float, offset: float = 0.0) -> np.ndarray:
    return radius * np.exp(1j * (offset + 2 * np.pi * np.arange(count) / count))


def srm_symmetric_error(count: int, radius: float) -> float:
    """Square-root-measurement error for `count` equiprobable PSK states.

    The Gram matrix of a PSK ring is circulant, so its eigenvalues are the DFT
    of its first row and the SRM success probability is ((1/n) sum sqrt(lam))^2.
    """
    if count < 1 or radius < 0:
        raise ValueError("count >= 1 and radius >= 0 required")
    if count == 1:
        return 0.0
    theta = 2 * np.pi * np.arange(count) / count
    row = np.exp(-radius**2 * (1 - np.exp(1j * theta)))
    lam = np.fft.fft(row).real
    if lam.min() < -EIG_CLIP * count:
        raise SpectralError(f"circulant Gram eigenvalue {lam.min():.3e} is negative")
    lam = np.clip(lam, 0.0, None)
    pc = (np.sum(np.sqrt(lam)) / count) ** 2
    return float(min(1 - 1 / count, max(0.0, 1 - pc)))


def neighbor_t0(mean_photon: float, m_bases: int) -> float:
    return math.pi * math.sqrt(mean_photon) / (2 * m_bases)


def neighbor_error(mean_photon: float, m_bases: int) -> float:
    """Error probability between neighbouring PSK states, 1/2 - (Phi(t0) - 1/2)."""
    if mean_photon < 0 or m_bases < 1:
        raise ValueError("mean_photon >= 0 and m_bases >= 1 required")
    return float(stats.norm.sf(neighbor_t0(mean_photon, m_bases)))


def design_basis_count(mean_photon: float, target_error: float) -> int:
    """Smallest M with neighbor_error(mean_photon, M) >= target_error."""
    if not 0 < target_error < 0.5:
        raise ValueError("target_error must lie in (0, 0.5)")
    if mean_photon == 0:
        return 1
    log_target = math.log(target_error)

    def ok(m: int) -> bool:
        t0 = neighbor_t0(mean_photon, m)
        if target_error >= 1e-300:
            return stats.norm.sf(t0) >= target_error
        # the tail underflows before tiny targets are decided
        return stats.norm.logsf(t0) >= log_target

    if ok(1):
        return 1
    lo, hi = 1, 2
    while not ok(hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def heterodyne(states, rng: np.random.Generator) -> np.ndarray:
    """Vectorised Q-function sampling: each quadrature ~ N(mean, 1/2)."""
    s = np.asarray(states, dtype=complex)
    noise = rng.standard_normal(s.shape + (2,)) * math.sqrt(0.5)
    return s + noise[..., 0] + 1j * noise[..., 1]


def heterodyne_sample(state, rng: np.random.Generator) -> MeasurementOutcome:
    return MeasurementOutcome("heterodyne-point", complex(heterodyne(complex(state), rng)))


def photon_counts(states, efficiency: float, rng: np.random.Generator) -> np.ndarray:
    if not 0 <= efficiency <= 1:
        raise ValueError("efficiency must lie in [0, 1]")
    lam = efficiency * np.abs(np.asarray(states, dtype=complex)) ** 2
    return rng.poisson(lam)


def photon_count_sample(state, efficiency: float, rng: np.random.Generator) -> MeasurementOutcome:
    return MeasurementOutcome("photon-count", int(photon_counts(complex(state), efficiency, rng)))


def psk_heterodyne_symbol_error(radius: float, count: int) -> float:
    """Heterodyne + nearest-phase decision error on a `count`-point PSK ring."""
    if count == 1:
        return 0.0
    r = radius

    def phase_density(t):
        c = math.cos(t)
        return (
            math.exp(-r * r)
            + math.sqrt(math.pi) * r * c * math.exp(-(r * math.sin(t)) ** 2) * (1 + special.erf(r * c))
        ) / (2 * math.pi)

    pc, _ = integrate.quad(phase_density, -math.pi / count, math.pi / count, epsabs=1e-13)
    return float(1 - pc)


def upper_half_plane(angles, axis_angle: float = 0.0) -> np.ndarray:
    """Boolean mask: angle in [axis, axis + pi)."""
    rel = np.mod(np.asarray(angles, dtype=float) - axis_angle, 2 * np.pi)
    rel = np.where(rel > 2 * np.pi - 1e-9, 0.0, rel)
    return rel < np.pi - 1e-9


def half_plane_problem(constellation, axis_angle: float = 0.0) -> BinaryDiscriminationProblem:
    if constellation.scheme != "psk":
        raise ValueError("half-plane partition is defined for PSK constellations")
    s = constellation.states()
    up = upper_half_plane(constellation.phases(), axis_angle)
    return BinaryDiscriminationProblem(
        rho0=MixtureState.uniform(s[~up]), rho1=MixtureState.uniform(s[up])
    )


def half_plane_error(constellation, axis_angle: float = 0.0) -> float:
    """Helstrom error for deciding the half-plane (up/down) of the sent state."""
    return helstrom_error(half_plane_problem(constellation, axis_angle))
