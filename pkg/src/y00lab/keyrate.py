"""Holevo-quantity key-generation rate and the channel-loss margin it allows."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coherent import MixtureState, merge_components, von_neumann_entropy
from .protocol import Constellation, RandomizationConfig, conditional_mixtures

HOLEVO_NEG_TOL = 1e-9
MAX_MARGIN_DB = 200.0


@dataclass(frozen=True)
class KeyRateReport:
    chi_bob: float
    chi_eve: float
    seed_key_penalty: float
    kappa: float
    raw_rate: float  # before clamping
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.chi_bob < 0 or self.chi_eve < 0:
            raise ValueError("Holevo quantities must be non-negative")

    @property
    def rate(self) -> float:
        return max(0.0, self.raw_rate)


def average_state(components, priors) -> MixtureState:
    states = np.concatenate([c.states for c in components])
    w = np.concatenate([p * c.weights for c, p in zip(components, priors)])
    s, w = merge_components(states, w)
    return MixtureState(s, w)


def holevo_quantity(components, priors=None) -> float:
    """chi = S(sum p_i rho_i) - sum p_i S(rho_i), in bits."""
    components = list(components)
    if not components:
        raise ValueError("need at least one component")
    if priors is None:
        priors = np.full(len(components), 1.0 / len(components))
    priors = np.asarray(priors, dtype=float)
    if priors.shape != (len(components),) or np.any(priors < 0) or abs(priors.sum() - 1) > 1e-12:
        raise ValueError("priors must be a probability vector, one per component")
    keep = priors > 0
    components = [c for c, k in zip(components, keep) if k]
    priors = priors[keep]
    chi = von_neumann_entropy(average_state(components, priors))
    chi -= float(sum(p * von_neumann_entropy(c) for c, p in zip(components, priors)))
    if chi < -HOLEVO_NEG_TOL:
        raise ArithmeticError(f"negative Holevo quantity {chi:.3e}")
    return max(0.0, chi)


def bob_components(cfg: Constellation, kappa: float) -> list[tuple[MixtureState, MixtureState]]:
    """Bob's pure data-bit pair for each basis, after the channel."""
    M = cfg.m_bases
    s = cfg.states() * kappa
    if cfg.scheme == "psk":
        pairs = [(s[k + M * (1 ^ (k % 2))], s[k + M * (k % 2)]) for k in range(M)]
    else:
        pairs = [(s[k], s[M + k]) for k in range(M)]
    return [(MixtureState.pure(a), MixtureState.pure(b)) for a, b in pairs]


def chi_bob(cfg: Constellation, kappa: float) -> float:
    pairs = bob_components(cfg, kappa)
    if cfg.scheme == "psk":
        # every PSK basis gives the same antipodal pair up to rotation
        return holevo_quantity(pairs[0])
    return float(np.mean([holevo_quantity(p) for p in pairs]))


def chi_eve(cfg: Constellation, rnd: RandomizationConfig | None = None) -> float:
    rho0, rho1 = conditional_mixtures(cfg, rnd or RandomizationConfig(), "data")
    return holevo_quantity([rho0, rho1])


def key_rate(
    cfg: Constellation,
    rnd: RandomizationConfig | None = None,
    kappa: float = 1.0,
    seed_key_penalty: float = 0.0,
    eve_chi: float | None = None,
) -> KeyRateReport:
    """Eve at the transmitter sees the full amplitude; Bob sees kappa * alpha.

    ``eve_chi`` lets sweeps reuse Eve's (kappa-independent) Holevo quantity.
    """
    if not 0 < kappa <= 1:
        raise ValueError(f"kappa must lie in (0, 1], got {kappa}")
    if seed_key_penalty < 0:
        raise ValueError("seed_key_penalty must be non-negative")
    rnd = rnd or RandomizationConfig()
    cb = chi_bob(cfg, kappa)
    ce = chi_eve(cfg, rnd) if eve_chi is None else eve_chi
    return KeyRateReport(
        chi_bob=cb,
        chi_eve=ce,
        seed_key_penalty=seed_key_penalty,
        kappa=kappa,
        raw_rate=cb - ce - seed_key_penalty,
        config={"scheme": cfg.scheme, "m_bases": cfg.m_bases, "amplitude": cfg.amplitude, "osk": rnd.osk_enabled},
    )


def loss_margin(
    cfg: Constellation,
    rnd: RandomizationConfig | None = None,
    seed_key_penalty: float = 0.0,
    resolution_db: float = 0.01,
) -> float:
    """Largest tolerable energy loss -20 log10(kappa*) in dB, found by bisection.

    chi_bob falls monotonically with kappa while chi_eve does not depend on it,
    so the positive-rate region is an interval (kappa*, 1].
    """
    rnd = rnd or RandomizationConfig()
    ce = chi_eve(cfg, rnd)

    def positive(db: float) -> bool:
        return key_rate(cfg, rnd, 10 ** (-db / 20), seed_key_penalty, ce).raw_rate > 0

    if not positive(0.0):
        return 0.0
    if positive(MAX_MARGIN_DB):
        return MAX_MARGIN_DB
    lo, hi = 0.0, MAX_MARGIN_DB
    while hi - lo > resolution_db:
        mid = 0.5 * (lo + hi)
        if positive(mid):
            lo = mid
        else:
            hi = mid
    return lo


def rate_band_flag(margin_db: float, band=(3.0, 9.0)) -> str | None:
    if band[0] <= margin_db <= band[1]:
        return None
    return f"loss margin {margin_db:.2f} dB lies outside the reference band [{band[0]}, {band[1]}] dB"


def pure_pair_holevo(overlap_abs: float) -> float:
    """chi for two equiprobable pure states with |<a|b>| = s: h((1 + s) / 2)."""
    p = (1 + overlap_abs) / 2
    if p >= 1:
        return 0.0
    return float(-p * math.log2(p) - (1 - p) * math.log2(1 - p))
